"""Exact sparse arithmetic for multivariate polynomials over the rationals.

A polynomial is a map from exponent tuples to nonzero ``Fraction``
coefficients.  Variables are named x0..x{nvars-1}; x0 plays the role of the
distinguished direction throughout the package.  All operations are pure and
every value is immutable after construction, so polynomials can be shared
freely between threads.

Terms iterate in descending graded-lexicographic order (higher total degree
first, ties broken lexicographically with x0 largest), which fixes a
canonical text form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    DimensionMismatch,
    DirectionVanishes,
    NotDivisible,
    PolyParseError,
    SingularMatrix,
)

Monomial = tuple[int, ...]
RationalLike = Union[int, str, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ints, 'a/b' strings and Fractions to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def as_point(values: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


def grlex_key(mono: Monomial) -> tuple[int, Monomial]:
    """Sort key; use with reverse=True for the canonical descending order."""
    return (sum(mono), mono)


class Poly:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, RationalLike] | None = None):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono) != nvars:
                    raise DimensionMismatch(
                        f"monomial {mono} has {len(mono)} exponents, expected {nvars}"
                    )
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in monomial {mono}")
                c = as_fraction(coeff)
                if c != 0:
                    clean[tuple(mono)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: RationalLike) -> "Poly":
        return cls(nvars, {(0,) * nvars: as_fraction(value)})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        if not 0 <= index < nvars:
            raise DimensionMismatch(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): _ONE})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: RationalLike = 1) -> "Poly":
        return cls(len(exponents), {tuple(exponents): as_fraction(coeff)})

    # -- structure ----------------------------------------------------

    def terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Iterate (monomial, coefficient) in descending grlex order."""
        for mono in sorted(self._terms, key=grlex_key, reverse=True):
            yield mono, self._terms[mono]

    def coeff(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), _ZERO)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        if not self._terms:
            return 0
        return max(sum(m) for m in self._terms)

    @property
    def is_homogeneous(self) -> bool:
        """Zero counts as homogeneous (of every degree)."""
        degs = {sum(m) for m in self._terms}
        return len(degs) <= 1

    def is_homogeneous_of_degree(self, k: int) -> bool:
        return all(sum(m) == k for m in self._terms)

    def degree_in(self, index: int) -> int:
        """Largest exponent of variable `index`; 0 for the zero polynomial."""
        if not self._terms:
            return 0
        return max(m[index] for m in self._terms)

    def x0_coefficients(self) -> list["Poly"]:
        """Coefficients of powers of x0, each free of x0, lowest power first.

        Returns a list of length degree_in(0)+1 (a single zero entry for the
        zero polynomial).
        """
        top = self.degree_in(0)
        buckets: list[dict[Monomial, Fraction]] = [dict() for _ in range(top + 1)]
        for mono, c in self._terms.items():
            stripped = (0,) + mono[1:]
            buckets[mono[0]][stripped] = c
        return [Poly(self.nvars, b) for b in buckets]

    def uses_only_r_variables(self) -> bool:
        """True when x0 does not occur (coefficient-ring element)."""
        return all(m[0] == 0 for m in self._terms)

    # -- arithmetic ---------------------------------------------------

    def _check_same_vars(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch(
                f"operands use {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_same_vars(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, _ZERO) + c
        return Poly(self.nvars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_same_vars(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, _ZERO) - c
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other: Union["Poly", RationalLike]) -> "Poly":
        if isinstance(other, Poly):
            self._check_same_vars(other)
            out: dict[Monomial, Fraction] = {}
            for ma, ca in self._terms.items():
                for mb, cb in other._terms.items():
                    mono = tuple(a + b for a, b in zip(ma, mb))
                    out[mono] = out.get(mono, _ZERO) + ca * cb
            return Poly(self.nvars, out)
        scalar = as_fraction(other)
        return Poly(self.nvars, {m: c * scalar for m, c in self._terms.items()})

    def __rmul__(self, other: RationalLike) -> "Poly":
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.one(self.nvars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    # -- evaluation & calculus ---------------------------------------

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        """Exact value at a rational point."""
        vals = as_point(point)
        if len(vals) != self.nvars:
            raise DimensionMismatch(
                f"point has {len(vals)} coordinates, polynomial has {self.nvars} variables"
            )
        total = _ZERO
        for mono, c in self._terms.items():
            term = c
            for v, e in zip(vals, mono):
                if e:
                    term *= v**e
            total += term
        return total

    def derivative(self, index: int) -> "Poly":
        """Formal partial derivative with respect to x{index}."""
        if not 0 <= index < self.nvars:
            raise DimensionMismatch(f"variable index {index} out of range")
        out: dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            e = mono[index]
            if e == 0:
                continue
            lowered = list(mono)
            lowered[index] = e - 1
            out[tuple(lowered)] = c * e
        return Poly(self.nvars, out)

    # -- printing -----------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


class UniPoly:
    """Dense univariate polynomial over the rationals (variable t)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return _ZERO
        return self.coeffs[-1]

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        out = list(self.coeffs) + [_ZERO] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __mul__(self, other: Union["UniPoly", RationalLike]) -> "UniPoly":
        if isinstance(other, UniPoly):
            if not self.coeffs or not other.coeffs:
                return UniPoly()
            out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return UniPoly(out)
        scalar = as_fraction(other)
        return UniPoly([c * scalar for c in self.coeffs])

    def __rmul__(self, other: RationalLike) -> "UniPoly":
        return self.__mul__(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def evaluate(self, x: RationalLike) -> Fraction:
        xv = as_fraction(x)
        total = _ZERO
        for c in reversed(self.coeffs):
            total = total * xv + c
        return total

    def derivative(self) -> "UniPoly":
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, divisor: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Exact euclidean division; divisor must be nonzero."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.leading
        quot = [_ZERO] * max(0, len(rem) - dd)
        while len(rem) - 1 >= dd and rem:
            k = len(rem) - 1 - dd
            factor = rem[-1] / lead
            quot[k] = factor
            for i, c in enumerate(divisor.coeffs):
                rem[k + i] -= factor * c
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(quot), UniPoly(rem)

    def exact_div(self, divisor: "UniPoly") -> "UniPoly":
        q, r = self.divmod(divisor)
        if not r.is_zero:
            raise NotDivisible("univariate division left a remainder")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self * (1 / self.leading)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic greatest common divisor."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                body = f"{mag}t" + (f"^{i}" if i > 1 else "")
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"UniPoly({self!s})"


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def mul(a: Poly, b: Poly) -> Poly:
    return a * b


def exact_divide(f: Poly, g: Poly) -> Poly:
    """Return q with f = q*g, reducing against the single divisor g.

    Reduction repeatedly cancels the grlex-leading term of the remainder, so
    it either terminates at zero or proves that g does not divide f.
    """
    if f.nvars != g.nvars:
        raise DimensionMismatch("dividend and divisor use different variable counts")
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    g_terms = list(g.terms())
    g_mono, g_coeff = g_terms[0]
    quotient: dict[Monomial, Fraction] = {}
    rem = f
    while not rem.is_zero:
        r_mono, r_coeff = next(rem.terms())
        diff = tuple(a - b for a, b in zip(r_mono, g_mono))
        if any(e < 0 for e in diff):
            raise NotDivisible(f"{g} does not divide {f}")
        factor = r_coeff / g_coeff
        quotient[diff] = quotient.get(diff, _ZERO) + factor
        rem = rem - Poly.monomial(diff, factor) * g
    return Poly(f.nvars, quotient)


def substitute_line(h: Poly, e: Sequence[RationalLike], v: Sequence[RationalLike]) -> UniPoly:
    """Expand h(t*e + v) exactly as a univariate polynomial in t."""
    ev = as_point(e)
    vv = as_point(v)
    if len(ev) != h.nvars or len(vv) != h.nvars:
        raise DimensionMismatch("direction/offset length must match the variable count")
    # (e_i t + v_i)^k expanded once per needed power, cached per variable.
    lines = [UniPoly([vv[i], ev[i]]) for i in range(h.nvars)]
    cache: dict[tuple[int, int], UniPoly] = {}

    def line_power(i: int, k: int) -> UniPoly:
        key = (i, k)
        if key not in cache:
            if k == 0:
                cache[key] = UniPoly([1])
            else:
                cache[key] = line_power(i, k - 1) * lines[i]
        return cache[key]

    total = UniPoly()
    for mono, c in h._terms.items():
        term = UniPoly([c])
        for i, exp in enumerate(mono):
            if exp:
                term = term * line_power(i, exp)
        total = total + term
    return total


def apply_linear(p: Poly, matrix: Sequence[Sequence[RationalLike]]) -> Poly:
    """Substitute x := A*y, i.e. return p(A*y) in the new coordinates y."""
    n = p.nvars
    rows = [as_point(row) for row in matrix]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DimensionMismatch("substitution matrix must be square of size nvars")
    images = [Poly(n, {tuple(0 if j != k else 1 for k in range(n)): rows[i][j]
                       for j in range(n) if rows[i][j] != 0}) for i in range(n)]
    cache: dict[tuple[int, int], Poly] = {}

    def image_power(i: int, k: int) -> Poly:
        key = (i, k)
        if key not in cache:
            if k == 0:
                cache[key] = Poly.one(n)
            else:
                cache[key] = image_power(i, k - 1) * images[i]
        return cache[key]

    total = Poly.zero(n)
    for mono, c in p._terms.items():
        term = Poly.constant(n, c)
        for i, exp in enumerate(mono):
            if exp:
                term = term * image_power(i, exp)
        total = total + term
    return total


def invert_matrix(matrix: Sequence[Sequence[RationalLike]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination."""
    n = len(matrix)
    aug = [[as_fraction(matrix[i][j]) for j in range(n)] + [Fraction(i == j) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise SingularMatrix("matrix is not invertible")
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def normalize_direction(h: Poly, e: Sequence[RationalLike]) -> tuple[Poly, list[list[Fraction]]]:
    """Rotate coordinates so the direction e becomes (1,0,...,0).

    Returns (h', T) with T*e = (1,0,...,0) and h' = h after the substitution
    x = T^{-1} y, so that h'(1,0,...,0) = h(e).  Raises DirectionVanishes
    when h(e) = 0.
    """
    ev = as_point(e)
    if len(ev) != h.nvars:
        raise DimensionMismatch("direction length must match the variable count")
    if all(c == 0 for c in ev):
        raise DimensionMismatch("direction must be nonzero")
    if h.evaluate(ev) == 0:
        raise DirectionVanishes("polynomial vanishes at the direction")
    n = h.nvars
    pivot = next(i for i in range(n) if ev[i] != 0)
    # Columns of T^{-1}: the direction itself, then unit vectors skipping the
    # pivot slot so the matrix stays invertible.
    inv_t = [[_ZERO] * n for _ in range(n)]
    for i in range(n):
        inv_t[i][0] = ev[i]
    col = 1
    for j in range(n):
        if j == pivot:
            continue
        inv_t[j][col] = _ONE
        col += 1
    transformed = apply_linear(h, inv_t)
    t_mat = invert_matrix(inv_t)
    return transformed, t_mat


def evaluate(p: Poly, point: Sequence[RationalLike]) -> Fraction:
    return p.evaluate(point)


def partial_derivative(p: Poly, index: int) -> Poly:
    return p.derivative(index)


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------


def format_fraction(value: Fraction) -> str:
    return str(value)


def format_poly(p: Poly) -> str:
    """Canonical text form; round-trips through parse_poly."""
    if p.is_zero:
        return "0"
    pieces: list[str] = []
    for mono, coeff in p.terms():
        factors = [f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e > 0]
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


class _Scanner:
    """Character scanner with line/column tracking for error reports."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> PolyParseError:
        return PolyParseError(message, self.line, self.col)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.advance()

    def read_int(self) -> int:
        if not self.peek().isdigit():
            raise self.error("expected a digit")
        digits = []
        while self.peek().isdigit():
            digits.append(self.advance())
        return int("".join(digits))


def parse_poly(text: str, nvars: int | None = None) -> Poly:
    """Parse the textual grammar: terms joined by +/-, factors joined by *.

    A term is `coeff`, `coeff*mono`, or `mono`; `mono` is one or more
    `xI^E` factors (E omitted means 1); coefficients are integers or `a/b`
    fractions.  Whitespace is insignificant.  When nvars is omitted it is
    inferred from the largest variable index.
    """
    sc = _Scanner(text)
    terms: list[tuple[dict[int, int], Fraction]] = []
    max_index = -1

    sc.skip_ws()
    if not sc.peek():
        raise sc.error("empty polynomial")
    sign = _ONE
    if sc.peek() in "+-":
        if sc.advance() == "-":
            sign = -_ONE
        sc.skip_ws()

    while True:
        exps: dict[int, int] = {}
        coeff = sign
        saw_coeff = False
        saw_var = False
        first_factor = True
        while True:
            sc.skip_ws()
            ch = sc.peek()
            if ch.isdigit():
                if not first_factor:
                    raise sc.error("numeric coefficient must come first in a term")
                num = sc.read_int()
                den = 1
                if sc.peek() == "/":
                    sc.advance()
                    sc.skip_ws()
                    den = sc.read_int()
                    if den == 0:
                        raise sc.error("zero denominator")
                coeff = coeff * Fraction(num, den)
                saw_coeff = True
            elif ch == "x":
                sc.advance()
                index = sc.read_int()
                exp = 1
                if sc.peek() == "^":
                    sc.advance()
                    exp = sc.read_int()
                exps[index] = exps.get(index, 0) + exp
                max_index = max(max_index, index)
                saw_var = True
            else:
                raise sc.error("expected a coefficient or a variable")
            first_factor = False
            sc.skip_ws()
            if sc.peek() == "*":
                sc.advance()
                continue
            break
        if not (saw_coeff or saw_var):
            raise sc.error("empty term")
        terms.append((exps, coeff))

        sc.skip_ws()
        ch = sc.peek()
        if not ch:
            break
        if ch not in "+-":
            raise sc.error(f"unexpected character {ch!r}")
        sign = _ONE if sc.advance() == "+" else -_ONE
        sc.skip_ws()
        if not sc.peek():
            raise sc.error("dangling sign at end of input")

    width = max_index + 1 if nvars is None else nvars
    if width < 1:
        width = 1
    if max_index >= width:
        raise PolyParseError(
            f"variable x{max_index} exceeds the declared {width} variables", 1, 1
        )
    acc: dict[Monomial, Fraction] = {}
    for exps, coeff in terms:
        mono = tuple(exps.get(i, 0) for i in range(width))
        acc[mono] = acc.get(mono, _ZERO) + coeff
    return Poly(width, acc)
