"""The quotient module S/(h) and Bézoutian forms on it.

For a homogeneous h of degree d with nonzero x0^d coefficient, the quotient
of the full polynomial ring by (h) is free of rank d over the subring in
x1..xn, with basis 1, x0bar, ..., x0bar^{d-1}.  This module provides exact
reduction to that basis, the companion-style multiplication-by-x0 matrix,
classical Bézout matrices of univariate pairs, and the d x d polynomial
matrices ("Bézoutian forms") obtained from difference quotients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeViolation, DimensionMismatch
from .linalg import RatMatrix
from .poly import Poly, RationalLike, UniPoly, as_point

_ZERO = Fraction(0)


class QuotientContext:
    """Degree-d quotient of the polynomial ring by a single homogeneous h.

    The stored h is rescaled to be monic in x0 (the original leading
    coefficient is kept in `scale`), so reduction against h is companion
    style and exact.
    """

    __slots__ = ("h", "d", "n", "scale", "h_coeffs")

    def __init__(self, h: Poly):
        if not h.is_homogeneous:
            raise ValueError("quotient context needs a homogeneous polynomial")
        if h.is_zero:
            raise ValueError("quotient context needs a nonzero polynomial")
        if h.nvars < 2:
            raise ValueError("need at least one variable besides x0")
        d = h.degree
        lead = h.coeff((d,) + (0,) * (h.nvars - 1))
        if lead == 0:
            raise ValueError("polynomial must not vanish at (1,0,...,0)")
        monic = h * (1 / lead)
        coeffs = monic.x0_coefficients()
        coeffs += [Poly.zero(h.nvars)] * (d + 1 - len(coeffs))
        object.__setattr__(self, "h", monic)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "n", h.nvars - 1)
        object.__setattr__(self, "scale", lead)
        object.__setattr__(self, "h_coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("QuotientContext is immutable")

    @property
    def nvars(self) -> int:
        return self.n + 1

    def zero_r(self) -> Poly:
        return Poly.zero(self.nvars)

    def __repr__(self) -> str:
        return f"QuotientContext(h={self.h!s}, d={self.d}, n={self.n})"


@dataclass(frozen=True)
class QuotientElement:
    """Element of the quotient: coefficient i multiplies x0bar^i.

    Every coefficient is free of x0.  For an element homogeneous of degree k
    the i-th coefficient is homogeneous of degree k - i (or zero).
    """

    coeffs: tuple[Poly, ...]

    def __post_init__(self):
        for c in self.coeffs:
            if not c.uses_only_r_variables():
                raise ValueError("quotient coefficients must not involve x0")

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def is_homogeneous_of_degree(self, k: int) -> bool:
        return all(c.is_homogeneous_of_degree(k - i) for i, c in enumerate(self.coeffs))

    def homogeneous_degree(self) -> int:
        """Degree of a homogeneous element (coefficient degree + basis power)."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                return c.degree + i
        return 0

    def to_poly(self, ctx: QuotientContext) -> Poly:
        x0 = Poly.variable(ctx.nvars, 0)
        total = Poly.zero(ctx.nvars)
        power = Poly.one(ctx.nvars)
        for c in self.coeffs:
            total = total + c * power
            power = power * x0
        return total

    def mult_by_x0(self, ctx: QuotientContext) -> "QuotientElement":
        """Multiply by x0bar: shift the basis powers and reduce the overflow."""
        d = ctx.d
        top = self.coeffs[d - 1]
        out = [Poly.zero(ctx.nvars) for _ in range(d)]
        for i in range(d - 1):
            out[i + 1] = self.coeffs[i]
        if not top.is_zero:
            for j in range(d):
                out[j] = out[j] - ctx.h_coeffs[j] * top
        return QuotientElement(tuple(out))

    def __add__(self, other: "QuotientElement") -> "QuotientElement":
        return QuotientElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scaled(self, factor: RationalLike) -> "QuotientElement":
        return QuotientElement(tuple(c * factor for c in self.coeffs))


def reduce_mod_h(ctx: QuotientContext, p: Poly) -> QuotientElement:
    """Unique representative with x0-degree below d."""
    if p.nvars != ctx.nvars:
        raise DimensionMismatch("polynomial and context variable counts differ")
    d = ctx.d
    parts = p.x0_coefficients()
    # Rewrite x0^k for k >= d via x0^d = -sum_{j<d} c_j x0^j, top down.
    while len(parts) > d:
        top = parts.pop()
        k = len(parts)  # top was the coefficient of x0^k
        if top.is_zero:
            continue
        for j in range(d):
            parts[k - d + j] = parts[k - d + j] - ctx.h_coeffs[j] * top
    parts += [Poly.zero(ctx.nvars)] * (d - len(parts))
    return QuotientElement(tuple(parts))


def mult_x0_matrix(ctx: QuotientContext) -> list[list[Poly]]:
    """Matrix of multiplication by x0bar in the basis 1, ..., x0bar^{d-1}.

    Companion style: ones on the subdiagonal, last column from the negated
    lower coefficients of h.
    """
    d = ctx.d
    zero = ctx.zero_r()
    mat = [[zero for _ in range(d)] for _ in range(d)]
    for j in range(d - 1):
        mat[j + 1][j] = Poly.one(ctx.nvars)
    for i in range(d):
        mat[i][d - 1] = -ctx.h_coeffs[i]
    return mat


def bezout_matrix_univariate(f: UniPoly, g: UniPoly) -> RatMatrix:
    """Symmetric d x d matrix from (f(s)g(t) - f(t)g(s)) / (s - t).

    Entry (i, j) (0-indexed) is the coefficient of s^i t^j in the quotient.
    Requires deg g < deg f = d >= 1; g may be zero.
    """
    d = f.degree
    if d < 1:
        raise DegreeViolation("f must have degree at least 1")
    if g.degree >= d:
        raise DegreeViolation("g must have degree strictly below deg f")
    fc = list(f.coeffs)
    gc = list(g.coeffs) + [_ZERO] * (d + 1 - len(g.coeffs))
    # Numerator coefficients n[i][j] of s^i t^j.
    num = [[fc[i] * gc[j] - fc[j] * gc[i] for j in range(d + 1)] for i in range(d + 1)]
    return _divide_by_s_minus_t_scalar(num, d)


def _divide_by_s_minus_t_scalar(num: list[list[Fraction]], d: int) -> RatMatrix:
    """Synthetic division of an antisymmetric table by (s - t)."""
    quot = [[_ZERO] * (d + 1) for _ in range(d)]
    carry = num[d]
    for i in range(d - 1, -1, -1):
        quot[i] = list(carry)
        carry = [num[i][j] + (quot[i][j - 1] if j else _ZERO) for j in range(d + 1)]
    assert all(c == 0 for c in carry), "numerator was not divisible by s - t"
    assert all(quot[i][d] == 0 for i in range(d)), "quotient degree overflow in t"
    return [[quot[i][j] for j in range(d)] for i in range(d)]


@dataclass(frozen=True)
class BezoutianForm:
    """Symmetric d x d matrix of x0-free polynomials.

    For a form of total degree D the (i, j) entry is homogeneous of degree
    D - i - j (or zero).  Forms produced here commute with the
    multiplication-by-x0 matrix: F B = B F^T.
    """

    entries: tuple[tuple[Poly, ...], ...]
    total_degree: int

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def scaled(self, p: Poly) -> "BezoutianForm":
        deg = p.degree
        return BezoutianForm(
            tuple(tuple(p * e for e in row) for row in self.entries),
            self.total_degree + deg,
        )

    def to_json_rows(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.entries]


def bezoutian_of(ctx: QuotientContext, p: Poly) -> BezoutianForm:
    """Bézoutian form generated by p: reduce (h(s)p(t) - h(t)p(s)) / (s - t).

    p is reduced modulo h first; the division then lands directly in the
    span of s^i t^j with i, j < d, so no bidegree reduction is needed.
    """
    if p.nvars != ctx.nvars:
        raise DimensionMismatch("polynomial and context variable counts differ")
    if not p.is_homogeneous:
        raise ValueError("generator must be homogeneous")
    d = ctx.d
    p_red = reduce_mod_h(ctx, p)
    zero = ctx.zero_r()
    pc = list(p_red.coeffs) + [zero]
    hc = list(ctx.h_coeffs)
    # Numerator table N[i][j] = h_i p_j - h_j p_i over the coefficient ring.
    num = [[hc[i] * pc[j] - hc[j] * pc[i] for j in range(d + 1)] for i in range(d + 1)]
    quot = [[zero] * (d + 1) for _ in range(d)]
    carry = num[d]
    for i in range(d - 1, -1, -1):
        quot[i] = list(carry)
        carry = [num[i][j] + (quot[i][j - 1] if j else zero) for j in range(d + 1)]
    assert all(c.is_zero for c in carry), "difference quotient was not exact"
    assert all(quot[i][d].is_zero for i in range(d)), "unexpected t-degree overflow"
    entries = tuple(tuple(quot[i][j] for j in range(d)) for i in range(d))
    return BezoutianForm(entries, d - 1 + p_red.homogeneous_degree())


def delta_bezoutian(ctx: QuotientContext) -> BezoutianForm:
    """The distinguished Bézoutian from (h(s) - h(t)) / (s - t)."""
    return bezoutian_of(ctx, Poly.one(ctx.nvars))


def is_bezoutian(ctx: QuotientContext, entries: Sequence[Sequence[Poly]]) -> bool:
    """True iff the matrix is symmetric and F B = B F^T for the x0 matrix."""
    d = ctx.d
    if len(entries) != d or any(len(row) != d for row in entries):
        return False
    for i in range(d):
        for j in range(i + 1, d):
            if entries[i][j] != entries[j][i]:
                return False
    f = mult_x0_matrix(ctx)
    for i in range(d):
        for j in range(d):
            lhs = Poly.zero(ctx.nvars)
            rhs = Poly.zero(ctx.nvars)
            for k in range(d):
                lhs = lhs + f[i][k] * entries[k][j]
                rhs = rhs + entries[i][k] * f[j][k]
            if lhs != rhs:
                return False
    return True


def evaluate_form(form: BezoutianForm, v: Sequence[RationalLike]) -> RatMatrix:
    """Entrywise evaluation at a point of the coefficient ring (length n)."""
    sample = form.entries[0][0]
    point = as_point(v)
    if len(point) != sample.nvars - 1:
        raise DimensionMismatch("evaluation point must have one entry per x1..xn")
    full = (_ZERO,) + point
    return [[e.evaluate(full) for e in row] for row in form.entries]
