"""Sum-of-squares multipliers for the derivative Bézoutian.

Searches for an exponent ell and an exact rational identity

    (x1^2 + ... + xn^2)^ell * omega0  =  sum_i d_i * u_i (x) u_i

where omega0 is the Bézoutian of dh/dx0, the weights d_i are positive
rationals and the u_i are quotient elements of one degree k = d-1+ell whose
coefficient matrix has full rank (so they span the degree-k graded piece).
Each candidate level solves a Gram-matrix SDP, rounds the float solution to
rationals, projects exactly back onto the affine constraints and replays the
identity in exact arithmetic before anything is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
import numpy as np

from .errors import DegreeTooSmall, Exhausted, NotPD, RoundingFailed
from .linalg import RatMatrix, ldl_decompose, solve_sparse_system
from .poly import Monomial, Poly, grlex_key
from .quotient import BezoutianForm, QuotientContext, QuotientElement, bezoutian_of, is_bezoutian
from .sdp import OPTIMAL, SdpProblem, SdpSolution, solve_maxeig

DEFAULT_ELL_MAX = 4
DEFAULT_DENOMINATOR_BOUND = 2**32

_ZERO = Fraction(0)


@dataclass(frozen=True)
class GramIndex:
    """Basis label for the Gram matrix: x^gamma * x0bar^power.

    The monomial gamma is stored with a zero exponent in slot 0; for an
    index of degree k, power + |gamma| = k.
    """

    basis_power: int
    r_monomial: Monomial

    @property
    def degree(self) -> int:
        return self.basis_power + sum(self.r_monomial)


@dataclass
class SosDecomposition:
    """Exact certificate that multiplier * omega0 splits into weighted squares.

    Invariant (enforced on construction by the search): the identity
    multiplier * omega0 = sum_i weights[i] * vectors[i] (x) vectors[i] holds
    entrywise in exact arithmetic and the vectors span the degree-k piece.
    """

    ell: int
    k: int
    multiplier: Poly
    weights: list[Fraction]
    vectors: list[QuotientElement]
    gram: RatMatrix

    def to_json_dict(self) -> dict:
        return {
            "ell": self.ell,
            "k": self.k,
            "q": str(self.multiplier),
            "weights": [str(w) for w in self.weights],
            "vectors": [[str(c) for c in v.coeffs] for v in self.vectors],
            "gram": [[str(x) for x in row] for row in self.gram],
        }


def r_monomials_of_degree(nvars: int, degree: int) -> list[Monomial]:
    """All x0-free monomials of the given total degree, descending grlex."""
    n = nvars - 1
    out = []
    for combo in itertools.combinations_with_replacement(range(n), degree):
        exps = [0] * nvars
        for idx in combo:
            exps[idx + 1] += 1
        out.append(tuple(exps))
    out.sort(key=grlex_key, reverse=True)
    return out


def monomial_basis_Mk(ctx: QuotientContext, k: int) -> list[GramIndex]:
    """Monomial basis of the degree-k graded piece of the quotient module.

    Pairs (i, gamma) with 0 <= i < d and |gamma| = k - i, in canonical order
    (basis power ascending, monomials descending grlex).  Requires k >= d-1:
    below that the degree-k piece cannot generate everything above it.
    """
    if k < ctx.d - 1:
        raise DegreeTooSmall(f"need k >= d-1 = {ctx.d - 1}, got {k}")
    basis: list[GramIndex] = []
    for power in range(ctx.d):
        if k - power < 0:
            continue
        for mono in r_monomials_of_degree(ctx.nvars, k - power):
            basis.append(GramIndex(power, mono))
    return basis


def power_sum_multiplier(ctx: QuotientContext, ell: int) -> Poly:
    """(x1^2 + ... + xn^2)^ell as a polynomial in all n+1 variables."""
    total = Poly.zero(ctx.nvars)
    for i in range(1, ctx.nvars):
        total = total + Poly.variable(ctx.nvars, i) ** 2
    return total**ell


def gram_problem(
    ctx: QuotientContext, omega0: BezoutianForm, ell: int
) -> tuple[SdpProblem, list[GramIndex]]:
    """Assemble the Gram-matrix SDP for multiplier exponent ell.

    The Gram variable is indexed by monomial_basis_Mk(ctx, d-1+ell); there is
    one affine constraint per (form entry (i,j), monomial mu of its degree):
    the gram entries over all splits gamma + delta = mu must sum to the
    coefficient of x^mu in (multiplier * omega0)_{ij}.  Exact rational rows
    ride along for the rounding stage.
    """
    d = ctx.d
    k = d - 1 + ell
    basis = monomial_basis_Mk(ctx, k)
    index_of = {(g.basis_power, g.r_monomial): a for a, g in enumerate(basis)}
    m = len(basis)
    target = omega0.scaled(power_sum_multiplier(ctx, ell))

    monos_by_degree = {deg: r_monomials_of_degree(ctx.nvars, deg) for deg in range(2 * k + 1)}
    splits: dict[int, list[Monomial]] = monos_by_degree

    constraints: list[tuple[np.ndarray, float]] = []
    exact: list = []
    half = Fraction(1, 2)
    for i in range(d):
        for j in range(i, d):
            entry = target.entry(i, j)
            deg = 2 * k - i - j
            if deg < 0:
                continue
            for mu in splits[deg]:
                row: dict[tuple[int, int], Fraction] = {}
                for gamma in monos_by_degree[k - i]:
                    delta = tuple(a - b for a, b in zip(mu, gamma))
                    if any(e < 0 for e in delta):
                        continue
                    a = index_of[(i, gamma)]
                    b = index_of.get((j, delta))
                    if b is None:
                        continue
                    if a == b:
                        row[(a, a)] = row.get((a, a), _ZERO) + 1
                    else:
                        row[(a, b)] = row.get((a, b), _ZERO) + half
                        row[(b, a)] = row.get((b, a), _ZERO) + half
                rhs = entry.coeff(mu)
                mat = np.zeros((m, m))
                for (a, b), wgt in row.items():
                    mat[a, b] = float(wgt)
                constraints.append((mat, float(rhs)))
                exact.append((row, rhs))
    problem = SdpProblem(m, constraints, exact_constraints=exact)
    return problem, basis


def _exact_rows(problem: SdpProblem) -> list:
    """Rational constraint rows; floats are dyadic so lossless to recover."""
    if problem.exact_constraints is not None:
        return problem.exact_constraints
    rows = []
    for mat, rhs in problem.constraints:
        row = {
            (i, j): Fraction(mat[i, j])
            for i in range(problem.m)
            for j in range(problem.m)
            if mat[i, j] != 0.0
        }
        rows.append((row, Fraction(rhs)))
    return rows


def round_gram(
    problem: SdpProblem,
    sol: SdpSolution,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> RatMatrix:
    """Round the float Gram matrix to rationals satisfying every constraint.

    Continued-fraction rounding per entry, then exact orthogonal projection
    onto the affine constraint subspace (rational normal equations), then an
    exact PD check.  The solver's eigenvalue margin sol.t absorbs the
    projection error; without a positive margin rounding cannot succeed.
    """
    if sol.status != OPTIMAL:
        raise RoundingFailed(f"solver status {sol.status}, need Optimal")
    if sol.t <= 0:
        raise RoundingFailed("no positive-definiteness margin to absorb rounding")
    m = problem.m
    g_sym = 0.5 * (sol.G + sol.G.T)
    approx = [
        [Fraction(float(g_sym[i, j])).limit_denominator(denominator_bound) for j in range(m)]
        for i in range(m)
    ]
    for i in range(m):
        for j in range(i + 1, m):
            approx[j][i] = approx[i][j]

    rows = _exact_rows(problem)
    p = len(rows)
    defects = []
    for row, rhs in rows:
        defects.append(rhs - sum((w * approx[a][b] for (a, b), w in row.items()), _ZERO))
    if any(defects):
        # Normal equations N lam = defect with N_kl = <A_k, A_l>; sparse by
        # constraint support overlap (diagonal for Gram problems).
        support: dict[tuple[int, int], list[int]] = {}
        for idx, (row, _) in enumerate(rows):
            for pos in row:
                support.setdefault(pos, []).append(idx)
        normal_rows: list[dict[int, Fraction]] = [dict() for _ in range(p)]
        for pos, owners in support.items():
            for ka in owners:
                wa = rows[ka][0][pos]
                for kb in owners:
                    wb = rows[kb][0][pos]
                    normal_rows[ka][kb] = normal_rows[ka].get(kb, _ZERO) + wa * wb
        result = solve_sparse_system(normal_rows, defects, p)
        if not result.consistent:
            raise RoundingFailed("affine constraints are inconsistent")
        lam = result.values
        for idx, (row, _) in enumerate(rows):
            if lam[idx] == 0:
                continue
            for (a, b), w in row.items():
                approx[a][b] += lam[idx] * w
        for row, rhs in rows:
            if sum((w * approx[a][b] for (a, b), w in row.items()), _ZERO) != rhs:
                raise RoundingFailed("projection failed to satisfy a constraint exactly")

    try:
        ldl_decompose(approx)
    except NotPD as exc:
        raise RoundingFailed(f"projected rational matrix is not PD: {exc}") from exc
    return approx


def _vectors_from_ldl(
    ctx: QuotientContext, basis: list[GramIndex], rows: RatMatrix
) -> list[QuotientElement]:
    """Read generating vectors off the unit-triangular LDL rows."""
    vectors = []
    for row in rows:
        coeffs: list[dict[Monomial, Fraction]] = [dict() for _ in range(ctx.d)]
        for value, idx in zip(row, basis):
            if value:
                coeffs[idx.basis_power][idx.r_monomial] = value
        vectors.append(QuotientElement(tuple(Poly(ctx.nvars, c) for c in coeffs)))
    return vectors


def verify_sos_identity(
    ctx: QuotientContext,
    omega0: BezoutianForm,
    dec: SosDecomposition,
) -> bool:
    """Replay multiplier * omega0 = sum_i d_i u_i (x) u_i exactly."""
    target = omega0.scaled(dec.multiplier)
    d = ctx.d
    for a in range(d):
        for b in range(a, d):
            acc = Poly.zero(ctx.nvars)
            for w, u in zip(dec.weights, dec.vectors):
                acc = acc + u.coeffs[a] * u.coeffs[b] * w
            if acc != target.entry(a, b):
                return False
    return True


def find_sos_decomposition(
    ctx: QuotientContext,
    ell_max: int = DEFAULT_ELL_MAX,
    sdp_tol: float = 1e-8,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> SosDecomposition:
    """Escalate the multiplier exponent until an exact decomposition exists.

    For each ell = 0..ell_max: assemble the Gram SDP for the Bézoutian of
    dh/dx0, solve, round to rationals, factor LDL^T and re-verify the
    identity exactly.  Per-level failures escalate; Exhausted is raised only
    when every level fails.  A returned decomposition always replays exactly
    and its vectors always span (unit-triangular coefficient matrix).
    """
    omega0 = bezoutian_of(ctx, ctx.h.derivative(0))
    failures: list[str] = []
    # Coarse denominators are tried first: the positive-definiteness margin
    # usually absorbs the larger rounding error, and small denominators keep
    # the weights, the lift and the pencil determinant cheap downstream.
    bounds = sorted({min(2**8, denominator_bound), min(2**16, denominator_bound),
                     denominator_bound, denominator_bound**2})
    for ell in range(ell_max + 1):
        problem, basis = gram_problem(ctx, omega0, ell)
        sol = solve_maxeig(problem, tol=sdp_tol)
        gram: RatMatrix | None = None
        for bound in bounds:
            try:
                gram = round_gram(problem, sol, bound)
                break
            except RoundingFailed as exc:
                failures.append(f"ell={ell}: {exc}")
        if gram is None:
            continue
        try:
            weights, rows = ldl_decompose(gram)
        except NotPD as exc:  # pragma: no cover - round_gram already checked PD
            failures.append(f"ell={ell}: {exc}")
            continue
        vectors = _vectors_from_ldl(ctx, basis, rows)
        dec = SosDecomposition(
            ell=ell,
            k=ctx.d - 1 + ell,
            multiplier=power_sum_multiplier(ctx, ell),
            weights=weights,
            vectors=vectors,
            gram=gram,
        )
        if not verify_sos_identity(ctx, omega0, dec):
            failures.append(f"ell={ell}: exact replay failed")
            continue
        if not is_bezoutian(ctx, omega0.scaled(dec.multiplier).entries):
            failures.append(f"ell={ell}: scaled form lost the commutation identity")
            continue
        return dec
    detail = "; ".join(failures) if failures else "every level was infeasible"
    raise Exhausted(ell_max, f"no exact decomposition up to ell={ell_max} ({detail})")
