"""Exact dense linear algebra over the rationals.

Matrices are plain lists of lists of Fraction.  Everything here is pure and
deterministic: pivoting picks the first usable row, never the numerically
largest one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NotPD, SingularMatrix
from .poly import RationalLike, as_fraction

RatMatrix = list[list[Fraction]]

_ZERO = Fraction(0)


def rat_matrix(rows: Sequence[Sequence[RationalLike]]) -> RatMatrix:
    return [[as_fraction(x) for x in row] for row in rows]


def identity(n: int) -> RatMatrix:
    return [[Fraction(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> RatMatrix:
    return [[_ZERO] * cols for _ in range(rows)]


def transpose(m: RatMatrix) -> RatMatrix:
    return [list(col) for col in zip(*m)]


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), _ZERO) for col in bt] for row in a]


def mat_vec(a: RatMatrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), _ZERO) for row in a]


def is_symmetric(m: RatMatrix) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def bareiss_determinant(matrix: Sequence[Sequence[RationalLike]]) -> Fraction:
    """Fraction-free determinant by Bareiss elimination with row swaps."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = rat_matrix(matrix)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return _ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev
            m[i][k] = _ZERO
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def leading_principal_minors(matrix: Sequence[Sequence[RationalLike]]) -> list[Fraction]:
    """Determinants of the leading k x k blocks, k = 1..n."""
    m = rat_matrix(matrix)
    return [bareiss_determinant([row[: k + 1] for row in m[: k + 1]]) for k in range(len(m))]


def ldl_decompose(matrix: Sequence[Sequence[RationalLike]]) -> tuple[list[Fraction], RatMatrix]:
    """Exact factorization G = L^T * diag(d) * L with unit upper-triangular L.

    Row i of L is the i-th generating vector: entry 1 at position i and
    support only to the right.  Raises NotPD at the first pivot <= 0, which
    by Sylvester's criterion certifies the matrix is not positive definite.
    """
    g = rat_matrix(matrix)
    n = len(g)
    if any(len(row) != n for row in g):
        raise ValueError("matrix must be square")
    if not is_symmetric(g):
        raise ValueError("matrix must be symmetric")
    # Standard lower LDL^T; returned L is its transpose.
    lower = identity(n)
    d: list[Fraction] = []
    for j in range(n):
        pivot = g[j][j] - sum((lower[j][k] * lower[j][k] * d[k] for k in range(j)), _ZERO)
        if pivot <= 0:
            raise NotPD(f"pivot {pivot} at index {j} is not positive")
        d.append(pivot)
        for i in range(j + 1, n):
            val = g[i][j] - sum((lower[i][k] * lower[j][k] * d[k] for k in range(j)), _ZERO)
            lower[i][j] = val / pivot
    return d, transpose(lower)


def is_positive_definite(matrix: Sequence[Sequence[RationalLike]]) -> bool:
    try:
        ldl_decompose(matrix)
    except NotPD:
        return False
    return True


def solve_dense(a: RatMatrix, b: list[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise SingularMatrix("system matrix is singular")
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


class SparseSolveResult:
    """Outcome of a sparse rational solve: solution or inconsistency proof."""

    __slots__ = ("consistent", "values")

    def __init__(self, consistent: bool, values: list[Fraction] | None):
        self.consistent = consistent
        self.values = values


def solve_sparse_system(
    rows: Sequence[dict[int, Fraction]],
    rhs: Sequence[Fraction],
    num_unknowns: int,
) -> SparseSolveResult:
    """Gauss-Jordan elimination on sparse rational rows.

    Unknowns are eliminated in index order; free unknowns are fixed at zero,
    which makes the returned solution deterministic.  Returns an inconsistent
    result when some equation reduces to 0 = c with c != 0.
    """
    pivots: dict[int, tuple[dict[int, Fraction], Fraction]] = {}
    for raw_row, raw_val in zip(rows, rhs):
        row = dict(raw_row)
        val = raw_val
        # Reduce by existing pivots (iterate over a snapshot; row shrinks).
        for col in sorted(row):
            if col in pivots and row.get(col):
                coeff = row[col]
                prow, pval = pivots[col]
                for c2, v2 in prow.items():
                    nv = row.get(c2, _ZERO) - coeff * v2
                    if nv:
                        row[c2] = nv
                    else:
                        row.pop(c2, None)
                val -= coeff * pval
                row.pop(col, None)
        row = {c: v for c, v in row.items() if v}
        if not row:
            if val != 0:
                return SparseSolveResult(False, None)
            continue
        col = min(row)
        inv = 1 / row[col]
        row = {c: v * inv for c, v in row.items()}
        val *= inv
        # Jordan step: clear the new pivot column from all stored rows.
        for pcol, (prow, pval) in list(pivots.items()):
            if col in prow:
                f = prow[col]
                for c2, v2 in row.items():
                    nv = prow.get(c2, _ZERO) - f * v2
                    if nv:
                        prow[c2] = nv
                    else:
                        prow.pop(c2, None)
                pivots[pcol] = (prow, pval - f * val)
        pivots[col] = (row, val)
    values = [_ZERO] * num_unknowns
    for col, (row, val) in pivots.items():
        # After full reduction the pivot row couples only free unknowns,
        # which are all zero, so the pivot value is immediate.
        values[col] = val
    return SparseSolveResult(True, values)
