"""Exact rational linear algebra kernels."""

import random
from fractions import Fraction

import pytest

from hyperdet import invert_matrix
from hyperdet.errors import NotPD, SingularMatrix
from hyperdet.linalg import (
    bareiss_determinant,
    is_positive_definite,
    ldl_decompose,
    leading_principal_minors,
    mat_mul,
    solve_dense,
    solve_sparse_system,
)


def F(x, y=1):
    return Fraction(x, y)


def random_matrix(rng, rows, cols):
    return [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]


def naive_determinant(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = Fraction(0)
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        total += sign * mat[0][j] * naive_determinant(minor)
        sign = -sign
    return total


def test_bareiss_matches_cofactor_expansion():
    rng = random.Random(1)
    for _ in range(20):
        n = rng.randint(1, 5)
        mat = random_matrix(rng, n, n)
        assert bareiss_determinant(mat) == naive_determinant(mat)


def test_bareiss_zero_column():
    assert bareiss_determinant([[0, 1], [0, 2]]) == 0


def test_leading_principal_minors():
    mat = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
    assert leading_principal_minors(mat) == [F(2), F(3), F(4)]


def test_invert_matrix_random_roundtrip():
    rng = random.Random(2)
    done = 0
    while done < 10:
        n = rng.randint(1, 4)
        mat = random_matrix(rng, n, n)
        try:
            inv = invert_matrix(mat)
        except SingularMatrix:
            continue
        identity = [[Fraction(i == j) for j in range(n)] for i in range(n)]
        assert mat_mul(mat, inv) == identity
        done += 1


def test_solve_dense_matches_substitution():
    rng = random.Random(3)
    done = 0
    while done < 10:
        n = rng.randint(1, 5)
        mat = random_matrix(rng, n, n)
        if bareiss_determinant(mat) == 0:
            continue
        x_true = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
        b = [sum(mat[i][j] * x_true[j] for j in range(n)) for i in range(n)]
        assert solve_dense([row[:] for row in mat], b) == x_true
        done += 1


def test_sparse_solver_satisfies_equations():
    rng = random.Random(4)
    for _ in range(20):
        unknowns = rng.randint(2, 8)
        n_rows = rng.randint(1, 10)
        x_true = [F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(unknowns)]
        rows = []
        rhs = []
        for _ in range(n_rows):
            row = {
                j: F(rng.randint(-3, 3))
                for j in rng.sample(range(unknowns), rng.randint(1, unknowns))
            }
            row = {j: c for j, c in row.items() if c}
            rows.append(row)
            rhs.append(sum(c * x_true[j] for j, c in row.items()))
        result = solve_sparse_system(rows, rhs, unknowns)
        assert result.consistent
        for row, target in zip(rows, rhs):
            assert sum(c * result.values[j] for j, c in row.items()) == target


def test_sparse_solver_zeroes_free_unknowns():
    # One equation in three unknowns: x0 + x1 + x2 = 6; x1, x2 free -> 0.
    result = solve_sparse_system([{0: F(1), 1: F(1), 2: F(1)}], [F(6)], 3)
    assert result.consistent
    assert result.values == [F(6), F(0), F(0)]


def test_sparse_solver_detects_inconsistency():
    rows = [{0: F(1), 1: F(1)}, {0: F(2), 1: F(2)}]
    result = solve_sparse_system(rows, [F(1), F(3)], 2)
    assert not result.consistent
    assert result.values is None


def test_ldl_requires_symmetry_and_squareness():
    with pytest.raises(ValueError):
        ldl_decompose([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        ldl_decompose([[1, 0]])


def test_is_positive_definite():
    assert is_positive_definite([[2, 1], [1, 2]])
    assert not is_positive_definite([[1, 2], [2, 1]])
    assert not is_positive_definite([[0, 0], [0, 1]])


def test_ldl_rejects_indefinite():
    with pytest.raises(NotPD):
        ldl_decompose([[1, 2], [2, 1]])
