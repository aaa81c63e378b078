"""Dense max-min-eigenvalue SDP solver."""

import numpy as np
import pytest

from hyperdet import SdpProblem, solve_maxeig
from hyperdet.sdp import INFEASIBLE, MAX_ITERATIONS, OPTIMAL


def diag_entry(m, i, j, value=1.0):
    a = np.zeros((m, m))
    if i == j:
        a[i, i] = value
    else:
        a[i, j] = value / 2
        a[j, i] = value / 2
    return a


def test_single_entry_forced():
    sol = solve_maxeig(SdpProblem(1, [(np.array([[1.0]]), 5.0)]))
    assert sol.status == OPTIMAL
    assert abs(sol.G[0, 0] - 5.0) <= 1e-7
    assert abs(sol.t - 5.0) <= 1e-6


def test_fully_determined_identity():
    cons = [(diag_entry(2, 0, 0), 1.0), (diag_entry(2, 1, 1), 1.0), (diag_entry(2, 0, 1), 0.0)]
    sol = solve_maxeig(SdpProblem(2, cons))
    assert sol.status == OPTIMAL
    assert np.max(np.abs(sol.G - np.eye(2))) <= 1e-7
    assert abs(sol.t - 1.0) <= 1e-6


def test_free_offdiagonal_maximized_at_zero():
    cons = [(diag_entry(2, 0, 0), 1.0), (diag_entry(2, 1, 1), 1.0)]
    sol = solve_maxeig(SdpProblem(2, cons))
    assert sol.status == OPTIMAL
    assert abs(sol.t - 1.0) <= 1e-6
    assert abs(sol.G[0, 1]) <= 1e-6


def test_optimal_solutions_satisfy_invariants():
    rng = np.random.default_rng(12)
    for _ in range(8):
        m = int(rng.integers(2, 16))
        r_mat = rng.standard_normal((m, m))
        gstar = r_mat.T @ r_mat + np.eye(m)
        cons = [(np.eye(m), float(np.trace(gstar)))]
        for _ in range(int(rng.integers(1, m + 1))):
            a = rng.standard_normal((m, m))
            a = 0.5 * (a + a.T)
            cons.append((a, float(np.sum(a * gstar))))
        sol = solve_maxeig(SdpProblem(m, cons))
        assert sol.status == OPTIMAL
        assert sol.residual <= 1e-8
        assert sol.t >= 1 - 1e-6
        assert np.linalg.eigvalsh(sol.G)[0] >= sol.t - 1e-8


def test_deterministic_iterates():
    cons = [(diag_entry(3, 0, 0), 2.0), (diag_entry(3, 1, 1), 3.0), (diag_entry(3, 2, 2), 4.0),
            (diag_entry(3, 0, 1), 1.0)]
    a = solve_maxeig(SdpProblem(3, cons))
    b = solve_maxeig(SdpProblem(3, cons))
    assert a.status == b.status == OPTIMAL
    assert np.array_equal(a.G, b.G)
    assert a.t == b.t
    assert a.iterations == b.iterations


def test_infeasible_diverges():
    # G_00 = 1 and G_00 = 2 cannot both hold.
    cons = [(diag_entry(2, 0, 0), 1.0), (diag_entry(2, 0, 0), 2.0)]
    sol = solve_maxeig(SdpProblem(2, cons), max_iter=100)
    assert sol.status in (INFEASIBLE, MAX_ITERATIONS)
    assert sol.status != OPTIMAL


def test_traceless_constraints_reported_unbounded():
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    sol = solve_maxeig(SdpProblem(2, [(a, 0.0)]))
    assert sol.status == MAX_ITERATIONS
    assert "unbounded" in sol.detail


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        SdpProblem(2, [])
    with pytest.raises(ValueError):
        SdpProblem(2, [(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)])
    with pytest.raises(ValueError):
        solve_maxeig(SdpProblem(1, [(np.array([[1.0]]), 1.0)]), tol=0.0)
