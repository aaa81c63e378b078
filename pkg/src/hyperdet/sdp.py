"""Dense semidefinite feasibility solver with a min-eigenvalue objective.

Solves  max t  s.t.  <A_k, G> = b_k,  G - t*I >= 0  (PSD order)
by an infeasible-start primal-dual path-following method on the splitting
X = G - t*I:

    max t   s.t.  <A_k, X> + t*tr(A_k) = b_k,  X >= 0,  t free.

Scaling is Nesterov-Todd (the scaled primal and dual variables coincide in
a diagonal matrix), search directions are Mehrotra predictor-corrector, and
all linear algebra is dense Cholesky / SVD on numpy arrays.  The solver is
deterministic: fixed initialization X = I, S = I, y = 0, t = 0 (so the
matrix variable starts at G = I) and no randomized pivoting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

DIVERGENCE_THRESHOLD = 1.0e8
DEFAULT_TOL = 1.0e-8
DEFAULT_MAX_ITER = 200
_STEP_FRACTION = 0.98

OPTIMAL = "Optimal"
INFEASIBLE = "Infeasible"
MAX_ITERATIONS = "MaxIterations"

# Exact constraint row: Frobenius-pairing weights by matrix position.
ExactConstraint = tuple[dict[tuple[int, int], Fraction], Fraction]


@dataclass
class SdpProblem:
    """Affine-constrained symmetric matrix feasibility data.

    Each constraint is a symmetric coefficient matrix A_k with scalar b_k,
    encoding <A_k, G> = b_k under the Frobenius pairing.  When the problem
    was assembled from exact rational data, `exact_constraints` carries the
    same rows losslessly for the rounding stage; the float matrices are what
    the solver consumes.
    """

    m: int
    constraints: list[tuple[np.ndarray, float]]
    exact_constraints: Optional[list[ExactConstraint]] = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("matrix size must be at least 1")
        if not self.constraints:
            raise ValueError("constraint list must be nonempty")
        checked = []
        for a, b in self.constraints:
            arr = np.asarray(a, dtype=float)
            if arr.shape != (self.m, self.m):
                raise ValueError(f"constraint matrix has shape {arr.shape}, expected {(self.m, self.m)}")
            if not np.allclose(arr, arr.T, atol=0.0):
                raise ValueError("constraint matrices must be exactly symmetric")
            checked.append((arr, float(b)))
        self.constraints = checked


@dataclass
class SdpSolution:
    G: np.ndarray
    t: float
    residual: float
    status: str
    iterations: int = 0
    detail: str = ""


def _max_violation(a_flat: np.ndarray, b: np.ndarray, g: np.ndarray) -> float:
    return float(np.max(np.abs(a_flat @ g.ravel() - b))) if len(b) else 0.0


def _max_step(mat: np.ndarray, delta: np.ndarray) -> float:
    """Largest alpha with mat + alpha*delta still PSD (mat assumed PD)."""
    chol = np.linalg.cholesky(mat)
    inner = np.linalg.solve(chol, np.linalg.solve(chol, delta).T).T
    lam_min = float(np.linalg.eigvalsh(0.5 * (inner + inner.T))[0])
    if lam_min >= -1e-14:
        return math.inf
    return -1.0 / lam_min


def _apply_step(current: np.ndarray, delta: np.ndarray, alpha: float) -> tuple[np.ndarray, float]:
    """Step with Cholesky-guarded backtracking so the iterate stays PD."""
    for _ in range(30):
        candidate = current + alpha * delta
        candidate = 0.5 * (candidate + candidate.T)
        try:
            np.linalg.cholesky(candidate)
            return candidate, alpha
        except np.linalg.LinAlgError:
            alpha *= 0.8
    return current.copy(), 0.0


def solve_maxeig(problem: SdpProblem, tol: float = DEFAULT_TOL,
                 max_iter: int = DEFAULT_MAX_ITER) -> SdpSolution:
    """Maximize the minimum eigenvalue of G subject to <A_k, G> = b_k.

    Returns the best iterate found.  Status Optimal guarantees the maximum
    constraint violation is at most tol and lambda_min(G) >= t - tol.
    Infeasibility is reported heuristically on dual objective divergence;
    callers should treat it as "escalate", not as a certificate.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = problem.m
    p = len(problem.constraints)
    a_stack = np.stack([a for a, _ in problem.constraints])
    a_flat = a_stack.reshape(p, m * m)
    b_raw = np.array([bk for _, bk in problem.constraints])
    # Power-of-two scaling of the right-hand side keeps the iteration well
    # conditioned for large-coefficient problems and is exactly undone on
    # the returned solution (convergence is always measured unscaled).
    b_mag = float(np.max(np.abs(b_raw)))
    beta = 2.0 ** math.ceil(math.log2(b_mag)) if b_mag > 1.0 else 1.0
    b = b_raw / beta
    tau = np.einsum("kii->k", a_stack)
    a_scale = 1.0 + float(np.max(np.abs(a_stack)))

    if float(np.max(np.abs(tau))) == 0.0:
        return SdpSolution(np.eye(m), math.inf, _max_violation(a_flat, b, np.eye(m)),
                           MAX_ITERATIONS, 0, "objective unbounded: all constraints are traceless")

    def adjoint(y: np.ndarray) -> np.ndarray:
        return np.tensordot(y, a_stack, axes=1)

    # Gram matrix of the constraint operator, used to polish primal
    # feasibility: the projection X += A*(lam), A A* lam = rp restores
    # A(X) + tau*t = b to solver precision without moving t.
    gram_ops = a_flat @ a_flat.T
    try:
        gram_chol = np.linalg.cholesky(gram_ops + 1e-13 * np.trace(gram_ops) / p * np.eye(p))

        def gram_solve(rhs: np.ndarray) -> np.ndarray:
            return np.linalg.solve(gram_chol.T, np.linalg.solve(gram_chol, rhs))
    except np.linalg.LinAlgError:
        def gram_solve(rhs: np.ndarray) -> np.ndarray:
            return np.linalg.lstsq(gram_ops, rhs, rcond=None)[0]

    def polish(x_mat: np.ndarray, t_val: float) -> np.ndarray:
        rp_cur = b - a_flat @ x_mat.ravel() - tau * t_val
        for _ in range(2):
            lam = gram_solve(rp_cur)
            x_mat = x_mat + adjoint(lam)
            x_mat = 0.5 * (x_mat + x_mat.T)
            rp_cur = b - a_flat @ x_mat.ravel() - tau * t_val
        return x_mat

    x = np.eye(m)
    s = np.eye(m)
    y = np.zeros(p)
    t = 0.0

    best = SdpSolution(beta * np.eye(m), 0.0, _max_violation(a_flat, b_raw, beta * np.eye(m)),
                       MAX_ITERATIONS, 0)
    best_merit = math.inf

    for iteration in range(max_iter):
        g_unscaled = beta * (x + t * np.eye(m))
        t_unscaled = beta * t
        pinf = _max_violation(a_flat, b_raw, g_unscaled)
        dual_defect = s + adjoint(y)
        dinf = float(np.max(np.abs(dual_defect))) / a_scale
        rf = -1.0 - float(tau @ y)
        mu = float(np.sum(x * s)) / m
        gap = beta * mu

        merit = max(pinf, dinf, abs(rf), gap)
        if merit < best_merit:
            best_merit = merit
            best = SdpSolution(g_unscaled.copy(), t_unscaled, pinf, MAX_ITERATIONS, iteration)

        if dinf <= tol and abs(rf) <= tol and gap <= tol * max(1.0, abs(t_unscaled)):
            if pinf <= tol:
                return SdpSolution(g_unscaled, t_unscaled, pinf, OPTIMAL, iteration)
            # Gap and dual feasibility are converged; restore primal
            # feasibility by exact-projection polish and accept if the
            # eigenvalue bound survives.
            g_pol = beta * (polish(x, t) + t * np.eye(m))
            pinf_pol = _max_violation(a_flat, b_raw, g_pol)
            lam_min = float(np.linalg.eigvalsh(g_pol)[0])
            if pinf_pol <= tol and lam_min >= t_unscaled - tol:
                return SdpSolution(g_pol, t_unscaled, pinf_pol, OPTIMAL, iteration)

        dual_obj = beta * float(b @ y)
        if dual_obj > DIVERGENCE_THRESHOLD or t_unscaled < -DIVERGENCE_THRESHOLD:
            return SdpSolution(g_unscaled, t_unscaled, pinf, INFEASIBLE, iteration,
                               "dual objective diverged; no PSD solution with the requested margin")
        if t_unscaled > DIVERGENCE_THRESHOLD:
            return SdpSolution(g_unscaled, t_unscaled, pinf, MAX_ITERATIONS, iteration,
                               "objective appears unbounded above")

        # Nesterov-Todd scaling point: scaled X and S coincide in diag(sigma).
        lx = np.linalg.cholesky(x)
        ls = np.linalg.cholesky(s)
        u_svd, sigma, vt_svd = np.linalg.svd(ls.T @ lx)
        sigma = np.maximum(sigma, 1e-300)
        g_sc = lx @ vt_svd.T @ np.diag(sigma**-0.5)
        g_inv = np.diag(sigma**0.5) @ vt_svd @ np.linalg.inv(lx)
        w = g_sc @ g_sc.T

        wa = np.matmul(np.matmul(w, a_stack), w)
        schur = a_flat @ wa.reshape(p, m * m).T
        schur = 0.5 * (schur + schur.T)
        rp = b - a_flat @ x.ravel() - tau * t
        wdw = w @ dual_defect @ w

        try:
            chol_schur = np.linalg.cholesky(schur + 1e-14 * np.trace(schur) / p * np.eye(p))

            def schur_solve(rhs: np.ndarray) -> np.ndarray:
                z = np.linalg.solve(chol_schur.T, np.linalg.solve(chol_schur, rhs))
                # One round of iterative refinement; the Schur matrix gets
                # ill-conditioned as the barrier parameter shrinks.
                correction = rhs - schur @ z
                z = z + np.linalg.solve(chol_schur.T, np.linalg.solve(chol_schur, correction))
                return z
        except np.linalg.LinAlgError:
            def schur_solve(rhs: np.ndarray) -> np.ndarray:
                return np.linalg.lstsq(schur, rhs, rcond=None)[0]

        z_tau = schur_solve(tau)
        tau_mz = float(tau @ z_tau)

        def directions(u_hat: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
            core = g_sc @ u_hat @ g_sc.T
            rhs = rp - a_flat @ core.ravel() - a_flat @ wdw.ravel()
            z = schur_solve(rhs)
            dt = (float(tau @ z) - rf) / tau_mz
            dy = z - dt * z_tau
            ds = -dual_defect - adjoint(dy)
            dx = core + wdw + w @ adjoint(dy) @ w
            return 0.5 * (dx + dx.T), dy, 0.5 * (ds + ds.T), dt

        # Predictor (affine scaling): target complementarity zero.
        dx_a, dy_a, ds_a, dt_a = directions(np.diag(-sigma))
        alpha_p = min(1.0, _max_step(x, dx_a))
        alpha_d = min(1.0, _max_step(s, ds_a))
        mu_aff = float(np.sum((x + alpha_p * dx_a) * (s + alpha_d * ds_a))) / m
        center = min(1.0, max(0.0, (mu_aff / mu) ** 3)) if mu > 0 else 0.0

        # Corrector with Mehrotra second-order term in the scaled space.
        dxh = g_inv @ dx_a @ g_inv.T
        dsh = g_sc.T @ ds_a @ g_sc
        cross = 0.5 * (dxh @ dsh + dsh @ dxh)
        rc = center * mu * np.eye(m) - np.diag(sigma**2) - cross
        denom = sigma[:, None] + sigma[None, :]
        u_hat = 2.0 * rc / denom

        dx, dy, ds, dt = directions(u_hat)
        alpha_p = min(1.0, _STEP_FRACTION * _max_step(x, dx))
        alpha_d = min(1.0, _STEP_FRACTION * _max_step(s, ds))
        x, alpha_p = _apply_step(x, dx, alpha_p)
        s, alpha_d = _apply_step(s, ds, alpha_d)
        y = y + alpha_d * dy
        t = t + alpha_p * dt
        if alpha_p == 0.0 and alpha_d == 0.0:
            break

    best.detail = best.detail or "no convergence within the iteration budget"
    return best
