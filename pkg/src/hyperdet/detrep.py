"""Build and verify definite determinantal representations of q'*h.

From a weighted sum-of-squares decomposition of the derivative Bézoutian the
lift stage solves, exactly over the rationals, for matrices G_1..G_n of the
multiplication-by-x0 action on the generators, constrained to be symmetric
under the weight matrix D.  The pencil x0*I - sum_i x_i G_i then has
determinant cofactor * h_monic with the pencil at the normalized direction
equal to the identity, which is the definiteness certificate.  Everything in
the certificate replays in exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    CertifyError,
    DirectionVanishes,
    HyperdetError,
    NoSymmetricLift,
    NotDivisible,
    SingularMatrix,
)
from .hyperbolicity import (
    DEFAULT_NUM_SAMPLES,
    NOT_HYPERBOLIC,
    check_hyperbolic_sampled,
    pd_witness_check,
)
from .linalg import RatMatrix, bareiss_determinant, rat_matrix, solve_dense, solve_sparse_system
from .poly import (
    Poly,
    RationalLike,
    apply_linear,
    as_fraction,
    as_point,
    exact_divide,
    invert_matrix,
    normalize_direction,
    parse_poly,
)
from .quotient import QuotientContext, QuotientElement
from .sos import (
    DEFAULT_DENOMINATOR_BOUND,
    DEFAULT_ELL_MAX,
    SosDecomposition,
    find_sos_decomposition,
    monomial_basis_Mk,
    r_monomials_of_degree,
)

SCHEMA = "hyperdet/1"
BAREISS_SIZE_LIMIT = 8

_ZERO = Fraction(0)


@dataclass
class CertifyOptions:
    lmax: int = DEFAULT_ELL_MAX
    sdp_tol: float = 1e-8
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND
    num_samples: int = DEFAULT_NUM_SAMPLES
    seed: int = 0
    include_float_pencil: bool = True


@dataclass
class DetRepCertificate:
    """Exact pencil data certifying det(x0*I - sum x_i G_i) = cofactor * h_monic.

    All identities are stated in the normalized coordinates y = T*x, where
    h_monic is h after the coordinate change and monic rescaling.  D is the
    positive diagonal weight matrix; D*G_i is symmetric for every i, so the
    float view A_i = D^{1/2} G_i D^{-1/2} is a genuine symmetric pencil with
    value I at the normalized direction.
    """

    h: Poly
    e: tuple[Fraction, ...]
    transform: RatMatrix
    size: int
    weights: list[Fraction]
    pencil: list[RatMatrix]
    cofactor: Poly
    multiplier: Poly
    float_pencil: Optional[list[list[list[float]]]] = None

    def to_json_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "h": str(self.h),
            "e": [str(c) for c in self.e],
            "T": [[str(x) for x in row] for row in self.transform],
            "N": self.size,
            "D": [str(w) for w in self.weights],
            "G": [[[str(x) for x in row] for row in g] for g in self.pencil],
            "cofactor": str(self.cofactor),
            "q_multiplier": str(self.multiplier),
        }
        if self.float_pencil is not None:
            out["float_pencil"] = self.float_pencil
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json_dict(cls, data: dict) -> "DetRepCertificate":
        nvars = len(data["e"])
        return cls(
            h=parse_poly(data["h"], nvars),
            e=as_point(data["e"]),
            transform=rat_matrix(data["T"]),
            size=int(data["N"]),
            weights=[as_fraction(w) for w in data["D"]],
            pencil=[rat_matrix(g) for g in data["G"]],
            cofactor=parse_poly(data["cofactor"], nvars),
            multiplier=parse_poly(data["q_multiplier"], nvars),
            float_pencil=data.get("float_pencil"),
        )

    @classmethod
    def from_json(cls, text: str) -> "DetRepCertificate":
        return cls.from_json_dict(json.loads(text))


def solve_symmetric_lift(
    ctx: QuotientContext, dec: SosDecomposition
) -> tuple[list[Fraction], list[RatMatrix]]:
    """Solve for the weighted-symmetric matrices of the x0 action.

    The solve runs in the intertwining convention x0bar * u_j =
    sum_i G(x)_{ij} u_i (written out over the degree-(k+1) monomial basis)
    with the weighted self-adjointness G_s * D = D * G_s^T, which is the
    variant the weighted-square decomposition guarantees solvable; the
    symmetry is imposed by substituting the lower triangle in terms of the
    upper one.  The returned matrices are the transposes, so they satisfy
    the certificate convention D * G_s = G_s^T * D with the same pencil
    determinant and the same value at the direction.

    Any solution is valid; free unknowns are set to zero by the deterministic
    elimination.  Raises NoSymmetricLift when the system is inconsistent,
    which means the decomposition's vectors do not span the graded piece.
    """
    m = len(dec.vectors)
    n = ctx.n
    k = dec.k
    weights = dec.weights
    basis_up = monomial_basis_Mk(ctx, k + 1)
    up_index = {(g.basis_power, g.r_monomial): r for r, g in enumerate(basis_up)}

    def coords_up(elem: QuotientElement) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for power, poly in enumerate(elem.coeffs):
            for mono, coeff in poly.terms():
                out[up_index[(power, mono)]] = coeff
        return out

    # x_s * u_i lives in the degree-(k+1) piece without reduction.
    shifted: list[list[dict[int, Fraction]]] = []
    for s in range(1, n + 1):
        row = []
        for u in dec.vectors:
            out: dict[int, Fraction] = {}
            for power, poly in enumerate(u.coeffs):
                for mono, coeff in poly.terms():
                    bumped = tuple(e + (1 if idx == s else 0) for idx, e in enumerate(mono))
                    pos = up_index[(power, bumped)]
                    out[pos] = out.get(pos, _ZERO) + coeff
            row.append(out)
        shifted.append(row)

    targets = [coords_up(u.mult_by_x0(ctx)) for u in dec.vectors]

    # Unknown order: (s, a, b) with a <= b, flattened.
    per_s = m * (m + 1) // 2

    def unknown_id(s: int, a: int, b: int) -> tuple[int, Fraction]:
        """Map (G_s)_{ab} to its representative unknown and scale factor.

        G_s * D symmetric means G_ab * d_b = G_ba * d_a, so the lower
        triangle is d_a/d_b times the mirrored upper-triangle unknown.
        """
        if a <= b:
            return s * per_s + (a * (2 * m - a - 1)) // 2 + b, Fraction(1)
        rep = s * per_s + (b * (2 * m - b - 1)) // 2 + a
        return rep, weights[a] / weights[b]

    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    for j in range(m):
        per_row: list[dict[int, Fraction]] = [dict() for _ in range(len(basis_up))]
        for s in range(n):
            for i in range(m):
                uid, factor = unknown_id(s, i, j)
                for pos, coeff in shifted[s][i].items():
                    per_row[pos][uid] = per_row[pos].get(uid, _ZERO) + factor * coeff
        target = targets[j]
        for pos in range(len(basis_up)):
            if per_row[pos] or pos in target:
                rows.append({u: c for u, c in per_row[pos].items() if c})
                rhs.append(target.get(pos, _ZERO))

    result = solve_sparse_system(rows, rhs, n * per_s)
    if not result.consistent:
        raise NoSymmetricLift(
            "no weighted-symmetric solution: the decomposition vectors do not span"
        )
    values = result.values
    pencil: list[RatMatrix] = []
    for s in range(n):
        g = [[_ZERO] * m for _ in range(m)]
        for a in range(m):
            for b in range(a, m):
                uid, _ = unknown_id(s, a, b)
                val = values[uid]
                # Store the transpose: g[row][col] = (G_s)_{col,row}.
                g[b][a] = val
                g[a][b] = val * weights[b] / weights[a]
        pencil.append(g)
    return list(weights), pencil


def _poly_matrix_from_pencil(pencil: Sequence[RatMatrix]) -> list[list[Poly]]:
    n = len(pencil)
    size = len(pencil[0])
    nvars = n + 1
    mat: list[list[Poly]] = []
    for a in range(size):
        row = []
        for b in range(size):
            terms: dict[tuple[int, ...], Fraction] = {}
            if a == b:
                terms[(1,) + (0,) * n] = Fraction(1)
            for s in range(n):
                val = pencil[s][a][b]
                if val:
                    mono = tuple(1 if idx == s + 1 else 0 for idx in range(nvars))
                    terms[mono] = terms.get(mono, _ZERO) - val
            row.append(Poly(nvars, terms))
        mat.append(row)
    return mat


def _bareiss_poly_determinant(mat: list[list[Poly]]) -> Poly:
    """Fraction-free elimination; every division is exact by construction."""
    size = len(mat)
    nvars = mat[0][0].nvars
    work = [row[:] for row in mat]
    sign = 1
    prev = Poly.one(nvars)
    for k in range(size - 1):
        if work[k][k].is_zero:
            swap = next((r for r in range(k + 1, size) if not work[r][k].is_zero), None)
            if swap is None:
                return Poly.zero(nvars)
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = work[k][k] * work[i][j] - work[i][k] * work[k][j]
                work[i][j] = exact_divide(num, prev)
            work[i][k] = Poly.zero(nvars)
        prev = work[k][k]
    det = work[size - 1][size - 1]
    return det if sign == 1 else -det


def _charpoly_by_scalar_samples(pencil: Sequence[RatMatrix], w: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of det(x0*I - A(w)) from N+1 scalar determinants.

    Evaluates at x0 = 0..N and Lagrange-interpolates; index p of the result
    multiplies x0^p.
    """
    n = len(pencil)
    size = len(pencil[0])
    a = [[sum((w[s] * pencil[s][i][j] for s in range(n)), _ZERO) for j in range(size)]
         for i in range(size)]
    samples = []
    for lam in range(size + 1):
        shifted = [[(Fraction(lam) if i == j else _ZERO) - a[i][j] for j in range(size)]
                   for i in range(size)]
        samples.append(bareiss_determinant(shifted))
    coeffs = [_ZERO] * (size + 1)
    for idx in range(size + 1):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for other in range(size + 1):
            if other == idx:
                continue
            basis = _poly1_mul(basis, [Fraction(-other), Fraction(1)])
            denom *= Fraction(idx - other)
        scale = samples[idx] / denom
        for pos, c in enumerate(basis):
            coeffs[pos] += scale * c
    return coeffs


def _poly1_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _interpolation_poly_determinant(pencil: Sequence[RatMatrix]) -> Poly:
    """Evaluate-and-interpolate determinant for larger pencils.

    The determinant is the characteristic polynomial of A(x) = sum x_s G_s
    in x0, so the x0^{N-j} coefficient is homogeneous of degree j in the
    remaining variables.  Each sample direction w yields the full
    characteristic polynomial from N+1 scalar determinants along the x0
    line; the degree-j coefficient polynomials are then solved exactly from
    a simplex grid of directions.
    """
    n = len(pencil)
    size = len(pencil[0])
    nvars = n + 1
    cache: dict[tuple[Fraction, ...], list[Fraction]] = {}
    total: dict[tuple[int, ...], Fraction] = {(size,) + (0,) * n: Fraction(1)}

    for j in range(1, size + 1):
        monos = r_monomials_of_degree(nvars, j)
        if n == 1:
            points = [(Fraction(1),)]
        else:
            # Dehomogenized principal lattice {(a_1..a_{n-1}, 1): sum a_i <= j},
            # unisolvent for total degree j.
            points = [
                tuple(Fraction(c) for c in combo) + (Fraction(1),)
                for combo in itertools.product(range(j + 1), repeat=n - 1)
                if sum(combo) <= j
            ]
        if len(points) != len(monos):
            raise HyperdetError("interpolation grid does not match the monomial count")
        rows = []
        values = []
        for w in points:
            if w not in cache:
                cache[w] = _charpoly_by_scalar_samples(pencil, w)
            row = []
            for mono in monos:
                acc = Fraction(1)
                for idx in range(n):
                    exp = mono[idx + 1]
                    if exp:
                        acc *= w[idx] ** exp
                row.append(acc)
            rows.append(row)
            values.append(cache[w][size - j])
        solution = solve_dense(rows, values)
        for mono, c in zip(monos, solution):
            if c:
                total[(size - j,) + mono[1:]] = c
    return Poly(nvars, total)


def pencil_determinant(pencil: Sequence[RatMatrix]) -> Poly:
    """det(x0*I - sum_s x_s G_s) as an exact homogeneous polynomial.

    Bareiss elimination on the polynomial matrix up to size 8; beyond that
    the evaluation-interpolation route (N+1 scalar determinants per sample
    direction) is cheaper.
    """
    if not pencil:
        raise ValueError("pencil must contain at least one matrix")
    size = len(pencil[0])
    for g in pencil:
        if len(g) != size or any(len(row) != size for row in g):
            raise ValueError("pencil matrices must be square and equally sized")
    if size <= BAREISS_SIZE_LIMIT:
        return _bareiss_poly_determinant(_poly_matrix_from_pencil(pencil))
    return _interpolation_poly_determinant(pencil)


def extract_cofactor(detp: Poly, h_monic: Poly) -> Poly:
    """q' with detp = q' * h_monic; NotDivisible signals a soundness failure."""
    if not (detp.is_homogeneous and h_monic.is_homogeneous):
        raise ValueError("both polynomials must be homogeneous")
    return exact_divide(detp, h_monic)


def _float_pencil(weights: list[Fraction], pencil: list[RatMatrix]) -> list[list[list[float]]]:
    roots = [math.sqrt(float(w)) for w in weights]
    out = []
    for g in pencil:
        out.append([
            [roots[a] * float(g[a][b]) / roots[b] for b in range(len(g))]
            for a in range(len(g))
        ])
    return out


def _pencil_value(pencil: Sequence[RatMatrix], point: Sequence[Fraction]) -> RatMatrix:
    size = len(pencil[0])
    out = [[point[0] if a == b else _ZERO for b in range(size)] for a in range(size)]
    for s, g in enumerate(pencil):
        c = point[s + 1]
        if c:
            for a in range(size):
                for b in range(size):
                    out[a][b] -= c * g[a][b]
    return out


def certify(h: Poly, e: Sequence[RationalLike], options: CertifyOptions | None = None) -> DetRepCertificate:
    """Full pipeline from a hyperbolic polynomial to an exact certificate.

    Stages: normalize the direction, build the quotient context, check the
    PD witness (refusing on failure, which may indicate a real singularity),
    find the sum-of-squares decomposition, solve the symmetric lift, compute
    the pencil determinant and cofactor, and sanity-check the cofactor's
    hyperbolicity by sampling.  Failures carry the stage name.
    """
    opts = options or CertifyOptions()
    ev = as_point(e)
    if not h.is_homogeneous:
        raise CertifyError("input", "polynomial must be homogeneous")
    if h.is_zero or h.degree == 0:
        raise CertifyError("input", "polynomial must have positive degree")
    if len(ev) != h.nvars:
        raise CertifyError("input", "direction length must match the variable count")
    try:
        h_norm, transform = normalize_direction(h, ev)
    except DirectionVanishes as exc:
        raise CertifyError("normalize", str(exc)) from exc
    ctx = QuotientContext(h_norm)

    report = pd_witness_check(ctx, opts.num_samples, opts.seed)
    if not report.ok:
        raise CertifyError(
            "pd_witness",
            f"derivative Bézoutian not positive definite at v={tuple(map(str, report.witness))}; "
            "the polynomial is not hyperbolic or has a real singularity",
            witness=report.witness,
        )

    dec = find_sos_decomposition(ctx, opts.lmax, opts.sdp_tol, opts.denominator_bound)
    weights, pencil = solve_symmetric_lift(ctx, dec)
    detp = pencil_determinant(pencil)
    try:
        cofactor = extract_cofactor(detp, ctx.h)
    except NotDivisible as exc:
        raise CertifyError("cofactor", f"pencil determinant is not a multiple of h: {exc}") from exc

    size = len(dec.vectors)
    e0 = (Fraction(1),) + (Fraction(0),) * ctx.n
    identity = [[Fraction(a == b) for b in range(size)] for a in range(size)]
    if _pencil_value(pencil, e0) != identity:
        raise CertifyError("definiteness", "pencil at the normalized direction is not the identity")

    verdict = check_hyperbolic_sampled(cofactor, e0, opts.num_samples, opts.seed)
    if verdict.status == NOT_HYPERBOLIC:
        raise CertifyError(
            "cofactor_hyperbolicity",
            f"cofactor failed real-rootedness at v={tuple(map(str, verdict.witness))}",
            witness=verdict.witness,
        )

    cert = DetRepCertificate(
        h=h,
        e=ev,
        transform=transform,
        size=size,
        weights=weights,
        pencil=pencil,
        cofactor=cofactor,
        multiplier=dec.multiplier,
        float_pencil=_float_pencil(weights, pencil) if opts.include_float_pencil else None,
    )
    ok, diagnostics = verify_certificate(cert)
    if not ok:  # pragma: no cover - would be a soundness bug
        raise CertifyError("self_verify", "; ".join(diagnostics))
    return cert


def verify_certificate(cert: DetRepCertificate) -> tuple[bool, list[str]]:
    """Replay the certified identities in exact arithmetic.

    Checks: (a) the weight matrix is positive diagonal, (b) D*G_i is
    symmetric for every i, (c) the pencil determinant equals
    cofactor * h_monic with h_monic recomputed from h and T, and (d) the
    pencil evaluated at the transformed direction is the identity.  Failures
    are reported as diagnostics, never raised.  The SDP and the sampling
    stages are deliberately not replayed.
    """
    diagnostics: list[str] = []
    size = cert.size
    n = len(cert.e) - 1

    weights_ok = len(cert.weights) == size and all(w > 0 for w in cert.weights)
    if not weights_ok:
        diagnostics.append("(a) weight matrix is not a positive diagonal of the pencil size")

    shapes_ok = len(cert.pencil) == n and all(
        len(g) == size and all(len(row) == size for row in g) for g in cert.pencil
    )
    if not shapes_ok:
        diagnostics.append("(b) pencil must be one square size-N matrix per variable x1..xn")
    elif weights_ok:
        for s, g in enumerate(cert.pencil):
            if any(
                cert.weights[a] * g[a][b] != cert.weights[b] * g[b][a]
                for a in range(size)
                for b in range(a + 1, size)
            ):
                diagnostics.append(f"(b) D*G_{s + 1} is not symmetric")

    if shapes_ok:
        try:
            inverse_t = invert_matrix(cert.transform)
            h_norm = apply_linear(cert.h, inverse_t)
            d = h_norm.degree
            lead = h_norm.coeff((d,) + (0,) * n)
            if lead == 0:
                diagnostics.append("(c) transformed polynomial vanishes at (1,0,...,0)")
            else:
                h_monic = h_norm * (1 / lead)
                if pencil_determinant(cert.pencil) != cert.cofactor * h_monic:
                    diagnostics.append("(c) pencil determinant differs from cofactor * h_monic")
        except (HyperdetError, SingularMatrix, ValueError) as exc:
            diagnostics.append(f"(c) determinant check could not be replayed: {exc}")

        try:
            e_norm = [
                sum((as_fraction(cert.transform[i][j]) * cert.e[j] for j in range(len(cert.e))), _ZERO)
                for i in range(len(cert.e))
            ]
            identity = [[Fraction(a == b) for b in range(size)] for a in range(size)]
            if _pencil_value(cert.pencil, e_norm) != identity:
                diagnostics.append("(d) pencil at the transformed direction is not the identity")
        except (HyperdetError, IndexError, ValueError) as exc:
            diagnostics.append(f"(d) direction check could not be replayed: {exc}")

    return (not diagnostics, diagnostics)
