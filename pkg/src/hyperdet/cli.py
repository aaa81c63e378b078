"""Command-line front end.

Commands:
  check      hyperbolicity verdict plus the PD-witness report
  bezoutian  the difference-quotient Bézoutian and the derivative Bézoutian
  certify    run the full pipeline and emit a self-verified certificate
  verify     replay a certificate file

Exit codes: 0 success, 1 mathematical refusal (not hyperbolic, suspected
singularity, multiplier search exhausted, failed verification), 2 input
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .detrep import (
    SCHEMA,
    CertifyOptions,
    DetRepCertificate,
    certify,
    verify_certificate,
)
from .errors import (
    CertifyError,
    DimensionMismatch,
    DirectionVanishes,
    Exhausted,
    HyperdetError,
    PolyParseError,
)
from .hyperbolicity import (
    NOT_HYPERBOLIC,
    SINGULAR_SUSPECTED,
    check_hyperbolic_sampled,
    pd_witness_check,
)
from .poly import Poly, as_point, normalize_direction, parse_poly
from .quotient import QuotientContext, bezoutian_of, delta_bezoutian

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_INPUT = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperdet",
        description="Certify definite determinantal representations of multiples "
        "of hyperbolic polynomials, with exact rational verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_poly: bool = True) -> None:
        if needs_poly:
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--poly", help="polynomial in the text grammar, e.g. 'x0^2 - x1^2'")
            src.add_argument("--input", help="path to a file containing the polynomial")
            p.add_argument("--e", required=True,
                           help="direction as comma-separated rationals, e.g. '1,0,0'")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--output", help="output path (default: stdout)")

    p_check = sub.add_parser("check", help="sampled hyperbolicity and PD-witness checks")
    add_common(p_check)
    p_check.add_argument("--samples", type=int, default=64)
    p_check.add_argument("--seed", type=int, default=0)

    p_bez = sub.add_parser("bezoutian", help="serialize the basic Bézoutian forms")
    add_common(p_bez)

    p_cert = sub.add_parser("certify", help="produce a verified certificate")
    add_common(p_cert)
    p_cert.add_argument("--lmax", type=int, default=4)
    p_cert.add_argument("--sdp-tol", type=float, default=1e-8)
    p_cert.add_argument("--denominator-bound", type=int, default=2**32)
    p_cert.add_argument("--samples", type=int, default=64)
    p_cert.add_argument("--seed", type=int, default=0)
    p_cert.add_argument("--no-float-pencil", action="store_true",
                        help="omit the floating-point symmetric pencil view")

    p_ver = sub.add_parser("verify", help="replay a certificate file")
    p_ver.add_argument("--cert", required=True, help="path to a certificate JSON file")
    p_ver.add_argument("--format", choices=("json", "text"), default="json")
    p_ver.add_argument("--output", help="output path (default: stdout)")

    return parser


def _read_poly(args: argparse.Namespace) -> tuple[Poly, tuple]:
    if args.input is not None:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = args.poly
    direction = as_point(part.strip() for part in args.e.split(","))
    poly = parse_poly(text, nvars=len(direction))
    return poly, direction


def _emit(args: argparse.Namespace, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        rendered = json.dumps(payload, indent=2) + "\n"
    else:
        rendered = "\n".join(text_lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)


def _run_check(args: argparse.Namespace) -> int:
    h, e = _read_poly(args)
    verdict = check_hyperbolic_sampled(h, e, args.samples, args.seed)
    payload: dict = {"schema": SCHEMA, "command": "check",
                     "hyperbolicity": verdict.to_json_dict()}
    lines = [f"hyperbolicity: {verdict.status}"]
    if verdict.witness is not None:
        lines.append(f"  witness offset: ({', '.join(str(c) for c in verdict.witness)})")
    exit_code = EXIT_OK
    if verdict.status == NOT_HYPERBOLIC:
        payload["pd_witness"] = None
        exit_code = EXIT_REFUSED
    else:
        h_norm, _ = normalize_direction(h, e)
        report = pd_witness_check(QuotientContext(h_norm), args.samples, args.seed)
        payload["pd_witness"] = report.to_json_dict()
        lines.append(f"pd_witness: {'ok' if report.ok else SINGULAR_SUSPECTED}")
        if report.witness is not None:
            lines.append(f"  witness point: ({', '.join(str(c) for c in report.witness)})")
        if not report.ok:
            payload["status"] = SINGULAR_SUSPECTED
            exit_code = EXIT_REFUSED
    _emit(args, payload, lines)
    return exit_code


def _run_bezoutian(args: argparse.Namespace) -> int:
    h, e = _read_poly(args)
    h_norm, _ = normalize_direction(h, e)
    ctx = QuotientContext(h_norm)
    delta = delta_bezoutian(ctx)
    omega0 = bezoutian_of(ctx, ctx.h.derivative(0))
    payload = {
        "schema": SCHEMA,
        "command": "bezoutian",
        "h_monic": str(ctx.h),
        "delta": delta.to_json_rows(),
        "dh_dx0": omega0.to_json_rows(),
    }
    lines = [f"h_monic: {ctx.h}", "delta:"]
    lines += ["  [" + ", ".join(row) + "]" for row in delta.to_json_rows()]
    lines.append("bezoutian of dh/dx0:")
    lines += ["  [" + ", ".join(row) + "]" for row in omega0.to_json_rows()]
    _emit(args, payload, lines)
    return EXIT_OK


def _run_certify(args: argparse.Namespace) -> int:
    h, e = _read_poly(args)
    options = CertifyOptions(
        lmax=args.lmax,
        sdp_tol=args.sdp_tol,
        denominator_bound=args.denominator_bound,
        num_samples=args.samples,
        seed=args.seed,
        include_float_pencil=not args.no_float_pencil,
    )
    cert = certify(h, e, options)
    ok, diagnostics = verify_certificate(cert)
    if not ok:
        raise RuntimeError(
            "certificate failed self-verification; this is a bug: " + "; ".join(diagnostics)
        )
    payload = cert.to_json_dict()
    lines = [
        f"certificate: N={cert.size}",
        f"cofactor: {cert.cofactor}",
        f"multiplier: {cert.multiplier}",
        f"weights: ({', '.join(str(w) for w in cert.weights)})",
        "verified: true",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _run_verify(args: argparse.Namespace) -> int:
    with open(args.cert, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("schema") != SCHEMA:
        raise HyperdetError(f"unsupported certificate schema {data.get('schema')!r}")
    cert = DetRepCertificate.from_json_dict(data)
    ok, diagnostics = verify_certificate(cert)
    payload = {"schema": SCHEMA, "command": "verify", "valid": ok, "diagnostics": diagnostics}
    lines = [f"valid: {str(ok).lower()}"] + [f"  {d}" for d in diagnostics]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_REFUSED


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return _run_check(args)
        if args.command == "bezoutian":
            return _run_bezoutian(args)
        if args.command == "certify":
            return _run_certify(args)
        return _run_verify(args)
    except PolyParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DirectionVanishes, DimensionMismatch) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CertifyError as exc:
        if exc.stage == "input" or exc.stage == "normalize":
            print(f"input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except Exhausted as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HyperdetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
