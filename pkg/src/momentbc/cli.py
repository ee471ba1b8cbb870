"""Command-line surface.

Subcommands cover the whole pipeline: ``simulate`` (wavefield CSV),
``response`` (timestep / kernel / spectral), ``connect`` (connecting matrix
and its singular values), ``check`` (admissibility verdict), ``m2r`` / ``r2m``
(moment/response conversions), ``solve`` (truncated moment problem),
``verify`` (measure vs moments), ``recover`` (coefficients), ``scan``
(truncation-stability report).

Exit codes: 0 success, 2 validation error, 3 numerical rejection; rejection
messages name the violated condition (which nested matrix is singular, at
which tolerance).  The environment variable MOMENT_BC_SEED fixes the random
generator behind ``--demo`` instance generation.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .dynamics import Control, response_vector, simulate_finite
from .errors import Inadmissible, InputError, NumericalRejection
from .io import (
    Document,
    cseq,
    cmat,
    document_to_string,
    jacobi_payload,
    make_meta,
    measure_payload,
    parse_jacobi,
    parse_measure,
    parse_values,
    read_control_samples,
    read_document,
    values_payload,
    wavefield_csv,
    write_document,
)
from .jacobi import random_spec, truncate
from .moments import moments_to_response, response_to_moments
from .operators import check_admissibility, connecting_from_response
from .pipeline import convergence_scan, recover_coefficients, solve_truncated, verify_measure
from .spectral import build_measure, spectral_data, spectral_response
from .takagi import enforce_distinct, takagi_factorize


def _demo_spec(n: int):
    seed = int(os.environ.get("MOMENT_BC_SEED", "0"))
    return random_spec(n, np.random.default_rng(seed))


def _load_spec(args):
    if getattr(args, "demo", None):
        return _demo_spec(args.demo)
    if not args.infile:
        raise InputError("need --in FILE or --demo N")
    return parse_jacobi(read_document(args.infile, "jacobi"))


def _write_or_print(doc: Document, path: str | None) -> None:
    text = document_to_string(doc)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_simulate(args) -> int:
    spec = _load_spec(args)
    N = args.nodes or spec.size
    T = args.horizon or 2 * N
    control = Control(read_control_samples(args.control)) if args.control else Control.delta()
    field = simulate_finite(spec, control, N, T)
    text = wavefield_csv(field)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_response(args) -> int:
    spec = _load_spec(args)
    L = args.length or max(2 * spec.size - 1, 1)
    if args.method in ("timestep", "kernel"):
        r = response_vector(spec, L, method=args.method)
    else:
        A = truncate(spec, spec.size)
        sd = spectral_data(A, enforce_distinct(takagi_factorize(A, tol=args.tol_singular)))
        r = spectral_response(build_measure(sd, a0=spec.a0), L)
    doc = Document("response", values_payload(r),
                   make_meta({"singular": args.tol_singular} if args.method == "spectral" else {}))
    _write_or_print(doc, args.out)
    return 0


def _cmd_connect(args) -> int:
    r = parse_values(read_document(args.infile, "response"))
    T = args.size or (len(r) + 1) // 2
    C = connecting_from_response(r, T)
    sigma = np.linalg.svd(C, compute_uv=False)
    payload = {
        "size": T,
        "matrix": cmat(C),
        "singular_values": [float(x) for x in sigma],
    }
    _write_or_print(Document("report", payload, make_meta()), args.out)
    return 0


def _cmd_check(args) -> int:
    r = parse_values(read_document(args.infile, "response"))
    T = args.size or (len(r) + 1) // 2
    verdict = check_admissibility(r, T, tol=args.tol_singular)
    payload = {
        "size": T,
        "admissible": verdict.admissible,
        "failing_k": verdict.failing_k,
        "margins": [float(x) for x in verdict.margins],
    }
    _write_or_print(Document("report", payload, make_meta({"singular": args.tol_singular})), args.out)
    if not verdict.admissible:
        k = verdict.failing_k
        sys.stderr.write(
            f"rejected: connecting matrix C^{T - k} singular (k={k}, "
            f"sigma ratio {verdict.margins[k]:.3e} <= tol {args.tol_singular:g})\n"
        )
        return 3
    return 0


def _cmd_m2r(args) -> int:
    s = parse_values(read_document(args.infile, "moments"))
    _write_or_print(Document("response", values_payload(moments_to_response(s)), make_meta()), args.out)
    return 0


def _cmd_r2m(args) -> int:
    r = parse_values(read_document(args.infile, "response"))
    _write_or_print(Document("moments", values_payload(response_to_moments(r)), make_meta()), args.out)
    return 0


def _cmd_solve(args) -> int:
    s = parse_values(read_document(args.infile, "moments"))
    report = solve_truncated(s, backend=args.backend, tol_singular=args.tol_singular,
                             tol_residual=args.tol_residual)
    meta = make_meta({"singular": args.tol_singular, "residual": args.tol_residual})
    if args.out:
        write_document(Document("measure", measure_payload(report.measure), meta), args.out)
    payload = {
        "depth": report.depth,
        "backend": report.backend,
        "admissible": report.admissibility.admissible,
        "failing_k": report.admissibility.failing_k,
        "margins": [float(x) for x in report.admissibility.margins],
        "moment_residuals": [float(x) for x in report.moment_residuals],
        "measure": measure_payload(report.measure),
    }
    _write_or_print(Document("report", payload, meta), args.report)
    return 0


def _cmd_verify(args) -> int:
    measure = parse_measure(read_document(args.infile, "measure"))
    s = parse_values(read_document(args.moments, "moments"))
    residuals = verify_measure(measure, s)
    payload = {"residuals": [float(x) for x in residuals]}
    _write_or_print(Document("report", payload, make_meta({"residual": args.tol_residual})), args.out)
    floor = np.maximum(1.0, np.abs(s))
    worst = float(np.max(residuals / floor)) if len(s) else 0.0
    if worst > args.tol_residual:
        sys.stderr.write(
            f"rejected: moment residual {worst:.3e} exceeds tol {args.tol_residual:g}\n"
        )
        return 3
    return 0


def _cmd_recover(args) -> int:
    s = parse_values(read_document(args.infile, "moments"))
    depth = args.depth or (len(s) + 1) // 2
    rec = recover_coefficients(s, depth, tol=args.tol_singular)
    payload = {
        "depth": depth,
        "a0": cseq([rec.a0])[0],
        "b": cseq(rec.b),
        "a_squared": cseq(rec.a_squared),
        "a_principal": cseq(rec.a_principal),
        "tail_defaulted": rec.tail_defaulted,
        "condition_report": [
            {"order": k, "sigma_min": smin, "sigma_max": smax}
            for (k, smin, smax) in rec.condition_report
        ],
        "jacobi": jacobi_payload(rec.spec()),
    }
    _write_or_print(Document("report", payload, make_meta({"singular": args.tol_singular})), args.out)
    return 0


def _cmd_scan(args) -> int:
    spec = _load_spec(args)
    sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    report = convergence_scan(spec, sizes)
    payload = {
        "sizes": [entry.N for entry in report.entries],
        "shared_orders": report.shared_orders,
        "max_shared_deviation": float(report.max_shared_deviation),
        "entries": [
            {
                "N": entry.N,
                "measure": measure_payload(entry.measure),
                "moments": cseq(entry.moments),
            }
            for entry in report.entries
        ],
    }
    _write_or_print(Document("report", payload, make_meta()), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momentbc",
        description="Truncated complex moment problem via boundary-control dynamics",
    )
    parser.add_argument("--version", action="version", version=f"momentbc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, infile=True, out=True, demo=False):
        if infile:
            p.add_argument("--in", dest="infile", help="input document")
        if demo:
            p.add_argument("--demo", type=int, metavar="N",
                           help="generate a random size-N instance (MOMENT_BC_SEED)")
        if out:
            p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("simulate", help="time-step a control through a coefficient file")
    add_common(p, demo=True)
    p.add_argument("--control", help="JSON array of [re, im] control samples (default: impulse)")
    p.add_argument("--nodes", type=int, help="interior nodes (default: all stored)")
    p.add_argument("--horizon", type=int, help="time steps (default: 2 * nodes)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("response", help="response vector of a coefficient file")
    add_common(p, demo=True)
    p.add_argument("--len", dest="length", type=int, help="entries (default: 2N-1)")
    p.add_argument("--method", choices=("timestep", "kernel", "spectral"), default="timestep")
    p.add_argument("--tol-singular", type=float, default=1e-10)
    p.set_defaults(func=_cmd_response)

    p = sub.add_parser("connect", help="connecting matrix and its singular values")
    add_common(p)
    p.add_argument("--size", type=int, help="matrix order T (default: (len+1)/2)")
    p.set_defaults(func=_cmd_connect)

    p = sub.add_parser("check", help="admissibility of a response vector")
    add_common(p)
    p.add_argument("--size", type=int, help="horizon T (default: (len+1)/2)")
    p.add_argument("--tol-singular", type=float, default=1e-10)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("m2r", help="moments to response entries")
    add_common(p)
    p.set_defaults(func=_cmd_m2r)

    p = sub.add_parser("r2m", help="response entries to moments")
    add_common(p)
    p.set_defaults(func=_cmd_r2m)

    p = sub.add_parser("solve", help="measure solving the truncated moment problem")
    add_common(p)
    p.add_argument("--report", help="write the run report here (default: stdout)")
    p.add_argument("--backend", choices=("paper_takagi", "eigen_oracle"), default="paper_takagi")
    p.add_argument("--tol-singular", type=float, default=1e-10)
    p.add_argument("--tol-residual", type=float, default=1e-8)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="residuals of a measure against moments")
    add_common(p)
    p.add_argument("--moments", required=True, help="moments document")
    p.add_argument("--tol-residual", type=float, default=1e-8)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("recover", help="Jacobi coefficients from moments")
    add_common(p)
    p.add_argument("--depth", type=int, help="recovery depth N (default: (len+1)/2)")
    p.add_argument("--tol-singular", type=float, default=1e-10)
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("scan", help="stability of truncation measures across sizes")
    add_common(p, demo=True)
    p.add_argument("--sizes", required=True, help="comma list of truncation sizes")
    p.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Inadmissible as exc:
        sys.stderr.write(f"rejected: {exc} (k={exc.k})\n")
        return 3
    except NumericalRejection as exc:
        sys.stderr.write(f"rejected: {exc}\n")
        return 3
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
