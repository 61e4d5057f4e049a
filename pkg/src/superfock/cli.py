"""Batch command-line interface.

Transforms enter as JSON files {"d": d, "U": M, "V": M} where a matrix M is
{"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order; complex
scalars are two-element [re, im] arrays.  Every command prints a JSON report
to stdout (deterministic for fixed input and seed) and human-readable
warnings to stderr.

Exit codes: 0 ok, 1 mathematical validation failure, 2 I/O or parse error,
3 numerical ambiguity (rank-decision band).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bogoliubov as bg
from . import orthogroup as og
from .errors import RankAmbiguityError
from .selftest import run_selftest

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_AMBIGUOUS = 3


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if len(data) != rows * cols:
        raise ValueError(f"matrix data length {len(data)} != rows*cols {rows * cols}")
    flat = np.array([complex(re, im) for re, im in data])
    return flat.reshape(rows, cols)


def vector_to_json(v: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex)]


def load_transform(path: str) -> tuple[int, np.ndarray, np.ndarray]:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    d = int(obj["d"])
    u = matrix_from_json(obj["U"])
    v = matrix_from_json(obj["V"])
    if u.shape != (d, d) or v.shape != (d, d):
        raise ValueError(f"U, V must be {d}x{d}; got {u.shape}, {v.shape}")
    return d, u, v


STRICT_NOTATION_NOTE = (
    "duality block: complement signs are taken as (-1)^tau(K, M) with M the "
    "full kernel index set {1..n}"
)


def _report(command: str, args: argparse.Namespace, **fields) -> dict:
    rep = {
        "command": command,
        "tol": getattr(args, "tol", None),
        "warnings": [],
        **fields,
    }
    if getattr(args, "strict_notation", False):
        rep["warnings"].append(STRICT_NOTATION_NOTE)
    return rep


def _emit(report: dict, code: int) -> int:
    report["exit_status"] = code
    for w in report.get("warnings", []):
        print(f"warning: {w}", file=sys.stderr)
    print(json.dumps(report, sort_keys=True, indent=2))
    return code


def cmd_check(args: argparse.Namespace) -> int:
    report = _report("check", args, input=args.input[0])
    try:
        d, u, v = load_transform(args.input[0])
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        report["error"] = str(exc)
        return _emit(report, EXIT_IO)
    residuals = og.validate(u, v, args.tol)
    report["residuals"] = {k: residuals[k] for k in sorted(residuals) if k != "ok"}
    report["valid"] = residuals["ok"]
    if not residuals["ok"]:
        return _emit(report, EXIT_INVALID)
    r = og.OrthogonalTransform(u, v, tol=args.tol)
    try:
        kd = r.kernel
    except RankAmbiguityError as exc:
        report["error"] = str(exc)
        return _emit(report, EXIT_AMBIGUOUS)
    report["kernel_dim"] = kd.n
    report["component"] = og.component(r)
    return _emit(report, EXIT_OK)


def cmd_implement(args: argparse.Namespace) -> int:
    report = _report("implement", args, input=args.input[0], out=args.out)
    try:
        d, u, v = load_transform(args.input[0])
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        report["error"] = str(exc)
        return _emit(report, EXIT_IO)
    residuals = og.validate(u, v, args.tol)
    report["residuals"] = {"validation_max": residuals["max"]}
    if not residuals["ok"]:
        report["valid"] = False
        return _emit(report, EXIT_INVALID)
    if d >= 7:
        report["warnings"].append(
            f"d = {d}: implementer construction has exponential cost (2^{d} amplitudes)"
        )
    r = og.OrthogonalTransform(u, v, tol=args.tol)
    try:
        impl = bg.implement_general(r)
    except RankAmbiguityError as exc:
        report["error"] = str(exc)
        return _emit(report, EXIT_AMBIGUOUS)
    unit = impl.unitarity_residual()
    intertwine = bg.intertwining_residual(r, impl.matrix)
    report["residuals"]["unitarity"] = unit
    report["residuals"]["intertwining"] = intertwine
    report["kernel_dim"] = impl.kernel_dim
    if args.out:
        payload = {"d": d, "dim": 1 << d, "T": matrix_to_json(impl.matrix)}
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True)
        except OSError as exc:
            report["error"] = str(exc)
            return _emit(report, EXIT_IO)
    # intertwining amplifies validation rounding; accept within a 2^(d/2) factor
    scale = 2.0 ** (d / 2.0)
    ok = unit <= args.tol * scale and intertwine <= args.tol * scale
    return _emit(report, EXIT_OK if ok else EXIT_INVALID)


def cmd_compose(args: argparse.Namespace) -> int:
    if len(args.input) != 2:
        print("compose needs exactly two -i/--input files", file=sys.stderr)
        return EXIT_IO
    report = _report("compose", args, input=list(args.input))
    try:
        d1, u1, v1 = load_transform(args.input[0])
        d2, u2, v2 = load_transform(args.input[1])
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        report["error"] = str(exc)
        return _emit(report, EXIT_IO)
    if d1 != d2:
        report["error"] = f"dimension mismatch: {d1} != {d2}"
        return _emit(report, EXIT_IO)
    for u, v, which in ((u1, v1, "first"), (u2, v2, "second")):
        res = og.validate(u, v, args.tol)
        if not res["ok"]:
            report["error"] = f"{which} transform invalid (max residual {res['max']:.3e})"
            return _emit(report, EXIT_INVALID)
    ra = og.OrthogonalTransform(u1, v1, tol=args.tol)
    rb = og.OrthogonalTransform(u2, v2, tol=args.tol)
    rc = og.compose(ra, rb)
    report["U"] = matrix_to_json(rc.u)
    report["V"] = matrix_to_json(rc.v)
    try:
        chi = bg.cocycle(ra, rb, tol=max(args.tol, 1e-8))
        ta = bg.implement_general(ra).matrix
        tb = bg.implement_general(rb).matrix
        tc = bg.implement_general(rc).matrix
        ray_residual = float(np.max(np.abs(ta @ tb - chi * tc)))
    except RankAmbiguityError as exc:
        report["error"] = str(exc)
        return _emit(report, EXIT_AMBIGUOUS)
    report["chi"] = [float(chi.real), float(chi.imag)]
    report["residuals"] = {
        "abs_chi_minus_one": abs(abs(chi) - 1.0),
        "ray_residual": ray_residual,
    }
    return _emit(report, EXIT_OK)


def cmd_vacuum(args: argparse.Namespace) -> int:
    report = _report("vacuum", args, input=args.input[0])
    try:
        d, u, v = load_transform(args.input[0])
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        report["error"] = str(exc)
        return _emit(report, EXIT_IO)
    res = og.validate(u, v, args.tol)
    if not res["ok"]:
        report["error"] = f"transform invalid (max residual {res['max']:.3e})"
        return _emit(report, EXIT_INVALID)
    r = og.OrthogonalTransform(u, v, tol=args.tol)
    try:
        vo = bg.vacuum_orbit(r)
    except RankAmbiguityError as exc:
        report["error"] = str(exc)
        return _emit(report, EXIT_AMBIGUOUS)
    report["amplitudes"] = vector_to_json(vo.vector.amp)
    report["overlap"] = vo.overlap
    report["norm"] = vo.norm()
    report["kernel_dim"] = vo.kernel_dim
    report["coset_X"] = matrix_to_json(vo.x)
    report["H0_basis"] = matrix_to_json(vo.h0_basis)
    return _emit(report, EXIT_OK)


def cmd_selftest(args: argparse.Namespace) -> int:
    report = _report("selftest", args)
    if args.modes > 3 and args.generators > 0:
        report["warnings"].append(
            f"modes = {args.modes}: module-space checks run on min(modes, 3) modes"
        )
    result = run_selftest(
        modes=args.modes, generators=args.generators, seed=args.seed, tol=args.tol
    )
    report["warnings"].extend(result.pop("warnings"))
    report.update(result)
    return _emit(report, EXIT_OK if report["all_passed"] else EXIT_INVALID)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superfock",
        description="Batch interface for orthogonal transforms and their Fock-space implementers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("-i", "--input", action="append", required=True,
                           help="transform JSON file (repeat for compose)")
        p.add_argument("--tol", type=float, default=1e-9, help="residual tolerance")
        p.add_argument("--strict-notation", action="store_true",
                       help="record index-set conventions of the duality block in the report")
        p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("check", help="validate a transform, report kernel and component")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("implement", help="build the unitary implementer matrix")
    common(p)
    p.add_argument("-o", "--out", help="write the 2^d x 2^d matrix to this JSON file")
    p.set_defaults(func=cmd_implement)

    p = sub.add_parser("compose", help="compose two transforms and extract the ray phase")
    common(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("vacuum", help="vacuum orbit vector, overlap and coset coordinate")
    common(p)
    p.set_defaults(func=cmd_vacuum)

    p = sub.add_parser("selftest", help="run the seeded invariant battery")
    common(p, needs_input=False)
    p.add_argument("--modes", type=int, default=4)
    p.add_argument("--generators", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
