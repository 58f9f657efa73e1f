"""Command-line front end.

Exit codes: 0 when the computation succeeded and output was written (the
verdict, if any, lives in the output), 1 on domain errors with a one-line
diagnostic on stderr, 2 on malformed input (bad JSON, schema violations,
unreadable files, unknown flags).  Scalars print via repr, certificates as
JSON, profiles as CSV; identical argv produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .admissibility import make_level, matrix_report, vector_report
from .choi import verify_fractional_kraus
from .cones import OptimizerConfig, minimize_form, witness_operator
from .counterexamples import demo_cp_failure, demo_strict_inclusion
from .io import (
    SchemaError,
    load_kraus,
    load_matrix,
    load_vector,
    matrix_to_obj,
    profile_to_csv,
)
from .linalg import BipartiteDims, square_dims
from .thresholds import (
    depolarizing_threshold,
    fidelity_threshold,
    fractional_schmidt_number,
    profile_sweep,
    stability_index,
)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit_json(payload: dict, out_path: str | None) -> None:
    _emit(json.dumps(payload, sort_keys=True) + "\n", out_path)


def _parse_grid(spec: str) -> np.ndarray:
    """Parse 'start:stop:count' into a linspace grid.

    Unparseable text is a schema problem (exit 2); parseable but
    nonsensical ranges are domain problems (exit 1).
    """
    parts = spec.split(":")
    if len(parts) != 3:
        raise SchemaError(f"grid must look like start:stop:count, got '{spec}'")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise SchemaError(f"grid must look like start:stop:count, got '{spec}'") from exc
    if count < 1:
        raise ValueError("grid needs at least one point")
    if count > 1 and stop <= start:
        raise ValueError("grid stop must exceed start")
    return np.linspace(start, stop, count)


def _explicit_dims(args, rows: int, cols: int = 1) -> BipartiteDims | None:
    """Dims from --n/--m if given (both or neither), validated against data."""
    if args.n is None and args.m is None:
        return None
    if args.n is None or args.m is None:
        raise ValueError("--n and --m must be given together")
    dims = BipartiteDims(args.n, args.m)
    if dims.total != rows * cols:
        raise ValueError(
            f"--n/--m give {dims.total} entries, input has {rows * cols}"
        )
    return dims


def _cmd_threshold(args) -> int:
    level = make_level(args.alpha, args.d)
    t_star = depolarizing_threshold(level)
    fid = fidelity_threshold(args.d, level)
    print(f"t_star={t_star!r},f_d={fid!r}")
    return 0


def _cmd_profile(args) -> int:
    grid = _parse_grid(args.grid)
    if grid.size and float(grid.min()) < 1.0:
        raise ValueError("alpha below 1 in grid")
    profile = profile_sweep(args.d, grid)
    if args.check:
        rows = list(profile.rows())
        for alpha, t_star, fid in rows:
            if abs(fid * args.d * t_star - 1.0) > 1e-12:
                raise ArithmeticError(f"reciprocity violated at alpha={alpha!r}")
        for (a0, t0, f0), (a1, t1, f1) in zip(rows, rows[1:]):
            if a1 > a0 and not (t1 < t0 and f1 > f0):
                raise ArithmeticError(f"monotonicity violated at alpha={a1!r}")
    _emit(profile_to_csv(profile), args.out)
    return 0


def _cmd_fsn(args) -> int:
    print(repr(fractional_schmidt_number(args.fidelity, args.d)))
    return 0


def _cmd_tau(args) -> int:
    print(repr(stability_index(args.t, args.d)))
    return 0


def _cmd_test_vector(args) -> int:
    vec, dims = load_vector(args.file)
    explicit = _explicit_dims(args, vec.size)
    if explicit is not None:
        dims = explicit
    level = make_level(args.alpha, dims.d)
    _emit_json(vector_report(vec, dims, level).to_dict(), None)
    return 0


def _cmd_test_matrix(args) -> int:
    mat = load_matrix(args.file)
    explicit = _explicit_dims(args, mat.shape[0], mat.shape[1])
    if explicit is not None and (explicit.n, explicit.m) != mat.shape:
        raise ValueError(f"--n/--m disagree with matrix shape {mat.shape}")
    level = make_level(args.alpha, min(mat.shape))
    _emit_json(matrix_report(mat, level).to_dict(), None)
    return 0


def _cmd_witness(args) -> int:
    level = make_level(args.alpha, args.d)
    w = witness_operator(args.d, level)
    _emit_json(matrix_to_obj(w), args.out)
    return 0


def _cmd_lambda(args) -> int:
    w = load_matrix(args.file)
    if w.shape[0] != w.shape[1]:
        raise ValueError("form matrix must be square")
    dims = _explicit_dims(args, w.shape[0])
    if dims is None:
        side = int(round(w.shape[0] ** 0.5))
        if side * side != w.shape[0]:
            raise ValueError("matrix size is not a perfect square; pass --n and --m")
        dims = square_dims(side)
    level = make_level(args.alpha, dims.d)
    config = OptimizerConfig(
        starts=args.starts, max_iters=args.max_iters, seed=args.seed, tol=args.tol
    )
    result = minimize_form(w, dims, level, config)
    spectrum = np.linalg.svd(result.argmin.reshape(dims.n, dims.m), compute_uv=False)
    _emit_json(
        {
            "value": result.value,
            "argmin_spectrum": [float(x) for x in spectrum],
            "feasibility_residual": result.feasibility_residual,
            "starts_used": result.starts_used,
        },
        None,
    )
    return 0


def _cmd_kraus_verify(args) -> int:
    ops = load_kraus(args.file)
    level = make_level(args.alpha, min(ops[0].shape))
    cert = verify_fractional_kraus(ops, level)
    _emit_json(cert.to_dict(), None)
    return 0


def _cmd_demo_strict(args) -> int:
    dims = square_dims(args.d)
    report = demo_strict_inclusion(args.k, args.theta, dims)
    _emit_json(report.to_dict(), None)
    return 0


def _cmd_demo_cp_failure(args) -> int:
    level = make_level(args.alpha, args.d)
    cert = demo_cp_failure(args.d, level, args.t)
    _emit_json(cert.to_dict(), None)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracpos",
        description="Fractional positivity thresholds, admissibility tests, and demos.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("threshold", help="noise and fidelity thresholds at one level")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--d", type=int, required=True, help="local dimension")
    p.set_defaults(fn=_cmd_threshold)

    p = sub.add_parser("profile", help="CSV threshold profile over a level grid")
    p.add_argument("--d", type=int, required=True, help="local dimension")
    p.add_argument("--grid", required=True, help="start:stop:count")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument(
        "--check",
        action="store_true",
        help="re-validate reciprocity and monotonicity from the emitted rows",
    )
    p.set_defaults(fn=_cmd_profile)

    p = sub.add_parser("fsn", help="least level whose fidelity threshold reaches F")
    p.add_argument("--F", dest="fidelity", type=float, required=True)
    p.add_argument("--d", type=int, required=True, help="local dimension")
    p.set_defaults(fn=_cmd_fsn)

    p = sub.add_parser("tau", help="largest level surviving noise parameter t")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--d", type=int, required=True, help="local dimension")
    p.set_defaults(fn=_cmd_tau)

    p = sub.add_parser("test-vector", help="admissibility report for a vector JSON file")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, default=None, help="left factor dimension")
    p.add_argument("--m", type=int, default=None, help="right factor dimension")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_test_vector)

    p = sub.add_parser("test-matrix", help="admissibility report for a matrix JSON file")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, default=None, help="expected row count")
    p.add_argument("--m", type=int, default=None, help="expected column count")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_test_matrix)

    p = sub.add_parser("witness", help="isotropic witness operator as matrix JSON")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--d", type=int, required=True, help="local dimension")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("lambda", help="admissible form minimum of a Hermitian matrix")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, default=None, help="left factor dimension")
    p.add_argument("--m", type=int, default=None, help="right factor dimension")
    p.add_argument("--starts", type=int, default=OptimizerConfig.starts)
    p.add_argument("--max-iters", type=int, default=OptimizerConfig.max_iters)
    p.add_argument("--seed", type=int, default=OptimizerConfig.seed)
    p.add_argument("--tol", type=float, default=OptimizerConfig.tol)
    p.add_argument("file")
    p.set_defaults(fn=_cmd_lambda)

    p = sub.add_parser("kraus-verify", help="check every Kraus operator in a JSON list")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("file")
    p.set_defaults(fn=_cmd_kraus_verify)

    p = sub.add_parser("demo-strict", help="witness separating two adjacent levels")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--d", type=int, required=True, help="local dimension")
    p.set_defaults(fn=_cmd_demo_strict)

    p = sub.add_parser(
        "demo-cp-failure",
        help="attenuated map that stays positive at the level but is not CP",
    )
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--d", type=int, required=True, help="local dimension")
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(fn=_cmd_demo_cp_failure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    # JSONDecodeError subclasses ValueError, so schema problems must be
    # caught first to keep their distinct exit code.
    except (SchemaError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
