"""Batch command-line interface over JSON/CSV files.

Subcommands
-----------
basis       emit generator matrices and structure constants for a given n
synthesize  PlantModel JSON in -> QsdeSystem JSON out
check       QsdeSystem JSON in -> RealizabilityReport JSON out (exit 0 iff pass)
recover     QsdeSystem JSON in -> PlantModel JSON out (exit 1 if not realizable)
verify      run the full identity suite for a given n with seeded randomness
simulate    QsdeSystem JSON in -> mean-trajectory CSV out

All JSON documents use 1-based indices wherever indices appear, matching
the conventional subscripts lambda_1 .. lambda_{n^2-1}.  Output path "-"
writes to stdout.

Exit codes: 0 success / check passed; 1 realizability failure; 2 malformed
input (bad JSON, wrong dimensions, invalid parameter); 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from .su_algebra import build_basis, structure_constants, constants_for, export_json
from .theta_maps import ThetaContext
from .identities import algebra_identity_suite, theta_identity_suite
from .operator_forms import (
    verify_ccr,
    verify_linear_commutators,
    verify_plant_commutators,
)
from .realization import (
    PlantModel,
    NotRealizableError,
    synthesize,
    check_realizability,
    recover_model,
    model_to_json_dict,
    model_from_json_dict,
    system_to_json_dict,
    system_from_json_dict,
)
from .dynamics import mean_trajectory, write_csv

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_NOT_REALIZABLE = 1
EXIT_BAD_INPUT = 2
EXIT_IO = 3


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r") as fh:
        return json.load(fh)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _cmd_basis(args) -> int:
    basis = build_basis(args.n)
    sc = structure_constants(basis)
    _write_text(args.out, _dump(export_json(sc)))
    return EXIT_OK


def _cmd_synthesize(args) -> int:
    model = model_from_json_dict(_read_json(args.model))
    sys_ = synthesize(model)
    _write_text(args.out, _dump(system_to_json_dict(sys_)))
    return EXIT_OK


def _cmd_check(args) -> int:
    sys_ = system_from_json_dict(_read_json(args.system))
    report = check_realizability(sys_, tol=args.tol, include_model=True)
    _write_text(args.out, _dump(report.to_json_dict()))
    return EXIT_OK if report.passed else EXIT_NOT_REALIZABLE


def _cmd_recover(args) -> int:
    sys_ = system_from_json_dict(_read_json(args.system))
    model = recover_model(sys_, tol=args.tol)
    _write_text(args.out, _dump(model_to_json_dict(model)))
    return EXIT_OK


def _random_plant(rng: np.random.Generator, n: int, n_w: int) -> PlantModel:
    s = n * n - 1
    alpha = rng.standard_normal(s)
    Lam = rng.standard_normal((n_w, s)) + 1j * rng.standard_normal((n_w, s))
    return PlantModel(n=n, n_w=n_w, alpha=alpha, Lambda=Lam)


def _cmd_verify(args) -> int:
    if args.trials < 1:
        raise ValueError(f"--trials must be >= 1, got {args.trials}")
    sc = constants_for(args.n)
    ctx = ThetaContext(sc)
    rng = np.random.default_rng(args.seed)

    reports = []
    reports += algebra_identity_suite(sc, tol=args.tol)
    reports += theta_identity_suite(ctx, rng, trials=args.trials, tol=args.tol)
    reports += verify_ccr(ctx, tol=args.tol)
    if args.nw > 0:
        s = ctx.s
        for _ in range(args.trials):
            A = rng.standard_normal((args.nw, s))
            B = rng.standard_normal((args.nw, s))
            reports += verify_linear_commutators(A, B, ctx, tol=args.tol)
            reports += verify_plant_commutators(_random_plant(rng, args.n, args.nw), ctx, tol=args.tol)

    merged: dict = {}
    order: list = []
    for r in reports:
        if r.identity not in merged:
            merged[r.identity] = r
            order.append(r.identity)
        else:
            prev = merged[r.identity]
            if r.max_residual > prev.max_residual:
                merged[r.identity] = r

    identities = [merged[name].to_json_dict() for name in order]
    overall = all(entry["pass"] for entry in identities)
    doc = {
        "command": "verify",
        "n": args.n,
        "n_w": args.nw,
        "seed": args.seed,
        "trials": args.trials,
        "tolerance": args.tol,
        "identities": identities,
        "pass": overall,
    }
    _write_text(args.out, _dump(doc))
    return EXIT_OK if overall else EXIT_NOT_REALIZABLE


def _parse_x0(text: Optional[str], s: int) -> np.ndarray:
    if text is None:
        return np.zeros(s)
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"--x0 must be comma-separated numbers: {exc}") from exc
    return np.asarray(values)


def _cmd_simulate(args) -> int:
    sys_ = system_from_json_dict(_read_json(args.system))
    x0 = _parse_x0(args.x0, sys_.s)
    traj = mean_trajectory(sys_, x0, T=args.T, h=args.dt)
    write_csv(traj, sys.stdout if args.out == "-" else args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sunqsde",
        description="SU(n) algebra, bilinear QSDE synthesis, realizability checks, and mean dynamics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="emit generators and structure constants as JSON")
    p.add_argument("--n", type=int, required=True, help="Hilbert-space dimension (n >= 2)")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("synthesize", help="PlantModel JSON -> QsdeSystem JSON")
    p.add_argument("--model", required=True, help="PlantModel JSON path, '-' for stdin")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=_cmd_synthesize)

    p = sub.add_parser("check", help="QsdeSystem JSON -> RealizabilityReport JSON")
    p.add_argument("--system", required=True, help="QsdeSystem JSON path, '-' for stdin")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--tol", type=float, default=1e-9, help="residual tolerance (default 1e-9)")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("recover", help="QsdeSystem JSON -> PlantModel JSON")
    p.add_argument("--system", required=True, help="QsdeSystem JSON path, '-' for stdin")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--tol", type=float, default=1e-9, help="realizability tolerance (default 1e-9)")
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("verify", help="run the full identity suite with seeded randomness")
    p.add_argument("--n", type=int, required=True, help="Hilbert-space dimension (n >= 2)")
    p.add_argument("--nw", type=int, default=1, help="noise channels for commutator suites (default 1)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--trials", type=int, default=100, help="random trials per identity (default 100)")
    p.add_argument("--tol", type=float, default=1e-9, help="residual tolerance (default 1e-9)")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("simulate", help="integrate mean dynamics, write CSV")
    p.add_argument("--system", required=True, help="QsdeSystem JSON path, '-' for stdin")
    p.add_argument("--T", type=float, required=True, help="final time")
    p.add_argument("--dt", type=float, required=True, help="RK4 step size")
    p.add_argument("--x0", default=None, help="comma-separated initial mean vector (default zeros)")
    p.add_argument("--out", default="-", help="output CSV path, '-' for stdout")
    p.set_defaults(func=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotRealizableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_REALIZABLE
    except (json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
