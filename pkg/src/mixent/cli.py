"""Command-line interface: mixture reports, MC runs, sweeps, oracle checks.

Exit codes are stable: 0 success, 2 invalid mixture/config specification,
3 kernel precondition failure (e.g. NonDiagonalCovariance), 4 unwritable
output, 5 oracle tolerance violation.  No subcommand mutates its inputs.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exceptions import MixtureError, NonDiagonalCovariance
from .model import load_mixture
from .montecarlo import estimate
from .report import approximate
from .sweep import load_sweep_spec, run_sweep
from .verify import verify_overlaps

EXIT_OK = 0
EXIT_BAD_SPEC = 2
EXIT_KERNEL_PRECONDITION = 3
EXIT_UNWRITABLE = 4
EXIT_TOLERANCE = 5


def _fail(code: int, error: Exception) -> int:
    print(f"{type(error).__name__}: {error}", file=sys.stderr)
    return code


def _cmd_report(args) -> int:
    try:
        model = load_mixture(args.mixture)
    except (MixtureError, OSError, json.JSONDecodeError) as exc:
        return _fail(EXIT_BAD_SPEC, exc)
    try:
        report = approximate(model)
    except NonDiagonalCovariance as exc:
        return _fail(EXIT_KERNEL_PRECONDITION, exc)
    payload = report.to_dict()
    if args.mc_samples is not None:
        mc = estimate(model, args.mc_samples, args.seed)
        payload["h_mc"] = mc.entropy_bits
        payload["se"] = mc.std_error_bits
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_mc(args) -> int:
    try:
        model = load_mixture(args.mixture)
    except (MixtureError, OSError, json.JSONDecodeError) as exc:
        return _fail(EXIT_BAD_SPEC, exc)
    mc = estimate(model, args.samples, args.seed)
    print(json.dumps(mc.to_dict(), indent=2))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    try:
        spec = load_sweep_spec(args.config)
    except (MixtureError, OSError) as exc:
        return _fail(EXIT_BAD_SPEC, exc)
    try:
        result = run_sweep(spec)
    except NonDiagonalCovariance as exc:
        return _fail(EXIT_KERNEL_PRECONDITION, exc)
    try:
        result.write_csv(args.out)
    except OSError as exc:
        return _fail(EXIT_UNWRITABLE, exc)
    return EXIT_OK


def _cmd_verify_overlaps(args) -> int:
    if args.trials < 1:
        print("trials must be at least 1", file=sys.stderr)
        return EXIT_BAD_SPEC
    reports = verify_overlaps(args.trials, args.seed)
    failed = []
    for rep in reports:
        print(f"{rep.pair}: max relative error {rep.max_rel_error:.3e} over {rep.trials} trials")
        if rep.max_rel_error > args.tol:
            failed.append(rep)
    if failed:
        for rep in failed:
            f, g, closed, oracle = rep.worst_params
            print(
                f"{rep.pair} exceeded tol {args.tol:g}: closed={closed!r} oracle={oracle!r}\n"
                f"  f={f!r}\n  g={g!r}",
                file=sys.stderr,
            )
        return EXIT_TOLERANCE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixent",
        description="Deterministic bounds and approximations for mixture differential entropy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_report = sub.add_parser("report", help="entropy report for one mixture spec (JSON out)")
    p_report.add_argument("--mixture", required=True, help="path to mixture spec JSON")
    p_report.add_argument("--mc-samples", type=int, default=None, metavar="N",
                          help="also run an MC estimate with N samples")
    p_report.add_argument("--seed", type=int, default=0)
    p_report.set_defaults(func=_cmd_report)

    p_mc = sub.add_parser("mc", help="Monte Carlo entropy estimate")
    p_mc.add_argument("--mixture", required=True)
    p_mc.add_argument("--samples", type=int, required=True)
    p_mc.add_argument("--seed", type=int, default=0)
    p_mc.set_defaults(func=_cmd_mc)

    p_sweep = sub.add_parser("sweep", help="run a separation sweep, write CSV")
    p_sweep.add_argument("--config", required=True, help="path to sweep config JSON")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_verify = sub.add_parser("verify-overlaps",
                              help="closed-form kernels vs quadrature oracle")
    p_verify.add_argument("--trials", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--tol", type=float, default=1e-8)
    p_verify.set_defaults(func=_cmd_verify_overlaps)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
