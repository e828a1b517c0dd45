"""Command line entry point: ``run``, ``sweep`` and ``oracle-check``."""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from .forward import DiscreteResonanceError, GridSpec
from .harness import ExperimentConfig, run_example, run_sweep
from .marching import StepConstraintError


def _floats(text):
    return [float(t) for t in text.split(",") if t.strip()]


def _ints(text):
    return [int(t) for t in text.split(",") if t.strip()]


def _eps_range(text):
    a, b, steps = text.split(":")
    return list(np.linspace(float(a), float(b), int(steps)))


def _add_run_options(p):
    p.add_argument("--example", type=int, choices=(1, 2), default=1)
    p.add_argument("--k", type=float, default=None, help="wavenumber (default: the example's)")
    p.add_argument("--eta", type=float, default=None, help="truncation offset, log(gamma) = 2k - eta (default k)")
    p.add_argument("--grid", type=GridSpec.parse, default=GridSpec(400, 80), metavar="MxN")
    p.add_argument("--q", type=int, default=1, help="linearization sweeps")
    p.add_argument("--seeds", type=_ints, default=[0], metavar="I,...")
    p.add_argument("--out", default=None, metavar="DIR", help="write grids, metrics and figures here")
    p.add_argument("--heatmaps", action="store_true", help="also emit PPM heatmaps and a PNG panel figure")
    p.add_argument("--neumann-as-printed", action="store_true",
                   help="use u1 = (u0 - u(x_1))/dx instead of the forward difference")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="helmcauchy",
                                     description="Frequency-truncated stabilization for the Helmholtz Cauchy problem.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="reconstruct one example for a list of noise levels")
    _add_run_options(run)
    run.add_argument("--eps", type=_floats, default=[0.99, 0.1], metavar="F,...")

    sweep = sub.add_parser("sweep", help="relative error over a range of noise levels")
    _add_run_options(sweep)
    sweep.add_argument("--eps-range", type=_eps_range, required=True, metavar="A:B:STEPS")

    sub.add_parser("oracle-check", help="evaluate the closed-form identities")
    return parser


def _config(args, eps) -> ExperimentConfig:
    return ExperimentConfig(example=args.example, k=args.k, eps=eps, eta=args.eta,
                            M=args.grid.M, N=args.grid.N, q=args.q, seeds=args.seeds,
                            output_dir=args.out, emit_heatmaps=args.heatmaps,
                            neumann_as_printed=args.neumann_as_printed)


def _print_record(record):
    print("eps,seed,E_percent")
    for row in record.metrics:
        print(f"{row['eps']:g},{row['seed']},{row['E_percent']:.6g}")
    for row in record.summary():
        print(f"# eps={row['eps']:g} mean={row['mean']:.6g} std={row['std']:.3g} n={row['n']}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    if args.command == "oracle-check":
        from .oracle import run_property_checks

        results = run_property_checks()
        for name, ok, detail in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        return 0 if all(ok for _, ok, _ in results) else 1

    try:
        if args.command == "run":
            record = run_example(_config(args, args.eps))
        else:
            record = run_sweep(_config(args, args.eps_range), args.eps_range)
    except (DiscreteResonanceError, StepConstraintError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _print_record(record)
    return 0


if __name__ == "__main__":
    sys.exit(main())
