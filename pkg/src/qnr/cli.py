"""Command-line interface.

Exit codes: 0 on success, 1 on bad flags or usage, 2 on input parse errors.
The environment variable QNR_SEED, when set, overrides --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .concentration import concentration_experiment
from .driver import DriverConfig, compute_qnr, random_sampling_baseline
from .io import (
    W_COLOR,
    parse_duration,
    render_svg,
    scatter_svg,
    write_cloud_csv,
    write_cloud_json,
)
from .linalg import BlockMatrix
from .zoo import FIXED_DIMS, GENERATORS, PARAMETRIC, ParseError, SplitOutOfRange, load_block_matrix, make_generator


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; the CLI contract wants 1
    def error(self, message):
        raise _UsageError(message)


def _int_list(text: str) -> list[int]:
    return [int(p) for p in text.split(",") if p.strip()]


def _float_list(text: str) -> list[float]:
    return [float(p) for p in text.split(",") if p.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qnr", description="Quadratic numerical range toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_matrix_flags(p):
        p.add_argument("--gen", choices=sorted(GENERATORS), help="built-in matrix family")
        p.add_argument("--dim", type=int, help="total dimension for parametric families")
        p.add_argument("--matrix", help="matrix file (.json or Matrix Market)")
        p.add_argument("--split", type=int, help="block split index for Matrix Market input")
        p.add_argument("--seed", type=int, default=0)

    compute = sub.add_parser("compute", help="compute a point cloud of the range")
    add_matrix_flags(compute)
    compute.add_argument("--method", choices=("algorithm", "sampling"), default="algorithm")
    compute.add_argument("--budget", help="wall-clock budget, e.g. 60s, 5m, 1h")
    compute.add_argument("--samples", type=int, help="sample count (sampling method)")
    compute.add_argument(
        "--outer-iterations",
        type=int,
        help="run a fixed number of outer iterations instead of a time budget",
    )
    compute.add_argument("--alpha", type=float, default=0.0, help="component split angle")
    compute.add_argument("--out", help="cloud CSV output path (required)")
    compute.add_argument("--json", dest="json_out", help="optional cloud JSON output path")
    compute.add_argument("--svg", help="optional scatter SVG output path")
    compute.add_argument("--initial-samples", type=int, default=256)
    compute.add_argument("--boxes", type=int, default=20, help="initial grid boxes per side")
    compute.add_argument("--directions", type=int, default=5, help="seek directions per start")
    compute.add_argument("--seek-iterations", type=int, default=2)
    compute.add_argument(
        "--include-border", action="store_true", help="also seed from edge grid boxes"
    )
    compute.add_argument(
        "--two-dimensional-search",
        action="store_true",
        help="line-search the full (s, t) product grid instead of the diagonal",
    )

    conc = sub.add_parser("concentration", help="sampled-spectrum concentration experiment")
    add_matrix_flags(conc)
    conc.add_argument("--dims", type=_int_list, help="comma-separated total dimensions")
    conc.add_argument("--samples", type=int, default=100_000)
    conc.add_argument("--eps", type=_float_list, default=[0.25, 0.5, 1.0])
    conc.add_argument("--out", help="JSON report output path (required)")
    conc.add_argument(
        "--svg-prefix", help="write one scatter SVG per dimension under this path prefix"
    )
    return parser


def _resolve_seed(args) -> int:
    env = os.environ.get("QNR_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"QNR_SEED must be an integer, got {env!r}") from None
    return args.seed


def _load_matrix(args) -> tuple[BlockMatrix, str]:
    if (args.gen is None) == (args.matrix is None):
        raise _UsageError("give exactly one of --gen and --matrix")
    if args.gen is not None:
        if args.gen in PARAMETRIC:
            if args.dim is None:
                raise _UsageError(f"--gen {args.gen} needs --dim")
            return make_generator(args.gen)(args.dim), args.gen
        if args.dim is not None and args.dim != FIXED_DIMS[args.gen]:
            raise _UsageError(
                f"--gen {args.gen} is fixed at dimension {FIXED_DIMS[args.gen]}"
            )
        return make_generator(args.gen)(FIXED_DIMS[args.gen]), args.gen
    block = load_block_matrix(args.matrix, args.split)
    return block, args.matrix


def cmd_compute(args) -> int:
    if args.out is None:
        raise _UsageError("--out is required")
    block, matrix_id = _load_matrix(args)
    seed = _resolve_seed(args)

    if args.method == "sampling":
        if (args.samples is None) == (args.budget is None):
            raise _UsageError("sampling needs exactly one of --samples and --budget")
        budget = parse_duration(args.budget) if args.budget else None
        started = time.monotonic()
        cloud = random_sampling_baseline(
            block, count=args.samples, budget_s=budget, alpha=args.alpha, seed=seed
        )
        elapsed = time.monotonic() - started
        meta_budget = budget
    else:
        if (args.budget is None) == (args.outer_iterations is None):
            raise _UsageError("algorithm needs exactly one of --budget and --outer-iterations")
        budget = parse_duration(args.budget) if args.budget else None
        cfg = DriverConfig(
            alpha=args.alpha,
            time_budget=budget,
            max_outer_iterations=args.outer_iterations,
            initial_samples=args.initial_samples,
            boxes_initial=args.boxes,
            directions_per_start=args.directions,
            seek_iterations=args.seek_iterations,
            seed=seed,
            include_border=args.include_border,
            two_dimensional_search=args.two_dimensional_search,
        )
        started = time.monotonic()
        cloud = compute_qnr(block, cfg)
        elapsed = time.monotonic() - started
        meta_budget = budget

    write_cloud_csv(cloud, args.out)
    if args.json_out:
        write_cloud_json(
            cloud,
            args.json_out,
            metadata={
                "matrix": matrix_id,
                "method": args.method,
                "seed": seed,
                "alpha": args.alpha,
                "budget_s": meta_budget,
            },
        )
    if args.svg:
        render_svg(cloud, args.svg)
    print(
        f"{matrix_id}: {args.method} produced {len(cloud)} pairs "
        f"({2 * len(cloud)} points) in {elapsed:.2f}s -> {args.out}"
    )
    return 0


def cmd_concentration(args) -> int:
    if args.out is None:
        raise _UsageError("--out is required")
    seed = _resolve_seed(args)
    if args.matrix is not None:
        if args.gen is not None:
            raise _UsageError("give exactly one of --gen and --matrix")
        block = load_block_matrix(args.matrix, args.split)
        family = lambda dim: block  # noqa: E731 - single fixed matrix
        dims = [block.n]
        matrix_id = args.matrix
    else:
        if args.gen is None:
            raise _UsageError("give exactly one of --gen and --matrix")
        family = make_generator(args.gen)
        matrix_id = args.gen
        if args.gen in PARAMETRIC:
            if not args.dims:
                raise _UsageError(f"--gen {args.gen} needs --dims")
            dims = args.dims
        else:
            dims = [FIXED_DIMS[args.gen]]
            if args.dims and args.dims != dims:
                raise _UsageError(f"--gen {args.gen} is fixed at dimension {dims[0]}")

    report = concentration_experiment(
        family,
        dims,
        args.samples,
        args.eps,
        seed=seed,
        keep_points=bool(args.svg_prefix),
    )
    doc = {
        "matrix": matrix_id,
        "seed": seed,
        "dims": report.dims,
        "n0": report.n0,
        "epsilons": report.epsilons,
        "samples_per_dim": report.samples_per_dim,
        "exceedance": [[float(v) for v in row] for row in report.exceedance],
        "fitted_decay": report.fitted_decay,
        "decay_per_epsilon": report.decay_per_epsilon,
        "expected": [
            {"ea": [ea.real, ea.imag], "ed": [ed.real, ed.imag]}
            for ea, ed in report.expected
        ],
    }
    Path(args.out).write_text(json.dumps(doc, sort_keys=True))
    if args.svg_prefix:
        for dim, pts in zip(report.dims, report.points):
            Path(f"{args.svg_prefix}dim{dim}.svg").write_text(
                scatter_svg([(pts, W_COLOR)])
            )
    print(f"{matrix_id}: concentration table over dims {report.dims} -> {args.out}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "compute":
            return cmd_compute(args)
        return cmd_concentration(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except (ParseError, SplitOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
