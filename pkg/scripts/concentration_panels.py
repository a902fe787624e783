#!/usr/bin/env python3
"""Concentration panels: sampled spectra of one matrix family across dimensions.

For each dimension, draws random unit pairs, collects the sampled eigenvalue
cloud, and writes one scatter panel; the exceedance table and the fitted
decay slope go into a JSON report.  The clustering of the panels onto the two
expected eigenvalues as the dimension grows is the phenomenon under study.

Example:
    python scripts/concentration_panels.py --dims 4,8,16,32,64,128 --samples 100000
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from qnr.concentration import concentration_experiment
from qnr.io import W_COLOR, scatter_svg
from qnr.zoo import make_generator


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gen", default="a5")
    ap.add_argument("--dims", default="4,8,16,32,64,128")
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--eps", default="0.25,0.5,1.0")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out-dir", default="out")
    args = ap.parse_args()

    dims = [int(d) for d in args.dims.split(",")]
    epsilons = [float(e) for e in args.eps.split(",")]
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    report = concentration_experiment(
        make_generator(args.gen), dims, args.samples, epsilons,
        seed=args.seed, keep_points=True,
    )

    header = "dim   n0   " + "  ".join(f"P(d>{e:g})" for e in epsilons)
    print(header)
    for i, dim in enumerate(report.dims):
        row = "  ".join(f"{v:8.4f}" for v in report.exceedance[i])
        print(f"{dim:4d} {report.n0[i]:4d}  {row}")
    if report.fitted_decay is not None:
        print(f"fitted log-exceedance slope vs n0: {report.fitted_decay:.4f}")

    for dim, pts in zip(report.dims, report.points):
        (out / f"{args.gen}_dim{dim}.svg").write_text(scatter_svg([(pts, W_COLOR)]))

    doc = {
        "matrix": args.gen,
        "dims": report.dims,
        "n0": report.n0,
        "epsilons": report.epsilons,
        "samples_per_dim": report.samples_per_dim,
        "exceedance": [[float(v) for v in row] for row in report.exceedance],
        "fitted_decay": report.fitted_decay,
        "decay_per_epsilon": report.decay_per_epsilon,
        "seed": args.seed,
    }
    (out / f"{args.gen}_concentration.json").write_text(json.dumps(doc, sort_keys=True))
    print(f"panels and report in {out}/")


if __name__ == "__main__":
    main()
