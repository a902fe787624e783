#!/usr/bin/env python3
"""Side-by-side comparison: boundary-seeking driver versus random sampling.

Runs both methods on the same matrix for the same wall-clock budget, writes
one CSV and one SVG per method, and prints how many cells of a 100x100
reference grid over the union bounding box each cloud occupies.

Example:
    python scripts/compare_methods.py --gen a1 --dim 40 --budget 60 --out-dir out/
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from qnr.driver import DriverConfig, compute_qnr, random_sampling_baseline
from qnr.io import render_svg, write_cloud_csv
from qnr.zoo import make_generator


def occupied_cells(points: np.ndarray, bbox, resolution: int = 100) -> int:
    x0, x1, y0, y1 = bbox
    ix = np.clip(((points.real - x0) / (x1 - x0) * resolution).astype(int), 0, resolution - 1)
    iy = np.clip(((points.imag - y0) / (y1 - y0) * resolution).astype(int), 0, resolution - 1)
    return int(np.unique(ix * resolution + iy).size)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gen", default="a1")
    ap.add_argument("--dim", type=int, default=40)
    ap.add_argument("--budget", type=float, default=60.0, help="seconds per method")
    ap.add_argument("--alpha", type=float, default=0.0)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out-dir", default="out")
    args = ap.parse_args()

    block = make_generator(args.gen)(args.dim)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    print(f"running the driver for {args.budget:.0f}s ...")
    alg = compute_qnr(
        block, DriverConfig(alpha=args.alpha, time_budget=args.budget, seed=args.seed)
    )
    print(f"  {len(alg)} pairs")
    print(f"running random sampling for {args.budget:.0f}s ...")
    base = random_sampling_baseline(
        block, budget_s=args.budget, alpha=args.alpha, seed=args.seed
    )
    print(f"  {len(base)} pairs")

    for name, cloud in (("algorithm", alg), ("sampling", base)):
        write_cloud_csv(cloud, out / f"{args.gen}_{name}.csv")
        render_svg(cloud, out / f"{args.gen}_{name}.svg")

    both = np.concatenate([alg.all_points(), base.all_points()])
    bbox = (both.real.min(), both.real.max(), both.imag.min(), both.imag.max())
    ca = occupied_cells(alg.all_points(), bbox)
    cb = occupied_cells(base.all_points(), bbox)
    print(f"reference-grid coverage: algorithm {ca} cells, sampling {cb} cells "
          f"(ratio {ca / cb:.2f})")
    print(f"outputs in {out}/")


if __name__ == "__main__":
    main()
