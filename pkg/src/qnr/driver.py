"""Full computation of the quadratic numerical range, plus the sampling baseline.

The driver seeds both cloud components with random pairs, then alternates two
passes per outer iteration: one selects starts from W on a grid of B boxes,
the other from W_tilde on its own grid.  Every start is pushed outward along
five rotated copies of the matrix (a random base direction plus equal 2*pi/5
offsets); each seek contributes the direction-alpha eigenvalue of every
visited pair to W and the opposite one to W_tilde, both computed against the
unrotated matrix.  When a pass produces essentially as many starts as the
previous one of its kind, its grid is refined by a factor sqrt(2).  The run
stops at the wall-clock budget (checked at pass starts and after every
direction) or after a fixed number of outer iterations.

All randomness flows through one generator seeded from the config, and the
starts are processed in grid-scan order, so a run with the time budget
replaced by an iteration cap is fully reproducible.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass

import numpy as np

from .grid import PointCloud, grid_select, should_escalate
from .kernel import (
    ObjectiveParams,
    quadratic_roots,
    quadratic_roots_batch,
    reduce_batch,
    reduce_pair,
    split_batch,
    split_by_alpha,
)
from .linalg import TWO_PI, BlockMatrix, UnitPair, sample_unit_batch
from .seeker import SeekConfig, seek_boundary


@dataclass
class DriverConfig:
    """Settings for one driver run.

    Exactly one of ``time_budget`` (seconds) and ``max_outer_iterations``
    must be set; the latter disables the clock entirely and makes the run
    deterministic for a fixed seed.
    """

    alpha: float = 0.0
    time_budget: float | None = 60.0
    max_outer_iterations: int | None = None
    initial_samples: int = 256
    boxes_initial: int = 20
    directions_per_start: int = 5
    seek_iterations: int = 2
    seed: int = 0
    escalation_ratio: float = 0.99
    escalation_factor: float = math.sqrt(2.0)
    include_border: bool = False
    line_search_grid: int = 64
    line_search_tol: float = 1e-6
    two_dimensional_search: bool = False

    def __post_init__(self):
        if self.initial_samples < 1:
            raise ValueError("initial_samples must be at least 1")
        if self.directions_per_start < 1:
            raise ValueError("directions_per_start must be at least 1")
        if self.seek_iterations < 1:
            raise ValueError("seek_iterations must be at least 1")
        if self.time_budget is None and self.max_outer_iterations is None:
            raise ValueError("set a time_budget or max_outer_iterations")
        if self.time_budget is not None and not self.time_budget > 0:
            raise ValueError("time_budget must be positive")

    def seek_config(self) -> SeekConfig:
        return SeekConfig(
            i_max=self.seek_iterations,
            line_search_grid=self.line_search_grid,
            line_search_tol=self.line_search_tol,
            two_dimensional=self.two_dimensional_search,
        )


def random_sampling_baseline(
    block: BlockMatrix,
    *,
    count: int | None = None,
    budget_s: float | None = None,
    alpha: float = 0.0,
    seed: int = 0,
    keep_pairs: bool = False,
    batch_size: int = 1024,
) -> PointCloud:
    """Plain random-vector sampling of the quadratic numerical range.

    Draws unit pairs, reduces each to its two eigenvalues and appends them to
    W / W_tilde by the direction-``alpha`` rule until ``count`` samples are
    done or the wall-clock ``budget_s`` runs out.  For a fixed seed and count
    the point set is deterministic.
    """
    if (count is None) == (budget_s is None):
        raise ValueError("give exactly one of count and budget_s")
    if count is not None and count < 0:
        raise ValueError("count must be nonnegative")
    rng = np.random.default_rng(seed)
    deadline = None if budget_s is None else time.monotonic() + budget_s

    w_parts: list[np.ndarray] = []
    wt_parts: list[np.ndarray] = []
    pairs: list[UnitPair] | None = [] if keep_pairs else None
    done = 0
    while True:
        if count is not None:
            todo = min(batch_size, count - done)
            if todo == 0:
                break
        else:
            if time.monotonic() >= deadline:
                break
            todo = batch_size
        X = sample_unit_batch(rng, todo, block.n1)
        Y = sample_unit_batch(rng, todo, block.n2)
        eigs = quadratic_roots_batch(*reduce_batch(block, X, Y))
        lam, lam_pi = split_batch(eigs, alpha)
        w_parts.append(lam)
        wt_parts.append(lam_pi)
        if pairs is not None:
            pairs.extend(UnitPair(x, y) for x, y in zip(X, Y))
        done += todo

    if not w_parts:
        empty = np.empty(0, dtype=complex)
        return PointCloud(empty, empty, pairs)
    return PointCloud(np.concatenate(w_parts), np.concatenate(wt_parts), pairs)


def compute_qnr(block: BlockMatrix, cfg: DriverConfig) -> PointCloud:
    """Run the full grid-and-seek computation of the quadratic numerical range."""
    rng = np.random.default_rng(cfg.seed)
    alpha = float(cfg.alpha) % TWO_PI
    seek_cfg = cfg.seek_config()

    W: list[complex] = []
    Wt: list[complex] = []
    pairs: list[UnitPair] = []

    def append_pair(pair: UnitPair) -> None:
        red = reduce_pair(block, pair)
        split = split_by_alpha(quadratic_roots(red.a, red.b, red.c, red.d), alpha)
        W.append(split.lambda_alpha)
        Wt.append(split.lambda_alpha_pi)
        pairs.append(pair)

    X = sample_unit_batch(rng, cfg.initial_samples, block.n1)
    Y = sample_unit_batch(rng, cfg.initial_samples, block.n2)
    for x, y in zip(X, Y):
        append_pair(UnitPair(x, y))

    boxes = [cfg.boxes_initial, cfg.boxes_initial]  # per pass: W-grid, Wt-grid
    counts = [0, 0]
    deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget

    def out_of_time() -> bool:
        return deadline is not None and time.monotonic() > deadline

    timeflag = False
    outer = 0
    while not timeflag:
        if cfg.max_outer_iterations is not None and outer >= cfg.max_outer_iterations:
            break
        for half, j_angle in enumerate((0.0, math.pi)):
            if out_of_time():
                timeflag = True
                break
            component = W if half == 0 else Wt
            selection = grid_select(
                component, pairs, boxes[half], outer, include_border=cfg.include_border
            )
            for start_pair, lam0 in selection.starts:
                theta0 = rng.uniform(0.0, TWO_PI)
                for direction in range(cfg.directions_per_start):
                    theta = theta0 + direction * TWO_PI / cfg.directions_per_start
                    rotated = block.rotated(theta)
                    params = ObjectiveParams(
                        alpha=alpha + j_angle - theta,
                        lambda0=cmath.exp(1j * theta) * lam0,
                        penalty=selection.penalty,
                    )
                    for visited in seek_boundary(rotated, start_pair, params, seek_cfg):
                        append_pair(visited)
                    if out_of_time():
                        timeflag = True
                        break
                if timeflag:
                    break
            if timeflag:
                break
            n_starts = len(selection.starts)
            if should_escalate(counts[half], n_starts, cfg.escalation_ratio):
                boxes[half] = int(cfg.escalation_factor * boxes[half])
            counts[half] = n_starts
        outer += 1

    return PointCloud(np.array(W, dtype=complex), np.array(Wt, dtype=complex), pairs)
