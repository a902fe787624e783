"""Box-grid selection of boundary-seek starting points from a point cloud.

The bounding rectangle of the cloud component is cut into boxes_per_side^2
equal boxes.  The first sample to land in a box becomes its representative;
representatives whose full 3x3 box neighborhood is occupied are interior and
dropped.  The survivors, scanned over the interior index range, seed the next
boundary-seeking pass, together with a penalty constant that grows
quadratically with the pass number and linearly with the cloud extent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import UnitPair

# any extent below this is treated as collapsed to a point/line
_DEGENERATE_EXTENT = 1e-300


@dataclass
class PointCloud:
    """Accumulated eigenvalue arrays with the pairs that generated them.

    ``W[j]`` and ``W_tilde[j]`` are the two eigenvalues of the reduction at
    ``pairs[j]``.  ``pairs`` may be ``None`` for bulk clouds where storing
    one unit pair per point is not affordable.
    """

    W: np.ndarray
    W_tilde: np.ndarray
    pairs: list[UnitPair] | None = None

    def __post_init__(self):
        self.W = np.asarray(self.W, dtype=complex).reshape(-1)
        self.W_tilde = np.asarray(self.W_tilde, dtype=complex).reshape(-1)
        if self.W.size != self.W_tilde.size:
            raise ValueError("W and W_tilde must have equal length")
        if self.pairs is not None and len(self.pairs) != self.W.size:
            raise ValueError("pairs must align with W and W_tilde")

    def __len__(self) -> int:
        return int(self.W.size)

    def all_points(self) -> np.ndarray:
        return np.concatenate([self.W, self.W_tilde])


@dataclass
class GridSelection:
    """Result of one grid pass: grids, surviving starts, and the penalty."""

    boxes_per_side: int
    occupancy: np.ndarray  # (B, B) of {0, 1}
    index: np.ndarray  # (B, B); 1-based sample index, 0 = empty or pruned
    starts: list[tuple[UnitPair, complex]] = field(default_factory=list)
    penalty: float = 0.0
    cell_width: float = 1.0
    cell_height: float = 1.0


def box_indices(
    points: np.ndarray,
    re_min: float,
    im_max: float,
    cell_width: float,
    cell_height: float,
    boxes_per_side: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Row (from the top) and column (from the left) box index of each point."""
    pts = np.asarray(points, dtype=complex).reshape(-1)
    k = ((im_max - pts.imag) / cell_height).astype(np.int64)
    l = ((pts.real - re_min) / cell_width).astype(np.int64)
    k[k == boxes_per_side] -= 1
    l[l == boxes_per_side] -= 1
    return k, l


def grid_select(
    points,
    pairs: list[UnitPair],
    boxes_per_side: int,
    iteration: int,
    include_border: bool = False,
) -> GridSelection:
    """Select starting points for the next pass from one cloud component.

    ``points`` and ``pairs`` are aligned; the first-come representative rule
    makes the append order of the cloud part of the deterministic contract.
    ``include_border`` extends the final scan to edge boxes (the default
    interior-only scan matches the reference pseudocode).
    """
    pts = np.asarray(points, dtype=complex).reshape(-1)
    if pts.size == 0:
        raise ValueError("cannot build a grid over an empty cloud")
    if boxes_per_side < 2:
        raise ValueError("boxes_per_side must be at least 2")
    if len(pairs) != pts.size:
        raise ValueError("pairs must align with points")
    B = int(boxes_per_side)

    re, im = pts.real, pts.imag
    re_min, re_max = float(re.min()), float(re.max())
    im_min, im_max = float(im.min()), float(im.max())
    width, height = re_max - re_min, im_max - im_min
    penalty = (iteration * iteration / 100.0) * max(width, height)

    # a collapsed dimension maps every point to row/column 0 (cell size 1)
    h_re = width / B if width >= _DEGENERATE_EXTENT else 1.0
    h_im = height / B if height >= _DEGENERATE_EXTENT else 1.0

    k, l = box_indices(pts, re_min, im_max, h_re, h_im, B)

    occupancy = np.zeros((B, B), dtype=np.uint8)
    index = np.zeros((B, B), dtype=np.int64)
    cells = k * B + l
    uniq, first = np.unique(cells, return_index=True)  # first occurrence wins
    occupancy.flat[uniq] = 1
    index.flat[uniq] = first + 1

    if B > 2:
        # a box is interior when its whole 3x3 neighborhood is occupied
        full = np.ones((B - 2, B - 2), dtype=bool)
        for dk in (0, 1, 2):
            for dl in (0, 1, 2):
                full &= occupancy[dk : dk + B - 2, dl : dl + B - 2] == 1
        inner = index[1 : B - 1, 1 : B - 1]
        inner[full] = 0

    starts: list[tuple[UnitPair, complex]] = []
    if include_border:
        scan = index
    else:
        scan = index[1 : B - 1, 1 : B - 1]
    for idx in scan.reshape(-1):
        if idx != 0:
            j = int(idx) - 1
            starts.append((pairs[j], complex(pts[j])))

    return GridSelection(
        boxes_per_side=B,
        occupancy=occupancy,
        index=index,
        starts=starts,
        penalty=float(penalty),
        cell_width=float(h_re),
        cell_height=float(h_im),
    )


def should_escalate(previous_count: int, current_count: int, ratio: float = 0.99) -> bool:
    """True when the start count stagnated: current/previous in (ratio, 1].

    A zero previous count (the state before the first pass) never escalates.
    The comparison is exact: 100/100 escalates, 99/100 does not.
    """
    if previous_count < 0 or current_count < 0:
        raise ValueError("counts must be nonnegative")
    if previous_count == 0 or current_count > previous_count:
        return False
    return Fraction(current_count, previous_count) > Fraction(str(ratio))
