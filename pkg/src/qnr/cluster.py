"""Single-linkage component counting for planar point clouds.

Two points belong to the same cluster at a cutoff when a chain of points
with consecutive distances at most the cutoff connects them.  For points in
the plane the Euclidean minimum spanning tree is a subgraph of the Delaunay
triangulation, so thresholding the Delaunay edges gives the exact clusters
without the quadratic all-pairs graph.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import Delaunay, QhullError


def _components_from_edges(n: int, edges: np.ndarray, weights: np.ndarray, cutoff: float) -> int:
    keep = weights <= cutoff
    if not np.any(keep):
        return n
    e = edges[keep]
    graph = coo_matrix(
        (np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(n, n)
    )
    count, _ = connected_components(graph, directed=False)
    return int(count)


def _collinear_components(coords: np.ndarray, cutoff: float) -> int:
    # exact for degenerate (rank <= 1) point sets: sort along the line and
    # count gaps larger than the cutoff
    centered = coords - coords.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    t = np.sort(centered @ vt[0])
    return 1 + int(np.sum(np.diff(t) > cutoff))


def single_link_components(points, cutoff: float) -> int:
    """Number of single-linkage clusters of a complex point set at ``cutoff``."""
    pts = np.unique(np.asarray(points, dtype=complex).reshape(-1))
    n = pts.size
    if n == 0:
        raise ValueError("need at least one point")
    if n == 1:
        return 1
    coords = np.column_stack([pts.real, pts.imag])
    if n <= 3:
        d = np.abs(pts[:, None] - pts[None, :])
        idx = np.column_stack(np.triu_indices(n, 1))
        return _components_from_edges(n, idx, d[idx[:, 0], idx[:, 1]], cutoff)
    try:
        tri = Delaunay(coords)
    except QhullError:
        return _collinear_components(coords, cutoff)
    simplices = tri.simplices
    edges = np.concatenate(
        [simplices[:, [0, 1]], simplices[:, [1, 2]], simplices[:, [0, 2]]]
    )
    edges = np.unique(np.sort(edges, axis=1), axis=0)
    weights = np.abs(pts[edges[:, 0]] - pts[edges[:, 1]])
    return _components_from_edges(n, edges, weights, cutoff)
