"""Concentration behavior of randomly sampled points in the quadratic range.

Random unit pairs reduce, in expectation, to diag(trace(A)/n1, trace(D)/n2);
in high dimension the sampled 2x2 matrices cluster around that expectation,
so the sampled eigenvalue clouds collapse onto its two eigenvalues.  The
experiment here measures how often the Hausdorff distance between the sampled
spectrum and the expected spectrum exceeds a set of thresholds, across a
family of matrices of growing dimension, and fits the empirical decay rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .kernel import quadratic_roots, quadratic_roots_batch, reduce_batch
from .linalg import BlockMatrix, derived_rng, sample_unit_batch

_BATCH = 8192


class EmptySetError(ValueError):
    """Hausdorff distance is undefined for empty sets."""


@dataclass(frozen=True)
class ExpectedReduced:
    """Expectation of the reduced 2x2 matrix over uniform unit pairs.

    Off-diagonal entries vanish in expectation, so only the two diagonal
    values are carried; the expected spectrum is exactly {ea, ed}.
    """

    ea: complex
    ed: complex

    def as_array(self) -> np.ndarray:
        return np.array([[self.ea, 0.0], [0.0, self.ed]], dtype=complex)

    def spectrum(self) -> np.ndarray:
        return np.array([self.ea, self.ed], dtype=complex)


@dataclass
class ConcentrationReport:
    """Exceedance table of one experiment run.

    ``exceedance[i, j]`` is the fraction of samples at ``dims[i]`` whose
    spectrum lies further than ``epsilons[j]`` (Hausdorff) from the expected
    spectrum.  ``n0[i]`` is the smaller subspace dimension at ``dims[i]``,
    the quantity the decay is driven by.  ``fitted_decay`` is the mean of the
    per-threshold least-squares slopes of log-exceedance against n0 (None
    when no threshold has two or more nonzero fractions); per-threshold
    slopes are kept alongside.
    """

    dims: list[int]
    n0: list[int]
    epsilons: list[float]
    exceedance: np.ndarray
    samples_per_dim: int
    seed: int
    fitted_decay: float | None
    decay_per_epsilon: list[float | None]
    expected: list[tuple[complex, complex]]
    points: list[np.ndarray] | None = None  # per-dim sampled eigenvalues, opt-in


def expected_reduced(block: BlockMatrix) -> ExpectedReduced:
    """Expected reduced matrix: block traces over their dimensions."""
    return ExpectedReduced(
        ea=complex(np.trace(block.A)) / block.n1,
        ed=complex(np.trace(block.D)) / block.n2,
    )


def hausdorff(K, L) -> float:
    """Hausdorff distance between two finite nonempty point sets in C."""
    k = np.asarray(K, dtype=complex).reshape(-1)
    l = np.asarray(L, dtype=complex).reshape(-1)
    if k.size == 0 or l.size == 0:
        raise EmptySetError("both sets must be nonempty")
    dist = np.abs(k[:, None] - l[None, :])
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


def opnorm_2x2(m: np.ndarray) -> float:
    """Spectral norm of a 2x2 matrix in closed form."""
    a = np.asarray(m, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    t = float(np.sum(np.abs(a) ** 2))
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    gap = math.sqrt(max(t * t - 4.0 * abs(det) ** 2, 0.0))
    return math.sqrt(0.5 * (t + gap))


def perturbation_bound(m1: np.ndarray, m2: np.ndarray) -> tuple[float, float]:
    """Spectral Hausdorff distance of two 2x2 matrices and its proven bound.

    Returns (lhs, rhs) with lhs = d_H(spec(m1), spec(m2)) and
    rhs = sqrt((|m1| + |m2|) |m1 - m2|); the bound guarantees lhs <= rhs.
    """
    a1 = np.asarray(m1, dtype=complex)
    a2 = np.asarray(m2, dtype=complex)
    if a1.shape != (2, 2) or a2.shape != (2, 2):
        raise ValueError("expected 2x2 matrices")
    s1 = quadratic_roots(a1[0, 0], a1[0, 1], a1[1, 0], a1[1, 1])
    s2 = quadratic_roots(a2[0, 0], a2[0, 1], a2[1, 0], a2[1, 1])
    lhs = hausdorff(s1, s2)
    rhs = math.sqrt((opnorm_2x2(a1) + opnorm_2x2(a2)) * opnorm_2x2(a1 - a2))
    return lhs, rhs


def _hausdorff_to_pair_batch(eigs: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """d_H of each row of an (n, 2) eigenvalue array to a fixed 2-point set."""
    d = np.abs(eigs[:, :, None] - targets[None, None, :])  # (n, 2, 2)
    forward = d.min(axis=2).max(axis=1)
    backward = d.min(axis=1).max(axis=1)
    return np.maximum(forward, backward)


def sample_spectral_deviations(
    block: BlockMatrix, samples: int, rng: np.random.Generator, keep_points: bool = False
) -> tuple[np.ndarray, np.ndarray | None]:
    """Hausdorff deviation from the expected spectrum for ``samples`` pairs."""
    targets = expected_reduced(block).spectrum()
    out = np.empty(samples)
    points = np.empty(2 * samples, dtype=complex) if keep_points else None
    done = 0
    while done < samples:
        todo = min(_BATCH, samples - done)
        X = sample_unit_batch(rng, todo, block.n1)
        Y = sample_unit_batch(rng, todo, block.n2)
        eigs = quadratic_roots_batch(*reduce_batch(block, X, Y))
        out[done : done + todo] = _hausdorff_to_pair_batch(eigs, targets)
        if points is not None:
            points[2 * done : 2 * (done + todo)] = eigs.reshape(-1)
        done += todo
    return out, points


def concentration_experiment(
    family: Callable[[int], BlockMatrix],
    dims: Sequence[int],
    samples_per_dim: int,
    epsilons: Sequence[float],
    seed: int = 0,
    keep_points: bool = False,
) -> ConcentrationReport:
    """Tabulate spectral-deviation exceedance fractions across dimensions.

    ``family(dim)`` must build the test matrix of total dimension ``dim``.
    Each dimension gets its own generator derived from ``seed``, so results
    are reproducible and dimensions are independent.
    """
    dims = [int(d) for d in dims]
    if any(b <= a for a, b in zip(dims, dims[1:])):
        raise ValueError("dims must be strictly ascending")
    if samples_per_dim < 1000:
        raise ValueError("need at least 1000 samples per dimension")
    eps = [float(e) for e in epsilons]

    exceedance = np.empty((len(dims), len(eps)))
    n0: list[int] = []
    expected: list[tuple[complex, complex]] = []
    clouds: list[np.ndarray] | None = [] if keep_points else None
    for i, dim in enumerate(dims):
        block = family(dim)
        n0.append(min(block.n1, block.n2))
        er = expected_reduced(block)
        expected.append((er.ea, er.ed))
        deviations, pts = sample_spectral_deviations(
            block, samples_per_dim, derived_rng(seed, i), keep_points=keep_points
        )
        for j, e in enumerate(eps):
            exceedance[i, j] = float(np.mean(deviations > e))
        if clouds is not None:
            clouds.append(pts)

    slopes: list[float | None] = []
    for j in range(len(eps)):
        mask = exceedance[:, j] > 0.0
        if int(mask.sum()) >= 2:
            xs = np.asarray(n0, dtype=float)[mask]
            ys = np.log(exceedance[mask, j])
            slopes.append(float(np.polyfit(xs, ys, 1)[0]))
        else:
            slopes.append(None)
    usable = [s for s in slopes if s is not None]
    fitted = float(np.mean(usable)) if usable else None

    return ConcentrationReport(
        dims=dims,
        n0=n0,
        epsilons=eps,
        exceedance=exceedance,
        samples_per_dim=int(samples_per_dim),
        seed=int(seed),
        fitted_decay=fitted,
        decay_per_epsilon=slopes,
        expected=expected,
        points=clouds,
    )
