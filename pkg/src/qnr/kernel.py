"""The 2x2 reduction at a unit pair, its eigenvalues, and the ascent objective.

Every map of the quadratic numerical range factors through the 2x2 matrix

    [[<A x, x>, <B y, x>],
     [<C x, y>, <D y, y>]]

whose two eigenvalues are the points contributed by the pair (x, y).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .linalg import TWO_PI, BlockMatrix, UnitPair, inner


class RadicandOnCut(ValueError):
    """The branch-root radicand lies on the chosen cut ray; rotate the cut."""


@dataclass(frozen=True)
class Reduced2x2:
    """Entries of the reduced 2x2 matrix at a unit pair."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            z = getattr(self, name)
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError(f"entry {name} is not finite: {z!r}")

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def trace(self) -> complex:
        return self.a + self.d

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c


@dataclass(frozen=True)
class EigenSplit:
    """The two eigenvalues labeled by the direction-alpha selection rule.

    ``lambda_alpha`` has the larger real part after rotation by exp(i*alpha);
    on equal rotated real parts the larger rotated imaginary part wins, and a
    double root fills both slots.
    """

    lambda_alpha: complex
    lambda_alpha_pi: complex
    alpha: float


@dataclass(frozen=True)
class ObjectiveParams:
    """Parameters of the penalized ascent objective.

    The objective at a pair is ``Re(L) - penalty * Im(L - lambda0)**2`` where
    ``L`` is the direction-``alpha`` eigenvalue of the reduced matrix.
    """

    alpha: float = 0.0
    lambda0: complex = 0j
    penalty: float = 0.0

    def __post_init__(self):
        if not self.penalty >= 0.0:
            raise ValueError(f"penalty must be nonnegative, got {self.penalty}")
        object.__setattr__(self, "alpha", float(self.alpha) % TWO_PI)
        object.__setattr__(self, "lambda0", complex(self.lambda0))


def reduce_pair(block: BlockMatrix, pair: UnitPair) -> Reduced2x2:
    """Reduce (x, y) to the four quadratic/bilinear forms."""
    if pair.n1 != block.n1 or pair.n2 != block.n2:
        raise ValueError(
            f"pair dimensions ({pair.n1}, {pair.n2}) do not match "
            f"block dimensions ({block.n1}, {block.n2})"
        )
    x, y = pair.x, pair.y
    return Reduced2x2(
        a=inner(block.A @ x, x),
        b=inner(block.B @ y, x),
        c=inner(block.C @ x, y),
        d=inner(block.D @ y, y),
    )


def quadratic_roots(a: complex, b: complex, c: complex, d: complex) -> tuple[complex, complex]:
    """Roots of z**2 - (a+d) z + (a d - b c), cancellation-safe.

    The root of larger magnitude is formed first; the other is recovered from
    the product of roots, avoiding the subtractive cancellation of the naive
    formula when b*c is close to ((a-d)/2)**2.
    """
    mean = 0.5 * (a + d)
    radicand = mean * mean - (a * d - b * c)  # == ((a-d)/2)**2 + b*c
    s = cmath.sqrt(radicand)
    if mean.real * s.real + mean.imag * s.imag < 0.0:
        s = -s
    big = mean + s
    if big == 0:  # then both roots vanish
        return 0j, 0j
    return big, (a * d - b * c) / big


def eigen2x2(m: Reduced2x2) -> tuple[complex, complex]:
    """Unordered eigenvalue pair of the reduced matrix (double roots repeated)."""
    return quadratic_roots(m.a, m.b, m.c, m.d)


def split_by_alpha(eigs: tuple[complex, complex], alpha: float) -> EigenSplit:
    """Label an unordered eigenvalue pair by the direction-alpha rule."""
    alpha = float(alpha) % TWO_PI
    phase = cmath.exp(1j * alpha)
    l1, l2 = complex(eigs[0]), complex(eigs[1])
    r1, r2 = (phase * l1).real, (phase * l2).real
    if r1 > r2 or (r1 == r2 and (phase * l1).imag >= (phase * l2).imag):
        return EigenSplit(l1, l2, alpha)
    return EigenSplit(l2, l1, alpha)


def _on_ray(z: complex, angle: float) -> bool:
    # the ray {r * exp(i*angle) : r >= 0}; exact comparison, so only values
    # landing on the ray in floating point trigger (e.g. negative reals when
    # angle == pi)
    if z == 0:
        return True
    ph = cmath.phase(z)
    if ph < 0.0:
        ph += TWO_PI
    return ph == float(angle) % TWO_PI


def branch_sqrt(z: complex, cut_angle: float) -> complex:
    """Square root with the branch cut along the ray at ``cut_angle``.

    The branch is fixed by rotating the cut onto the principal one: the
    result is exp(i*w/2) * principal_sqrt(exp(-i*w) * z) with
    w = (cut_angle - pi) mod 2*pi, evaluated without the lossy rotation.
    For cut_angle = pi this is the principal square root.
    """
    if _on_ray(z, cut_angle):
        raise RadicandOnCut(f"value {z!r} lies on the cut ray at angle {cut_angle}")
    omega = (float(cut_angle) - math.pi) % TWO_PI
    s = cmath.sqrt(complex(z))
    direction = cmath.exp(0.5j * omega)
    proj = direction.real * s.real + direction.imag * s.imag  # Re(conj(dir) * s)
    if proj < 0.0:
        return -s
    if proj == 0.0 and direction.real * s.imag - direction.imag * s.real < 0.0:
        return -s  # only reachable by rounding right next to the cut
    return s


def branch_eigenvalues(m: Reduced2x2, cut_angle: float = math.pi) -> tuple[complex, complex]:
    """Eigenvalues as mean +/- branch-root, split consistently by one branch.

    With a cut angle admissible for a whole neighborhood, the two returned
    components vary continuously with the pair and separate the two sheets of
    the quadratic numerical range.  Raises :class:`RadicandOnCut` when the
    radicand lands on the cut ray.
    """
    mean = 0.5 * (m.a + m.d)
    half_diff = 0.5 * (m.a - m.d)
    radicand = half_diff * half_diff + m.b * m.c
    q = branch_sqrt(radicand, cut_angle)
    return mean + q, mean - q


def objective(block: BlockMatrix, pair: UnitPair, params: ObjectiveParams) -> float:
    """Penalized boundary-seeking objective at a pair."""
    split = split_by_alpha(eigen2x2(reduce_pair(block, pair)), params.alpha)
    lam = split.lambda_alpha
    dev = (lam - params.lambda0).imag
    return lam.real - params.penalty * dev * dev


# -- batched variants -------------------------------------------------------
#
# The Monte-Carlo experiments evaluate the reduction for 1e5+ pairs; the
# helpers below vectorize the exact same arithmetic over rows of X and Y.


def reduce_batch(block: BlockMatrix, X: np.ndarray, Y: np.ndarray):
    """Entries (a, b, c, d) of the reduced matrix for each row pair of X, Y."""
    Xc, Yc = X.conj(), Y.conj()
    a = np.einsum("ni,ni->n", X @ block.A.T, Xc)
    b = np.einsum("ni,ni->n", Y @ block.B.T, Xc)
    c = np.einsum("ni,ni->n", X @ block.C.T, Yc)
    d = np.einsum("ni,ni->n", Y @ block.D.T, Yc)
    return a, b, c, d


def quadratic_roots_batch(a, b, c, d) -> np.ndarray:
    """Vectorized :func:`quadratic_roots`; returns shape (n, 2)."""
    mean = 0.5 * (a + d)
    prod = a * d - b * c
    s = np.sqrt((mean * mean - prod).astype(complex))
    flip = mean.real * s.real + mean.imag * s.imag < 0.0
    s = np.where(flip, -s, s)
    big = mean + s
    safe = np.where(big == 0, 1.0, big)
    small = np.where(big == 0, 0j, prod / safe)
    return np.stack([big, small], axis=1)


def split_batch(eigs: np.ndarray, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized selection rule over rows of an (n, 2) eigenvalue array."""
    phase = cmath.exp(1j * (float(alpha) % TWO_PI))
    rot = phase * eigs
    first = (rot[:, 0].real > rot[:, 1].real) | (
        (rot[:, 0].real == rot[:, 1].real) & (rot[:, 0].imag >= rot[:, 1].imag)
    )
    lam = np.where(first, eigs[:, 0], eigs[:, 1])
    lam_pi = np.where(first, eigs[:, 1], eigs[:, 0])
    return lam, lam_pi
