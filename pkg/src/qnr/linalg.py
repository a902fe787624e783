"""Dense complex linear algebra: block matrices, unit-sphere pairs, norms.

Conventions used throughout the package:

* ``inner(u, v)`` is linear in the first argument and conjugate-linear in
  the second, so ``inner(A @ x, x)`` is the quadratic form of ``A`` at ``x``.
* random vectors are drawn uniformly from the complex unit sphere by
  normalizing i.i.d. standard complex Gaussians; the Gaussians come from a
  Box-Muller transform so the stream is fully determined by the generator's
  uniform output.
* random state is always an explicit ``numpy.random.Generator`` threaded
  through calls.  Workers never share a generator: worker ``i`` of a job
  seeded with ``s`` uses ``derived_rng(s, i)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

# internal seed for the power-iteration start vector; fixed so that
# operator_norm is deterministic across calls and processes
_NORM_SEED = 0x5EED


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    """Complex inner product, linear in ``u`` and conjugate-linear in ``v``."""
    return complex(np.vdot(v, u))


def _as_complex_matrix(m, name: str) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"{name} must be a 2-d array, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


@dataclass(frozen=True)
class BlockMatrix:
    """A square matrix [[A, B], [C, D]] split along a fixed decomposition.

    ``A`` acts on the first subspace (dimension ``n1``), ``D`` on the second
    (dimension ``n2``); ``B`` and ``C`` map between them.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        a = _as_complex_matrix(self.A, "A")
        b = _as_complex_matrix(self.B, "B")
        c = _as_complex_matrix(self.C, "C")
        d = _as_complex_matrix(self.D, "D")
        n1, n2 = a.shape[0], d.shape[0]
        if n1 < 1 or n2 < 1:
            raise ValueError("both diagonal blocks must be at least 1x1")
        if a.shape != (n1, n1) or d.shape != (n2, n2):
            raise ValueError("diagonal blocks must be square")
        if b.shape != (n1, n2) or c.shape != (n2, n1):
            raise ValueError(
                f"off-diagonal blocks have inconsistent shapes: "
                f"B{b.shape}, C{c.shape} for n1={n1}, n2={n2}"
            )
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "C", c)
        object.__setattr__(self, "D", d)

    @property
    def n1(self) -> int:
        return self.A.shape[0]

    @property
    def n2(self) -> int:
        return self.D.shape[0]

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    def rotated(self, theta: float) -> "BlockMatrix":
        """The block matrix scaled by exp(i*theta)."""
        phase = complex(np.cos(theta), np.sin(theta))
        return BlockMatrix(phase * self.A, phase * self.B, phase * self.C, phase * self.D)


@dataclass(frozen=True)
class UnitPair:
    """A point (x, y) on the product of the two unit spheres."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=complex).reshape(-1)
        y = np.asarray(self.y, dtype=complex).reshape(-1)
        for name, v in (("x", x), ("y", y)):
            if v.size < 1:
                raise ValueError(f"{name} must have at least one component")
            nrm = np.linalg.norm(v)
            if not np.isfinite(nrm) or abs(nrm - 1.0) > 1e-12:
                raise ValueError(f"{name} is not a unit vector (norm {nrm!r})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n1(self) -> int:
        return self.x.size

    @property
    def n2(self) -> int:
        return self.y.size


def assemble(block: BlockMatrix) -> np.ndarray:
    """The full (n1+n2) x (n1+n2) matrix with the four blocks in place."""
    return np.block([[block.A, block.B], [block.C, block.D]])


def disassemble(matrix: np.ndarray, split: int) -> BlockMatrix:
    """Inverse of :func:`assemble` for a chosen split index."""
    m = _as_complex_matrix(matrix, "matrix")
    n = m.shape[0]
    if m.shape[1] != n:
        raise ValueError("only square matrices can be split into blocks")
    if not 1 <= split <= n - 1:
        raise ValueError(f"split index {split} out of range for size {n}")
    return BlockMatrix(m[:split, :split], m[:split, split:], m[split:, :split], m[split:, split:])


def operator_norm(matrix: np.ndarray, tol: float = 1e-10, max_iter: int = 10_000) -> float:
    """Spectral norm (largest singular value) via power iteration on M*M.

    Only the norm is needed anywhere in the package, so a dependency-light
    power iteration is used instead of a full SVD.  The start vector comes
    from a fixed internal seed, making the result deterministic.
    """
    m = _as_complex_matrix(matrix, "matrix")
    if not np.any(m):
        return 0.0
    rng = np.random.default_rng(_NORM_SEED)
    v = rng.standard_normal(m.shape[1]) + 1j * rng.standard_normal(m.shape[1])
    v /= np.linalg.norm(v)
    mh = m.conj().T
    rho = 0.0
    for _ in range(max_iter):
        w = mh @ (m @ v)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            # v happened to lie in the kernel; restart once from a shifted draw
            v = rng.standard_normal(m.shape[1]) + 1j * rng.standard_normal(m.shape[1])
            v /= np.linalg.norm(v)
            continue
        v = w / nw
        rho_new = float(np.vdot(v, mh @ (m @ v)).real)
        if abs(rho_new - rho) <= tol * max(rho_new, 1e-300):
            rho = rho_new
            break
        rho = rho_new
    return float(np.sqrt(max(rho, 0.0)))


def standard_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard normal variates via Box-Muller on the generator's uniforms."""
    u1 = 1.0 - rng.random(shape)  # (0, 1]: keeps log() finite
    u2 = rng.random(shape)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(TWO_PI * u2)


def _unit_sphere_rows(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    z = standard_normal(rng, (count, dim)) + 1j * standard_normal(rng, (count, dim))
    norms = np.linalg.norm(z, axis=1)
    while np.any(norms == 0.0):  # probability-zero event, redraw those rows
        bad = norms == 0.0
        k = int(bad.sum())
        z[bad] = standard_normal(rng, (k, dim)) + 1j * standard_normal(rng, (k, dim))
        norms = np.linalg.norm(z, axis=1)
    return z / norms[:, None]


def sample_unit_pair(n1: int, n2: int, rng: np.random.Generator) -> UnitPair:
    """Draw (x, y) uniformly from the product of complex unit spheres."""
    if n1 < 1 or n2 < 1:
        raise ValueError("dimensions must be at least 1")
    x = _unit_sphere_rows(rng, 1, n1)[0]
    y = _unit_sphere_rows(rng, 1, n2)[0]
    return UnitPair(x, y)


def sample_unit_batch(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """``count`` rows drawn uniformly from the complex unit sphere of ``dim``."""
    if count < 0 or dim < 1:
        raise ValueError("need count >= 0 and dim >= 1")
    return _unit_sphere_rows(rng, count, dim)


def derived_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for worker ``index`` of a job seeded with ``seed``."""
    return np.random.default_rng(seed + index)


def full_spectrum(matrix: np.ndarray) -> np.ndarray:
    """All eigenvalues with multiplicity, via LAPACK's dense nonsymmetric solver."""
    m = _as_complex_matrix(matrix, "matrix")
    if m.shape[0] != m.shape[1]:
        raise ValueError("spectrum is only defined for square matrices")
    return np.linalg.eigvals(m)


def numerical_range_support(matrix: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Support function of the numerical range at the given angles.

    For each angle t the value is the largest eigenvalue of the Hermitian
    part of exp(i*t) * matrix; every point z of the numerical range obeys
    Re(exp(i*t) * z) <= support(t).
    """
    m = _as_complex_matrix(matrix, "matrix")
    out = np.empty(len(angles))
    for i, t in enumerate(np.asarray(angles, dtype=float)):
        r = np.exp(1j * t) * m
        h = 0.5 * (r + r.conj().T)
        out[i] = np.linalg.eigvalsh(h)[-1]
    return out


def numerical_range_violation(matrix: np.ndarray, points: np.ndarray, n_angles: int = 360) -> float:
    """Largest violation of the support-function test over a uniform angle grid.

    Nonpositive (up to tolerance) means all points lie in the numerical range.
    """
    pts = np.asarray(points, dtype=complex).reshape(-1)
    if pts.size == 0:
        return 0.0
    angles = TWO_PI * np.arange(n_angles) / n_angles
    support = numerical_range_support(matrix, angles)
    phases = np.exp(1j * angles)
    worst = -np.inf
    for lo in range(0, pts.size, 65536):  # chunked: the broadcast is angles x points
        chunk = pts[lo : lo + 65536]
        rotated = np.real(phases[:, None] * chunk[None, :])
        worst = max(worst, float(np.max(rotated - support[:, None])))
    return worst
