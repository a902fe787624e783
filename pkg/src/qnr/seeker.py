"""Boundary seeking: steepest ascent of the penalized objective on the spheres.

One step at a pair (x, y) with selected eigenvalue L and anchor lambda0:

1. build S = [[(L-d)A, cB], [bC, (L-a)D]] / (2L - a - d) and from it
   T = (S + S*) + 2 p Im(L - lambda0) i (S - S*); the directional derivative
   of the objective along great circles through (x, y) with tangents (u, v)
   is Re < T [x; y], [u; v] >,
2. project T [x; y] onto the tangent spaces and normalize — the steepest
   direction,
3. line-search the objective along the great-circle curves
   phi(s) = cos(s) x + sin(s) u, psi(t) = cos(t) y + sin(t) v.

The degenerate cases (2L == a + d, vanishing projected gradient) raise and
are treated by the iteration loop as an early stop.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .kernel import ObjectiveParams, objective, quadratic_roots, reduce_pair, split_by_alpha
from .linalg import TWO_PI, BlockMatrix, UnitPair

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class DegenerateEigenvalue(ArithmeticError):
    """The selected eigenvalue coincides with the mean of the diagonal."""


class ZeroGradient(ArithmeticError):
    """The projected ascent direction vanishes (stationary point)."""


@dataclass(frozen=True)
class AscentOperators:
    """S and the derived Hermitian/skew-Hermitian/combined ascent operators."""

    S: np.ndarray
    T_plus: np.ndarray
    T_minus: np.ndarray
    T: np.ndarray


@dataclass(frozen=True)
class TangentPair:
    """Unit tangent directions (u, v) at a pair, under Re<.,.>-orthogonality."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex).reshape(-1)
        v = np.asarray(self.v, dtype=complex).reshape(-1)
        for name, w in (("u", u), ("v", v)):
            nrm = np.linalg.norm(w)
            if not np.isfinite(nrm) or abs(nrm - 1.0) > 1e-12:
                raise ValueError(f"{name} is not a unit vector (norm {nrm!r})")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)


@dataclass(frozen=True)
class SeekConfig:
    """Iteration and line-search parameters for one boundary seek."""

    i_max: int = 2
    line_search_grid: int = 64
    line_search_tol: float = 1e-6
    two_dimensional: bool = False
    equality_tol: float = 0.0  # 0 means exact equality, as pseudocoded

    def __post_init__(self):
        if self.i_max < 1:
            raise ValueError("i_max must be at least 1")
        if self.line_search_grid < 8:
            raise ValueError("line_search_grid must be at least 8")


def _selected_eigenvalue(block: BlockMatrix, pair: UnitPair, params: ObjectiveParams):
    red = reduce_pair(block, pair)
    split = split_by_alpha(quadratic_roots(red.a, red.b, red.c, red.d), params.alpha)
    return red, split.lambda_alpha


def ascent_operators(
    block: BlockMatrix, pair: UnitPair, lam: complex, params: ObjectiveParams
) -> AscentOperators:
    """The four ascent matrices at a pair with selected eigenvalue ``lam``."""
    red = reduce_pair(block, pair)
    denom = 2.0 * lam - red.a - red.d
    if abs(denom) <= 1e-14 * (1.0 + abs(red.a) + abs(red.d)):
        raise DegenerateEigenvalue(
            f"2*lambda - a - d = {denom!r} is numerically zero at this pair"
        )
    n1, n = block.n1, block.n1 + block.n2
    S = np.empty((n, n), dtype=complex)
    S[:n1, :n1] = (lam - red.d) * block.A
    S[:n1, n1:] = red.c * block.B
    S[n1:, :n1] = red.b * block.C
    S[n1:, n1:] = (lam - red.a) * block.D
    S /= denom
    Sh = S.conj().T
    T_plus = S + Sh
    T_minus = S - Sh
    T = T_plus + (2.0 * params.penalty * (lam - params.lambda0).imag * 1j) * T_minus
    return AscentOperators(S=S, T_plus=T_plus, T_minus=T_minus, T=T)


def derivative_along(
    block: BlockMatrix,
    pair: UnitPair,
    tangent: TangentPair,
    lam: complex,
    params: ObjectiveParams,
) -> float:
    """Directional derivative Re < T [x; y], [u; v] > of the objective."""
    ops = ascent_operators(block, pair, lam, params)
    q = np.concatenate([pair.x, pair.y])
    r = np.concatenate([tangent.u, tangent.v])
    return float(np.vdot(r, ops.T @ q).real)


def project_to_tangent(w: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Orthogonal projection of w onto {u : Re<x, u> = 0}, unnormalized."""
    return w - np.vdot(x, w).real * x


def _steepest_from_gradient(wz: np.ndarray, pair: UnitPair) -> TangentPair:
    u = project_to_tangent(wz[: pair.n1], pair.x)
    v = project_to_tangent(wz[pair.n1 :], pair.y)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu <= 1e-14 or nv <= 1e-14:
        raise ZeroGradient(f"projected gradient vanished (|u|={nu:.3e}, |v|={nv:.3e})")
    return TangentPair(u / nu, v / nv)


def steepest_tangent(
    block: BlockMatrix, pair: UnitPair, lam: complex, params: ObjectiveParams
) -> TangentPair:
    """Normalized tangent projection of T [x; y]: the steepest ascent direction."""
    ops = ascent_operators(block, pair, lam, params)
    wz = ops.T @ np.concatenate([pair.x, pair.y])
    return _steepest_from_gradient(wz, pair)


def curve_point(pair: UnitPair, tangent: TangentPair, s: float, t: float) -> UnitPair:
    """The point (cos(s) x + sin(s) u, cos(t) y + sin(t) v) on the spheres."""
    return UnitPair(
        math.cos(s) * pair.x + math.sin(s) * tangent.u,
        math.cos(t) * pair.y + math.sin(t) * tangent.v,
    )


# -- scalar line search -----------------------------------------------------


def golden_section_max(
    fn: Callable[[float], float], lo: float, hi: float, tol: float
) -> tuple[float, float]:
    """Golden-section maximization of ``fn`` on [lo, hi] to width ``tol``."""
    a, b = float(lo), float(hi)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = fn(x1), fn(x2)
    while b - a > tol:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = fn(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = fn(x2)
    mid = 0.5 * (a + b)
    return mid, fn(mid)


def maximize_periodic(
    fn: Callable[[float], float], n_grid: int, tol: float
) -> tuple[float, float]:
    """Coarse grid over [0, 2*pi) plus golden-section refinement of the best cell.

    The origin is always among the candidates, so the returned value is at
    least fn(0).
    """
    step = TWO_PI / n_grid
    grid = step * np.arange(n_grid)
    values = [fn(s) for s in grid]
    k = int(np.argmax(values))
    best_s, best_f = float(grid[k]), values[k]
    ref_s, ref_f = golden_section_max(fn, best_s - step, best_s + step, tol)
    if ref_f > best_f:
        best_s, best_f = ref_s % TWO_PI, ref_f
    if values[0] >= best_f:
        return 0.0, values[0]
    return best_s, best_f


def _maximize_product_grid(
    fn: Callable[[float, float], float], n_grid: int, tol: float
) -> tuple[float, float, float]:
    # coarse s x t grid, then coordinate descent with golden-section sweeps
    coarse = max(8, n_grid // 4)
    step = TWO_PI / coarse
    grid = step * np.arange(coarse)
    best = (0.0, 0.0, fn(0.0, 0.0))
    for s in grid:
        for t in grid:
            v = fn(s, t)
            if v > best[2]:
                best = (float(s), float(t), v)
    s, t, f = best
    for _ in range(4):
        s_prev, t_prev = s, t
        s_new, f_s = golden_section_max(lambda q: fn(q, t), s - step, s + step, tol)
        if f_s > f:
            s, f = s_new, f_s
        t_new, f_t = golden_section_max(lambda q: fn(s, q), t - step, t + step, tol)
        if f_t > f:
            t, f = t_new, f_t
        if max(abs(s - s_prev), abs(t - t_prev)) <= tol:
            break
    return s % TWO_PI, t % TWO_PI, f


def _curve_objective(
    block: BlockMatrix, pair: UnitPair, tangent: TangentPair, params: ObjectiveParams
) -> Callable[[float, float], float]:
    """Objective along the great-circle curves as a function of (s, t).

    The quadratic forms of phi(s), psi(t) expand into fixed combinations of
    16 precomputed scalars, so each evaluation costs O(1) after the matvecs.
    """
    x, y, u, v = pair.x, pair.y, tangent.u, tangent.v
    A, B, C, D = block.A, block.B, block.C, block.D
    xc, yc, uc, vc = x.conj(), y.conj(), u.conj(), v.conj()
    Ax, Au = A @ x, A @ u
    By, Bv = B @ y, B @ v
    Cx, Cu = C @ x, C @ u
    Dy, Dv = D @ y, D @ v
    # <M p, q> expansions: rows scan q in (x|y, u|v), columns scan p
    a_xx, a_xu = complex(xc @ Ax), complex(uc @ Ax)
    a_ux, a_uu = complex(xc @ Au), complex(uc @ Au)
    b_yx, b_yu = complex(xc @ By), complex(uc @ By)
    b_vx, b_vu = complex(xc @ Bv), complex(uc @ Bv)
    c_xy, c_xv = complex(yc @ Cx), complex(vc @ Cx)
    c_uy, c_uv = complex(yc @ Cu), complex(vc @ Cu)
    d_yy, d_yv = complex(yc @ Dy), complex(vc @ Dy)
    d_vy, d_vv = complex(yc @ Dv), complex(vc @ Dv)

    alpha_phase = cmath.exp(1j * params.alpha)
    lam0, p = params.lambda0, params.penalty

    def fn(s: float, t: float) -> float:
        cs, ss = math.cos(s), math.sin(s)
        ct, st = math.cos(t), math.sin(t)
        a = cs * cs * a_xx + cs * ss * (a_xu + a_ux) + ss * ss * a_uu
        d = ct * ct * d_yy + ct * st * (d_yv + d_vy) + st * st * d_vv
        b = ct * (cs * b_yx + ss * b_yu) + st * (cs * b_vx + ss * b_vu)
        c = cs * (ct * c_xy + st * c_xv) + ss * (ct * c_uy + st * c_uv)
        l1, l2 = quadratic_roots(a, b, c, d)
        r1, r2 = (alpha_phase * l1).real, (alpha_phase * l2).real
        if r1 > r2 or (r1 == r2 and (alpha_phase * l1).imag >= (alpha_phase * l2).imag):
            lam = l1
        else:
            lam = l2
        dev = (lam - lam0).imag
        return lam.real - p * dev * dev

    return fn


def line_search(
    block: BlockMatrix,
    pair: UnitPair,
    tangent: TangentPair,
    params: ObjectiveParams,
    cfg: SeekConfig,
) -> tuple[float, float, float]:
    """Maximize the objective along the curves; never below the origin value.

    Default mode searches the diagonal s == t; the two-dimensional mode runs
    a coarse product grid with coordinate-descent refinement.
    """
    fn = _curve_objective(block, pair, tangent, params)
    if cfg.two_dimensional:
        s, t, value = _maximize_product_grid(fn, cfg.line_search_grid, cfg.line_search_tol)
    else:
        s, value = maximize_periodic(
            lambda q: fn(q, q), cfg.line_search_grid, cfg.line_search_tol
        )
        t = s
    origin = fn(0.0, 0.0)
    if not value > origin:
        return 0.0, 0.0, origin
    return s, t, value


# -- the iteration loop -----------------------------------------------------


def find_boundary_step(
    block: BlockMatrix, pair: UnitPair, params: ObjectiveParams, cfg: SeekConfig
) -> UnitPair:
    """One ascent step; returns the pair unchanged at a line-search fixed point.

    Raises :class:`DegenerateEigenvalue` or :class:`ZeroGradient` at the
    guarded degeneracies.
    """
    _, lam = _selected_eigenvalue(block, pair, params)
    ops = ascent_operators(block, pair, lam, params)
    wz = ops.T @ np.concatenate([pair.x, pair.y])
    tangent = _steepest_from_gradient(wz, pair)
    s, t, _ = line_search(block, pair, tangent, params, cfg)
    if s == 0.0 and t == 0.0:
        return pair
    moved = curve_point(pair, tangent, s, t)
    # counteract rounding drift of the norm before the next reduction
    moved = UnitPair(moved.x / np.linalg.norm(moved.x), moved.y / np.linalg.norm(moved.y))
    # near an eigenvalue-selection tie, a one-ulp difference between the line
    # search's arithmetic and the direct objective can flip the selected
    # branch; accept the move only if the direct objective did not drop
    if objective(block, moved, params) < objective(block, pair, params):
        return pair
    return moved


def _pairs_equal(p: UnitPair, q: UnitPair, tol: float) -> bool:
    if tol == 0.0:
        return np.array_equal(p.x, q.x) and np.array_equal(p.y, q.y)
    return (
        float(np.max(np.abs(p.x - q.x))) <= tol and float(np.max(np.abs(p.y - q.y))) <= tol
    )


def seek_boundary(
    block: BlockMatrix, start: UnitPair, params: ObjectiveParams, cfg: SeekConfig
) -> list[UnitPair]:
    """Iterate ascent steps from ``start``, collecting the visited pairs.

    Runs up to ``cfg.i_max`` steps.  The walk stops early when an iterate
    repeats its predecessor (the repeat is dropped) or when a step hits a
    guarded degeneracy (the pairs gathered so far are returned).
    """
    out: list[UnitPair] = []
    current = start
    for _ in range(cfg.i_max):
        try:
            nxt = find_boundary_step(block, current, params, cfg)
        except (DegenerateEigenvalue, ZeroGradient):
            break
        if out and _pairs_equal(nxt, out[-1], cfg.equality_tol):
            break
        out.append(nxt)
        current = nxt
    return out
