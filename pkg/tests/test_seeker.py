from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qnr.kernel import ObjectiveParams, eigen2x2, objective, reduce_pair, split_by_alpha
from qnr.linalg import BlockMatrix, UnitPair, sample_unit_pair
from qnr.seeker import (
    DegenerateEigenvalue,
    SeekConfig,
    ZeroGradient,
    ascent_operators,
    curve_point,
    derivative_along,
    golden_section_max,
    line_search,
    maximize_periodic,
    project_to_tangent,
    seek_boundary,
    steepest_tangent,
)
from qnr.zoo import gen_a3

from conftest import random_block, random_complex

TWO_PI = 2 * math.pi


def circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def selected(block, pair, alpha=0.0):
    return split_by_alpha(eigen2x2(reduce_pair(block, pair)), alpha).lambda_alpha


def random_tangent(rng, pair) -> tuple[np.ndarray, np.ndarray]:
    u = project_to_tangent(random_complex(rng, pair.n1), pair.x)
    v = project_to_tangent(random_complex(rng, pair.n2), pair.y)
    return u / np.linalg.norm(u), v / np.linalg.norm(v)


def well_separated_instance(rng, n1=4, n2=4, gap=0.1):
    while True:
        block = random_block(rng, n1, n2)
        pair = sample_unit_pair(n1, n2, rng)
        l1, l2 = eigen2x2(reduce_pair(block, pair))
        # the finite-difference oracle needs a stable branch selection, so
        # ask for separated eigenvalues *and* separated real parts
        if abs(l1 - l2) > gap and abs(l1.real - l2.real) > 0.05:
            return block, pair


class TestAscentOperators:
    def test_zero_couplings_give_block_diagonal(self, rng):
        n = 3
        a = random_complex(rng, n, n)
        d = random_complex(rng, n, n)
        block = BlockMatrix(a, np.zeros((n, n)), np.zeros((n, n)), d)
        pair = sample_unit_pair(n, n, rng)
        lam = selected(block, pair)
        ops = ascent_operators(block, pair, lam, ObjectiveParams())
        assert np.all(ops.S[:n, n:] == 0) and np.all(ops.S[n:, :n] == 0)
        red = reduce_pair(block, pair)
        denom = 2 * lam - red.a - red.d
        assert np.allclose(ops.S[:n, :n], (lam - red.d) * a / denom)
        assert np.allclose(ops.S[n:, n:], (lam - red.a) * d / denom)

    def test_zero_penalty_gives_t_plus(self, rng):
        block = random_block(rng, 3, 3)
        pair = sample_unit_pair(3, 3, rng)
        ops = ascent_operators(block, pair, selected(block, pair), ObjectiveParams(penalty=0.0))
        assert np.array_equal(ops.T, ops.T_plus)

    def test_hermitian_and_skew_parts(self, rng):
        block = random_block(rng, 4, 4)
        pair = sample_unit_pair(4, 4, rng)
        params = ObjectiveParams(lambda0=0.3 - 0.2j, penalty=1.7)
        ops = ascent_operators(block, pair, selected(block, pair), params)
        assert np.max(np.abs(ops.T_plus - ops.T_plus.conj().T)) <= 1e-12
        assert np.max(np.abs(ops.T_minus + ops.T_minus.conj().T)) <= 1e-12

    def test_degenerate_eigenvalue_raises(self):
        block = BlockMatrix([[2]], [[0]], [[0]], [[2]])
        pair = UnitPair(np.array([1.0 + 0j]), np.array([1.0 + 0j]))
        with pytest.raises(DegenerateEigenvalue):
            ascent_operators(block, pair, 2.0 + 0j, ObjectiveParams())

    def test_rotation_scales_s_by_phase(self, rng):
        # S for exp(i t) * blocks at the rotated eigenvalue is exp(i t) * S
        block = random_block(rng, 3, 3)
        pair = sample_unit_pair(3, 3, rng)
        lam = selected(block, pair, alpha=0.4)
        theta = 1.234
        phase = cmath.exp(1j * theta)
        params = ObjectiveParams(alpha=0.4, lambda0=0.1 + 0.2j, penalty=0.5)
        rot_params = ObjectiveParams(alpha=0.4 - theta, lambda0=phase * params.lambda0, penalty=0.5)
        s0 = ascent_operators(block, pair, lam, params).S
        s1 = ascent_operators(block.rotated(theta), pair, phase * lam, rot_params).S
        assert np.max(np.abs(s1 - phase * s0)) <= 1e-12 * np.max(np.abs(s0))

    def test_selection_commutes_with_rotation(self, rng):
        block = random_block(rng, 3, 3)
        pair = sample_unit_pair(3, 3, rng)
        theta, alpha = 2.1, 0.7
        lam = selected(block, pair, alpha)
        lam_rot = selected(block.rotated(theta), pair, alpha - theta)
        assert abs(lam_rot - cmath.exp(1j * theta) * lam) <= 1e-10 * (1 + abs(lam))


class TestDerivative:
    def test_orthogonal_direction_gives_zero(self, rng):
        block, pair = well_separated_instance(rng)
        lam = selected(block, pair)
        params = ObjectiveParams(lambda0=0.2j, penalty=0.4)
        ops = ascent_operators(block, pair, lam, params)
        wz = ops.T @ np.concatenate([pair.x, pair.y])
        w, z = wz[: pair.n1], wz[pair.n1 :]
        # orthogonalize a random tangent against the projected gradient,
        # inside the tangent space, in the Re<.,.> geometry
        def orth(raw, base, g):
            gt = project_to_tangent(g, base)
            r = project_to_tangent(raw, base)
            r = r - (np.vdot(gt, r).real / np.vdot(gt, gt).real) * gt
            return r / np.linalg.norm(r)

        from qnr.seeker import TangentPair

        u = orth(random_complex(rng, pair.n1), pair.x, w)
        v = orth(random_complex(rng, pair.n2), pair.y, z)
        d = derivative_along(block, pair, TangentPair(u, v), lam, params)
        assert abs(d) <= 1e-9 * (1 + np.linalg.norm(wz))

    def test_steepest_is_maximal_among_random_tangents(self, rng):
        from qnr.seeker import TangentPair

        block, pair = well_separated_instance(rng)
        lam = selected(block, pair)
        params = ObjectiveParams(lambda0=0.0j, penalty=0.3)
        best = steepest_tangent(block, pair, lam, params)
        d_best = derivative_along(block, pair, best, lam, params)
        for _ in range(100):
            u, v = random_tangent(rng, pair)
            d = derivative_along(block, pair, TangentPair(u, v), lam, params)
            assert d <= d_best + 1e-10

    def test_matches_central_differences(self, rng):
        from qnr.seeker import TangentPair

        h = 1e-5
        checked = 0
        while checked < 30:
            block, pair = well_separated_instance(rng)
            lam = selected(block, pair)
            params = ObjectiveParams(lambda0=0.1 - 0.3j, penalty=0.8)
            tangent = TangentPair(*random_tangent(rng, pair))
            exact = derivative_along(block, pair, tangent, lam, params)
            if abs(exact) < 1e-3:  # finite differences cannot certify near zero
                continue
            f_plus = objective(block, curve_point(pair, tangent, h, h), params)
            f_minus = objective(block, curve_point(pair, tangent, -h, -h), params)
            fd = (f_plus - f_minus) / (2 * h)
            assert abs(fd - exact) <= 1e-6 * abs(exact)
            checked += 1


class TestSteepestTangent:
    def test_projection_of_base_point_vanishes(self, rng):
        pair = sample_unit_pair(4, 4, rng)
        assert np.linalg.norm(project_to_tangent(pair.x, pair.x)) <= 1e-14

    def test_projector_fixes_tangent_vectors(self, rng):
        pair = sample_unit_pair(4, 4, rng)
        u, _ = random_tangent(rng, pair)
        assert np.max(np.abs(project_to_tangent(u, pair.x) - u)) <= 1e-14

    def test_returned_directions_are_tangent(self, rng):
        block, pair = well_separated_instance(rng)
        lam = selected(block, pair)
        t = steepest_tangent(block, pair, lam, ObjectiveParams(penalty=0.2))
        assert abs(np.vdot(pair.x, t.u).real) <= 1e-10
        assert abs(np.vdot(pair.y, t.v).real) <= 1e-10

    def test_zero_gradient_raises(self):
        # with B = C = 0 and 1-dim blocks, T[x; y] has zero second component
        block = BlockMatrix([[1]], [[0]], [[0]], [[-1]])
        pair = UnitPair(np.array([1.0 + 0j]), np.array([1.0 + 0j]))
        with pytest.raises(ZeroGradient):
            steepest_tangent(block, pair, 1.0 + 0j, ObjectiveParams())


class TestCurvePoint:
    def test_origin_is_identity(self, rng):
        from qnr.seeker import TangentPair

        pair = sample_unit_pair(3, 3, rng)
        tangent = TangentPair(*random_tangent(rng, pair))
        moved = curve_point(pair, tangent, 0.0, 0.0)
        assert np.array_equal(moved.x, pair.x) and np.array_equal(moved.y, pair.y)

    def test_quarter_turn_reaches_tangent(self, rng):
        from qnr.seeker import TangentPair

        pair = sample_unit_pair(3, 3, rng)
        tangent = TangentPair(*random_tangent(rng, pair))
        moved = curve_point(pair, tangent, math.pi / 2, math.pi / 2)
        assert np.max(np.abs(moved.x - tangent.u)) <= 1e-15
        assert np.max(np.abs(moved.y - tangent.v)) <= 1e-15

    def test_half_turn_is_antipode(self, rng):
        from qnr.seeker import TangentPair

        pair = sample_unit_pair(3, 3, rng)
        tangent = TangentPair(*random_tangent(rng, pair))
        moved = curve_point(pair, tangent, math.pi, 0.0)
        assert np.max(np.abs(moved.x + pair.x)) <= 1e-12
        assert np.array_equal(moved.y, pair.y)

    @given(st.floats(0, TWO_PI), st.floats(0, TWO_PI), st.integers(0, 2**31 - 1))
    def test_stays_on_spheres(self, s, t, seed):
        from qnr.seeker import TangentPair

        r = np.random.default_rng(seed)
        pair = sample_unit_pair(3, 2, r)
        tangent = TangentPair(*random_tangent(r, pair))
        moved = curve_point(pair, tangent, s, t)  # UnitPair validates the norms
        assert abs(np.linalg.norm(moved.x) - 1) <= 1e-12


class TestLineSearchUtilities:
    def test_constant_profile_stays_at_origin(self):
        s, value = maximize_periodic(lambda _: 1.5, 64, 1e-6)
        assert s == 0.0 and value == 1.5

    def test_cosine_peaks_at_origin(self):
        s, value = maximize_periodic(math.cos, 64, 1e-6)
        assert circular_distance(s, 0.0) <= 1e-6
        assert value == pytest.approx(1.0, abs=1e-9)

    def test_shifted_negated_cosine(self):
        target = 1.3 + math.pi  # analytic argmax of -cos(s - 1.3)
        s, _ = maximize_periodic(lambda q: -math.cos(q - 1.3), 64, 1e-6)
        assert circular_distance(s, target) <= 1e-6
        # dense-grid oracle agrees
        grid = np.linspace(0, TWO_PI, 1_000_001)
        dense = grid[np.argmax(-np.cos(grid - 1.3))]
        assert circular_distance(s, dense) <= 1e-5

    def test_golden_section_on_parabola(self):
        s, value = golden_section_max(lambda q: -(q - 0.4) ** 2, -1.0, 1.0, 1e-8)
        assert abs(s - 0.4) <= 1e-7 and value <= 0.0


class TestLineSearch:
    def test_never_below_origin(self, rng):
        from qnr.seeker import TangentPair

        for _ in range(10):
            block, pair = well_separated_instance(rng)
            params = ObjectiveParams(lambda0=0.1j, penalty=0.5)
            tangent = TangentPair(*random_tangent(rng, pair))
            s, t, value = line_search(block, pair, tangent, params, SeekConfig())
            assert value >= objective(block, pair, params) - 1e-12
            assert 0 <= s < TWO_PI and 0 <= t < TWO_PI

    def test_two_dimensional_mode_not_worse(self, rng):
        from qnr.seeker import TangentPair

        block, pair = well_separated_instance(rng)
        params = ObjectiveParams(lambda0=0.0j, penalty=0.2)
        tangent = TangentPair(*random_tangent(rng, pair))
        _, _, v1 = line_search(block, pair, tangent, params, SeekConfig())
        _, _, v2 = line_search(
            block, pair, tangent, params, SeekConfig(two_dimensional=True, line_search_grid=64)
        )
        assert v2 >= v1 - 1e-9

    def test_fast_path_matches_direct_objective(self, rng):
        from qnr.seeker import TangentPair, _curve_objective

        block, pair = well_separated_instance(rng)
        params = ObjectiveParams(lambda0=0.3 - 1j, penalty=0.7)
        tangent = TangentPair(*random_tangent(rng, pair))
        fn = _curve_objective(block, pair, tangent, params)
        for s in np.linspace(0.1, TWO_PI - 0.1, 7):
            for t in np.linspace(0.2, TWO_PI - 0.2, 7):
                direct = objective(block, curve_point(pair, tangent, s, t), params)
                assert abs(fn(s, t) - direct) <= 1e-10 * (1 + abs(direct))


class TestSeekBoundary:
    def test_single_iteration_gives_single_pair(self, rng):
        block, pair = well_separated_instance(rng)
        got = seek_boundary(block, pair, ObjectiveParams(penalty=0.1), SeekConfig(i_max=1))
        assert len(got) <= 1

    def test_constant_objective_is_fixed_point(self, rng):
        block = BlockMatrix(2 * np.eye(2), np.zeros((2, 2)), np.zeros((2, 2)), -2 * np.eye(2))
        pair = sample_unit_pair(2, 2, rng)
        got = seek_boundary(block, pair, ObjectiveParams(), SeekConfig(i_max=10))
        assert len(got) <= 1

    def test_monotone_objective_on_a3(self, rng):
        block = gen_a3()
        for _ in range(10):
            pair = sample_unit_pair(2, 2, rng)
            lam = selected(block, pair)
            for penalty in (0.0, 0.25, 1.0):
                params = ObjectiveParams(alpha=0.0, lambda0=lam, penalty=penalty)
                path = seek_boundary(block, pair, params, SeekConfig(i_max=50))
                values = [objective(block, q, params) for q in path]
                assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))

    def test_emitted_pairs_satisfy_invariants(self, rng):
        block, pair = well_separated_instance(rng)
        params = ObjectiveParams(lambda0=selected(block, pair), penalty=0.3)
        for q in seek_boundary(block, pair, params, SeekConfig(i_max=20)):
            assert abs(np.linalg.norm(q.x) - 1) <= 1e-12
            red = reduce_pair(block, q)
            scale = 1 + abs(np.linalg.norm(red.as_array(), 2)) ** 2
            for lam in eigen2x2(red):
                assert abs(lam * lam - red.trace * lam + red.det) <= 1e-10 * scale

    def test_guard_failure_truncates(self, rng):
        # degenerate at the very first step: no pairs at all
        block = BlockMatrix([[2]], [[0]], [[0]], [[2]])
        pair = UnitPair(np.array([1.0 + 0j]), np.array([1.0 + 0j]))
        assert seek_boundary(block, pair, ObjectiveParams(), SeekConfig(i_max=5)) == []

    def test_objective_increases_from_start(self, rng):
        block, pair = well_separated_instance(rng)
        params = ObjectiveParams(lambda0=selected(block, pair), penalty=0.2)
        path = seek_boundary(block, pair, params, SeekConfig(i_max=8))
        if path:
            assert objective(block, path[-1], params) >= objective(block, pair, params) - 1e-12
