import math
import random

import pytest

from helpers import mat_close, mat_pow_iterative
from optikit.core import Mat2, sylvester_power
from optikit.errors import InvalidResonator, NonUnimodular
from optikit.rayoptics import (
    FreeSpace,
    InterfaceKind,
    OpticalComponent,
    RayState,
    Spherical,
    system_composition,
)
from optikit.resonator import (
    Resonator,
    fp_resonator,
    ray_bound_oracle,
    round_trip_matrix,
    stability,
    stability_from_matrix,
    unfold_resonator,
)


class TestFpConstructor:
    def test_valid_cavity(self):
        res = fp_resonator(1.0, 0.5, 1.0)
        assert res.space == FreeSpace(1.0, 0.5)
        assert res.inner == ()
        assert res.left == Spherical(1.0) and res.right == Spherical(1.0)

    def test_zero_radius_rejected(self):
        with pytest.raises(InvalidResonator):
            fp_resonator(0.0, 0.5, 1.0)

    def test_negative_index_rejected(self):
        with pytest.raises(InvalidResonator):
            fp_resonator(1.0, 0.5, -1.0)


class TestUnfold:
    def test_single_round_trip_components(self):
        sys = unfold_resonator(fp_resonator(1.0, 0.5, 1.0), 1)
        expected = OpticalComponent(
            FreeSpace(1.0, 0.5), Spherical(1.0), InterfaceKind.REFLECTED
        )
        assert sys.components == (expected, expected)
        assert sys.terminal == FreeSpace(1.0, 0.0)

    def test_two_trips_square_the_matrix(self):
        res = fp_resonator(1.0, 0.5, 1.0)
        m1 = system_composition(unfold_resonator(res, 1))
        m2 = system_composition(unfold_resonator(res, 2))
        assert mat_close(m2, mat_pow_iterative(m1, 2), 1e-12)

    def test_three_trips_match_closed_form_power(self):
        res = fp_resonator(1.0, 0.5, 1.0)
        m1 = system_composition(unfold_resonator(res, 1))
        m3 = system_composition(unfold_resonator(res, 3))
        assert mat_close(m3, sylvester_power(m1, 3), 1e-12)

    def test_needs_at_least_one_trip(self):
        with pytest.raises(InvalidResonator):
            unfold_resonator(fp_resonator(1.0, 0.5, 1.0), 0)

    def test_round_trip_det_is_one_with_mixed_media_inside(self):
        # a transmitted element inside the cavity is crossed once with n0/n1
        # and once with n1/n0, so the determinant telescopes back to 1
        inner = (
            OpticalComponent(FreeSpace(1.0, 0.1), Spherical(0.3), InterfaceKind.TRANSMITTED),
            OpticalComponent(FreeSpace(1.7, 0.05), Spherical(-0.8), InterfaceKind.TRANSMITTED),
        )
        res = Resonator(Spherical(1.0), inner, FreeSpace(1.4, 0.2), Spherical(1.0))
        m = round_trip_matrix(res)
        assert math.isclose(m.det(), 1.0, rel_tol=1e-12)


class TestStability:
    def test_short_cavity_stable(self):
        v = stability(fp_resonator(1.0, 0.5, 1.0))
        assert math.isclose(v.half_trace, -0.5, abs_tol=1e-15)
        assert v.stable and not v.marginal
        assert v.verdict == "stable"

    def test_long_cavity_unstable(self):
        v = stability(fp_resonator(1.0, 2.5, 1.0))
        assert math.isclose(v.half_trace, 3.5, abs_tol=1e-12)
        assert not v.stable and v.verdict == "unstable"

    def test_boundary_cavity_marginal(self):
        v = stability(fp_resonator(1.0, 1.0, 1.0))
        assert math.isclose(v.half_trace, -1.0, abs_tol=1e-12)
        assert v.marginal and not v.stable
        assert v.verdict == "marginal"

    def test_far_boundary_marginal(self):
        v = stability(fp_resonator(1.0, 2.0, 1.0))
        assert math.isclose(v.half_trace, 1.0, abs_tol=1e-12)
        assert v.marginal and not v.stable

    def test_half_trace_closed_form(self):
        rng = random.Random(6)
        for _ in range(200):
            r = rng.choice([1.0, -1.0]) * rng.uniform(0.05, 5.0)
            d = rng.uniform(0.0, 3.0 * abs(r))
            v = stability(fp_resonator(r, d, rng.uniform(1.0, 2.0)))
            expected = 2.0 * (1.0 - d / r) ** 2 - 1.0
            assert abs(v.half_trace - expected) <= 1e-12 * max(1.0, abs(expected))
            assert abs(v.det - 1.0) <= 1e-12

    def test_non_unimodular_rejected(self):
        with pytest.raises(NonUnimodular):
            stability_from_matrix(Mat2(2.0, 0.0, 0.0, 1.0))


class TestOracle:
    def test_axis_ray(self):
        out = ray_bound_oracle(fp_resonator(1.0, 0.5, 1.0), RayState(0.0, 0.0), 100)
        assert out.max_y == 0.0 and out.max_theta == 0.0 and not out.diverged

    def test_stable_cavity_bounded(self):
        out = ray_bound_oracle(fp_resonator(1.0, 0.5, 1.0), RayState(1e-3, 0.0), 1000)
        assert not out.diverged
        assert out.max_y < 1.0

    def test_unstable_cavity_diverges(self):
        out = ray_bound_oracle(fp_resonator(1.0, 2.5, 1.0), RayState(1e-3, 0.0), 200)
        assert out.diverged

    def test_agrees_with_criterion(self):
        rng = random.Random(8)
        for _ in range(200):
            r = rng.uniform(0.2, 2.0)
            d = rng.uniform(1e-3, 3.0) * r
            res = fp_resonator(r, d, 1.0)
            v = stability(res)
            if abs(abs(v.half_trace) - 1.0) <= 1e-6:
                continue
            out = ray_bound_oracle(res, RayState(1e-3, 0.0), 1000)
            if v.stable:
                assert not out.diverged
            elif v.half_trace > 1.0:
                assert out.diverged

    def test_matrix_power_consistency_while_stable(self):
        rng = random.Random(13)
        for _ in range(50):
            r = rng.uniform(0.2, 2.0)
            d = rng.uniform(0.05, 1.95) * r
            if abs(d - r) < 1e-3 * r:
                continue
            res = fp_resonator(r, d, 1.0)
            m1 = round_trip_matrix(res)
            n = rng.choice([2, 10, 50, 100])
            unfolded = system_composition(unfold_resonator(res, n))
            assert mat_close(unfolded, sylvester_power(m1, n), 1e-9)
