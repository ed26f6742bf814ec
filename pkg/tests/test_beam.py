"""Steering, phase profile, and array-factor tests."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ris_thz import (LinkGeometry, PhaseProfile, RisGeometry,
                     SteeringCoefficients, SteeringTarget, array_factor,
                     array_factor_raw, dirichlet_ratio, optimal_phase,
                     optimal_phase_profile, steering_coefficients)
from ris_thz.beam import linear_phase_profile
from ris_thz.errors import DomainError, ShapeError

GEOM = RisGeometry(4, 4, 0.1e-3, 0.1e-3)
LAM = 1e-3


def make_link(th_i=math.pi / 4, ph_i=math.pi, th_r=math.pi / 6, ph_r=math.pi / 3):
    return LinkGeometry(1.0, 1.0, th_i, ph_i, th_r, ph_r)


class TestSteeringCoefficients:
    def test_both_normal(self):
        z = steering_coefficients(make_link(th_i=0.0), SteeringTarget(0.0, 0.0))
        assert z.zeta1 == 0.0 and z.zeta2 == 0.0

    def test_specular_cancellation(self):
        link = make_link(th_i=math.pi / 4, ph_i=math.pi)
        z = steering_coefficients(link, SteeringTarget(math.pi / 4, 0.0))
        assert z.zeta1 == pytest.approx(0.0, abs=1e-15)
        assert z.zeta2 == pytest.approx(0.0, abs=1e-15)

    def test_oblique_values(self):
        link = make_link(th_i=math.pi / 4, ph_i=math.pi)
        z = steering_coefficients(link, SteeringTarget(math.pi / 6, math.pi / 3))
        assert z.zeta1 == pytest.approx(math.sqrt(2) / 2 - 0.25, rel=1e-12)
        assert z.zeta2 == pytest.approx(-math.sqrt(3) / 4, rel=1e-12)

    @given(st.floats(0, math.pi / 2 - 1e-9), st.floats(0, 2 * math.pi),
           st.floats(0, math.pi / 2 - 1e-9), st.floats(0, 2 * math.pi))
    def test_bounded_by_two(self, th_i, ph_i, th_o, ph_o):
        link = make_link(th_i=th_i, ph_i=ph_i)
        z = steering_coefficients(link, SteeringTarget(th_o, ph_o))
        assert abs(z.zeta1) <= 2.0 and abs(z.zeta2) <= 2.0


class TestOptimalPhase:
    def test_normal_incidence_and_target(self):
        link = make_link(th_i=0.0)
        for m in GEOM.m_indices:
            for n in GEOM.n_indices:
                assert optimal_phase(m, n, GEOM, link, SteeringTarget(0.0, 0.0),
                                     LAM) == 0.0

    def test_specular_all_zero(self):
        link = make_link(th_i=math.pi / 4, ph_i=math.pi)
        target = SteeringTarget(math.pi / 4, 0.0)
        profile = optimal_phase_profile(GEOM, link, target, LAM)
        assert np.allclose(profile.phases, 0.0, atol=1e-10) or np.allclose(
            np.minimum(profile.phases, 2 * math.pi - profile.phases), 0.0,
            atol=1e-10)

    def test_matches_steering_relation(self):
        # The phase must satisfy zeta1*(n-1/2)dx + zeta2*(m-1/2)dy
        # = lambda*phi/(2*pi), up to whole turns.
        link = make_link()
        target = SteeringTarget(math.pi / 6, math.pi / 3)
        z = steering_coefficients(link, target)
        for m, n in [(1, 1), (0, -1), (2, 2)]:
            lhs = z.zeta1 * (n - 0.5) * GEOM.pitch_x + z.zeta2 * (m - 0.5) * GEOM.pitch_y
            phi = optimal_phase(m, n, GEOM, link, target, LAM)
            turns = (lhs - LAM * phi / (2 * math.pi)) / LAM
            assert turns == pytest.approx(round(turns), abs=1e-9)

    def test_range_and_reduction(self):
        link = make_link()
        target = SteeringTarget(math.pi / 6, math.pi / 3)
        z = steering_coefficients(link, target)
        for m in GEOM.m_indices:
            for n in GEOM.n_indices:
                phi = optimal_phase(m, n, GEOM, link, target, LAM)
                assert 0.0 <= phi < 2 * math.pi
                raw = (2 * math.pi / LAM) * (z.zeta1 * (n - 0.5) * GEOM.pitch_x
                                             + z.zeta2 * (m - 0.5) * GEOM.pitch_y)
                k = (phi - raw) / (2 * math.pi)
                assert k == pytest.approx(round(k), abs=1e-9)


class TestDirichletRatio:
    def test_limit_at_zero(self):
        assert dirichlet_ratio(7, 0.0) == 7.0

    def test_single_element(self):
        for x in np.linspace(-3, 3, 11):
            assert dirichlet_ratio(1, float(x)) == pytest.approx(1.0, abs=1e-9)

    def test_four_elements(self):
        # Magnitude of 4 unit phasors with linear phase 2x: |sin(4x)/sin(x)|.
        x = math.pi / 8
        direct = abs(sum(np.exp(2j * x * k) for k in range(4)))
        assert dirichlet_ratio(4, x) == pytest.approx(direct, rel=1e-12)
        assert dirichlet_ratio(4, x) == pytest.approx(2.6131, abs=1e-4)

    @pytest.mark.parametrize("k", [-2, -1, 1, 2, 3])
    @pytest.mark.parametrize("count", [2, 5, 8])
    def test_limits_at_multiples_of_pi(self, k, count):
        expected = count * (-1) ** (k * (count - 1))
        assert dirichlet_ratio(count, k * math.pi) == expected

    @pytest.mark.parametrize("eps", [1e-6, 1e-8, 1e-10])
    def test_continuity_near_singularity(self, eps):
        for count in (4, 16):
            for k in (0, 1, 2):
                ref = dirichlet_ratio(count, k * math.pi)
                val = dirichlet_ratio(count, k * math.pi + eps)
                assert abs(val - ref) < count * count**2 * eps

    @given(st.integers(1, 64), st.floats(-10.0, 10.0))
    def test_bounded(self, count, x):
        assert abs(dirichlet_ratio(count, x)) <= count * (1 + 1e-9)

    def test_invalid_count(self):
        with pytest.raises(DomainError):
            dirichlet_ratio(0, 1.0)


class TestArrayFactor:
    def test_perfectly_steered(self):
        link = LinkGeometry(1.0, 1.0, math.pi / 4, math.pi, math.pi / 6, math.pi / 3)
        target = SteeringTarget(math.pi / 6, math.pi / 3)
        z = steering_coefficients(link, target)
        g1, g2 = array_factor(GEOM, link, z, LAM)
        assert g1 == pytest.approx(GEOM.num_cols, rel=1e-12)
        assert g2 == pytest.approx(GEOM.num_rows, rel=1e-12)

    def test_steered_is_maximum(self):
        geom = RisGeometry(20, 20, 0.15e-3, 0.15e-3)
        target = SteeringTarget(math.pi / 6, math.pi / 3)
        best = None
        for th in np.linspace(0.05, math.pi / 2 - 0.05, 60):
            for ph in np.linspace(0, 2 * math.pi, 120, endpoint=False):
                link = LinkGeometry(1.0, 1.0, math.pi / 4, math.pi, float(th), float(ph))
                z = steering_coefficients(link, target)
                g1, g2 = array_factor(geom, link, z, LAM)
                if best is None or abs(g1 * g2) > best[0]:
                    best = (abs(g1 * g2), th, ph)
        _, th_best, ph_best = best
        assert abs(th_best - target.elevation) <= math.pi / 2 / 59
        assert abs(ph_best - target.azimuth) <= 2 * math.pi / 120

    def test_raw_sum_agrees_with_closed_form(self):
        rng = np.random.default_rng(20240817)
        for _ in range(100):
            M = 2 * int(rng.integers(1, 6))
            N = 2 * int(rng.integers(1, 6))
            geom = RisGeometry(M, N, float(rng.uniform(0.5, 2) * 1e-4),
                               float(rng.uniform(0.5, 2) * 1e-4))
            link = LinkGeometry(1.0, 1.0,
                                float(rng.uniform(0, math.pi / 2 - 0.1)),
                                float(rng.uniform(0, 2 * math.pi)),
                                float(rng.uniform(0, math.pi / 2 - 0.1)),
                                float(rng.uniform(0, 2 * math.pi)))
            z = SteeringCoefficients(float(rng.uniform(-2, 2)),
                                     float(rng.uniform(-2, 2)))
            lam = float(rng.uniform(0.6e-3, 3e-3))
            profile = linear_phase_profile(geom, z, lam)
            raw = abs(array_factor_raw(geom, link, profile, lam))
            g1, g2 = array_factor(geom, link, z, lam)
            closed = abs(g1 * g2)
            assert raw == pytest.approx(closed, rel=1e-9, abs=1e-9 * M * N)

    def test_hand_sum_two_by_two(self):
        geom = RisGeometry(2, 2, 0.1e-3, 0.1e-3)
        link = LinkGeometry(1.0, 1.0, 0.5, 1.1, 0.4, 2.2)
        phases = PhaseProfile(np.array([[0.1, 0.5], [1.0, 2.0]]))
        manual = 0j
        u = (math.sin(0.5) * math.cos(1.1) + math.sin(0.4) * math.cos(2.2))
        v = (math.sin(0.5) * math.sin(1.1) + math.sin(0.4) * math.sin(2.2))
        for mi, m in enumerate((0, 1)):
            for ni, n in enumerate((0, 1)):
                adv = u * (n - 0.5) * geom.pitch_x + v * (m - 0.5) * geom.pitch_y
                manual += np.exp(1j * (2 * math.pi / LAM * adv + phases.phases[mi, ni]))
        assert array_factor_raw(geom, link, phases, LAM) == pytest.approx(manual)

    def test_optimal_profile_achieves_full_sum(self):
        geom = RisGeometry(8, 6, 0.2e-3, 0.25e-3)
        link = LinkGeometry(1.0, 1.0, 0.7, 2.9, 0.6, 1.3)
        target = SteeringTarget(0.6, 1.3)
        profile = optimal_phase_profile(geom, link, target, LAM)
        raw = abs(array_factor_raw(geom, link, profile, LAM))
        assert raw == pytest.approx(geom.num_elements, rel=1e-9)

    def test_zero_phase_normal_incidence(self):
        geom = RisGeometry(6, 6, 0.1e-3, 0.1e-3)
        link = LinkGeometry(1.0, 1.0, 0.0, 0.0, 0.0, 0.0)
        profile = PhaseProfile(np.zeros((6, 6)))
        assert abs(array_factor_raw(geom, link, profile, LAM)) == pytest.approx(36.0)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            array_factor_raw(GEOM, make_link(), PhaseProfile(np.zeros((2, 2))), LAM)

    def test_brute_force_phase_argmax(self):
        # Per element, sweep a fine phase grid and keep the value that best
        # aligns the element phasor; it must match the closed-form phase.
        geom = RisGeometry(4, 4, 0.1e-3, 0.1e-3)
        link = LinkGeometry(1.0, 1.0, math.pi / 4, math.pi, math.pi / 6, math.pi / 3)
        target = SteeringTarget(math.pi / 6, math.pi / 3)
        grid = np.linspace(0, 2 * math.pi, 3600, endpoint=False)
        u = (math.sin(link.ap_elevation) * math.cos(link.ap_azimuth)
             + math.sin(target.elevation) * math.cos(target.azimuth))
        v = (math.sin(link.ap_elevation) * math.sin(link.ap_azimuth)
             + math.sin(target.elevation) * math.sin(target.azimuth))
        for m in geom.m_indices:
            for n in geom.n_indices:
                adv = (2 * math.pi / LAM) * (u * (n - 0.5) * geom.pitch_x
                                             + v * (m - 0.5) * geom.pitch_y)
                best = grid[np.argmax(np.cos(adv + grid))]
                phi = optimal_phase(m, n, geom, link, target, LAM)
                diff = (best - phi + math.pi) % (2 * math.pi) - math.pi
                assert abs(diff) <= 2 * math.pi / 3600
