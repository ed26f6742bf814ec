"""Lattice, position, and distance tests."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ris_thz import (LinkGeometry, Point3, RisGeometry,
                     element_distances_exact, element_distances_taylor,
                     element_position, fraunhofer_distance, ue_position)
from ris_thz.errors import DomainError, IndexRangeError
from ris_thz.geometry import ap_position

GEOM = RisGeometry(num_rows=4, num_cols=4, pitch_x=0.3e-3, pitch_y=0.3e-3)


def make_link(d1=10.0, d2=10.0, th_i=0.0, ph_i=0.0, th_r=0.0, ph_r=0.0):
    return LinkGeometry(d1, d2, th_i, ph_i, th_r, ph_r)


class TestRisGeometry:
    @pytest.mark.parametrize("m, n", [(3, 4), (4, 3), (1, 2), (0, 2)])
    def test_odd_or_small_counts_rejected(self, m, n):
        with pytest.raises(DomainError):
            RisGeometry(m, n, 1e-3, 1e-3)

    def test_index_ranges(self):
        assert list(GEOM.n_indices) == [-1, 0, 1, 2]
        assert list(GEOM.m_indices) == [-1, 0, 1, 2]


class TestElementPosition:
    def test_first_quadrant(self):
        p = element_position(1, 1, GEOM)
        assert (p.x, p.y, p.z) == (0.15e-3, 0.15e-3, 0.0)

    def test_mirror_element(self):
        p = element_position(0, 0, GEOM)
        assert (p.x, p.y) == (-0.15e-3, -0.15e-3)

    def test_lattice_sums_to_origin(self):
        g = RisGeometry(2, 2, 1e-3, 2e-3)
        total = sum((element_position(m, n, g).as_array()
                     for m in g.m_indices for n in g.n_indices), np.zeros(3))
        assert np.allclose(total, 0.0)

    def test_all_positions_distinct(self):
        pts = {(element_position(m, n, GEOM).x, element_position(m, n, GEOM).y)
               for m in GEOM.m_indices for n in GEOM.n_indices}
        assert len(pts) == GEOM.num_elements

    def test_out_of_range_index(self):
        with pytest.raises(IndexRangeError):
            element_position(3, 0, GEOM)
        with pytest.raises(IndexRangeError):
            element_position(0, -2, GEOM)


class TestTerminalPositions:
    def test_on_axis(self):
        p = ap_position(make_link(d1=5.0))
        assert np.allclose(p.as_array(), [0, 0, 5.0])

    def test_in_plane_x(self):
        p = ap_position(make_link(d1=3.0, th_i=math.pi / 2))
        assert np.allclose(p.as_array(), [3.0, 0, 0], atol=1e-12)

    def test_oblique(self):
        p = ap_position(make_link(d1=1.0, th_i=math.pi / 4, ph_i=math.pi))
        assert np.allclose(p.as_array(),
                           [-math.sqrt(2) / 2, 0, math.sqrt(2) / 2], atol=1e-12)

    def test_ue_in_plane_y(self):
        p = ue_position(make_link(d2=2.0, th_r=math.pi / 2, ph_r=math.pi / 2))
        assert np.allclose(p.as_array(), [0, 2.0, 0], atol=1e-12)

    @given(st.floats(0, math.pi / 2 - 1e-6), st.floats(0, 2 * math.pi),
           st.floats(0.1, 1000.0))
    def test_norm_preserved(self, th, ph, d):
        link = make_link(d1=d, th_i=th, ph_i=ph)
        assert ap_position(link).norm == pytest.approx(d, rel=1e-12)


class TestDistances:
    def test_degenerate_lattice_limit(self):
        g = RisGeometry(2, 2, 1e-9, 1e-9)
        l_t, _ = element_distances_exact(1, 1, g, make_link(d1=7.0))
        assert l_t == pytest.approx(7.0, rel=1e-9)

    def test_exact_matches_coordinates(self):
        link = make_link(d1=10.0, th_i=math.pi / 4, ph_i=math.pi)
        l_t, _ = element_distances_exact(1, 1, GEOM, link)
        ap = np.array([10 * math.sin(math.pi / 4) * math.cos(math.pi),
                       0.0, 10 * math.cos(math.pi / 4)])
        el = np.array([0.15e-3, 0.15e-3, 0.0])
        assert l_t == pytest.approx(float(np.linalg.norm(ap - el)), rel=1e-14)
        l_t_taylor, _ = element_distances_taylor(1, 1, GEOM, link)
        assert abs(l_t - l_t_taylor) <= 1e-8

    def test_taylor_on_axis(self):
        link = make_link(th_i=0.0)
        for m in GEOM.m_indices:
            for n in GEOM.n_indices:
                l_t, _ = element_distances_taylor(m, n, GEOM, link)
                assert l_t == link.ap_distance

    def test_taylor_in_plane(self):
        link = make_link(d1=10.0, th_i=math.pi / 2, ph_i=0.0)
        l_t, _ = element_distances_taylor(1, 1, GEOM, link)
        assert l_t == pytest.approx(10.0 - GEOM.pitch_x / 2, rel=1e-12)

    def test_mirror_symmetry(self):
        link = make_link(d1=5.0, th_i=0.3, ph_i=0.7)
        mirrored = make_link(d1=5.0, th_i=0.3, ph_i=0.7 + math.pi)
        a, _ = element_distances_exact(1, 1, GEOM, link)
        b, _ = element_distances_exact(0, 0, GEOM, mirrored)
        assert a == pytest.approx(b, rel=1e-12)

    def test_taylor_error_bound_fig3_lattice(self):
        g = RisGeometry(20, 20, 0.3e-3, 0.3e-3)
        link = make_link(d1=10.0, d2=10.0, th_i=math.pi / 4, ph_i=3 * math.pi / 4,
                         th_r=math.pi / 4, ph_r=math.pi / 4)
        bound = (g.num_cols * g.pitch_x + g.num_rows * g.pitch_y) ** 2 / (2 * 10.0)
        worst = max(
            abs(et - at)
            for m in g.m_indices for n in g.n_indices
            for et, at in [(element_distances_exact(m, n, g, link)[0],
                            element_distances_taylor(m, n, g, link)[0])]
        )
        assert worst <= bound

    def test_taylor_error_vanishes_far_away(self):
        g = RisGeometry(20, 20, 0.3e-3, 0.3e-3)
        link = make_link(d1=100.0, d2=100.0, th_i=0.5, ph_i=1.0, th_r=0.6, ph_r=2.0)
        for m in g.m_indices:
            for n in g.n_indices:
                et = element_distances_exact(m, n, g, link)
                at = element_distances_taylor(m, n, g, link)
                assert abs(et[0] - at[0]) < 1e-6
                assert abs(et[1] - at[1]) < 1e-6


class TestFraunhofer:
    def test_formula(self):
        g = RisGeometry(20, 20, 0.3e-3, 0.3e-3)  # 6 mm x 6 mm aperture
        assert fraunhofer_distance(g, 1e-3) == pytest.approx(0.144, rel=1e-9)

    def test_quadratic_in_aperture(self):
        g1 = RisGeometry(2, 10, 1e-3, 1e-4)
        g2 = RisGeometry(2, 20, 1e-3, 1e-4)
        x1 = 2 * (10 * 1e-3) ** 2 / 1e-3
        x2 = 2 * (20 * 1e-3) ** 2 / 1e-3
        delta = fraunhofer_distance(g2, 1e-3) - fraunhofer_distance(g1, 1e-3)
        assert delta == pytest.approx(x2 - x1, rel=1e-12)

    def test_fig3_configuration(self):
        g = RisGeometry(100, 100, 0.3e-3, 0.3e-3)
        lam = 299792458.0 / 380e9
        assert fraunhofer_distance(g, lam) == pytest.approx(4.56, abs=0.01)

    def test_invalid_wavelength(self):
        with pytest.raises(DomainError):
            fraunhofer_distance(GEOM, 0.0)


class TestPoint3:
    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            Point3(1.0, float("inf"), 0.0)
