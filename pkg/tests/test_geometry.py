"""Geometry primitives: frame conversions, intersection point, predicates."""

import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from diskchords import (
    ChordFrame,
    ParallelLinesError,
    ParamRoots,
    Point2,
    SegmentEndpoints,
    angle_between,
    chord_frame_from_endpoints,
    endpoints_from_chord_frame,
    intersection_norm_sq,
    intersection_point,
    jacobian_abs,
    segment_param_of_point,
    segment_params_at_norm_sq,
    segments_intersect,
)


def make_frame(rho, gamma, t_a, t_b):
    return ChordFrame(rho=rho, gamma=gamma, t_a=t_a, t_b=t_b)


def frames_strategy():
    """Valid random chord frames with a healthy margin to the support edge."""

    def build(rho, gamma, u_a, u_b):
        half = math.sqrt(1.0 - rho * rho)
        t_a = (2.0 * u_a - 1.0) * half
        t_b = (2.0 * u_b - 1.0) * half
        assume(abs(t_a - t_b) > 1e-9 * max(1.0, half))
        return make_frame(rho, gamma, t_a, t_b)

    return st.builds(
        build,
        st.floats(0.0, 0.999),
        st.floats(0.0, 2.0 * math.pi, exclude_max=True),
        st.floats(0.0, 1.0),
        st.floats(0.0, 1.0),
    )


class TestConstruction:
    def test_point_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Point2(float("nan"), 0.0)
        with pytest.raises(ValueError):
            Point2(0.0, float("inf"))

    def test_segment_rejects_coincident_endpoints(self):
        p = Point2(0.25, -0.5)
        with pytest.raises(ValueError):
            SegmentEndpoints(p, p)

    def test_segment_rejects_point_outside_disk(self):
        with pytest.raises(ValueError):
            SegmentEndpoints(Point2(1.1, 0.0), Point2(0.0, 0.0))

    def test_frame_rejects_rho_outside_unit_interval(self):
        with pytest.raises(ValueError):
            make_frame(1.5, 0.0, 0.1, -0.1)
        with pytest.raises(ValueError):
            make_frame(-0.1, 0.0, 0.1, -0.1)

    def test_frame_rejects_offset_outside_support(self):
        # |t| <= sqrt(1 - rho^2) + 1e-12; rho=0.6 gives half-span 0.8
        with pytest.raises(ValueError):
            make_frame(0.6, 0.0, 0.9, -0.1)

    def test_frame_rejects_equal_offsets(self):
        with pytest.raises(ValueError):
            make_frame(0.3, 0.0, 0.2, 0.2)

    def test_frame_reduces_gamma_modulo_two_pi(self):
        cf = make_frame(0.3, 2.0 * math.pi + 1.0, 0.5, -0.2)
        assert cf.gamma == pytest.approx(1.0, abs=1e-15)

    def test_param_roots_must_be_sorted(self):
        with pytest.raises(ValueError):
            ParamRoots(0.7, 0.3)


class TestFrameFromEndpoints:
    def test_vertical_line_example(self):
        seg = SegmentEndpoints(Point2(0.3, 0.5), Point2(0.3, -0.2))
        cf = chord_frame_from_endpoints(seg)
        assert cf.rho == pytest.approx(0.3, abs=1e-15)
        assert cf.gamma == pytest.approx(0.0, abs=1e-15)
        assert cf.t_a == pytest.approx(0.5, abs=1e-15)
        assert cf.t_b == pytest.approx(-0.2, abs=1e-15)

    def test_diameter_example_uses_rho_zero_convention(self):
        seg = SegmentEndpoints(Point2(-1.0, 0.0), Point2(1.0, 0.0))
        cf = chord_frame_from_endpoints(seg)
        assert cf.rho == 0.0
        assert cf.gamma == pytest.approx(math.pi / 2.0, abs=1e-15)
        assert cf.t_a == pytest.approx(1.0, abs=1e-15)
        assert cf.t_b == pytest.approx(-1.0, abs=1e-15)

    def test_inverse_examples(self):
        seg = endpoints_from_chord_frame(make_frame(0.3, 0.0, 0.5, -0.2))
        assert seg.a.x == pytest.approx(0.3, abs=1e-15)
        assert seg.a.y == pytest.approx(0.5, abs=1e-15)
        assert seg.b.x == pytest.approx(0.3, abs=1e-15)
        assert seg.b.y == pytest.approx(-0.2, abs=1e-15)

        seg = endpoints_from_chord_frame(make_frame(0.0, math.pi / 2.0, 1.0, -1.0))
        assert seg.a.x == pytest.approx(-1.0, abs=1e-15)
        assert seg.a.y == pytest.approx(0.0, abs=1e-15)
        assert seg.b.x == pytest.approx(1.0, abs=1e-15)
        assert seg.b.y == pytest.approx(0.0, abs=1e-15)

    @given(frames_strategy())
    def test_round_trip_is_identity(self, cf):
        back = chord_frame_from_endpoints(endpoints_from_chord_frame(cf))
        # recovering the line direction from two endpoints a distance
        # |t_a - t_b| apart amplifies endpoint rounding by 1/|t_a - t_b|
        tol = 1e-12 + 100.0 * np.finfo(float).eps / abs(cf.t_a - cf.t_b)
        if cf.rho < 1e-9:
            # gamma is a convention there; compare through the endpoints
            s1 = endpoints_from_chord_frame(cf)
            s2 = endpoints_from_chord_frame(back)
            for p, q in ((s1.a, s2.a), (s1.b, s2.b)):
                assert abs(p.x - q.x) < tol and abs(p.y - q.y) < tol
        else:
            assert abs(back.rho - cf.rho) < tol
            dg = (back.gamma - cf.gamma) % (2.0 * math.pi)
            assert min(dg, 2.0 * math.pi - dg) < tol
            assert abs(back.t_a - cf.t_a) < tol
            assert abs(back.t_b - cf.t_b) < tol

    @given(frames_strategy())
    def test_radius_relation(self, cf):
        seg = endpoints_from_chord_frame(cf)
        assert abs(seg.a.norm_sq() - (cf.rho**2 + cf.t_a**2)) < 1e-12
        assert abs(seg.b.norm_sq() - (cf.rho**2 + cf.t_b**2)) < 1e-12

    def test_round_trip_on_sampled_frames(self, frame_batch):
        for rho, gamma, t_a, t_b in frame_batch[:500]:
            cf = make_frame(rho, gamma, t_a, t_b)
            back = chord_frame_from_endpoints(endpoints_from_chord_frame(cf))
            assert abs(back.rho - cf.rho) < 1e-12
            assert abs(back.t_a - cf.t_a) < 1e-12
            assert abs(back.t_b - cf.t_b) < 1e-12


def test_jacobian_example():
    cf = make_frame(0.5, 1.0, 0.3, -0.2)
    assert jacobian_abs(cf) == pytest.approx(2.0, rel=1e-15)


@given(frames_strategy())
def test_jacobian_positive(cf):
    assert jacobian_abs(cf) > 0.0


class TestIntersection:
    def test_axis_aligned_lines(self):
        cf1 = make_frame(0.3, 0.0, 0.5, -0.5)       # line x = 0.3
        cf2 = make_frame(0.4, math.pi / 2.0, 0.5, -0.5)  # line y = 0.4
        z = intersection_point(cf1, cf2)
        assert z.x == pytest.approx(0.3, abs=1e-15)
        assert z.y == pytest.approx(0.4, abs=1e-15)

    def test_two_diameters_cross_at_origin(self):
        cf1 = make_frame(0.0, 0.0, 0.5, -0.5)
        cf2 = make_frame(0.0, math.pi / 2.0, 0.5, -0.5)
        z = intersection_point(cf1, cf2)
        assert abs(z.x) < 1e-15 and abs(z.y) < 1e-15

    def test_parallel_lines_raise(self):
        cf1 = make_frame(0.3, 1.0, 0.5, -0.5)
        cf2 = make_frame(0.5, 1.0, 0.5, -0.5)
        with pytest.raises(ParallelLinesError):
            intersection_point(cf1, cf2)
        with pytest.raises(ParallelLinesError):
            intersection_norm_sq(0.3, 0.5, 1.0, 1.0 + math.pi)

    def test_point_lies_on_both_lines(self, frame_batch):
        pairs = frame_batch.reshape(-1, 2, 4)
        for (f1, f2) in pairs[:300]:
            cf1, cf2 = make_frame(*f1), make_frame(*f2)
            if abs(math.sin(cf1.gamma - cf2.gamma)) <= 1e-14:
                continue
            z = intersection_point(cf1, cf2)
            for cf in (cf1, cf2):
                dist = abs(z.x * math.cos(cf.gamma)
                           + z.y * math.sin(cf.gamma) - cf.rho)
                assert dist <= 1e-12

    def test_matches_endpoint_based_linear_solve(self, frame_batch):
        pairs = frame_batch.reshape(-1, 2, 4)
        for (f1, f2) in pairs[:300]:
            cf1, cf2 = make_frame(*f1), make_frame(*f2)
            if abs(math.sin(cf1.gamma - cf2.gamma)) <= 1e-12:
                continue
            z = intersection_point(cf1, cf2)
            s1 = endpoints_from_chord_frame(cf1)
            s2 = endpoints_from_chord_frame(cf2)
            # a1 + u (b1 - a1) = a2 + v (b2 - a2), solved as a 2x2 system
            mat = np.array([
                [s1.b.x - s1.a.x, s2.a.x - s2.b.x],
                [s1.b.y - s1.a.y, s2.a.y - s2.b.y],
            ])
            rhs = np.array([s2.a.x - s1.a.x, s2.a.y - s1.a.y])
            u, _ = np.linalg.solve(mat, rhs)
            zx = s1.a.x + u * (s1.b.x - s1.a.x)
            zy = s1.a.y + u * (s1.b.y - s1.a.y)
            assert abs(z.x - zx) < 1e-10 and abs(z.y - zy) < 1e-10


class TestIntersectionNormSq:
    def test_axis_aligned_example(self):
        v = intersection_norm_sq(0.3, 0.4, 0.0, math.pi / 2.0)
        assert v == pytest.approx(0.25, abs=1e-15)

    def test_two_diameters_give_zero(self):
        assert intersection_norm_sq(0.0, 0.0, 0.2, 1.9) == 0.0

    def test_consistent_with_intersection_point(self, frame_batch):
        pairs = frame_batch.reshape(-1, 2, 4)
        for (f1, f2) in pairs[:300]:
            cf1, cf2 = make_frame(*f1), make_frame(*f2)
            if abs(math.sin(cf1.gamma - cf2.gamma)) <= 1e-12:
                continue
            z = intersection_point(cf1, cf2)
            v = intersection_norm_sq(cf1.rho, cf2.rho, cf1.gamma, cf2.gamma)
            assert abs(v - z.norm_sq()) < 1e-12 * max(1.0, v)

    def test_at_least_max_rho_squared(self, frame_batch):
        pairs = frame_batch.reshape(-1, 2, 4)
        for (f1, f2) in pairs[:300]:
            cf1, cf2 = make_frame(*f1), make_frame(*f2)
            if abs(math.sin(cf1.gamma - cf2.gamma)) <= 1e-12:
                continue
            v = intersection_norm_sq(cf1.rho, cf2.rho, cf1.gamma, cf2.gamma)
            assert v >= max(cf1.rho, cf2.rho) ** 2 - 1e-12


class TestParamRootsAtNormSq:
    def test_diameter_midpoint(self):
        cf = make_frame(0.0, math.pi / 2.0, 1.0, -1.0)
        roots = segment_params_at_norm_sq(cf, 0.0)
        assert roots.lo == pytest.approx(0.5, abs=1e-15)
        assert roots.hi == pytest.approx(0.5, abs=1e-15)

    def test_diameter_boundary_points(self):
        cf = make_frame(0.0, math.pi / 2.0, 1.0, -1.0)
        roots = segment_params_at_norm_sq(cf, 1.0)
        assert roots.lo == pytest.approx(0.0, abs=1e-15)
        assert roots.hi == pytest.approx(1.0, abs=1e-15)

    def test_norm_below_rho_squared_raises(self):
        cf = make_frame(0.5, 0.0, 0.3, -0.2)
        with pytest.raises(ValueError):
            segment_params_at_norm_sq(cf, 0.2)

    def test_tiny_negative_radicand_is_clamped(self):
        cf = make_frame(0.5, 0.0, 0.3, -0.2)
        roots = segment_params_at_norm_sq(cf, 0.25 - 1e-13)
        assert roots.lo == roots.hi

    def test_roots_reproduce_norm_and_locate_crossing(self, frame_batch):
        pairs = frame_batch.reshape(-1, 2, 4)
        checked = 0
        for (f1, f2) in pairs[:400]:
            cf1, cf2 = make_frame(*f1), make_frame(*f2)
            if abs(math.sin(cf1.gamma - cf2.gamma)) <= 1e-12:
                continue
            z = intersection_point(cf1, cf2)
            z_sq = z.norm_sq()
            if z_sq < cf1.rho**2 or z_sq > 4.0:
                continue
            roots = segment_params_at_norm_sq(cf1, z_sq)
            seg = endpoints_from_chord_frame(cf1)
            for p in (roots.lo, roots.hi):
                wx = (1.0 - p) * seg.a.x + p * seg.b.x
                wy = (1.0 - p) * seg.a.y + p * seg.b.y
                assert abs(wx * wx + wy * wy - z_sq) < 1e-10
            # the directly parametrized value must be one of the two roots,
            # and its [0,1] membership must match "z between the endpoints"
            p_direct = segment_param_of_point(cf1, z)
            assert min(abs(p_direct - roots.lo), abs(p_direct - roots.hi)) < 1e-10
            inside_box = (min(seg.a.x, seg.b.x) - 1e-12 <= z.x
                          <= max(seg.a.x, seg.b.x) + 1e-12
                          and min(seg.a.y, seg.b.y) - 1e-12 <= z.y
                          <= max(seg.a.y, seg.b.y) + 1e-12)
            if 1e-10 < p_direct < 1.0 - 1e-10:
                assert inside_box
            elif p_direct < -1e-10 or p_direct > 1.0 + 1e-10:
                assert not inside_box
            checked += 1
        assert checked > 100


class TestSegmentsIntersect:
    def test_crossing_diameters(self):
        s1 = SegmentEndpoints(Point2(-1.0, 0.0), Point2(1.0, 0.0))
        s2 = SegmentEndpoints(Point2(0.0, -1.0), Point2(0.0, 1.0))
        assert segments_intersect(s1, s2) is True

    def test_parallel_disjoint(self):
        s1 = SegmentEndpoints(Point2(0.5, 0.1), Point2(0.9, 0.1))
        s2 = SegmentEndpoints(Point2(0.5, 0.2), Point2(0.9, 0.2))
        assert segments_intersect(s1, s2) is False

    def test_collinear_overlap_counts(self):
        s1 = SegmentEndpoints(Point2(-0.5, 0.0), Point2(0.5, 0.0))
        s2 = SegmentEndpoints(Point2(0.25, 0.0), Point2(0.75, 0.0))
        assert segments_intersect(s1, s2) is True

    def test_endpoint_touch_counts(self):
        s1 = SegmentEndpoints(Point2(-0.5, 0.0), Point2(0.5, 0.0))
        s2 = SegmentEndpoints(Point2(0.5, 0.0), Point2(0.6, 0.4))
        assert segments_intersect(s1, s2) is True

    def test_symmetry(self, frame_batch):
        pairs = frame_batch.reshape(-1, 2, 4)
        for (f1, f2) in pairs[:200]:
            s1 = endpoints_from_chord_frame(make_frame(*f1))
            s2 = endpoints_from_chord_frame(make_frame(*f2))
            assert segments_intersect(s1, s2) == segments_intersect(s2, s1)


class TestAngleBetween:
    def test_examples(self):
        cf0 = make_frame(0.3, 0.0, 0.5, -0.2)
        cf90 = make_frame(0.3, math.pi / 2.0, 0.5, -0.2)
        cf180 = make_frame(0.3, math.pi, 0.5, -0.2)
        assert angle_between(cf0, cf90) == pytest.approx(math.pi / 2.0)
        assert angle_between(cf0, cf0) == pytest.approx(math.pi)
        assert angle_between(cf0, cf180) == pytest.approx(0.0, abs=1e-15)

    @given(frames_strategy(), frames_strategy())
    def test_range_and_swap_invariance(self, cf1, cf2):
        th = angle_between(cf1, cf2)
        assert 0.0 <= th <= math.pi
        assert th == angle_between(cf2, cf1)
