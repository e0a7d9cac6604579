"""Oracle layer: finite differences, grid integration, TV statistics, suite."""

import math

import numpy as np
import pytest

from diskchords import (
    ChordFrame,
    ComparisonReport,
    ParallelLinesError,
    Point2,
    RandomSource,
    SegmentEndpoints,
    chord_frame_from_endpoints,
    finite_difference_jacobian,
    grid_angle_density_integral,
    intersection_norm_sq,
    jacobian_abs,
    predicate_cross_validation,
    run_validation_suite,
    segment_param_of_point,
    segment_params_at_norm_sq,
    segments_intersect,
    tv_distance,
)
from diskchords import densities, sampling, validation


class TestComparisonReport:
    def test_build_sets_pass_flag(self):
        assert ComparisonReport.build("x", 0.5, 1.0, 10).passed
        assert not ComparisonReport.build("x", 1.5, 1.0, 10).passed
        assert ComparisonReport.build("x", 1.0, 1.0, 10).passed  # boundary

    def test_inconsistent_flag_rejected(self):
        with pytest.raises(ValueError):
            ComparisonReport("x", 2.0, 1.0, True, 10)

    def test_serialization_uses_pass_key(self):
        d = ComparisonReport.build("x", 0.5, 1.0, 10).as_dict()
        assert d["pass"] is True
        assert set(d) == {"statistic_name", "value", "threshold", "pass", "n"}

    def test_str_is_readable(self):
        s = str(ComparisonReport.build("tv", 0.5, 1.0, 10))
        assert "PASS" in s and "tv" in s


class TestFiniteDifferenceJacobian:
    def test_reference_frame(self):
        cf = ChordFrame(rho=0.5, gamma=1.0, t_a=0.3, t_b=-0.2)
        fd = finite_difference_jacobian(cf, step=1e-5)
        assert fd == pytest.approx(2.0, rel=1e-5)

    def test_independent_of_gamma(self):
        a = finite_difference_jacobian(ChordFrame(0.5, 0.3, 0.3, -0.2))
        b = finite_difference_jacobian(ChordFrame(0.5, 2.9, 0.3, -0.2))
        assert abs(a - b) < 1e-6

    def test_linear_in_offset_difference(self):
        one = finite_difference_jacobian(ChordFrame(0.5, 1.0, 0.3, -0.2))
        two = finite_difference_jacobian(ChordFrame(0.5, 1.0, 0.6, -0.4))
        assert two == pytest.approx(2.0 * one, rel=1e-5)

    def test_rejects_frames_too_close_to_domain_boundary(self):
        with pytest.raises(ValueError):
            finite_difference_jacobian(ChordFrame(1e-6, 1.0, 0.3, -0.2))
        half = math.sqrt(1.0 - 0.25)
        with pytest.raises(ValueError):
            finite_difference_jacobian(
                ChordFrame(0.5, 1.0, half - 1e-7, -0.2))

    def test_matches_analytic_on_random_frames(self, frame_batch):
        checked = 0
        for rho, gamma, t_a, t_b in frame_batch:
            cf = ChordFrame(rho, gamma, t_a, t_b)
            try:
                fd = finite_difference_jacobian(cf)
            except ValueError:
                continue
            assert fd == pytest.approx(jacobian_abs(cf), rel=1e-5)
            checked += 1
            if checked >= 200:
                break
        assert checked >= 200


class TestGridAngleDensityIntegral:
    def test_zero_at_degenerate_angles(self):
        assert grid_angle_density_integral(0.0, 100) == 0.0
        assert grid_angle_density_integral(math.pi, 100) == 0.0

    def test_rejects_coarse_grid(self):
        with pytest.raises(ValueError):
            grid_angle_density_integral(1.0, 9)

    def test_matches_adaptive_at_right_angle(self):
        grid = grid_angle_density_integral(math.pi / 2.0, 2000)
        adaptive = densities.angle_density_unnormalized(math.pi / 2.0)
        assert abs(grid - adaptive) <= 1e-5 * abs(adaptive)

    def test_monotone_refinement(self):
        theta = math.pi / 2.0
        coarse = abs(grid_angle_density_integral(theta, 500)
                     - grid_angle_density_integral(theta, 1000))
        fine = abs(grid_angle_density_integral(theta, 2000)
                   - grid_angle_density_integral(theta, 4000))
        assert fine < coarse


class TestTvDistance:
    def test_zero_against_own_step_density(self):
        values = np.array([0.05, 0.15, 0.15, 0.85, 0.9])
        hist = sampling.histogram(values, 0.0, 1.0, 4)
        heights = hist.density_heights()
        edges = hist.edges()

        def step(x):
            idx = np.clip(np.searchsorted(edges, x, side="right") - 1, 0, 3)
            return heights[idx]

        report = tv_distance(hist, step, threshold=1e-12)
        assert report.value == pytest.approx(0.0, abs=1e-12)
        assert report.passed

    def test_disjoint_support_gives_one(self):
        hist = sampling.histogram([0.2, 0.4, 0.6], 0.0, 1.0, 4)
        report = tv_distance(hist, lambda x: np.zeros_like(x), threshold=0.5)
        assert report.value == pytest.approx(1.0, abs=1e-12)
        assert not report.passed

    def test_reports_sample_size(self):
        hist = sampling.histogram([0.2, 0.4], 0.0, 1.0, 4)
        report = tv_distance(hist, lambda x: np.ones_like(x), threshold=1.0)
        assert report.n == 2

    def test_empirical_angle_sample_close_to_density(self):
        angles = sampling.sample_conditional_angles(RandomSource(12), 20_000)
        hist = sampling.histogram(angles, 0.0, math.pi, 50)
        report = tv_distance(hist, densities.angle_density_values,
                             threshold=0.06, statistic_name="angle-tv")
        assert report.passed, str(report)


def _characterization(s1, s2):
    """Crossing test through the chord-frame route: |z|^2 <= 1 and the
    norm-root that corresponds to z lies in [0,1] on both segments."""
    cf1 = chord_frame_from_endpoints(s1)
    cf2 = chord_frame_from_endpoints(s2)
    try:
        z_sq = intersection_norm_sq(cf1.rho, cf2.rho, cf1.gamma, cf2.gamma)
    except ParallelLinesError:
        return False
    if z_sq > 1.0:
        return False
    from diskchords import intersection_point

    z = intersection_point(cf1, cf2)
    for cf in (cf1, cf2):
        roots = segment_params_at_norm_sq(cf, max(z_sq, cf.rho**2))
        p = segment_param_of_point(cf, z)
        if min(abs(p - roots.lo), abs(p - roots.hi)) > 1e-9:
            return False
        if not 0.0 <= p <= 1.0:
            return False
    return True


class TestPredicateCrossValidation:
    def test_crossing_diameters_agree_true(self):
        s1 = SegmentEndpoints(Point2(-1.0, 0.0), Point2(1.0, 0.0))
        s2 = SegmentEndpoints(Point2(0.0, -1.0), Point2(0.0, 1.0))
        assert segments_intersect(s1, s2) is True
        assert _characterization(s1, s2) is True

    def test_parallel_disjoint_agree_false(self):
        s1 = SegmentEndpoints(Point2(0.5, 0.1), Point2(0.9, 0.1))
        s2 = SegmentEndpoints(Point2(0.5, 0.2), Point2(0.9, 0.2))
        assert segments_intersect(s1, s2) is False
        assert _characterization(s1, s2) is False

    def test_no_disagreements_on_random_pairs(self):
        report = predicate_cross_validation(RandomSource(3), 100_000)
        assert report.value == 0.0
        assert report.passed

    def test_rejects_non_positive_n(self):
        with pytest.raises(ValueError):
            predicate_cross_validation(RandomSource(3), 0)


def test_chord_frame_density_integrates_to_one_on_coarse_grid():
    v = validation.chord_frame_density_grid_integral(40)
    assert abs(v - 1.0) <= 2e-2
    assert v == pytest.approx(1.005338007902152, rel=1e-12)  # frozen


class TestValidationSuite:
    def test_quick_level_passes(self):
        result = run_validation_suite(seed=0, level="quick")
        assert result.all_passed, "\n".join(str(r) for r in result.comparisons)
        names = [r.statistic_name for r in result.comparisons]
        assert len(names) == len(set(names))
        estimate_names = {e["name"] for e in result.estimates}
        assert {"p_intersect", "normalization_constant"} <= estimate_names

    def test_quick_level_is_deterministic(self):
        a = run_validation_suite(seed=5, level="quick")
        b = run_validation_suite(seed=5, level="quick", threads=4)
        assert a.comparisons == b.comparisons
        assert a.estimates == b.estimates

    def test_mutated_constant_fails_only_the_marginal_check(self):
        result = run_validation_suite(seed=0, level="quick",
                                      mutant="fL-constant")
        failed = [r.statistic_name for r in result.comparisons if not r.passed]
        assert failed == ["center-distance-tv"]
        assert not result.all_passed

    def test_unknown_level_rejected(self):
        with pytest.raises(ValueError):
            run_validation_suite(seed=0, level="extreme")
        with pytest.raises(ValueError):
            run_validation_suite(seed=0, level="quick", mutant="other")
