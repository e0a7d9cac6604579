"""Random chords of the unit disk: geometry, sampling, and densities.

A segment is drawn by joining two independent uniform points of the closed
unit disk.  The package provides the chord-frame parametrization of such
segments, seed-reproducible Monte Carlo over pairs of them, the analytic
density of the angle between intersecting segments together with the
classical marginals, and a validation suite in which every formula is
checked against an independent oracle.
"""

__version__ = "0.1.0"

from .geometry import (
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
from .sampling import (
    Histogram,
    McEstimate,
    RandomSource,
    estimate_intersection_probability,
    histogram,
    sample_conditional_angles,
    sample_disk_point,
    sample_pair_statistics,
    sample_points,
    sample_segment,
    sample_segment_frames,
)
from .densities import (
    DensityTable,
    QuadratureConfig,
    QuadratureError,
    QuadratureResult,
    RhoInterval,
    adaptive_quadrature,
    admissible_rho_interval,
    angle_cdf,
    angle_density,
    angle_density_kernel,
    angle_density_unnormalized,
    angle_density_unnormalized_values,
    angle_density_values,
    angle_difference_density,
    center_distance_density,
    chord_frame_density,
    chord_frame_density_values,
    density_table,
    endpoint_distance_density,
    endpoint_distance_density_alt,
    normalization_constant,
)
from .validation import (
    ComparisonReport,
    SuiteResult,
    finite_difference_jacobian,
    grid_angle_density_integral,
    predicate_cross_validation,
    run_validation_suite,
    tv_distance,
)

__all__ = [
    "__version__",
    # geometry
    "Point2", "SegmentEndpoints", "ChordFrame", "ParamRoots",
    "ParallelLinesError", "chord_frame_from_endpoints",
    "endpoints_from_chord_frame", "jacobian_abs", "intersection_point",
    "intersection_norm_sq", "segment_params_at_norm_sq",
    "segment_param_of_point", "segments_intersect", "angle_between",
    # sampling
    "RandomSource", "Histogram", "McEstimate", "sample_disk_point",
    "sample_segment", "sample_points", "sample_segment_frames",
    "sample_pair_statistics", "estimate_intersection_probability",
    "sample_conditional_angles", "histogram",
    # densities
    "QuadratureConfig", "QuadratureResult", "QuadratureError",
    "adaptive_quadrature", "RhoInterval", "admissible_rho_interval",
    "angle_density_kernel", "angle_density_unnormalized",
    "angle_density_unnormalized_values", "normalization_constant",
    "angle_density", "angle_density_values", "angle_cdf", "DensityTable",
    "density_table", "chord_frame_density", "chord_frame_density_values",
    "center_distance_density", "endpoint_distance_density",
    "endpoint_distance_density_alt", "angle_difference_density",
    # validation
    "ComparisonReport", "SuiteResult", "finite_difference_jacobian",
    "grid_angle_density_integral", "tv_distance",
    "predicate_cross_validation", "run_validation_suite",
]
