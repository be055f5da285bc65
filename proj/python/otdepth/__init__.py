"""Transport-based multivariate quantiles, Tukey depths and breakdown experiments.

The heavy lifting lives in the C++ extension module ``otdepth._core``; this
package re-exports its public surface.
"""

from ._core import (
    BreakdownEstimate,
    ContourSet,
    DepthResult,
    DepthValue,
    Matching,
    PointCloud,
    TransportQuantileFn,
    __version__,
    brute_force_assignment,
    check_pairwise_monotone,
    ensure_general_position,
    estimate_bp_contour,
    estimate_bp_map,
    estimate_bp_median,
    generate_reference,
    hausdorff,
    in_general_position,
    lower_tukey_depth,
    max_depth,
    max_hyperplane_count,
    min_depth_direction,
    read_cloud_csv,
    solve_assignment,
    transport_contour,
    transport_depth,
    transport_median,
    transport_ranks,
    tukey_depth,
    write_cloud_csv,
)

__all__ = [
    "BreakdownEstimate",
    "ContourSet",
    "DepthResult",
    "DepthValue",
    "Matching",
    "PointCloud",
    "TransportQuantileFn",
    "__version__",
    "brute_force_assignment",
    "check_pairwise_monotone",
    "ensure_general_position",
    "estimate_bp_contour",
    "estimate_bp_map",
    "estimate_bp_median",
    "generate_reference",
    "hausdorff",
    "in_general_position",
    "lower_tukey_depth",
    "max_depth",
    "max_hyperplane_count",
    "min_depth_direction",
    "read_cloud_csv",
    "solve_assignment",
    "transport_contour",
    "transport_depth",
    "transport_median",
    "transport_ranks",
    "tukey_depth",
    "write_cloud_csv",
]
