#pragma once

#include "otdepth/assignment.hpp"
#include "otdepth/depth.hpp"
#include "otdepth/geometry.hpp"

#include <utility>
#include <vector>

namespace otdepth {

/// The matching viewed as a quantile function Q(u_i) = X_{sigma(i)} together
/// with its inverse F and the exact depth of every reference point. Depths
/// live on the reference side only; target points inherit the depth of their
/// preimage.
struct TransportQuantileFn {
    PointCloud ref;
    PointCloud target;
    Matching matching;
    std::vector<std::size_t> inverse;      // target index -> reference index
    std::vector<DepthValue> ref_depths;    // exact, index-aligned with ref

    static TransportQuantileFn make(PointCloud ref, PointCloud target);
    static TransportQuantileFn from_matching(PointCloud ref, PointCloud target, Matching m);

    std::size_t size() const { return ref.size(); }
};

/// Depth of target point X_i: the Tukey depth of its reference preimage.
DepthValue transport_depth(std::size_t target_index, const TransportQuantileFn& q);

struct ContourSet {
    DepthValue tau;
    PointCloud points;          // target-side contour (image of the preimage)
    PointCloud ref_preimage;    // reference points with depth exactly tau
    std::vector<std::size_t> target_indices;
};

/// Image under the matching of the reference depth-tau contour; empty is a
/// legal result when no reference point has depth tau.
ContourSet transport_contour(const DepthValue& tau, const TransportQuantileFn& q);

/// Image of all deepest reference points: the discrete transport median set.
PointCloud transport_median(const TransportQuantileFn& q);
std::vector<std::size_t> transport_median_indices(const TransportQuantileFn& q);

/// (target index, depth) for every target point, ordered center-outward:
/// descending depth, then ascending index.
std::vector<std::pair<std::size_t, DepthValue>> transport_ranks(const TransportQuantileFn& q);

}  // namespace otdepth
