#pragma once

#include "otdepth/geometry.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace otdepth {

/// Exact rational depth k/n. Comparisons are integer-exact; never compare
/// depths through their floating value.
struct DepthValue {
    long long count = 0;
    long long n = 1;

    double value() const { return static_cast<double>(count) / static_cast<double>(n); }
    std::string str() const { return std::to_string(count) + "/" + std::to_string(n); }

    friend bool operator==(const DepthValue& a, const DepthValue& b) {
        return a.count * b.n == b.count * a.n;
    }
    friend bool operator!=(const DepthValue& a, const DepthValue& b) { return !(a == b); }
    friend bool operator<(const DepthValue& a, const DepthValue& b) {
        return a.count * b.n < b.count * a.n;
    }
    friend bool operator<=(const DepthValue& a, const DepthValue& b) {
        return a.count * b.n <= b.count * a.n;
    }
};

DepthValue parse_depth_value(const std::string& text);  // "k/n"

struct DepthOptions {
    bool exact = true;
    int directions = 0;        // approximate mode: number of sampled directions
    std::uint64_t seed = 0;    // approximate sampling / d>=3 tie tilts
    int tilts = 32;            // random tilts per candidate normal, d >= 3

    static DepthOptions exact_mode() { return {}; }
    static DepthOptions approximate(int m, std::uint64_t seed) {
        DepthOptions o;
        o.exact = false;
        o.directions = m;
        o.seed = seed;
        return o;
    }
};

/// Result of a depth query. `minimizing_directions` lists the unit vectors
/// that realize `achieved_count` points in the closed halfspace
/// {z : <v, z - x> >= 0}; for tukey_depth achieved_count == depth.count,
/// for lower_tukey_depth it is the maximal count n+1-depth.count.
struct DepthResult {
    DepthValue depth;
    std::vector<Point> minimizing_directions;
    long long achieved_count = 0;
    bool exact = true;
};

/// Number of cloud points in the closed halfspace through x with outward
/// normal v (points coincident with x always count).
long long halfspace_count(const Point& x, const PointCloud& cloud, const Point& v);

/// Tukey (halfspace) depth of x w.r.t. the cloud:
/// min over unit v of #{i : <v, X_i - x> >= 0} / n.
///
/// Exact mode: d=1 evaluates both signs; d=2 runs a rotating sweep over the
/// critical angles (each point's angle +- pi/2) and the midpoints of the
/// cells between them, O(n^2); d>=3 enumerates normals of hyperplanes
/// spanned by x and (d-1)-subsets plus 32 random 1e-7 tilts per normal
/// (exact with probability 1 in general position; see module docs).
/// Approximate mode minimizes over `directions` sampled unit vectors and is
/// an upper bound on the true depth.
DepthResult tukey_depth(const Point& x, const PointCloud& cloud,
                        const DepthOptions& options = DepthOptions::exact_mode());

/// Lower Tukey depth: (n+1)/n - max over unit v of the closed-halfspace
/// fraction. minimizing_directions holds the maximizing vectors.
DepthResult lower_tukey_depth(const Point& x, const PointCloud& cloud,
                              const DepthOptions& options = DepthOptions::exact_mode());

/// One exact minimizing direction, tie-broken as the lexicographically
/// smallest coordinate vector after rounding to 1e-9.
Point min_depth_direction(const Point& x, const PointCloud& cloud);

/// Sub-cloud of points whose exact depth equals tau (may be empty).
/// Requires tau.n == cloud size.
PointCloud depth_contour_ref(const PointCloud& cloud, const DepthValue& tau);
std::vector<std::size_t> depth_contour_ref_indices(const PointCloud& cloud, const DepthValue& tau);

/// Maximal exact depth tau* over the cloud points and all achieving points.
std::pair<DepthValue, PointCloud> max_depth(const PointCloud& cloud);
std::vector<std::size_t> max_depth_indices(const PointCloud& cloud);

/// Depth of every cloud point, exact mode, in index order.
std::vector<DepthValue> all_point_depths(const PointCloud& cloud);

}  // namespace otdepth
