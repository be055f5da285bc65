#pragma once

// Test-only oracles, independent of the library's exact-computation paths.

#include "otdepth/depth.hpp"
#include "otdepth/geometry.hpp"
#include "otdepth/rng.hpp"

#include <numbers>
#include <vector>

namespace oracles {

using otdepth::Point;
using otdepth::PointCloud;

// Minimum closed-halfspace count over a dense 2-D direction grid. The grid is
// rotated by a tiny seeded offset so no data hyperplane is hit exactly
// (tie-perturbation); counts use the plain >= 0 predicate, not the library's
// guarded one.
inline long long grid_min_count_2d(const Point& x, const PointCloud& cloud, int grid_size,
                                   std::uint64_t seed) {
    otdepth::Rng rng(otdepth::split_seed(seed, 0x0AC1E));
    const double offset = rng.uniform01() * 1e-6 + 1e-7;
    long long best = static_cast<long long>(cloud.size());
    for (int m = 0; m < grid_size; ++m) {
        const double a = 2.0 * std::numbers::pi * m / grid_size + offset;
        const double vx = std::cos(a), vy = std::sin(a);
        long long count = 0;
        for (const Point& p : cloud.points) {
            if (vx * (p[0] - x[0]) + vy * (p[1] - x[1]) >= 0.0) ++count;
        }
        best = std::min(best, count);
    }
    return best;
}

// Brute-force Hausdorff over all pairs, written independently of the library.
inline double hausdorff_brute(const PointCloud& a, const PointCloud& b) {
    auto one_sided = [](const PointCloud& from, const PointCloud& to) {
        double worst = 0.0;
        for (const Point& p : from.points) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const Point& q : to.points) {
                double s = 0.0;
                for (std::size_t c = 0; c < p.size(); ++c) s += (p[c] - q[c]) * (p[c] - q[c]);
                nearest = std::min(nearest, std::sqrt(s));
            }
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

inline PointCloud random_cloud(int n, int dim, std::uint64_t seed) {
    otdepth::Rng rng(otdepth::split_seed(seed, 0xC10D));
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(rng.gaussian_point(dim));
    return PointCloud(std::move(pts), "random");
}

inline PointCloud diamond() {
    return PointCloud({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}, "diamond");
}

inline PointCloud one_to_five() { return otdepth::cloud_from_values({1, 2, 3, 4, 5}, "1..5"); }

}  // namespace oracles
