#include "otdepth/depth.hpp"

#include "otdepth/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace otdepth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Deterministic stream for the d>=3 tie tilts when the caller does not care.
constexpr std::uint64_t kTiltStream = 0x7119e5;

Point rounded(const Point& v, double grid = 1e-9) {
    Point out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::round(v[i] / grid) * grid;
    return out;
}

// Collect the directions achieving `target` count, deduplicated and sorted
// lexicographically on 1e-9-rounded keys. The returned vectors are the
// original (unrounded) directions so re-evaluated counts match exactly.
std::vector<Point> collect_achievers(const std::vector<Point>& dirs,
                                     const std::vector<long long>& counts, long long target) {
    std::vector<std::pair<Point, Point>> keyed;  // (rounded key, original)
    for (std::size_t i = 0; i < dirs.size(); ++i)
        if (counts[i] == target) keyed.emplace_back(rounded(dirs[i]), dirs[i]);
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    std::vector<Point> out;
    out.reserve(keyed.size());
    for (auto& kv : keyed) out.push_back(std::move(kv.second));
    return out;
}

struct CandidateCounts {
    std::vector<Point> dirs;
    std::vector<long long> counts;
};

CandidateCounts evaluate(const Point& x, const PointCloud& cloud, std::vector<Point> dirs) {
    CandidateCounts cc;
    cc.counts.reserve(dirs.size());
    for (const Point& v : dirs) cc.counts.push_back(halfspace_count(x, cloud, v));
    cc.dirs = std::move(dirs);
    return cc;
}

std::vector<Point> candidates_1d() { return {Point{-1.0}, Point{1.0}}; }

// Critical angles (each data angle +- pi/2) and the midpoints of the cells
// between consecutive criticals. The count function is piecewise constant on
// the open cells, so this set realizes every value it takes.
std::vector<Point> candidates_2d(const Point& x, const PointCloud& cloud) {
    std::vector<double> criticals;
    criticals.reserve(2 * cloud.size());
    for (const Point& p : cloud.points) {
        const double rx = p[0] - x[0], ry = p[1] - x[1];
        if (rx == 0.0 && ry == 0.0) continue;
        const double a = std::atan2(ry, rx);
        for (double c : {a + std::numbers::pi / 2.0, a - std::numbers::pi / 2.0}) {
            c = std::fmod(c, kTwoPi);
            if (c < 0.0) c += kTwoPi;
            criticals.push_back(c);
        }
    }
    if (criticals.empty()) return {Point{1.0, 0.0}};  // all points coincide with x
    std::sort(criticals.begin(), criticals.end());
    criticals.erase(std::unique(criticals.begin(), criticals.end(),
                                [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                    criticals.end());
    std::vector<double> angles = criticals;
    for (std::size_t i = 0; i < criticals.size(); ++i) {
        const double a = criticals[i];
        const double b = i + 1 < criticals.size() ? criticals[i + 1] : criticals.front() + kTwoPi;
        angles.push_back(0.5 * (a + b));
    }
    std::vector<Point> dirs;
    dirs.reserve(angles.size());
    for (double a : angles) dirs.push_back(Point{std::cos(a), std::sin(a)});
    return dirs;
}

// Normals of hyperplanes spanned by x and (d-1)-subsets of the cloud, plus
// seeded tilts to resolve boundary ties, plus axes and a few random
// directions as a safety net for tiny clouds.
std::vector<Point> candidates_nd(const Point& x, const PointCloud& cloud, int tilts,
                                 std::uint64_t seed) {
    const std::size_t d = x.size();
    const std::size_t n = cloud.size();
    Rng rng(split_seed(seed, kTiltStream));
    std::vector<Point> dirs;

    auto push_with_tilts = [&](const Point& w) {
        dirs.push_back(w);
        dirs.push_back(scaled(w, -1.0));
        for (int t = 0; t < tilts; ++t) {
            const Point g = rng.unit_vector(static_cast<int>(d));
            Point w2 = add(w, scaled(g, 1e-7));
            w2 = normalized(w2);
            dirs.push_back(w2);
            dirs.push_back(scaled(w2, -1.0));
        }
    };

    if (n >= d - 1 && d >= 2) {
        std::vector<std::size_t> idx(d - 1);
        // iterate (d-1)-subsets
        for (std::size_t i = 0; i < d - 1; ++i) idx[i] = i;
        while (true) {
            Eigen::MatrixXd mat(static_cast<Eigen::Index>(d - 1), static_cast<Eigen::Index>(d));
            bool degenerate = false;
            for (std::size_t r = 0; r < d - 1; ++r) {
                const Point diff = sub(cloud.points[idx[r]], x);
                if (norm(diff) < 1e-300) degenerate = true;
                for (std::size_t c = 0; c < d; ++c)
                    mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = diff[c];
            }
            if (!degenerate) {
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat, Eigen::ComputeFullV);
                const auto& sv = svd.singularValues();
                const double smax = sv.size() > 0 ? sv(0) : 0.0;
                if (smax > 0.0 && sv(sv.size() - 1) > 1e-12 * smax) {
                    Eigen::VectorXd nvec = svd.matrixV().col(static_cast<Eigen::Index>(d - 1));
                    Point w(d);
                    for (std::size_t c = 0; c < d; ++c) w[c] = nvec(static_cast<Eigen::Index>(c));
                    push_with_tilts(normalized(w));
                }
            }
            // advance subset
            std::size_t i = d - 1;
            bool done = true;
            while (i > 0) {
                --i;
                if (idx[i] != i + n - (d - 1)) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < d - 1; ++j) idx[j] = idx[j - 1] + 1;
                    done = false;
                    break;
                }
            }
            if (done) break;
        }
    }

    for (std::size_t c = 0; c < d; ++c) {
        Point e(d, 0.0);
        e[c] = 1.0;
        dirs.push_back(e);
        e[c] = -1.0;
        dirs.push_back(e);
    }
    for (std::size_t t = 0; t < 2 * d + 8; ++t) dirs.push_back(rng.unit_vector(static_cast<int>(d)));
    return dirs;
}

CandidateCounts exact_candidates(const Point& x, const PointCloud& cloud,
                                 const DepthOptions& options) {
    const std::size_t d = x.size();
    std::vector<Point> dirs;
    if (d == 1)
        dirs = candidates_1d();
    else if (d == 2)
        dirs = candidates_2d(x, cloud);
    else
        dirs = candidates_nd(x, cloud, options.tilts, options.seed);
    return evaluate(x, cloud, std::move(dirs));
}

void require_query(const Point& x, const PointCloud& cloud) {
    if (cloud.empty()) throw std::invalid_argument("depth: empty cloud");
    if (x.size() != static_cast<std::size_t>(cloud.dim))
        throw std::invalid_argument("depth: query dimension mismatch");
}

}  // namespace

long long halfspace_count(const Point& x, const PointCloud& cloud, const Point& v) {
    require_query(x, cloud);
    if (v.size() != x.size()) throw std::invalid_argument("halfspace_count: direction dimension mismatch");
    long long count = 0;
    for (const Point& p : cloud.points) {
        double s = 0.0, nrm2 = 0.0;
        for (std::size_t c = 0; c < x.size(); ++c) {
            const double diff = p[c] - x[c];
            s += v[c] * diff;
            nrm2 += diff * diff;
        }
        // numeric guard for points meant to sit exactly on the boundary
        if (s >= -1e-12 * (1.0 + std::sqrt(nrm2))) ++count;
    }
    return count;
}

DepthValue parse_depth_value(const std::string& text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 >= text.size())
        throw std::invalid_argument("depth value must look like 'k/n', got '" + text + "'");
    DepthValue d;
    d.count = std::stoll(text.substr(0, slash));
    d.n = std::stoll(text.substr(slash + 1));
    if (d.n <= 0 || d.count < 0 || d.count > d.n)
        throw std::invalid_argument("depth value out of range: '" + text + "'");
    return d;
}

DepthResult tukey_depth(const Point& x, const PointCloud& cloud, const DepthOptions& options) {
    require_query(x, cloud);
    const long long n = static_cast<long long>(cloud.size());
    if (!options.exact) {
        if (options.directions <= 0)
            throw std::invalid_argument("tukey_depth: approximate mode needs directions > 0");
        Rng rng(split_seed(options.seed, 0xd17));
        std::vector<Point> dirs;
        dirs.reserve(static_cast<std::size_t>(options.directions));
        for (int i = 0; i < options.directions; ++i) dirs.push_back(rng.unit_vector(cloud.dim));
        CandidateCounts cc = evaluate(x, cloud, std::move(dirs));
        const long long best = *std::min_element(cc.counts.begin(), cc.counts.end());
        return DepthResult{DepthValue{best, n}, collect_achievers(cc.dirs, cc.counts, best), best,
                           false};
    }
    CandidateCounts cc = exact_candidates(x, cloud, options);
    const long long best = *std::min_element(cc.counts.begin(), cc.counts.end());
    return DepthResult{DepthValue{best, n}, collect_achievers(cc.dirs, cc.counts, best), best, true};
}

DepthResult lower_tukey_depth(const Point& x, const PointCloud& cloud, const DepthOptions& options) {
    require_query(x, cloud);
    const long long n = static_cast<long long>(cloud.size());
    if (!options.exact) {
        if (options.directions <= 0)
            throw std::invalid_argument("lower_tukey_depth: approximate mode needs directions > 0");
        Rng rng(split_seed(options.seed, 0xd18));
        std::vector<Point> dirs;
        dirs.reserve(static_cast<std::size_t>(options.directions));
        for (int i = 0; i < options.directions; ++i) dirs.push_back(rng.unit_vector(cloud.dim));
        CandidateCounts cc = evaluate(x, cloud, std::move(dirs));
        const long long worst = *std::max_element(cc.counts.begin(), cc.counts.end());
        return DepthResult{DepthValue{n + 1 - worst, n}, collect_achievers(cc.dirs, cc.counts, worst),
                           worst, false};
    }
    CandidateCounts cc = exact_candidates(x, cloud, options);
    const long long worst = *std::max_element(cc.counts.begin(), cc.counts.end());
    return DepthResult{DepthValue{n + 1 - worst, n}, collect_achievers(cc.dirs, cc.counts, worst),
                       worst, true};
}

Point min_depth_direction(const Point& x, const PointCloud& cloud) {
    const DepthResult r = tukey_depth(x, cloud);
    // collect_achievers sorts lexicographically, so front() is the tie-break.
    return r.minimizing_directions.front();
}

std::vector<std::size_t> depth_contour_ref_indices(const PointCloud& cloud, const DepthValue& tau) {
    if (tau.n != static_cast<long long>(cloud.size()))
        throw std::invalid_argument("depth_contour_ref: tau denominator must equal cloud size");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const DepthResult r = tukey_depth(cloud[i], cloud);
        if (r.depth.count == tau.count) idx.push_back(i);
    }
    return idx;
}

PointCloud depth_contour_ref(const PointCloud& cloud, const DepthValue& tau) {
    std::vector<Point> pts;
    for (std::size_t i : depth_contour_ref_indices(cloud, tau)) pts.push_back(cloud[i]);
    PointCloud out;
    out.points = std::move(pts);
    out.dim = cloud.dim;
    out.label = cloud.label.empty() ? "contour" : cloud.label + ":contour";
    return out;
}

std::vector<DepthValue> all_point_depths(const PointCloud& cloud) {
    std::vector<DepthValue> out;
    out.reserve(cloud.size());
    for (const Point& p : cloud.points) out.push_back(tukey_depth(p, cloud).depth);
    return out;
}

std::vector<std::size_t> max_depth_indices(const PointCloud& cloud) {
    if (cloud.empty()) throw std::invalid_argument("max_depth: empty cloud");
    const std::vector<DepthValue> depths = all_point_depths(cloud);
    long long best = 0;
    for (const DepthValue& d : depths) best = std::max(best, d.count);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < depths.size(); ++i)
        if (depths[i].count == best) idx.push_back(i);
    return idx;
}

std::pair<DepthValue, PointCloud> max_depth(const PointCloud& cloud) {
    const std::vector<std::size_t> idx = max_depth_indices(cloud);
    const DepthValue tau = tukey_depth(cloud[idx.front()], cloud).depth;
    std::vector<Point> pts;
    for (std::size_t i : idx) pts.push_back(cloud[i]);
    PointCloud achievers;
    achievers.points = std::move(pts);
    achievers.dim = cloud.dim;
    achievers.label = "deepest";
    return {tau, achievers};
}

}  // namespace otdepth
