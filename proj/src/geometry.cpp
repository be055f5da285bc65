#include "otdepth/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace otdepth {

namespace {

void require_same_dim(const Point& a, const Point& b, const char* what) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
}

// Iterates over all size-k index subsets of {0..n-1}.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        // advance
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (k == 0) return;
    }
}

// Rank of the matrix whose rows are (points[idx[j+1]] - points[idx[0]]),
// with the scale-invariant threshold 1e-9 * sigma_max.
bool affinely_independent(const std::vector<Point>& pts, const std::vector<std::size_t>& idx) {
    const std::size_t m = idx.size() - 1;  // number of difference rows
    const std::size_t d = pts[idx[0]].size();
    Eigen::MatrixXd mat(m, d);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < d; ++c)
            mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                pts[idx[r + 1]][c] - pts[idx[0]][c];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return m == 0;
    const double smax = sv(0);
    if (smax == 0.0) return false;
    return sv(sv.size() - 1) > 1e-9 * smax;
}

// Unit normal of the hyperplane through the given affinely independent
// d-subset, or an empty vector when the subset is degenerate.
Point hyperplane_normal(const std::vector<Point>& pts, const std::vector<std::size_t>& idx) {
    const std::size_t d = pts[idx[0]].size();
    const std::size_t m = idx.size() - 1;  // d-1 difference rows
    Eigen::MatrixXd mat(m, d);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < d; ++c)
            mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                pts[idx[r + 1]][c] - pts[idx[0]][c];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    // All difference rows must be independent, otherwise the spanned flat has
    // dimension < d-1 and the hyperplane is not unique.
    if (smax == 0.0 || (m > 0 && sv(sv.size() - 1) <= 1e-9 * smax)) return {};
    Eigen::VectorXd nrm = svd.matrixV().col(static_cast<Eigen::Index>(d - 1));
    Point out(d);
    for (std::size_t c = 0; c < d; ++c) out[c] = nrm(static_cast<Eigen::Index>(c));
    return out;
}

}  // namespace

double dot(const Point& a, const Point& b) {
    require_same_dim(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Point& a) { return std::sqrt(dot(a, a)); }

double squared_distance(const Point& a, const Point& b) {
    require_same_dim(a, b, "squared_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return s;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

Point sub(const Point& a, const Point& b) {
    require_same_dim(a, b, "sub");
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Point add(const Point& a, const Point& b) {
    require_same_dim(a, b, "add");
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Point scaled(const Point& a, double s) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

Point normalized(const Point& a) {
    const double n = norm(a);
    if (!(n > 1e-300)) throw std::invalid_argument("normalized: zero vector");
    return scaled(a, 1.0 / n);
}

bool all_finite(const Point& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

PointCloud::PointCloud(std::vector<Point> pts, std::string lbl)
    : points(std::move(pts)), label(std::move(lbl)) {
    if (points.empty()) {
        dim = 0;
        return;
    }
    dim = static_cast<int>(points.front().size());
    if (dim < 1) throw std::invalid_argument("PointCloud: dimension must be >= 1");
    for (const Point& p : points) {
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("PointCloud: inconsistent point dimensions");
        if (!all_finite(p)) throw std::invalid_argument("PointCloud: non-finite coordinate");
    }
}

double PointCloud::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            best = std::max(best, squared_distance(points[i], points[j]));
    return std::sqrt(best);
}

PointCloud cloud_from_values(const std::vector<double>& values, std::string label) {
    std::vector<Point> pts;
    pts.reserve(values.size());
    for (double v : values) pts.push_back(Point{v});
    return PointCloud(std::move(pts), std::move(label));
}

namespace {

void validate_cone_params(const Point& axis, double half_angle, const char* what) {
    const double n = norm(axis);
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + ": axis must be a unit vector");
    if (!(half_angle > 0.0) || !(half_angle < std::numbers::pi / 2.0))
        throw std::invalid_argument(std::string(what) + ": half-angle must lie strictly in (0, pi/2)");
}

}  // namespace

Cone::Cone(Point v, Point e, double theta)
    : vertex(std::move(v)), axis(std::move(e)), half_angle(theta) {
    require_same_dim(vertex, axis, "Cone");
    validate_cone_params(axis, half_angle, "Cone");
}

AntiCone::AntiCone(Point u, Point e, double theta)
    : apex(std::move(u)), axis(std::move(e)), half_angle(theta) {
    require_same_dim(apex, axis, "AntiCone");
    validate_cone_params(axis, half_angle, "AntiCone");
}

bool in_cone(const Point& z, const Cone& c) {
    require_same_dim(z, c.vertex, "in_cone");
    const Point v = sub(z, c.vertex);
    const double vn = norm(v);
    const double guard = 1e-12 * (1.0 + vn);
    return dot(v, c.axis) >= std::cos(c.half_angle) * vn - guard;
}

bool in_anticone(const Point& y, const AntiCone& a) {
    require_same_dim(y, a.apex, "in_anticone");
    const Point w = sub(a.apex, y);
    const double wn = norm(w);
    const double s = std::sin(a.half_angle);
    const double slope = std::abs(s) / std::sqrt(1.0 - s * s);
    const double guard = 1e-12 * (1.0 + wn);
    return dot(w, a.axis) <= wn * slope + guard;
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff: undefined for empty point sets");
    if (a.dim != b.dim) throw std::invalid_argument("hausdorff: dimension mismatch");
    const auto directed = [](const PointCloud& from, const PointCloud& to) {
        double worst = 0.0;
        for (const Point& p : from.points) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& q : to.points) best = std::min(best, squared_distance(p, q));
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

bool in_general_position(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    if (n == 0) throw std::invalid_argument("in_general_position: empty cloud");
    const std::size_t d = static_cast<std::size_t>(cloud.dim);
    if (d == 1) {
        std::vector<double> vals;
        vals.reserve(n);
        for (const Point& p : cloud.points) vals.push_back(p[0]);
        std::sort(vals.begin(), vals.end());
        return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
    }
    if (n <= d) return true;  // no (d+1)-subsets
    bool ok = true;
    for_each_subset(n, d + 1, [&](const std::vector<std::size_t>& idx) {
        if (ok && !affinely_independent(cloud.points, idx)) ok = false;
    });
    return ok;
}

int max_hyperplane_count(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    const std::size_t d = static_cast<std::size_t>(cloud.dim);
    if (n < d) throw std::invalid_argument("max_hyperplane_count: fewer points than dimension");
    if (d == 1) {
        std::vector<double> vals;
        vals.reserve(n);
        for (const Point& p : cloud.points) vals.push_back(p[0]);
        std::sort(vals.begin(), vals.end());
        int best = 1, run = 1;
        for (std::size_t i = 1; i < n; ++i) {
            run = vals[i] == vals[i - 1] ? run + 1 : 1;
            best = std::max(best, run);
        }
        return best;
    }
    int best = 0;
    for_each_subset(n, d, [&](const std::vector<std::size_t>& idx) {
        const Point normal = hyperplane_normal(cloud.points, idx);
        if (normal.empty()) return;
        const Point& base = cloud.points[idx[0]];
        int count = 0;
        for (const Point& p : cloud.points) {
            const Point diff = sub(p, base);
            if (std::abs(dot(normal, diff)) <= 1e-9 * (1.0 + norm(diff))) ++count;
        }
        best = std::max(best, count);
    });
    // Degenerate fallback (e.g. every chosen subset collapses to a flat of
    // dimension < d-1): a hyperplane through a repeated point still counts.
    if (best == 0) {
        std::unordered_map<std::string, int> mult;
        for (const Point& p : cloud.points) {
            std::string key;
            for (double v : p) key += std::to_string(v) + ",";
            best = std::max(best, ++mult[key]);
        }
    }
    return best;
}

}  // namespace otdepth
