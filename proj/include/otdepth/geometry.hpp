#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace otdepth {

/// A point in R^d, stored as a dense coordinate vector.
using Point = std::vector<double>;

double dot(const Point& a, const Point& b);
double norm(const Point& a);
double distance(const Point& a, const Point& b);
double squared_distance(const Point& a, const Point& b);
Point sub(const Point& a, const Point& b);
Point add(const Point& a, const Point& b);
Point scaled(const Point& a, double s);

/// Returns a / ||a||. Throws std::invalid_argument on (near-)zero vectors.
Point normalized(const Point& a);

bool all_finite(const Point& a);

/// An ordered list of points sharing one dimension. Index identity matters:
/// matchings and contamination plans refer to positions in this list.
struct PointCloud {
    std::vector<Point> points;
    int dim = 0;
    std::string label;

    PointCloud() = default;
    explicit PointCloud(std::vector<Point> pts, std::string lbl = "");

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    const Point& operator[](std::size_t i) const { return points[i]; }
    Point& operator[](std::size_t i) { return points[i]; }

    /// Largest pairwise distance; 0 for clouds with fewer than two points.
    double diameter() const;
};

/// Convenience for 1-D data.
PointCloud cloud_from_values(const std::vector<double>& values, std::string label = "");

/// Convex cone C_{x,e,theta} = { x + v : <v,e> >= cos(theta) ||v|| }.
/// Axis must be unit length (within 1e-12); half-angle strictly in (0, pi/2).
struct Cone {
    Point vertex;
    Point axis;
    double half_angle;

    Cone(Point vertex, Point axis, double half_angle);
};

/// Non-convex cone A_{u,e,theta} = { y : <u-y,e> <= ||u-y|| tan(theta) }.
/// For theta >= pi/4 this is all of R^d; that is legal input.
struct AntiCone {
    Point apex;
    Point axis;
    double half_angle;

    AntiCone(Point apex, Point axis, double half_angle);
};

/// Closed membership; the vertex itself is inside.
bool in_cone(const Point& z, const Cone& c);
bool in_anticone(const Point& y, const AntiCone& a);

/// Exact discrete Hausdorff distance, O(|A||B|) over all pairs.
/// Throws std::invalid_argument on empty inputs or dimension mismatch.
double hausdorff(const PointCloud& a, const PointCloud& b);

/// True iff every (d+1)-subset is affinely independent, i.e. no hyperplane
/// contains more than d points. Rank tests use a singular-value threshold of
/// 1e-9 times the largest singular value. Convention for d=1 (the usual
/// definition does not cover it): general position iff all values are
/// pairwise distinct.
bool in_general_position(const PointCloud& cloud);

/// Maximum number of cloud points lying on a single hyperplane, found by
/// enumerating hyperplanes spanned by affinely independent d-subsets
/// (exact at desk scale). The N of the breakdown brackets is this value
/// minus one. For d=1 a hyperplane is a single point, so the result is the
/// maximal multiplicity of a repeated value (1 for distinct data, N=0).
/// Requires n >= d.
int max_hyperplane_count(const PointCloud& cloud);

}  // namespace otdepth
