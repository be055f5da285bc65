#include "otdepth/geometry.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

using namespace otdepth;

namespace {
constexpr double kPi = std::numbers::pi;

Point rotate2d(const Point& p, double angle) {
    return {p[0] * std::cos(angle) - p[1] * std::sin(angle),
            p[0] * std::sin(angle) + p[1] * std::cos(angle)};
}
}  // namespace

TEST_CASE("point cloud validation") {
    CHECK_THROWS_AS(PointCloud(std::vector<Point>{{0.0, 1.0}, {1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PointCloud(std::vector<Point>{{std::nan("")}}), std::invalid_argument);
    const PointCloud c({{0.0, 0.0}, {3.0, 4.0}});
    CHECK(c.dim == 2);
    CHECK(c.diameter() == doctest::Approx(5.0));
}

TEST_CASE("cone membership") {
    const Cone c({0.0, 0.0}, {1.0, 0.0}, kPi / 4.0);
    CHECK(in_cone({1.0, 0.0}, c));
    CHECK_FALSE(in_cone({0.0, 1.0}, c));
    CHECK(in_cone({0.0, 0.0}, c));  // the vertex itself

    CHECK_THROWS_AS(Cone({0.0, 0.0}, {2.0, 0.0}, kPi / 4.0), std::invalid_argument);
    CHECK_THROWS_AS(Cone({0.0, 0.0}, {1.0, 0.0}, kPi / 2.0), std::invalid_argument);
    CHECK_THROWS_AS(in_cone({1.0}, c), std::invalid_argument);
}

TEST_CASE("anticone membership") {
    const Point u{0.0, 0.0};
    const Point e{1.0, 0.0};
    const AntiCone a(u, e, kPi / 6.0);
    CHECK(in_anticone(add(u, e), a));           // <-e,e> = -1 <= tan(pi/6)
    CHECK_FALSE(in_anticone(sub(u, e), a));     // 1 > tan(pi/6) ~ 0.577
    CHECK(in_anticone(u, a));                   // apex
    // for theta >= pi/4 the anticone is the whole space
    const AntiCone wide(u, e, kPi / 4.0 + 1e-3);
    CHECK(in_anticone({-100.0, 1.0}, wide));
}

TEST_CASE("cone invariance under rigid rotation") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Point x = rng.gaussian_point(2);
        const Point e = rng.unit_vector(2);
        const double theta = rng.uniform(0.05, kPi / 2.0 - 0.05);
        const Point z = rng.gaussian_point(2);
        const double angle = rng.uniform(0.0, 2.0 * kPi);
        const Cone cone(x, e, theta);
        const Cone rotated(rotate2d(x, angle), rotate2d(e, angle), theta);
        CHECK(in_cone(z, cone) == in_cone(rotate2d(z, angle), rotated));
    }
}

TEST_CASE("cone nesting in the half-angle") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const Point x = rng.gaussian_point(2);
        const Point e = rng.unit_vector(2);
        const double t1 = rng.uniform(0.05, 0.6);
        const double t2 = rng.uniform(t1 + 0.05, kPi / 2.0 - 0.01);
        const Point z = rng.gaussian_point(2);
        if (in_cone(z, Cone(x, e, t1))) CHECK(in_cone(z, Cone(x, e, t2)));
    }
}

TEST_CASE("hausdorff examples") {
    const PointCloud a = oracles::diamond();
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff(cloud_from_values({0}), cloud_from_values({3})) == doctest::Approx(3.0));
    CHECK(hausdorff(cloud_from_values({0, 1}), cloud_from_values({0, 5})) == doctest::Approx(4.0));
    CHECK_THROWS_AS(hausdorff(PointCloud{}, a), std::invalid_argument);
}

TEST_CASE("hausdorff is a metric on finite sets") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PointCloud a = oracles::random_cloud(4, 2, seed * 3 + 0);
        const PointCloud b = oracles::random_cloud(6, 2, seed * 3 + 1);
        const PointCloud c = oracles::random_cloud(5, 2, seed * 3 + 2);
        const double ab = hausdorff(a, b);
        CHECK(ab == hausdorff(b, a));  // symmetry, exactly
        CHECK(ab <= hausdorff(a, c) + hausdorff(c, b) + 1e-12);
        CHECK(ab == doctest::Approx(oracles::hausdorff_brute(a, b)));
        CHECK(ab > 0.0);  // distinct random sets
    }
}

TEST_CASE("general position") {
    CHECK_FALSE(in_general_position(PointCloud({{0, 0}, {1, 0}, {2, 0}})));
    CHECK(in_general_position(PointCloud({{0, 0}, {1, 0}, {0, 1}})));
    CHECK_FALSE(in_general_position(oracles::diamond()));  // (-1,0),(0,0),(1,0) collinear
    CHECK(in_general_position(oracles::one_to_five()));    // distinct 1-D values
    CHECK_FALSE(in_general_position(cloud_from_values({1, 2, 2})));

    // permutation invariance
    PointCloud shuffled = oracles::diamond();
    std::swap(shuffled.points[0], shuffled.points[3]);
    std::swap(shuffled.points[1], shuffled.points[4]);
    CHECK(in_general_position(shuffled) == in_general_position(oracles::diamond()));
}

TEST_CASE("max hyperplane count") {
    CHECK(max_hyperplane_count(oracles::diamond()) == 3);  // the axis line
    CHECK(max_hyperplane_count(PointCloud({{0, 0}, {1, 0}, {0, 1}})) == 2);
    // d=1 convention: a hyperplane is a single point, distinct values -> 1 (N = 0)
    CHECK(max_hyperplane_count(oracles::one_to_five()) == 1);
    CHECK(max_hyperplane_count(cloud_from_values({1, 2, 2, 3})) == 2);
    CHECK_THROWS_AS(max_hyperplane_count(PointCloud(std::vector<Point>{{1.0, 2.0}})), std::invalid_argument);
}
