#include "otdepth/breakdown.hpp"

#include "oracles.hpp"
#include "otdepth/reference.hpp"
#include "otdepth/transport.hpp"

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

using namespace otdepth;

TEST_CASE("plan validation and contamination") {
    const PointCloud target = oracles::diamond();
    ContaminationPlan plan;
    plan.replace_indices = {0, 1};
    plan.direction = {1.0, 0.0};
    plan.offsets = {{0.0, 0.0}, {1.0, 0.0}};
    plan.schedule = {100.0, 1000.0};
    plan.strategy = "manual";
    plan.validate(target.size());

    const PointCloud z = contaminate(target, plan, 100.0);
    CHECK(z[0] == Point{100.0, 0.0});
    CHECK(z[1] == Point{101.0, 0.0});
    CHECK(z[2] == target[2]);

    ContaminationPlan bad = plan;
    bad.direction = {2.0, 0.0};
    CHECK_THROWS_AS(bad.validate(target.size()), std::invalid_argument);
    bad = plan;
    bad.schedule = {1000.0, 100.0};
    CHECK_THROWS_AS(bad.validate(target.size()), std::invalid_argument);
    bad = plan;
    bad.offsets = {{0.0, 0.0}};
    CHECK_THROWS_AS(bad.validate(target.size()), std::invalid_argument);
    bad = plan;
    bad.replace_indices = {};
    CHECK_THROWS_AS(bad.validate(target.size()), std::invalid_argument);
}

TEST_CASE("build_plan strategies") {
    const PointCloud d = oracles::diamond();
    const ContaminationPlan last = build_plan(d, d, 0, 2, Strategy::LastEll, 0);
    CHECK(last.replace_indices == std::vector<std::size_t>{3, 4});
    CHECK(last.offsets.size() == 2);
    for (const Point& o : last.offsets) CHECK(norm(o) <= 1.0);
    CHECK(last.offsets[0] != last.offsets[1]);  // element-distinct contaminants

    // the sweep proposes the figure construction: direction (1,0) with the
    // matched targets of the origin and of (1,0) replaced
    const auto sweep = build_plans(d, d, 0, 2, Strategy::AllMinDirectionsSweep, 0);
    const bool has_figure_plan =
        std::any_of(sweep.begin(), sweep.end(), [](const ContaminationPlan& p) {
            return std::abs(p.direction[0] - 1.0) < 1e-9 && std::abs(p.direction[1]) < 1e-9 &&
                   p.replace_indices == std::vector<std::size_t>{0, 1};
        });
    CHECK(has_figure_plan);

    CHECK_THROWS_AS(build_plan(d, d, 0, 0, Strategy::LastEll, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_plan(d, d, 0, 6, Strategy::LastEll, 0), std::invalid_argument);
    CHECK(parse_strategy("farthest_from_ray") == Strategy::FarthestFromRay);
    CHECK(strategy_name(Strategy::Random) == "random");
    CHECK_THROWS_AS(parse_strategy("bogus"), std::invalid_argument);
}

TEST_CASE("1-D quantile sharpness: bp = 3/5 at the middle point") {
    const PointCloud c = oracles::one_to_five();
    const BreakdownEstimate est = estimate_bp_map(c, c, 2);
    REQUIRE(est.bp_estimate.has_value());
    CHECK(*est.bp_estimate == DepthValue{3, 5});
    CHECK(est.bracket_lo == DepthValue{3, 5});
    CHECK(est.bracket_hi == DepthValue{3, 5});
    CHECK(est.within_bracket);
    CHECK(est.ref_general_position);
    REQUIRE(est.gp_bracket.has_value());
    CHECK(est.gp_bracket->first == DepthValue{3, 5});  // d=1: (d-1)/n = 0
    CHECK(est.within_gp_bracket);
    // no divergence below the lower bracket
    CHECK_FALSE(est.per_ell[0].second.diverged);
    CHECK_FALSE(est.per_ell[1].second.diverged);
}

TEST_CASE("figure sharpness: bp = 2/5 at the diamond origin") {
    const PointCloud d = oracles::diamond();
    const BreakdownEstimate est = estimate_bp_map(d, d, 0);
    REQUIRE(est.bp_estimate.has_value());
    CHECK(*est.bp_estimate == DepthValue{2, 5});
    CHECK(est.bracket_lo == DepthValue{2, 5});
    CHECK(est.bracket_hi == DepthValue{3, 5});
    CHECK(est.within_bracket);
    CHECK_FALSE(est.ref_general_position);
    CHECK_FALSE(est.per_ell[0].second.diverged);  // ell=1 stays bounded
    CHECK(est.per_ell[1].second.diverged);
}

TEST_CASE("divergence verdict is monotone in the schedule") {
    const PointCloud d = oracles::diamond();
    const BreakdownEstimate est = estimate_bp_map(d, d, 0);
    const DivergenceVerdict& winner = est.per_ell.back().second;
    REQUIRE(winner.diverged);
    ContaminationPlan extended = winner.plan;
    extended.schedule.push_back(extended.schedule.back() * 10.0);
    const DivergenceVerdict again = run_divergence_test(d, d, 0, extended);
    CHECK(again.diverged);
    CHECK(again.witness_k == extended.schedule.back());
}

TEST_CASE("single point: everything breaks at ell = n = 1") {
    const PointCloud single(std::vector<Point>{{0.5, 0.5}});
    const BreakdownEstimate est = estimate_bp_map(single, single, 0);
    REQUIRE(est.bp_estimate.has_value());
    CHECK(*est.bp_estimate == DepthValue{1, 1});
}

TEST_CASE("replacing every point always diverges") {
    const PointCloud d = oracles::diamond();
    const ContaminationPlan plan = build_plan(d, d, 0, d.size(), Strategy::LastEll, 0);
    CHECK(plan.replace_indices.size() == d.size());
    CHECK(run_divergence_test(d, d, 0, plan).diverged);
}

TEST_CASE("contour breakdown at the deepest level equals the median attack") {
    const PointCloud d = oracles::diamond();
    const BreakdownEstimate est = estimate_bp_contour(d, d, DepthValue{3, 5});
    REQUIRE(est.bp_estimate.has_value());
    CHECK(*est.bp_estimate == DepthValue{2, 5});
    CHECK(est.bracket_lo == DepthValue{1, 5});  // tau - N/n = 3/5 - 2/5
    CHECK(est.bracket_hi == DepthValue{3, 5});
    CHECK(est.within_bracket);
}

TEST_CASE("no tried plan diverges below the lower Tukey depth") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        PointCloud ref = generate([&] {
            RefSpec s;
            s.kind = RefKind::SphericalUniform;
            s.n = 8;
            s.dim = 2;
            s.seed = 3100 + seed;
            s.jitter = 1e-6;
            return s;
        }());
        const PointCloud target = oracles::random_cloud(8, 2, 3200 + seed);
        const std::size_t i = seed % ref.size();
        const BreakdownEstimate est = estimate_bp_map(ref, target, i);
        const DepthValue lower = est.bracket_lo;
        for (const auto& [ell, verdict] : est.per_ell) {
            if (DepthValue{ell, 8} < lower) CHECK_FALSE(verdict.diverged);
        }
        REQUIRE(est.bp_estimate.has_value());
        CHECK(*est.bp_estimate <= est.bracket_hi);  // upper-bound certificate
    }
}

TEST_CASE("contour breakdown on the diamond outer ring") {
    const PointCloud d = oracles::diamond();
    const BreakdownEstimate est = estimate_bp_contour(d, d, DepthValue{1, 5});
    REQUIRE(est.bp_estimate.has_value());
    CHECK(*est.bp_estimate == DepthValue{1, 5});
    CHECK(est.bracket_lo == DepthValue{0, 5});  // 1/5 - N/n clamped at zero
    CHECK(est.bracket_hi == DepthValue{1, 5});
    CHECK(est.within_bracket);
    CHECK(est.attacked_indices.size() == 4);

    CHECK_THROWS_AS(estimate_bp_contour(d, d, DepthValue{2, 5}), std::invalid_argument);
}

TEST_CASE("contour breakdown, 1-D outer quantile") {
    const PointCloud c = oracles::one_to_five();
    const BreakdownEstimate est = estimate_bp_contour(c, c, DepthValue{1, 5});
    REQUIRE(est.bp_estimate.has_value());
    CHECK(*est.bp_estimate == DepthValue{1, 5});
    CHECK(est.within_bracket);
}

TEST_CASE("median breakdown") {
    const PointCloud c = oracles::one_to_five();
    const BreakdownEstimate est1 = estimate_bp_median(c, c);
    REQUIRE(est1.bp_estimate.has_value());
    CHECK(*est1.bp_estimate == DepthValue{3, 5});
    CHECK(est1.bracket_lo == DepthValue{3, 5});  // tau* form, d=1, N=0
    CHECK(est1.bracket_hi == DepthValue{3, 5});
    CHECK(est1.within_bracket);
    // the literal 1/2-form bracket disagrees here and is reported as such
    REQUIRE(est1.half_bracket.has_value());
    CHECK(est1.half_bracket->first == doctest::Approx(0.5));
    CHECK_FALSE(est1.within_half_bracket);

    const PointCloud d = oracles::diamond();
    const BreakdownEstimate est2 = estimate_bp_median(d, d);
    REQUIRE(est2.bp_estimate.has_value());
    CHECK(*est2.bp_estimate == DepthValue{2, 5});
    CHECK(est2.bracket_lo == DepthValue{1, 5});  // tau* - N/n = 3/5 - 2/5
    CHECK(est2.bracket_hi == DepthValue{3, 5});
    CHECK(est2.within_bracket);
    CHECK(est2.within_half_bracket);  // 2/5 inside [1/10, 1/2]

    // two distinct 1-D points: either escape moves every deepest image
    const PointCloud two = cloud_from_values({0.0, 1.0});
    const BreakdownEstimate est3 = estimate_bp_median(two, two);
    REQUIRE(est3.bp_estimate.has_value());
    CHECK(*est3.bp_estimate == DepthValue{1, 2});
}

TEST_CASE("cone containment holds on clean and contaminated optima") {
    const PointCloud d = oracles::diamond();
    const Matching clean = solve_assignment(d, d);
    const std::vector<double> thetas{std::numbers::pi / 8, std::numbers::pi / 6,
                                     std::numbers::pi / 4};
    const ConeCheckReport clean_report = check_cone_containment(clean, d, d, 0, thetas, 16);
    CHECK(clean_report.checks > 0);
    CHECK(clean_report.violations == 0);

    ContaminationPlan plan;
    plan.replace_indices = {0, 1};
    plan.direction = {1.0, 0.0};
    plan.offsets = {{0.0, 0.0}, {1.0, 0.0}};
    plan.schedule = {1e2, 1e4};
    plan.strategy = "figure";
    const PointCloud z = contaminate(d, plan, 1e4);
    const Matching contaminated = solve_assignment(d, z);
    const ConeCheckReport dirty_report = check_cone_containment(contaminated, d, z, 0, thetas, 16);
    CHECK(dirty_report.checks > 0);
    CHECK(dirty_report.violations == 0);
}

TEST_CASE("harness instrumentation counts checks") {
    HarnessOptions options;
    options.check_monotone = true;
    options.check_cones = true;
    const PointCloud d = oracles::diamond();
    const BreakdownEstimate est = estimate_bp_map(d, d, 0, options);
    CHECK(est.monotone_checks > 0);
    CHECK(est.monotone_violations == 0);
    CHECK(est.cone_checks > 0);
    CHECK(est.cone_violations == 0);
}

TEST_CASE("trace sink receives one row per magnitude") {
    std::vector<TraceRow> trace;
    HarnessOptions options;
    options.trace = &trace;
    const PointCloud c = oracles::one_to_five();
    estimate_bp_map(c, c, 2, options);
    REQUIRE(!trace.empty());
    CHECK(trace.size() % 5 == 0);  // default schedule has five magnitudes
    CHECK(trace.front().ell == 1);
    CHECK(trace.front().k > 0.0);
}
