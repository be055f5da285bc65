#include "otdepth/csv.hpp"
#include "otdepth/serialize.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <stdexcept>

#include <sstream>

using namespace otdepth;

TEST_CASE("csv round-trip is exact") {
    Rng rng(31337);
    std::vector<Point> pts;
    for (int i = 0; i < 25; ++i) pts.push_back(rng.gaussian_point(3));
    pts.push_back({1e-300, -0.1, 12345678.9012345678});
    const PointCloud cloud(pts, "roundtrip");

    std::stringstream buf;
    write_cloud_csv(buf, cloud);
    const PointCloud back = read_cloud_csv(buf, "back");
    REQUIRE(back.size() == cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (int c = 0; c < cloud.dim; ++c) CHECK(back[i][c] == cloud[i][c]);  // bit-exact
}

TEST_CASE("csv parsing reports line numbers") {
    std::stringstream ok("# x,y\n1,2\n3,4\n");
    const PointCloud c = read_cloud_csv(ok);
    CHECK(c.size() == 2);
    CHECK(c.dim == 2);

    std::stringstream bad("1,2\n1,oops\n");
    try {
        read_cloud_csv(bad);
        FAIL("expected CsvError");
    } catch (const CsvError& e) {
        CHECK(e.line() == 2);
    }

    std::stringstream ragged("1,2\n3\n");
    CHECK_THROWS_AS(read_cloud_csv(ragged), CsvError);

    std::stringstream empty("# only a header\n");
    CHECK_THROWS_AS(read_cloud_csv(empty), CsvError);

    CHECK_THROWS(read_cloud_csv_file("/nonexistent/clouds.csv"));
}

TEST_CASE("matching and contour serialization") {
    const PointCloud d = oracles::diamond();
    const Matching m = solve_assignment(d, d);
    const json jm = to_json(m);
    CHECK(jm.at("sigma").size() == 5);
    CHECK(jm.at("sigma")[0] == 0);
    CHECK(jm.at("cost").get<double>() == 0.0);
    CHECK(jm.contains("certificate"));

    const TransportQuantileFn q = TransportQuantileFn::make(d, d);
    const json jc = to_json(transport_contour(DepthValue{1, 5}, q));
    CHECK(jc.at("tau") == "1/5");
    CHECK(jc.at("points").size() == 4);
    CHECK(jc.at("ref_preimage").size() == 4);
}

TEST_CASE("breakdown estimate serialization") {
    const PointCloud d = oracles::diamond();
    const json j = to_json(estimate_bp_map(d, d, 0));
    CHECK(j.at("bp_estimate") == "2/5");
    CHECK(j.at("bracket_lo") == "2/5");
    CHECK(j.at("bracket_hi") == "3/5");
    CHECK(j.at("within_bracket") == true);
    CHECK(j.at("per_ell").size() == 2);
    CHECK(j.at("per_ell")[1].at("verdict").at("diverged") == true);
}

TEST_CASE("breakdown config parsing") {
    const json cfg = {
        {"kind", "map"},
        {"ref", {{"points", {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}}}},
        {"target", {{"points", {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}}}},
        {"index", 0},
        {"seed", 7},
        {"strategies", {"last_ell", "all_min_directions_sweep"}},
    };
    const BreakdownConfig parsed = parse_breakdown_config(cfg);
    CHECK(parsed.kind == "map");
    CHECK(parsed.ref.size() == 5);
    CHECK(parsed.index == 0);
    CHECK(parsed.options.seed == 7);
    CHECK(parsed.options.strategies.size() == 2);

    json missing = cfg;
    missing.erase("index");
    CHECK_THROWS_AS(parse_breakdown_config(missing), std::invalid_argument);
    json bad_kind = cfg;
    bad_kind["kind"] = "everything";
    CHECK_THROWS_AS(parse_breakdown_config(bad_kind), std::invalid_argument);

    const json generated = {
        {"kind", "median"},
        {"ref", {{"generate", {{"kind", "halton_cube"}, {"n", 6}, {"dim", 2}}}}},
        {"target", {{"generate", {{"kind", "gaussian"}, {"n", 6}, {"dim", 2}, {"seed", 3}}}}},
    };
    const BreakdownConfig gen = parse_breakdown_config(generated);
    CHECK(gen.ref.size() == 6);
    CHECK(gen.target.size() == 6);
}

TEST_CASE("depth values as strings") {
    CHECK(to_json(DepthValue{2, 5}) == "2/5");
    CHECK(parse_depth_value(to_json(DepthValue{7, 9}).get<std::string>()) == DepthValue{7, 9});
}
