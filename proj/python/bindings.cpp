#include "otdepth/breakdown.hpp"
#include "otdepth/csv.hpp"
#include "otdepth/depth.hpp"
#include "otdepth/geometry.hpp"
#include "otdepth/reference.hpp"
#include "otdepth/transport.hpp"
#include "otdepth/version.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace otdepth;

namespace {

PointCloud make_cloud(const std::vector<Point>& points, const std::string& label) {
    return PointCloud(points, label);
}

DepthOptions make_options(const std::string& mode, int directions, std::uint64_t seed) {
    if (mode == "exact") return DepthOptions::exact_mode();
    if (mode == "approximate") return DepthOptions::approximate(directions, seed);
    throw std::invalid_argument("mode must be 'exact' or 'approximate'");
}

HarnessOptions make_harness(const std::vector<std::string>& strategies, std::uint64_t seed,
                            const std::vector<double>& schedule, bool check_monotone,
                            bool check_cones) {
    HarnessOptions o;
    if (!strategies.empty()) {
        o.strategies.clear();
        for (const std::string& s : strategies) o.strategies.push_back(parse_strategy(s));
    }
    o.seed = seed;
    o.schedule = schedule;
    o.check_monotone = check_monotone;
    o.check_cones = check_cones;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "transport-based multivariate quantiles, Tukey depths and breakdown experiments";
    m.attr("__version__") = kVersion;

    py::class_<DepthValue>(m, "DepthValue")
        .def(py::init<long long, long long>(), py::arg("count"), py::arg("n"))
        .def_readonly("count", &DepthValue::count)
        .def_readonly("n", &DepthValue::n)
        .def("value", &DepthValue::value)
        .def("__float__", &DepthValue::value)
        .def("__eq__", [](const DepthValue& a, const DepthValue& b) { return a == b; })
        .def("__repr__", [](const DepthValue& d) { return "DepthValue(" + d.str() + ")"; })
        .def("__str__", &DepthValue::str);

    py::class_<DepthResult>(m, "DepthResult")
        .def_readonly("depth", &DepthResult::depth)
        .def_readonly("minimizing_directions", &DepthResult::minimizing_directions)
        .def_readonly("achieved_count", &DepthResult::achieved_count)
        .def_readonly("exact", &DepthResult::exact);

    py::class_<PointCloud>(m, "PointCloud")
        .def(py::init(&make_cloud), py::arg("points"), py::arg("label") = "")
        .def_readonly("points", &PointCloud::points)
        .def_readonly("dim", &PointCloud::dim)
        .def_readonly("label", &PointCloud::label)
        .def("__len__", &PointCloud::size)
        .def("diameter", &PointCloud::diameter);

    py::class_<Matching>(m, "Matching")
        .def_readonly("sigma", &Matching::sigma)
        .def_readonly("total_cost", &Matching::total_cost)
        .def("inverse", &Matching::inverse);

    py::class_<ContourSet>(m, "ContourSet")
        .def_readonly("tau", &ContourSet::tau)
        .def_property_readonly("points", [](const ContourSet& c) { return c.points.points; })
        .def_property_readonly("ref_preimage",
                               [](const ContourSet& c) { return c.ref_preimage.points; })
        .def_readonly("target_indices", &ContourSet::target_indices);

    py::class_<TransportQuantileFn>(m, "TransportQuantileFn")
        .def_static(
            "make",
            [](const std::vector<Point>& ref, const std::vector<Point>& target) {
                return TransportQuantileFn::make(PointCloud(ref, "ref"), PointCloud(target, "target"));
            },
            py::arg("ref"), py::arg("target"))
        .def_readonly("matching", &TransportQuantileFn::matching)
        .def_readonly("ref_depths", &TransportQuantileFn::ref_depths)
        .def("__len__", &TransportQuantileFn::size);

    py::class_<BreakdownEstimate>(m, "BreakdownEstimate")
        .def_readonly("kind", &BreakdownEstimate::kind)
        .def_property_readonly("bp_estimate",
                               [](const BreakdownEstimate& e) -> py::object {
                                   if (!e.bp_estimate) return py::none();
                                   return py::cast(*e.bp_estimate);
                               })
        .def_readonly("bracket_lo", &BreakdownEstimate::bracket_lo)
        .def_readonly("bracket_hi", &BreakdownEstimate::bracket_hi)
        .def_readonly("within_bracket", &BreakdownEstimate::within_bracket)
        .def_readonly("ref_general_position", &BreakdownEstimate::ref_general_position)
        .def_readonly("cone_checks", &BreakdownEstimate::cone_checks)
        .def_readonly("cone_violations", &BreakdownEstimate::cone_violations)
        .def_readonly("attacked_indices", &BreakdownEstimate::attacked_indices);

    m.def(
        "tukey_depth",
        [](const Point& x, const std::vector<Point>& cloud, const std::string& mode,
           int directions, std::uint64_t seed) {
            return tukey_depth(x, PointCloud(cloud), make_options(mode, directions, seed));
        },
        py::arg("x"), py::arg("cloud"), py::arg("mode") = "exact", py::arg("directions") = 0,
        py::arg("seed") = 0);
    m.def(
        "lower_tukey_depth",
        [](const Point& x, const std::vector<Point>& cloud, const std::string& mode,
           int directions, std::uint64_t seed) {
            return lower_tukey_depth(x, PointCloud(cloud), make_options(mode, directions, seed));
        },
        py::arg("x"), py::arg("cloud"), py::arg("mode") = "exact", py::arg("directions") = 0,
        py::arg("seed") = 0);
    m.def(
        "min_depth_direction",
        [](const Point& x, const std::vector<Point>& cloud) {
            return min_depth_direction(x, PointCloud(cloud));
        },
        py::arg("x"), py::arg("cloud"));
    m.def(
        "max_depth",
        [](const std::vector<Point>& cloud) {
            auto [tau, pts] = max_depth(PointCloud(cloud));
            return py::make_tuple(tau, pts.points);
        },
        py::arg("cloud"));
    m.def(
        "hausdorff",
        [](const std::vector<Point>& a, const std::vector<Point>& b) {
            return hausdorff(PointCloud(a), PointCloud(b));
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "in_general_position",
        [](const std::vector<Point>& cloud) { return in_general_position(PointCloud(cloud)); },
        py::arg("cloud"));
    m.def(
        "max_hyperplane_count",
        [](const std::vector<Point>& cloud) { return max_hyperplane_count(PointCloud(cloud)); },
        py::arg("cloud"));

    m.def(
        "solve_assignment",
        [](const std::vector<Point>& ref, const std::vector<Point>& target) {
            return solve_assignment(PointCloud(ref), PointCloud(target));
        },
        py::arg("ref"), py::arg("target"));
    m.def(
        "brute_force_assignment",
        [](const std::vector<Point>& ref, const std::vector<Point>& target) {
            return brute_force_assignment(PointCloud(ref), PointCloud(target));
        },
        py::arg("ref"), py::arg("target"));
    m.def(
        "check_pairwise_monotone",
        [](const Matching& matching, const std::vector<Point>& ref,
           const std::vector<Point>& target) {
            return check_pairwise_monotone(matching, PointCloud(ref), PointCloud(target)).ok;
        },
        py::arg("matching"), py::arg("ref"), py::arg("target"));

    m.def(
        "transport_depth",
        [](std::size_t target_index, const TransportQuantileFn& q) {
            return transport_depth(target_index, q);
        },
        py::arg("target_index"), py::arg("q"));
    m.def("transport_contour", &transport_contour, py::arg("tau"), py::arg("q"));
    m.def(
        "transport_median",
        [](const TransportQuantileFn& q) { return transport_median(q).points; }, py::arg("q"));
    m.def("transport_ranks", &transport_ranks, py::arg("q"));

    m.def(
        "generate_reference",
        [](const std::string& kind, long long n, int dim, std::uint64_t seed, int n_radii,
           int n_directions, bool include_center, double jitter) {
            RefSpec spec;
            spec.kind = parse_ref_kind(kind);
            spec.n = n;
            spec.dim = dim;
            spec.seed = seed;
            spec.n_radii = n_radii;
            spec.n_directions = n_directions;
            spec.include_center = include_center;
            spec.jitter = jitter;
            return generate(spec).points;
        },
        py::arg("kind"), py::arg("n"), py::arg("dim"), py::arg("seed") = 0, py::arg("n_radii") = 0,
        py::arg("n_directions") = 0, py::arg("include_center") = false, py::arg("jitter") = 0.0);
    m.def(
        "ensure_general_position",
        [](const std::vector<Point>& cloud, double jitter, std::uint64_t seed) {
            return ensure_general_position(PointCloud(cloud), jitter, seed).points;
        },
        py::arg("cloud"), py::arg("jitter"), py::arg("seed") = 0);

    m.def(
        "estimate_bp_map",
        [](const std::vector<Point>& ref, const std::vector<Point>& target, std::size_t index,
           const std::vector<std::string>& strategies, std::uint64_t seed,
           const std::vector<double>& schedule, bool check_monotone, bool check_cones) {
            return estimate_bp_map(PointCloud(ref), PointCloud(target), index,
                                   make_harness(strategies, seed, schedule, check_monotone,
                                                check_cones));
        },
        py::arg("ref"), py::arg("target"), py::arg("index"),
        py::arg("strategies") = std::vector<std::string>{}, py::arg("seed") = 0,
        py::arg("schedule") = std::vector<double>{}, py::arg("check_monotone") = false,
        py::arg("check_cones") = false);
    m.def(
        "estimate_bp_contour",
        [](const std::vector<Point>& ref, const std::vector<Point>& target, const DepthValue& tau,
           const std::vector<std::string>& strategies, std::uint64_t seed,
           const std::vector<double>& schedule) {
            return estimate_bp_contour(PointCloud(ref), PointCloud(target), tau,
                                       make_harness(strategies, seed, schedule, false, false));
        },
        py::arg("ref"), py::arg("target"), py::arg("tau"),
        py::arg("strategies") = std::vector<std::string>{}, py::arg("seed") = 0,
        py::arg("schedule") = std::vector<double>{});
    m.def(
        "estimate_bp_median",
        [](const std::vector<Point>& ref, const std::vector<Point>& target,
           const std::vector<std::string>& strategies, std::uint64_t seed,
           const std::vector<double>& schedule) {
            return estimate_bp_median(PointCloud(ref), PointCloud(target),
                                      make_harness(strategies, seed, schedule, false, false));
        },
        py::arg("ref"), py::arg("target"), py::arg("strategies") = std::vector<std::string>{},
        py::arg("seed") = 0, py::arg("schedule") = std::vector<double>{});

    m.def(
        "read_cloud_csv",
        [](const std::string& path) { return read_cloud_csv_file(path).points; }, py::arg("path"));
    m.def(
        "write_cloud_csv",
        [](const std::string& path, const std::vector<Point>& cloud) {
            write_cloud_csv_file(path, PointCloud(cloud));
        },
        py::arg("path"), py::arg("cloud"));
}
