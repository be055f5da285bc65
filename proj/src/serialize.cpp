#include "otdepth/serialize.hpp"

#include "otdepth/csv.hpp"

#include <stdexcept>

namespace otdepth {

json to_json(const DepthValue& v) { return v.str(); }

json to_json(const PointCloud& cloud) {
    json pts = json::array();
    for (const Point& p : cloud.points) pts.push_back(p);
    return pts;
}

json to_json(const DepthResult& r) {
    json dirs = json::array();
    for (const Point& v : r.minimizing_directions) dirs.push_back(v);
    return json{{"depth", r.depth.str()},
                {"minimizing_directions", dirs},
                {"achieved_count", r.achieved_count},
                {"mode", r.exact ? "exact" : "approximate"}};
}

json to_json(const Matching& m) {
    json j{{"sigma", m.sigma}, {"cost", m.total_cost}};
    if (m.certificate)
        j["certificate"] = json{{"alpha", m.certificate->alpha}, {"beta", m.certificate->beta}};
    return j;
}

json to_json(const ContourSet& cs) {
    return json{{"tau", cs.tau.str()},
                {"points", to_json(cs.points)},
                {"ref_preimage", to_json(cs.ref_preimage)},
                {"target_indices", cs.target_indices}};
}

json to_json(const ContaminationPlan& plan) {
    json offsets = json::array();
    for (const Point& o : plan.offsets) offsets.push_back(o);
    return json{{"replace_indices", plan.replace_indices},
                {"direction", plan.direction},
                {"offsets", offsets},
                {"schedule", plan.schedule},
                {"strategy", plan.strategy}};
}

json to_json(const DivergenceVerdict& v) {
    return json{{"diverged", v.diverged},
                {"witness_k", v.witness_k},
                {"map_norms", v.map_norms},
                {"growth_ratio", v.growth_ratio},
                {"plan", to_json(v.plan)}};
}

json to_json(const BreakdownEstimate& est) {
    json per_ell = json::array();
    for (const auto& [ell, verdict] : est.per_ell)
        per_ell.push_back(json{{"ell", ell}, {"verdict", to_json(verdict)}});
    json j{{"kind", est.kind},
           {"per_ell", per_ell},
           {"bp_estimate", est.bp_estimate ? json(est.bp_estimate->str()) : json(nullptr)},
           {"bracket_lo", est.bracket_lo.str()},
           {"bracket_hi", est.bracket_hi.str()},
           {"within_bracket", est.within_bracket},
           {"ref_general_position", est.ref_general_position},
           {"attacked_indices", est.attacked_indices},
           {"checks",
            json{{"monotone_checks", est.monotone_checks},
                 {"monotone_violations", est.monotone_violations},
                 {"cone_checks", est.cone_checks},
                 {"cone_violations", est.cone_violations}}}};
    if (est.gp_bracket)
        j["general_position_bracket"] = json{{"lo", est.gp_bracket->first.str()},
                                             {"hi", est.gp_bracket->second.str()},
                                             {"within", est.within_gp_bracket}};
    if (est.half_bracket)
        j["half_bracket"] = json{{"lo", est.half_bracket->first},
                                 {"hi", est.half_bracket->second},
                                 {"within", est.within_half_bracket}};
    return j;
}

PointCloud cloud_from_json(const json& j, std::string label) {
    std::vector<Point> pts;
    for (const auto& row : j) pts.push_back(row.get<Point>());
    return PointCloud(std::move(pts), std::move(label));
}

RefSpec ref_spec_from_json(const json& j) {
    RefSpec spec;
    spec.kind = parse_ref_kind(j.at("kind").get<std::string>());
    spec.n = j.at("n").get<long long>();
    spec.dim = j.at("dim").get<int>();
    spec.seed = j.value("seed", 0ULL);
    spec.n_radii = j.value("n_radii", 0);
    spec.n_directions = j.value("n_directions", 0);
    spec.include_center = j.value("include_center", false);
    spec.jitter = j.value("jitter", 0.0);
    return spec;
}

namespace {

PointCloud cloud_from_config(const json& j, const std::string& base_dir, const char* which) {
    if (j.contains("points")) return cloud_from_json(j.at("points"), which);
    if (j.contains("csv")) {
        std::string path = j.at("csv").get<std::string>();
        if (!base_dir.empty() && !path.empty() && path.front() != '/')
            path = base_dir + "/" + path;
        return read_cloud_csv_file(path);
    }
    if (j.contains("generate")) return generate(ref_spec_from_json(j.at("generate")));
    throw std::invalid_argument(std::string("config: ") + which +
                                " needs one of 'points', 'csv' or 'generate'");
}

}  // namespace

BreakdownConfig parse_breakdown_config(const json& j, const std::string& base_dir) {
    BreakdownConfig cfg;
    cfg.kind = j.at("kind").get<std::string>();
    if (cfg.kind != "map" && cfg.kind != "contour" && cfg.kind != "median")
        throw std::invalid_argument("config: kind must be map, contour or median");
    cfg.ref = cloud_from_config(j.at("ref"), base_dir, "ref");
    cfg.target = cloud_from_config(j.at("target"), base_dir, "target");
    if (cfg.kind == "map") {
        if (!j.contains("index")) throw std::invalid_argument("config: map attack needs 'index'");
        cfg.index = j.at("index").get<std::size_t>();
    }
    if (cfg.kind == "contour") {
        if (!j.contains("tau")) throw std::invalid_argument("config: contour attack needs 'tau'");
        cfg.tau = parse_depth_value(j.at("tau").get<std::string>());
    }
    cfg.options.seed = j.value("seed", 0ULL);
    if (j.contains("schedule")) cfg.options.schedule = j.at("schedule").get<std::vector<double>>();
    if (j.contains("strategies")) {
        cfg.options.strategies.clear();
        for (const auto& s : j.at("strategies"))
            cfg.options.strategies.push_back(parse_strategy(s.get<std::string>()));
    }
    return cfg;
}

}  // namespace otdepth
