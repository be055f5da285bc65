// otdepth command line: depth queries, transport summaries, breakdown
// experiments and packaged reproductions.
//
// Exit codes: 0 success (and bracket satisfied), 1 bracket violation,
// 2 input error.

#include "otdepth/breakdown.hpp"
#include "otdepth/csv.hpp"
#include "otdepth/depth.hpp"
#include "otdepth/reference.hpp"
#include "otdepth/rng.hpp"
#include "otdepth/serialize.hpp"
#include "otdepth/transport.hpp"
#include "otdepth/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace otdepth;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBracketViolation = 1;
constexpr int kExitInputError = 2;

int thread_cap() {
    if (const char* env = std::getenv("OTDEPTH_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic parallel map: out[i] = fn(i), worker count capped by
// OTDEPTH_THREADS. Results land in preassigned slots so scheduling cannot
// change the output.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const int workers = std::min<int>(thread_cap(), static_cast<int>(count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (std::thread& t : pool) t.join();
}

void write_text_atomic(const fs::path& path, const std::string& text) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
        out << text;
    }
    fs::rename(tmp, path);
}

struct OutputSink {
    std::optional<fs::path> dir;
    json manifest_config;
    std::string command;
    std::uint64_t seed = 0;
    std::vector<std::string> written;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write(const std::string& name, const std::string& text) {
        if (!dir) return;
        fs::create_directories(*dir);
        write_text_atomic(*dir / name, text);
        written.push_back(name);
    }

    void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

    json manifest() const {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return json{{"command", command}, {"config", manifest_config}, {"seed", seed},
                    {"version", kVersion},  {"wall_time_s", secs},      {"outputs", written}};
    }

    void finish() {
        if (dir) write_json("manifest.json", manifest());
    }
};

DepthOptions parse_mode(const std::string& mode, std::uint64_t seed) {
    if (mode == "exact") return DepthOptions::exact_mode();
    if (mode.rfind("approx:", 0) == 0) {
        const int m = std::stoi(mode.substr(7));
        return DepthOptions::approximate(m, seed);
    }
    throw std::invalid_argument("mode must be 'exact' or 'approx:M', got '" + mode + "'");
}

Point parse_point(const std::string& text) {
    Point p;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) p.push_back(std::stod(cell));
    if (p.empty()) throw std::invalid_argument("empty query point");
    return p;
}

std::vector<double> parse_schedule(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

std::vector<Strategy> parse_strategies(const std::string& text) {
    std::vector<Strategy> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(parse_strategy(cell));
    return out;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
    std::ostringstream out;
    out << "ell,plan,k,map_norm_or_hausdorff\n";
    for (const TraceRow& r : rows)
        out << r.ell << "," << r.plan << "," << format_double(r.k) << ","
            << format_double(r.value) << "\n";
    return out.str();
}

// ---------------------------------------------------------------- depth ---

int cmd_depth(const std::string& input, const std::vector<std::string>& queries, bool all,
              const std::string& mode, std::uint64_t seed, const std::string& out_dir) {
    const PointCloud cloud = read_cloud_csv_file(input);
    const DepthOptions options = parse_mode(mode, seed);
    std::vector<Point> points;
    if (all) {
        points = cloud.points;
    } else {
        if (queries.empty()) throw std::invalid_argument("need --query or --all");
        for (const std::string& q : queries) points.push_back(parse_point(q));
    }
    json report = json::array();
    for (const Point& x : points) {
        const DepthResult td = tukey_depth(x, cloud, options);
        const DepthResult lo = lower_tukey_depth(x, cloud, options);
        report.push_back(json{{"point", x},
                              {"tukey_depth", td.depth.str()},
                              {"lower_tukey_depth", lo.depth.str()},
                              {"minimizing_direction", td.minimizing_directions.front()},
                              {"mode", td.exact ? "exact" : "approximate"}});
        std::cout << "point " << json(x).dump() << ": TD=" << td.depth.str()
                  << ", TD-=" << lo.depth.str() << "\n";
    }
    OutputSink sink;
    sink.command = "depth";
    sink.seed = seed;
    sink.manifest_config = {{"input", input}, {"mode", mode}, {"all", all}, {"queries", queries}};
    if (!out_dir.empty()) sink.dir = out_dir;
    sink.write_json("depth_report.json", report);
    sink.finish();
    return kExitOk;
}

// ------------------------------------------------------------ transport ---

int cmd_transport(const std::string& ref_path, const std::string& target_path,
                  const std::string& out_dir) {
    const PointCloud ref = read_cloud_csv_file(ref_path);
    const PointCloud target = read_cloud_csv_file(target_path);
    const TransportQuantileFn q = TransportQuantileFn::make(ref, target);

    json depth_table = json::array();
    for (const auto& [index, depth] : transport_ranks(q))
        depth_table.push_back(json{{"target_index", index}, {"depth", depth.str()}});

    json contours = json::array();
    const long long n = static_cast<long long>(q.size());
    for (long long k = n; k >= 0; --k) {
        const ContourSet cs = transport_contour(DepthValue{k, n}, q);
        if (!cs.points.empty()) contours.push_back(to_json(cs));
    }
    const json report{{"matching", to_json(q.matching)},
                      {"depths", depth_table},
                      {"contours", contours},
                      {"median", to_json(transport_median(q))}};
    std::cout << report.dump(2) << "\n";

    OutputSink sink;
    sink.command = "transport";
    sink.manifest_config = {{"ref", ref_path}, {"target", target_path}};
    if (!out_dir.empty()) sink.dir = out_dir;
    sink.write_json("transport_report.json", report);
    sink.finish();
    return kExitOk;
}

// ------------------------------------------------------------ breakdown ---

BreakdownEstimate run_config(const BreakdownConfig& cfg, std::vector<TraceRow>* trace) {
    HarnessOptions options = cfg.options;
    options.trace = trace;
    if (cfg.kind == "map") return estimate_bp_map(cfg.ref, cfg.target, cfg.index, options);
    if (cfg.kind == "contour") return estimate_bp_contour(cfg.ref, cfg.target, cfg.tau, options);
    return estimate_bp_median(cfg.ref, cfg.target, options);
}

int cmd_breakdown(const std::string& config_path, const std::string& out_dir,
                  const std::string& schedule, const std::string& strategies,
                  std::optional<std::uint64_t> seed, const std::string& tau) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config '" + config_path + "'");
    json raw = json::parse(in);
    BreakdownConfig cfg =
        parse_breakdown_config(raw, fs::path(config_path).parent_path().string());
    if (!schedule.empty()) cfg.options.schedule = parse_schedule(schedule);
    if (!strategies.empty()) cfg.options.strategies = parse_strategies(strategies);
    if (seed) cfg.options.seed = *seed;
    if (!tau.empty()) {
        if (cfg.kind != "contour")
            throw std::invalid_argument("--tau only applies to contour configs");
        cfg.tau = parse_depth_value(tau);
    }

    std::vector<TraceRow> trace;
    const BreakdownEstimate est = run_config(cfg, &trace);
    const json result = to_json(est);
    std::cout << result.dump(2) << "\n";

    OutputSink sink;
    sink.command = "breakdown";
    sink.seed = cfg.options.seed;
    sink.manifest_config = raw;
    if (!out_dir.empty()) sink.dir = out_dir;
    sink.write_json("estimate.json", result);
    sink.write("trace.csv", trace_csv(trace));
    sink.finish();
    return est.within_bracket ? kExitOk : kExitBracketViolation;
}

// ------------------------------------------------------------- generate ---

int cmd_generate(const std::string& kind, long long n, int dim, std::uint64_t seed, int n_radii,
                 int n_directions, bool include_center, double jitter, const std::string& out) {
    RefSpec spec;
    spec.kind = parse_ref_kind(kind);
    spec.n = n;
    spec.dim = dim;
    spec.seed = seed;
    spec.n_radii = n_radii;
    spec.n_directions = n_directions;
    spec.include_center = include_center;
    spec.jitter = jitter;
    const PointCloud cloud = generate(spec);
    if (out.empty()) {
        write_cloud_csv(std::cout, cloud);
    } else {
        std::ostringstream buf;
        write_cloud_csv(buf, cloud);
        write_text_atomic(out, buf.str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------- repro ---

json estimate_summary_row(const BreakdownEstimate& est, const PointCloud& ref, std::size_t i) {
    return json{{"TD", tukey_depth(ref[i], ref).depth.str()},
                {"TD_lower", lower_tukey_depth(ref[i], ref).depth.str()},
                {"bp", est.bp_estimate ? est.bp_estimate->str() : "none"},
                {"within_bracket", est.within_bracket}};
}

int repro_figure1(OutputSink& sink) {
    const PointCloud d({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}, "diamond");
    HarnessOptions options;
    options.seed = sink.seed;
    options.schedule = {1e2, 1e3, 1e4, 1e5, 1e6};
    std::vector<TraceRow> trace;
    options.trace = &trace;
    const BreakdownEstimate est = estimate_bp_map(d, d, 0, options);

    // confirm the cluster capture against the exhaustive oracle at k = 1e4
    const DivergenceVerdict& winner = est.per_ell.back().second;
    const PointCloud z = contaminate(d, winner.plan, 1e4);
    const Matching brute = brute_force_assignment(d, z);
    const bool captured =
        std::find(winner.plan.replace_indices.begin(), winner.plan.replace_indices.end(),
                  brute.sigma[0]) != winner.plan.replace_indices.end();

    json row = estimate_summary_row(est, d, 0);
    row["oracle_cluster_capture"] = captured;
    std::cout << "figure1: " << row.dump() << "\n";
    sink.write_json("figure1_estimate.json", to_json(est));
    sink.write("figure1_trace.csv", trace_csv(trace));
    sink.write("summary.csv", "name,TD,TD_lower,bp,within_bracket\nfigure1," +
                                  row["TD"].get<std::string>() + "," +
                                  row["TD_lower"].get<std::string>() + "," +
                                  row["bp"].get<std::string>() + "," +
                                  (est.within_bracket ? "true" : "false") + "\n");
    const bool ok = est.within_bracket && captured && est.bp_estimate &&
                    *est.bp_estimate == DepthValue{2, 5};
    return ok ? kExitOk : kExitBracketViolation;
}

int repro_quantile1d(OutputSink& sink) {
    const PointCloud c = cloud_from_values({1, 2, 3, 4, 5}, "1..5");
    HarnessOptions options;
    options.seed = sink.seed;
    options.schedule = {1e2, 1e3, 1e4, 1e5, 1e6};
    std::vector<TraceRow> trace;
    options.trace = &trace;
    const BreakdownEstimate est = estimate_bp_map(c, c, 2, options);
    const json row = estimate_summary_row(est, c, 2);
    std::cout << "quantile1d: " << row.dump() << "\n";
    sink.write_json("quantile1d_estimate.json", to_json(est));
    sink.write("quantile1d_trace.csv", trace_csv(trace));
    sink.write("summary.csv", "name,TD,TD_lower,bp,within_bracket\nquantile1d," +
                                  row["TD"].get<std::string>() + "," +
                                  row["TD_lower"].get<std::string>() + "," +
                                  row["bp"].get<std::string>() + "," +
                                  (est.within_bracket ? "true" : "false") + "\n");
    const bool ok = est.within_bracket && est.bp_estimate && *est.bp_estimate == DepthValue{3, 5};
    return ok ? kExitOk : kExitBracketViolation;
}

int repro_bracket_sweep(OutputSink& sink, int runs) {
    struct Row {
        int run, n;
        std::size_t i;
        std::string td, td_lower, bp;
        bool within, within_gp;
        long long cone_violations;
    };
    std::vector<Row> rows(static_cast<std::size_t>(runs));
    parallel_for(rows.size(), [&](std::size_t r) {
        const int n = r < rows.size() / 2 ? 10 : 20;
        RefSpec spec;
        spec.kind = RefKind::SphericalUniform;
        spec.n = n;
        spec.dim = 2;
        spec.seed = split_seed(sink.seed, r);
        const PointCloud ref = ensure_general_position(generate(spec), 1e-6, spec.seed);
        RefSpec tgt;
        tgt.kind = RefKind::Gaussian;
        tgt.n = n;
        tgt.dim = 2;
        tgt.seed = split_seed(sink.seed, 1000 + r);
        const PointCloud target = generate(tgt);
        Rng pick(split_seed(sink.seed, 2000 + r));
        const std::size_t i = pick.uniform_index(ref.size());
        HarnessOptions options;
        options.seed = spec.seed;
        options.check_cones = true;
        const BreakdownEstimate est = estimate_bp_map(ref, target, i, options);
        rows[r] = Row{static_cast<int>(r),
                      n,
                      i,
                      tukey_depth(ref[i], ref).depth.str(),
                      lower_tukey_depth(ref[i], ref).depth.str(),
                      est.bp_estimate ? est.bp_estimate->str() : "none",
                      est.within_bracket,
                      est.within_gp_bracket,
                      est.cone_violations};
    });
    std::ostringstream csv;
    csv << "run,n,index,TD,TD_lower,bp,within_bracket,within_gp_bracket,cone_violations\n";
    int within = 0;
    long long cone_violations = 0;
    for (const Row& r : rows) {
        csv << r.run << "," << r.n << "," << r.i << "," << r.td << "," << r.td_lower << ","
            << r.bp << "," << (r.within ? "true" : "false") << ","
            << (r.within_gp ? "true" : "false") << "," << r.cone_violations << "\n";
        within += r.within && r.within_gp;
        cone_violations += r.cone_violations;
    }
    sink.write("summary.csv", csv.str());
    std::cout << "bracket-sweep: " << within << "/" << rows.size()
              << " runs inside both brackets, " << cone_violations << " cone violations\n";
    return (within == static_cast<int>(rows.size()) && cone_violations == 0)
               ? kExitOk
               : kExitBracketViolation;
}

int cmd_repro(const std::string& name, const std::string& out_dir, std::uint64_t seed, int runs) {
    OutputSink sink;
    sink.command = "repro";
    sink.seed = seed;
    sink.manifest_config = {{"name", name}, {"runs", runs}};
    sink.dir = out_dir.empty() ? fs::path("repro_" + name) : fs::path(out_dir);
    int code;
    if (name == "figure1")
        code = repro_figure1(sink);
    else if (name == "quantile1d")
        code = repro_quantile1d(sink);
    else if (name == "bracket-sweep")
        code = repro_bracket_sweep(sink, runs);
    else
        throw std::invalid_argument("unknown repro name '" + name +
                                    "' (expected figure1, quantile1d or bracket-sweep)");
    sink.finish();
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transport-based multivariate quantiles, depths and breakdown experiments"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string input, out_dir, mode = "exact";
    std::vector<std::string> queries;
    bool all = false;
    std::uint64_t seed = 0;

    auto* depth = app.add_subcommand("depth", "Tukey and lower Tukey depth of query points");
    depth->add_option("--input", input, "point cloud CSV")->required();
    depth->add_option("--query", queries, "query point 'x0,x1,...' (repeatable)");
    depth->add_flag("--all", all, "query every cloud point");
    depth->add_option("--mode", mode, "exact | approx:M");
    depth->add_option("--seed", seed, "seed for approximate mode");
    depth->add_option("--out", out_dir, "output directory");

    std::string ref_path, target_path, transport_out;
    auto* transport = app.add_subcommand("transport", "optimal matching, depths, contours, median");
    transport->add_option("--ref", ref_path, "reference cloud CSV")->required();
    transport->add_option("--target", target_path, "target cloud CSV")->required();
    transport->add_option("--out", transport_out, "output directory");

    std::string config_path, bd_out, bd_schedule, bd_strategies, bd_tau;
    std::optional<std::uint64_t> bd_seed;
    auto* breakdown = app.add_subcommand("breakdown", "breakdown-point experiment from a config");
    breakdown->add_option("--config", config_path, "experiment JSON")->required();
    breakdown->add_option("--out", bd_out, "output directory");
    breakdown->add_option("--schedule", bd_schedule, "override magnitudes '1e2,1e3,...'");
    breakdown->add_option("--strategies", bd_strategies, "override strategy list (comma separated)");
    breakdown->add_option("--seed", bd_seed, "override seed");
    breakdown->add_option("--tau", bd_tau, "override contour depth 'k/n'");

    std::string gen_kind = "spherical_uniform", gen_out;
    long long gen_n = 0;
    int gen_dim = 2, gen_radii = 0, gen_dirs = 0;
    std::uint64_t gen_seed = 0;
    bool gen_center = false;
    double gen_jitter = 0.0;
    auto* gen = app.add_subcommand("generate", "emit a reference cloud as CSV");
    gen->add_option("--kind", gen_kind, "spherical_uniform|halton_cube|spherical_grid|gaussian");
    gen->add_option("--n", gen_n, "number of points")->required();
    gen->add_option("--dim", gen_dim, "dimension");
    gen->add_option("--seed", gen_seed, "seed");
    gen->add_option("--n-radii", gen_radii, "spherical_grid radii count");
    gen->add_option("--n-directions", gen_dirs, "spherical_grid direction count");
    gen->add_flag("--center", gen_center, "spherical_grid: include the origin");
    gen->add_option("--jitter", gen_jitter, "jitter into general position");
    gen->add_option("--out", gen_out, "CSV path (default stdout)");

    std::string repro_name, repro_out;
    std::uint64_t repro_seed = 20240901;
    int repro_runs = 50;
    auto* repro = app.add_subcommand("repro", "packaged reproductions and the bracket sweep");
    repro->add_option("name", repro_name, "figure1 | quantile1d | bracket-sweep")->required();
    repro->add_option("--out", repro_out, "report directory (default repro_<name>)");
    repro->add_option("--seed", repro_seed, "sweep seed");
    repro->add_option("--runs", repro_runs, "bracket-sweep run count");

    try {
        app.parse(argc, argv);
        if (depth->parsed()) return cmd_depth(input, queries, all, mode, seed, out_dir);
        if (transport->parsed()) return cmd_transport(ref_path, target_path, transport_out);
        if (breakdown->parsed())
            return cmd_breakdown(config_path, bd_out, bd_schedule, bd_strategies, bd_seed, bd_tau);
        if (gen->parsed())
            return cmd_generate(gen_kind, gen_n, gen_dim, gen_seed, gen_radii, gen_dirs,
                                gen_center, gen_jitter, gen_out);
        if (repro->parsed()) return cmd_repro(repro_name, repro_out, repro_seed, repro_runs);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
