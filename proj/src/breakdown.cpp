#include "otdepth/breakdown.hpp"

#include "otdepth/reference.hpp"
#include "otdepth/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace otdepth {

namespace {

DepthValue clamp_lo(long long count, long long n) {
    return DepthValue{std::max(0LL, count), n};
}

// Escape-direction candidates for the attacked reference point: the exact
// minimizers of the closed-halfspace count (the v_u of the divergence
// construction) plus the negated maximizers (the directions that realize the
// lower-Tukey-depth end of the bracket; these crack the sharp cases where
// ell/n sits below the depth).
std::vector<Point> escape_directions(const Point& u, const PointCloud& ref, int cap) {
    const DepthResult lo = tukey_depth(u, ref);
    const DepthResult hi = lower_tukey_depth(u, ref);
    std::vector<Point> dirs = lo.minimizing_directions;
    for (const Point& w : hi.minimizing_directions) dirs.push_back(scaled(w, -1.0));
    // Angle-built directions carry ~1e-16 crumbs (cos(pi/2) != 0); snap them
    // so axis-aligned escapes are exact and projection ties stay ties.
    for (Point& v : dirs) {
        for (double& c : v)
            if (std::abs(c) < 1e-12) c = 0.0;
        v = normalized(v);
    }
    // dedup on a coarse grid, keep deterministic order
    std::vector<Point> keys;
    std::vector<Point> out;
    for (const Point& v : dirs) {
        Point key(v.size());
        for (std::size_t c = 0; c < v.size(); ++c) key[c] = std::round(v[c] * 1e9);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            keys.push_back(key);
            out.push_back(v);
            if (static_cast<int>(out.size()) >= cap) break;
        }
    }
    return out;
}

// Low-discrepancy distinct offsets inside the unit ball: Halton cube points
// scaled into the inscribed ball.
std::vector<Point> unit_ball_offsets(std::size_t count, int dim) {
    std::vector<Point> offsets;
    offsets.reserve(count);
    const double shrink = 0.9 / std::sqrt(static_cast<double>(dim));
    RefSpec spec;
    spec.kind = RefKind::HaltonCube;
    spec.n = static_cast<long long>(count);
    spec.dim = dim;
    const PointCloud cube = generate(spec);
    for (const Point& p : cube.points) offsets.push_back(scaled(p, shrink));
    return offsets;
}

// References ordered by decreasing alignment with the escape direction; the
// attacked index wins ties so its matched target is always replaced first.
// Projections are quantized so rounding noise cannot split a tie.
std::vector<std::size_t> priority_order(const PointCloud& ref, std::size_t i, const Point& v) {
    std::vector<std::size_t> order(ref.size());
    for (std::size_t j = 0; j < ref.size(); ++j) order[j] = j;
    std::vector<double> raw(ref.size());
    double scale = 1.0;
    for (std::size_t j = 0; j < ref.size(); ++j) {
        raw[j] = dot(sub(ref[j], ref[i]), v);
        scale = std::max(scale, std::abs(raw[j]));
    }
    const double grid = 1e-9 * scale;
    std::vector<long long> proj(ref.size());
    for (std::size_t j = 0; j < ref.size(); ++j) proj[j] = std::llround(raw[j] / grid);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (proj[a] != proj[b]) return proj[a] > proj[b];
        if ((a == i) != (b == i)) return a == i;
        return a < b;
    });
    return order;
}

ContaminationPlan make_plan(std::vector<std::size_t> replace, Point direction,
                            std::vector<double> schedule, std::size_t n, const char* strategy) {
    std::sort(replace.begin(), replace.end());
    ContaminationPlan plan;
    plan.replace_indices = std::move(replace);
    plan.offsets = unit_ball_offsets(plan.replace_indices.size(),
                                     static_cast<int>(direction.size()));
    plan.direction = std::move(direction);
    plan.schedule = std::move(schedule);
    plan.strategy = strategy;
    plan.validate(n);
    return plan;
}

struct SetAttack {
    std::vector<std::size_t> ref_indices;  // reference preimage of the tracked set
    PointCloud clean_points;               // clean image of that preimage
};

// Shared trial runner. With a SetAttack the recorded value is the Hausdorff
// distance between the clean set and the contaminated image of its
// reference preimage; otherwise it is ||T_Z(u_i)||.
DivergenceVerdict run_plan(const PointCloud& ref, const PointCloud& target, std::size_t i,
                           const ContaminationPlan& plan, const SetAttack* set,
                           const HarnessOptions& options, long long ell_for_trace) {
    plan.validate(target.size());
    if (i >= ref.size()) throw std::invalid_argument("run_divergence_test: index out of range");
    DivergenceVerdict verdict;
    verdict.plan = plan;
    for (double k : plan.schedule) {
        const PointCloud z = contaminate(target, plan, k);
        const Matching m = solve_assignment(ref, z);
        double value = 0.0;
        if (set == nullptr) {
            value = norm(z[m.sigma[i]]);
        } else {
            PointCloud image;
            image.dim = z.dim;
            for (std::size_t r : set->ref_indices) image.points.push_back(z[m.sigma[r]]);
            value = hausdorff(set->clean_points, image);
        }
        verdict.map_norms.push_back(value);
        if (options.check_monotone) {
            const MonotonicityReport rep = check_pairwise_monotone(m, ref, z);
            verdict.monotone_checks += 1;
            verdict.monotone_violations += static_cast<long long>(rep.violations.size());
        }
        if (options.check_cones) {
            const ConeCheckReport rep = check_cone_containment(m, ref, z, i,
                                                               options.cone_half_angles,
                                                               options.cone_axis_count);
            verdict.cone_checks += rep.checks;
            verdict.cone_violations += rep.violations;
        }
        if (options.trace != nullptr)
            options.trace->push_back({ell_for_trace, plan.strategy, k, value});
    }
    const std::size_t m = verdict.map_norms.size();
    const double final_value = verdict.map_norms.back();
    const double prev_value = verdict.map_norms[m - 2];
    const double k_final = plan.schedule.back();
    const double schedule_ratio = plan.schedule[m - 1] / plan.schedule[m - 2];
    verdict.growth_ratio = prev_value > 0.0
                               ? final_value / prev_value
                               : (final_value > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    verdict.diverged =
        final_value > 0.5 * k_final && verdict.growth_ratio >= 0.8 * schedule_ratio;
    if (verdict.diverged) verdict.witness_k = k_final;
    return verdict;
}

// Escape directions and the tie-broken minimizing direction depend only on
// (ref, i), so estimators compute them once and reuse them across the ell
// sweep.
struct DirectionContext {
    Point min_dir;
    std::vector<Point> sweep_dirs;

    static DirectionContext make(const PointCloud& ref, std::size_t i, int max_sweep_directions) {
        return {min_depth_direction(ref[i], ref),
                escape_directions(ref[i], ref, max_sweep_directions)};
    }
};

std::vector<ContaminationPlan> build_plans_impl(const PointCloud& ref, const PointCloud& target,
                                                const Matching& clean,
                                                const DirectionContext& dirs, std::size_t i,
                                                std::size_t ell, Strategy strategy,
                                                std::uint64_t seed,
                                                const std::vector<double>& schedule) {
    const std::size_t n = ref.size();
    if (ell < 1 || ell > n) throw std::invalid_argument("build_plan: ell out of range");
    std::vector<ContaminationPlan> plans;
    switch (strategy) {
        case Strategy::LastEll: {
            const Point& v = dirs.min_dir;
            std::vector<std::size_t> replace;
            for (std::size_t j = n - ell; j < n; ++j) replace.push_back(j);
            plans.push_back(make_plan(std::move(replace), v, schedule, n, "last_ell"));
            break;
        }
        case Strategy::FarthestFromRay: {
            const Point& v = dirs.min_dir;
            std::vector<std::size_t> order(n);
            for (std::size_t j = 0; j < n; ++j) order[j] = j;
            std::vector<double> dist(n);
            for (std::size_t j = 0; j < n; ++j) {
                const Point w = sub(target[j], ref[i]);
                const double along = dot(w, v);
                const double w2 = dot(w, w);
                dist[j] = along <= 0.0 ? std::sqrt(w2)
                                       : std::sqrt(std::max(0.0, w2 - along * along));
            }
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (dist[a] != dist[b]) return dist[a] > dist[b];
                return a < b;
            });
            order.resize(ell);
            plans.push_back(make_plan(std::move(order), v, schedule, n, "farthest_from_ray"));
            break;
        }
        case Strategy::Random: {
            const Point& v = dirs.min_dir;
            for (int t = 0; t < 2; ++t) {
                Rng rng(split_seed(seed, 0xA110 + static_cast<std::uint64_t>(t) * 131 + ell));
                plans.push_back(make_plan(rng.sample_indices(n, ell), v, schedule, n, "random"));
            }
            break;
        }
        case Strategy::AllMinDirectionsSweep: {
            for (const Point& v : dirs.sweep_dirs) {
                std::vector<std::size_t> order = priority_order(ref, i, v);
                std::vector<std::size_t> replace;
                for (std::size_t t = 0; t < ell; ++t) replace.push_back(clean.sigma[order[t]]);
                plans.push_back(
                    make_plan(std::move(replace), v, schedule, n, "all_min_directions_sweep"));
            }
            break;
        }
    }
    return plans;
}

struct SweepResult {
    std::vector<std::pair<long long, DivergenceVerdict>> per_ell;
    std::optional<DepthValue> bp;
    long long monotone_checks = 0, monotone_violations = 0;
    long long cone_checks = 0, cone_violations = 0;
};

// Core ell-sweep shared by the three estimators. `attacked` lists the
// reference indices whose plans are tried at every ell.
SweepResult sweep_ells(const PointCloud& ref, const PointCloud& target,
                       const std::vector<std::size_t>& attacked, const SetAttack* set,
                       const HarnessOptions& options) {
    const std::size_t n = ref.size();
    const std::vector<double> schedule =
        options.schedule.empty() ? default_schedule(ref, target) : options.schedule;
    const Matching clean = solve_assignment(ref, target);
    std::vector<DirectionContext> contexts;
    contexts.reserve(attacked.size());
    for (std::size_t i : attacked)
        contexts.push_back(DirectionContext::make(ref, i, options.max_sweep_directions));
    SweepResult result;
    for (std::size_t ell = 1; ell <= n; ++ell) {
        std::optional<DivergenceVerdict> best;
        for (std::size_t a = 0; a < attacked.size(); ++a) {
            const std::size_t i = attacked[a];
            for (Strategy strategy : options.strategies) {
                const std::vector<ContaminationPlan> plans =
                    build_plans_impl(ref, target, clean, contexts[a], i, ell, strategy,
                                     options.seed, schedule);
                for (const ContaminationPlan& plan : plans) {
                    DivergenceVerdict v = run_plan(ref, target, i, plan, set, options,
                                                   static_cast<long long>(ell));
                    result.monotone_checks += v.monotone_checks;
                    result.monotone_violations += v.monotone_violations;
                    result.cone_checks += v.cone_checks;
                    result.cone_violations += v.cone_violations;
                    if (!best || (v.diverged && !best->diverged) ||
                        (v.diverged == best->diverged &&
                         v.map_norms.back() > best->map_norms.back()))
                        best = std::move(v);
                    if (best->diverged) break;
                }
                if (best && best->diverged) break;
            }
            if (best && best->diverged) break;
        }
        if (!best) throw std::invalid_argument("estimate: no strategies configured");
        result.per_ell.emplace_back(static_cast<long long>(ell), *best);
        if (best->diverged) {
            result.bp = DepthValue{static_cast<long long>(ell), static_cast<long long>(n)};
            break;
        }
    }
    return result;
}

bool within(const std::optional<DepthValue>& bp, const DepthValue& lo, const DepthValue& hi) {
    return bp.has_value() && lo <= *bp && *bp <= hi;
}

}  // namespace

Strategy parse_strategy(const std::string& name) {
    if (name == "last_ell") return Strategy::LastEll;
    if (name == "farthest_from_ray") return Strategy::FarthestFromRay;
    if (name == "random") return Strategy::Random;
    if (name == "all_min_directions_sweep") return Strategy::AllMinDirectionsSweep;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::LastEll: return "last_ell";
        case Strategy::FarthestFromRay: return "farthest_from_ray";
        case Strategy::Random: return "random";
        case Strategy::AllMinDirectionsSweep: return "all_min_directions_sweep";
    }
    return "?";
}

void ContaminationPlan::validate(std::size_t n) const {
    if (replace_indices.empty() || replace_indices.size() > n)
        throw std::invalid_argument("plan: need 1 <= ell <= n replaced indices");
    for (std::size_t idx : replace_indices)
        if (idx >= n) throw std::invalid_argument("plan: replace index out of range");
    for (std::size_t a = 1; a < replace_indices.size(); ++a)
        if (replace_indices[a - 1] >= replace_indices[a])
            throw std::invalid_argument("plan: replace indices must be strictly increasing");
    if (std::abs(norm(direction) - 1.0) > 1e-9)
        throw std::invalid_argument("plan: direction must be a unit vector");
    if (offsets.size() != replace_indices.size())
        throw std::invalid_argument("plan: one offset per replaced index");
    for (const Point& o : offsets)
        if (norm(o) > 1.0 + 1e-12) throw std::invalid_argument("plan: offsets must lie in the unit ball");
    if (schedule.size() < 2) throw std::invalid_argument("plan: schedule needs >= 2 magnitudes");
    for (std::size_t a = 1; a < schedule.size(); ++a)
        if (!(schedule[a - 1] < schedule[a]))
            throw std::invalid_argument("plan: schedule must be strictly increasing");
}

PointCloud contaminate(const PointCloud& target, const ContaminationPlan& plan, double k) {
    plan.validate(target.size());
    PointCloud z = target;
    for (std::size_t j = 0; j < plan.replace_indices.size(); ++j)
        z.points[plan.replace_indices[j]] = add(scaled(plan.direction, k), plan.offsets[j]);
    z.label = target.label.empty() ? "contaminated" : target.label + ":contaminated";
    return z;
}

std::vector<double> default_schedule(const PointCloud& ref, const PointCloud& target) {
    PointCloud joint = ref;
    joint.points.insert(joint.points.end(), target.points.begin(), target.points.end());
    double diam = joint.diameter();
    if (diam <= 0.0) diam = 1.0;
    return {1e2 * diam, 1e3 * diam, 1e4 * diam, 1e5 * diam, 1e6 * diam};
}

ContaminationPlan build_plan(const PointCloud& ref, const PointCloud& target, std::size_t i,
                             std::size_t ell, Strategy strategy, std::uint64_t seed) {
    return build_plans(ref, target, i, ell, strategy, seed).front();
}

std::vector<ContaminationPlan> build_plans(const PointCloud& ref, const PointCloud& target,
                                           std::size_t i, std::size_t ell, Strategy strategy,
                                           std::uint64_t seed) {
    if (i >= ref.size()) throw std::invalid_argument("build_plan: reference index out of range");
    const Matching clean = solve_assignment(ref, target);
    return build_plans_impl(ref, target, clean, DirectionContext::make(ref, i, 64), i, ell,
                            strategy, seed, default_schedule(ref, target));
}

DivergenceVerdict run_divergence_test(const PointCloud& ref, const PointCloud& target,
                                      std::size_t i, const ContaminationPlan& plan,
                                      const HarnessOptions& options) {
    return run_plan(ref, target, i, plan, nullptr, options, 0);
}

BreakdownEstimate estimate_bp_map(const PointCloud& ref, const PointCloud& target, std::size_t i,
                                  const HarnessOptions& options) {
    if (i >= ref.size()) throw std::invalid_argument("estimate_bp_map: index out of range");
    const long long n = static_cast<long long>(ref.size());
    const SweepResult sweep = sweep_ells(ref, target, {i}, nullptr, options);

    BreakdownEstimate est;
    est.kind = "map";
    est.attacked_indices = {i};
    est.per_ell = sweep.per_ell;
    est.bp_estimate = sweep.bp;
    est.bracket_lo = lower_tukey_depth(ref[i], ref).depth;
    est.bracket_hi = tukey_depth(ref[i], ref).depth;
    est.within_bracket = within(est.bp_estimate, est.bracket_lo, est.bracket_hi);
    est.ref_general_position = in_general_position(ref);
    if (est.ref_general_position) {
        const long long d = ref.dim;
        est.gp_bracket = {clamp_lo(est.bracket_hi.count - (d - 1), n), est.bracket_hi};
        est.within_gp_bracket = within(est.bp_estimate, est.gp_bracket->first, est.gp_bracket->second);
    }
    est.monotone_checks = sweep.monotone_checks;
    est.monotone_violations = sweep.monotone_violations;
    est.cone_checks = sweep.cone_checks;
    est.cone_violations = sweep.cone_violations;
    return est;
}

BreakdownEstimate estimate_bp_contour(const PointCloud& ref, const PointCloud& target,
                                      const DepthValue& tau, const HarnessOptions& options) {
    const long long n = static_cast<long long>(ref.size());
    const std::vector<std::size_t> preimage = depth_contour_ref_indices(ref, tau);
    if (preimage.empty())
        throw std::invalid_argument("estimate_bp_contour: clean contour is empty for tau = " +
                                    tau.str());
    const Matching clean = solve_assignment(ref, target);
    SetAttack set;
    set.ref_indices = preimage;
    set.clean_points.dim = target.dim;
    for (std::size_t r : preimage) set.clean_points.points.push_back(target[clean.sigma[r]]);

    const SweepResult sweep = sweep_ells(ref, target, preimage, &set, options);

    BreakdownEstimate est;
    est.kind = "contour";
    est.attacked_indices = preimage;
    est.per_ell = sweep.per_ell;
    est.bp_estimate = sweep.bp;
    const long long bigN = max_hyperplane_count(ref) - 1;
    est.bracket_lo = clamp_lo(tau.count - bigN, n);
    est.bracket_hi = tau;
    est.within_bracket = within(est.bp_estimate, est.bracket_lo, est.bracket_hi);
    est.ref_general_position = in_general_position(ref);
    if (est.ref_general_position) {
        const long long d = ref.dim;
        est.gp_bracket = {clamp_lo(tau.count - (d - 1), n), tau};
        est.within_gp_bracket = within(est.bp_estimate, est.gp_bracket->first, est.gp_bracket->second);
    }
    est.monotone_checks = sweep.monotone_checks;
    est.monotone_violations = sweep.monotone_violations;
    est.cone_checks = sweep.cone_checks;
    est.cone_violations = sweep.cone_violations;
    return est;
}

BreakdownEstimate estimate_bp_median(const PointCloud& ref, const PointCloud& target,
                                     const HarnessOptions& options) {
    const long long n = static_cast<long long>(ref.size());
    const std::vector<std::size_t> deepest = max_depth_indices(ref);
    const DepthValue tau_star = tukey_depth(ref[deepest.front()], ref).depth;
    const Matching clean = solve_assignment(ref, target);
    SetAttack set;
    set.ref_indices = deepest;
    set.clean_points.dim = target.dim;
    for (std::size_t r : deepest) set.clean_points.points.push_back(target[clean.sigma[r]]);

    const SweepResult sweep = sweep_ells(ref, target, deepest, &set, options);

    BreakdownEstimate est;
    est.kind = "median";
    est.attacked_indices = deepest;
    est.per_ell = sweep.per_ell;
    est.bp_estimate = sweep.bp;
    const long long bigN = max_hyperplane_count(ref) - 1;
    est.ref_general_position = in_general_position(ref);
    const long long d = ref.dim;
    if (est.ref_general_position) {
        est.bracket_lo = clamp_lo(tau_star.count - (d - 1), n);
        est.gp_bracket = {est.bracket_lo, tau_star};
    } else {
        est.bracket_lo = clamp_lo(tau_star.count - bigN, n);
    }
    est.bracket_hi = tau_star;
    est.within_bracket = within(est.bp_estimate, est.bracket_lo, est.bracket_hi);
    if (est.gp_bracket)
        est.within_gp_bracket = within(est.bp_estimate, est.gp_bracket->first, est.gp_bracket->second);
    est.half_bracket = {std::max(0.0, 0.5 - static_cast<double>(bigN) / static_cast<double>(n)), 0.5};
    est.within_half_bracket = est.bp_estimate.has_value() &&
                              est.bp_estimate->value() >= est.half_bracket->first - 1e-12 &&
                              est.bp_estimate->value() <= est.half_bracket->second + 1e-12;
    est.monotone_checks = sweep.monotone_checks;
    est.monotone_violations = sweep.monotone_violations;
    est.cone_checks = sweep.cone_checks;
    est.cone_violations = sweep.cone_violations;
    return est;
}

ConeCheckReport check_cone_containment(const Matching& m, const PointCloud& ref,
                                       const PointCloud& target, std::size_t i,
                                       const std::vector<double>& half_angles, int axis_count) {
    if (i >= ref.size()) throw std::invalid_argument("check_cone_containment: index out of range");
    ConeCheckReport report;
    std::vector<Point> axes;
    const int d = ref.dim;
    if (d == 1) {
        axes = {Point{1.0}, Point{-1.0}};
    } else if (d == 2) {
        for (int a = 0; a < axis_count; ++a) {
            const double ang = 2.0 * std::numbers::pi * a / axis_count;
            axes.push_back(Point{std::cos(ang), std::sin(ang)});
        }
    } else {
        Rng rng(split_seed(0xC0DE, static_cast<std::uint64_t>(axis_count)));
        for (int a = 0; a < axis_count; ++a) axes.push_back(rng.unit_vector(d));
    }
    const Point& u = ref[i];
    const Point image_u = target[m.sigma[i]];
    for (double theta : half_angles) {
        for (const Point& e : axes) {
            const Cone cone(u, e, theta);
            const AntiCone anti(image_u, e, theta);
            for (std::size_t j = 0; j < ref.size(); ++j) {
                if (!in_cone(ref[j], cone)) continue;
                ++report.checks;
                if (!in_anticone(target[m.sigma[j]], anti)) ++report.violations;
            }
        }
    }
    return report;
}

}  // namespace otdepth
