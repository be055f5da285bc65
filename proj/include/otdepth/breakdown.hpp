#pragma once

#include "otdepth/assignment.hpp"
#include "otdepth/depth.hpp"
#include "otdepth/geometry.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace otdepth {

/// How a plan picks the target indices to replace:
///   last_ell                 — the last ell indices;
///   farthest_from_ray        — the ell targets farthest from the escape ray;
///   random                   — seeded random ell-subsets (several draws);
///   all_min_directions_sweep — one plan per escape direction (every exact
///                              depth-minimizing direction plus the negated
///                              maximizers from the lower Tukey depth),
///                              replacing the targets matched to the ell
///                              references most aligned with the direction
///                              (the attacked reference first among ties).
enum class Strategy { LastEll, FarthestFromRay, Random, AllMinDirectionsSweep };

Strategy parse_strategy(const std::string& name);
std::string strategy_name(Strategy s);

/// Replacement of ell target points by a cluster escaping along `direction`:
/// contaminant_j(k) = k * direction + offsets[j]. Offsets are distinct
/// low-discrepancy points in the unit ball so contaminated clouds stay
/// element-distinct. The schedule lists the escalating magnitudes k.
struct ContaminationPlan {
    std::vector<std::size_t> replace_indices;
    Point direction;
    std::vector<Point> offsets;
    std::vector<double> schedule;
    std::string strategy;

    void validate(std::size_t n) const;
};

/// Target cloud with the plan applied at magnitude k.
PointCloud contaminate(const PointCloud& target, const ContaminationPlan& plan, double k);

/// Per-magnitude trace of one (ell, plan) trial.
struct TraceRow {
    long long ell = 0;
    std::string plan;
    double k = 0.0;
    double value = 0.0;  // map norm or contour/median Hausdorff distance
};

struct DivergenceVerdict {
    bool diverged = false;
    double witness_k = 0.0;
    std::vector<double> map_norms;  // per schedule entry
    double growth_ratio = 0.0;
    ContaminationPlan plan;

    // optional instrumentation (filled when the harness checks are enabled)
    long long monotone_checks = 0;
    long long monotone_violations = 0;
    long long cone_checks = 0;
    long long cone_violations = 0;
};

struct HarnessOptions {
    std::vector<Strategy> strategies{Strategy::LastEll, Strategy::FarthestFromRay, Strategy::Random,
                                     Strategy::AllMinDirectionsSweep};
    std::uint64_t seed = 0;
    std::vector<double> schedule;  // empty: {1e2..1e6} x data diameter
    int max_sweep_directions = 64;

    // verification hooks, accumulated into the estimate
    bool check_monotone = false;
    bool check_cones = false;
    std::vector<double> cone_half_angles{std::numbers::pi / 8.0, std::numbers::pi / 6.0,
                                         std::numbers::pi / 4.0};
    int cone_axis_count = 16;

    std::vector<TraceRow>* trace = nullptr;  // optional sink
};

struct BreakdownEstimate {
    std::string kind;  // "map", "contour" or "median"
    std::vector<std::pair<long long, DivergenceVerdict>> per_ell;
    std::optional<DepthValue> bp_estimate;  // min ell/n with divergence

    DepthValue bracket_lo{0, 1};
    DepthValue bracket_hi{0, 1};
    bool within_bracket = false;

    bool ref_general_position = false;
    // Tighter (d-1)/n-form bracket, reported when the reference cloud is in
    // general position.
    std::optional<std::pair<DepthValue, DepthValue>> gp_bracket;
    bool within_gp_bracket = false;

    // Literal half-bracket [1/2 - N/n, 1/2] for the median; reported next to
    // the tau*-form so disagreements are visible instead of reconciled.
    std::optional<std::pair<double, double>> half_bracket;
    bool within_half_bracket = false;

    long long monotone_checks = 0;
    long long monotone_violations = 0;
    long long cone_checks = 0;
    long long cone_violations = 0;

    std::vector<std::size_t> attacked_indices;
};

/// Default escalation magnitudes {1e2..1e6} times the joint data diameter.
std::vector<double> default_schedule(const PointCloud& ref, const PointCloud& target);

/// The canonical plan for a strategy (first of build_plans).
ContaminationPlan build_plan(const PointCloud& ref, const PointCloud& target, std::size_t i,
                             std::size_t ell, Strategy strategy, std::uint64_t seed);

/// All plans a strategy proposes for (i, ell).
std::vector<ContaminationPlan> build_plans(const PointCloud& ref, const PointCloud& target,
                                           std::size_t i, std::size_t ell, Strategy strategy,
                                           std::uint64_t seed);

/// Runs the schedule: replaces the planned points with k*v + offset, solves
/// the assignment, records ||T(u_i)||. Diverged when the final norm exceeds
/// 0.5 * k_final and the last two norms grow with ratio >= 0.8 * (k2/k1).
DivergenceVerdict run_divergence_test(const PointCloud& ref, const PointCloud& target,
                                      std::size_t i, const ContaminationPlan& plan,
                                      const HarnessOptions& options = {});

/// Sweeps ell = 1..n, stops at the first ell with a diverging plan.
/// bracket = [lower Tukey depth, Tukey depth] of u_i; also reports the
/// [TD - (d-1)/n, TD] bracket when the reference cloud is in general
/// position.
BreakdownEstimate estimate_bp_map(const PointCloud& ref, const PointCloud& target, std::size_t i,
                                  const HarnessOptions& options = {});

/// Contour breakdown: divergence is the Hausdorff distance between the clean
/// and contaminated depth-tau contours. bracket = [tau - N/n, tau] with N
/// from max_hyperplane_count (clamped at 0).
BreakdownEstimate estimate_bp_contour(const PointCloud& ref, const PointCloud& target,
                                      const DepthValue& tau, const HarnessOptions& options = {});

/// Median breakdown: Hausdorff distance between clean and contaminated
/// median sets. bracket = [tau* - (d-1)/n, tau*] in general position, else
/// [tau* - N/n, tau*]; the literal [1/2 - N/n, 1/2] form is reported too.
BreakdownEstimate estimate_bp_median(const PointCloud& ref, const PointCloud& target,
                                     const HarnessOptions& options = {});

struct ConeCheckReport {
    long long checks = 0;
    long long violations = 0;
};

/// Direct test of the cone-to-cone property of monotone maps: every
/// reference point inside C_{u_i, e, theta} must map into
/// A_{T(u_i), e, theta}, for each half-angle and each axis e from a
/// deterministic direction set.
ConeCheckReport check_cone_containment(const Matching& m, const PointCloud& ref,
                                       const PointCloud& target, std::size_t i,
                                       const std::vector<double>& half_angles, int axis_count);

}  // namespace otdepth
