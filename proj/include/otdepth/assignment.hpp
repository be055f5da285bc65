#pragma once

#include "otdepth/geometry.hpp"

#include <optional>
#include <vector>

namespace otdepth {

/// Dual potentials certifying optimality: alpha_i + beta_j <= c_ij with
/// equality on matched pairs (up to rounding at the cost scale).
struct DualPotentials {
    std::vector<double> alpha;  // reference side
    std::vector<double> beta;   // target side
};

/// sigma maps reference index i to target index sigma[i]; total_cost is the
/// unperturbed sum of squared Euclidean costs along the matching.
struct Matching {
    std::vector<std::size_t> sigma;
    double total_cost = 0.0;
    std::optional<DualPotentials> certificate;

    std::vector<std::size_t> inverse() const;  // target index -> reference index
};

/// c_ij = ||ref_i - target_j||^2 (no square roots anywhere).
std::vector<std::vector<double>> cost_matrix(const PointCloud& ref, const PointCloud& target);

/// Exact minimum-cost assignment via O(n^3) shortest augmenting paths with
/// dual potentials. Ties between optimal permutations are resolved by a
/// deterministic perturbation (delta * (i*n + j), delta = 1e-12 * max cost);
/// the reported cost and certificate refer to the unperturbed matrix. The
/// matrix is rescaled by its maximum entry before augmenting, which keeps
/// contaminated instances (entries up to ~1e16) well conditioned.
Matching solve_assignment(const PointCloud& ref, const PointCloud& target);

/// Exhaustive minimum over all n! permutations, n <= 10. Canonical tie-break:
/// lexicographically smallest permutation among the exact-cost optima.
Matching brute_force_assignment(const PointCloud& ref, const PointCloud& target);

struct MonotonicityViolation {
    std::size_t i = 0;
    std::size_t j = 0;
    double inner = 0.0;
};

struct MonotonicityReport {
    bool ok = true;
    std::vector<MonotonicityViolation> violations;
};

/// Checks <u_i - u_j, T(u_i) - T(u_j)> >= -tol for all pairs; tol is applied
/// relative to the pair magnitude so huge contaminated coordinates do not
/// trip on rounding.
MonotonicityReport check_pairwise_monotone(const Matching& m, const PointCloud& ref,
                                           const PointCloud& target, double tol = 1e-9);

/// Verifies no cycle of length <= max_cycle_len reduces the matching cost
/// (cyclical monotonicity at desk scale; max_cycle_len <= 5).
bool check_cyclical_monotone(const Matching& m, const PointCloud& ref, const PointCloud& target,
                             int max_cycle_len, double tol = 1e-9);

/// primal cost minus the dual objective sum(alpha) + sum(beta); ~0 for
/// certified matchings. Throws if the matching has no certificate.
double duality_gap(const Matching& m);

/// Largest violation of alpha_i + beta_j <= c_ij over all pairs.
double max_dual_infeasibility(const Matching& m, const PointCloud& ref, const PointCloud& target);

}  // namespace otdepth
