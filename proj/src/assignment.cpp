#include "otdepth/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace otdepth {

namespace {

void require_instance(const PointCloud& ref, const PointCloud& target) {
    if (ref.size() != target.size())
        throw std::invalid_argument("assignment: clouds must have equal size (" +
                                    std::to_string(ref.size()) + " vs " +
                                    std::to_string(target.size()) + ")");
    if (ref.empty()) throw std::invalid_argument("assignment: empty clouds");
    if (ref.dim != target.dim) throw std::invalid_argument("assignment: dimension mismatch");
}

struct LapResult {
    std::vector<std::size_t> row_to_col;
    std::vector<double> alpha, beta;
};

// Jonker-Volgenant style shortest augmenting path on a dense matrix.
// Maintains dual feasibility cost[i][j] - u[i] - v[j] >= 0 with zero reduced
// cost on matched edges.
LapResult lap_shortest_augmenting_path(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);  // 1-based, 0 = unmatched
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            std::size_t j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    LapResult r;
    r.row_to_col.assign(n, 0);
    r.alpha.assign(n, 0.0);
    r.beta.assign(n, 0.0);
    for (std::size_t j = 1; j <= n; ++j) r.row_to_col[match[j] - 1] = j - 1;
    for (std::size_t i = 1; i <= n; ++i) r.alpha[i - 1] = u[i];
    for (std::size_t j = 1; j <= n; ++j) r.beta[j - 1] = v[j];
    return r;
}

}  // namespace

std::vector<std::size_t> Matching::inverse() const {
    std::vector<std::size_t> inv(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = i;
    return inv;
}

std::vector<std::vector<double>> cost_matrix(const PointCloud& ref, const PointCloud& target) {
    require_instance(ref, target);
    const std::size_t n = ref.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[i][j] = squared_distance(ref[i], target[j]);
    return c;
}

Matching solve_assignment(const PointCloud& ref, const PointCloud& target) {
    const std::vector<std::vector<double>> c = cost_matrix(ref, target);
    const std::size_t n = c.size();
    double cmax = 0.0;
    for (const auto& row : c)
        for (double v : row) cmax = std::max(cmax, v);
    const double scale = cmax > 0.0 ? cmax : 1.0;

    // Rescale to [0,1] and add the deterministic tie-break perturbation
    // (1e-12 * cmax on the original scale).
    std::vector<std::vector<double>> work(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            work[i][j] = c[i][j] / scale + 1e-12 * static_cast<double>(i * n + j);

    const LapResult lap = lap_shortest_augmenting_path(work);

    Matching m;
    m.sigma = lap.row_to_col;
    // Fine-scale repair: on far-contaminated instances the tie-break
    // perturbation can exceed the true intra-cluster cost differences, so the
    // augmenting solve may leave crossed pairs it cannot see. Uncrossing is
    // a strict improvement of the unperturbed objective and restores the
    // pairwise monotonicity every optimal matching satisfies.
    bool changed = true;
    for (int sweep = 0; changed && sweep < 64; ++sweep) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Point du = sub(ref[i], ref[j]);
                const Point dt = sub(target[m.sigma[i]], target[m.sigma[j]]);
                const double inner = dot(du, dt);
                if (inner < -1e-12 * std::max(1.0, norm(du) * norm(dt))) {
                    std::swap(m.sigma[i], m.sigma[j]);
                    changed = true;
                }
            }
        }
    }
    m.total_cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) m.total_cost += c[i][m.sigma[i]];
    DualPotentials duals;
    duals.alpha.resize(n);
    duals.beta.resize(n);
    for (std::size_t i = 0; i < n; ++i) duals.alpha[i] = lap.alpha[i] * scale;
    for (std::size_t j = 0; j < n; ++j) duals.beta[j] = lap.beta[j] * scale;
    m.certificate = std::move(duals);
    return m;
}

Matching brute_force_assignment(const PointCloud& ref, const PointCloud& target) {
    require_instance(ref, target);
    const std::size_t n = ref.size();
    if (n > 10) throw std::invalid_argument("brute_force_assignment: refusing n > 10");
    const std::vector<std::vector<double>> c = cost_matrix(ref, target);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best_perm = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) cost += c[i][perm[i]];
        // strict improvement keeps the lexicographically first optimum
        if (cost < best_cost) {
            best_cost = cost;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    Matching m;
    m.sigma = std::move(best_perm);
    m.total_cost = best_cost;
    return m;
}

MonotonicityReport check_pairwise_monotone(const Matching& m, const PointCloud& ref,
                                           const PointCloud& target, double tol) {
    require_instance(ref, target);
    if (m.sigma.size() != ref.size())
        throw std::invalid_argument("check_pairwise_monotone: matching size mismatch");
    MonotonicityReport report;
    const std::size_t n = ref.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point du = sub(ref[i], ref[j]);
            const Point dt = sub(target[m.sigma[i]], target[m.sigma[j]]);
            const double inner = dot(du, dt);
            const double pair_scale = std::max(1.0, norm(du) * norm(dt));
            if (inner < -tol * pair_scale) {
                report.ok = false;
                report.violations.push_back({i, j, inner});
            }
        }
    }
    return report;
}

bool check_cyclical_monotone(const Matching& m, const PointCloud& ref, const PointCloud& target,
                             int max_cycle_len, double tol) {
    require_instance(ref, target);
    if (max_cycle_len > 5)
        throw std::invalid_argument("check_cyclical_monotone: max cycle length capped at 5");
    const std::size_t n = ref.size();
    const std::vector<std::vector<double>> c = cost_matrix(ref, target);

    double cost_scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) cost_scale = std::max(cost_scale, c[i][m.sigma[i]]);

    // Try every cycle (i_0 .. i_{L-1}): reassign i_t -> sigma(i_{t+1}).
    std::vector<std::size_t> cycle;
    bool ok = true;
    auto gain_of = [&](const std::vector<std::size_t>& cyc) {
        double delta = 0.0;
        for (std::size_t t = 0; t < cyc.size(); ++t) {
            const std::size_t from = cyc[t];
            const std::size_t to = cyc[(t + 1) % cyc.size()];
            delta += c[from][m.sigma[to]] - c[from][m.sigma[from]];
        }
        return delta;
    };
    // enumerate ordered cycles with smallest element first to avoid rotations
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t first, std::size_t len) {
        if (!ok) return;
        if (cycle.size() >= 2 && gain_of(cycle) < -tol * cost_scale) {
            ok = false;
            return;
        }
        if (cycle.size() == len) return;
        for (std::size_t next = first + 1; next < n && ok; ++next) {
            if (std::find(cycle.begin(), cycle.end(), next) != cycle.end()) continue;
            cycle.push_back(next);
            extend(first, len);
            cycle.pop_back();
        }
    };
    for (std::size_t first = 0; first < n && ok; ++first) {
        cycle = {first};
        extend(first, static_cast<std::size_t>(max_cycle_len));
    }
    return ok;
}

double duality_gap(const Matching& m) {
    if (!m.certificate) throw std::invalid_argument("duality_gap: matching has no certificate");
    double dual = 0.0;
    for (double a : m.certificate->alpha) dual += a;
    for (double b : m.certificate->beta) dual += b;
    return m.total_cost - dual;
}

double max_dual_infeasibility(const Matching& m, const PointCloud& ref, const PointCloud& target) {
    if (!m.certificate) throw std::invalid_argument("max_dual_infeasibility: no certificate");
    const std::vector<std::vector<double>> c = cost_matrix(ref, target);
    const std::size_t n = c.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            worst = std::max(worst, m.certificate->alpha[i] + m.certificate->beta[j] - c[i][j]);
    return worst;
}

}  // namespace otdepth
