#include "otdepth/transport.hpp"

#include <algorithm>
#include <stdexcept>

namespace otdepth {

TransportQuantileFn TransportQuantileFn::make(PointCloud ref, PointCloud target) {
    Matching m = solve_assignment(ref, target);
    return from_matching(std::move(ref), std::move(target), std::move(m));
}

TransportQuantileFn TransportQuantileFn::from_matching(PointCloud ref, PointCloud target,
                                                       Matching m) {
    if (m.sigma.size() != ref.size())
        throw std::invalid_argument("TransportQuantileFn: matching size mismatch");
    TransportQuantileFn q;
    q.inverse = m.inverse();
    q.ref_depths = all_point_depths(ref);
    q.ref = std::move(ref);
    q.target = std::move(target);
    q.matching = std::move(m);
    return q;
}

DepthValue transport_depth(std::size_t target_index, const TransportQuantileFn& q) {
    if (target_index >= q.size())
        throw std::invalid_argument("transport_depth: target index out of range");
    return q.ref_depths[q.inverse[target_index]];
}

ContourSet transport_contour(const DepthValue& tau, const TransportQuantileFn& q) {
    if (tau.n != static_cast<long long>(q.size()))
        throw std::invalid_argument("transport_contour: tau denominator must equal sample size");
    ContourSet cs;
    cs.tau = tau;
    cs.points.dim = q.target.dim;
    cs.ref_preimage.dim = q.ref.dim;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q.ref_depths[i].count != tau.count) continue;
        cs.ref_preimage.points.push_back(q.ref[i]);
        cs.points.points.push_back(q.target[q.matching.sigma[i]]);
        cs.target_indices.push_back(q.matching.sigma[i]);
    }
    return cs;
}

std::vector<std::size_t> transport_median_indices(const TransportQuantileFn& q) {
    if (q.size() == 0) throw std::invalid_argument("transport_median: empty clouds");
    long long best = 0;
    for (const DepthValue& d : q.ref_depths) best = std::max(best, d.count);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q.ref_depths[i].count == best) idx.push_back(q.matching.sigma[i]);
    return idx;
}

PointCloud transport_median(const TransportQuantileFn& q) {
    PointCloud out;
    out.dim = q.target.dim;
    out.label = "median";
    for (std::size_t j : transport_median_indices(q)) out.points.push_back(q.target[j]);
    return out;
}

std::vector<std::pair<std::size_t, DepthValue>> transport_ranks(const TransportQuantileFn& q) {
    std::vector<std::pair<std::size_t, DepthValue>> ranks;
    ranks.reserve(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) ranks.emplace_back(j, transport_depth(j, q));
    std::stable_sort(ranks.begin(), ranks.end(), [](const auto& a, const auto& b) {
        if (a.second.count != b.second.count) return b.second.count < a.second.count;
        return a.first < b.first;
    });
    return ranks;
}

}  // namespace otdepth
