#pragma once

#include "otdepth/breakdown.hpp"
#include "otdepth/depth.hpp"
#include "otdepth/geometry.hpp"
#include "otdepth/reference.hpp"
#include "otdepth/transport.hpp"

#include <json.hpp>

#include <string>

namespace otdepth {

using json = nlohmann::json;

// Depth values serialize as "k/n" strings to keep the exact-equality
// semantics of contours; everything else is plain JSON.

json to_json(const DepthValue& v);
json to_json(const PointCloud& cloud);
json to_json(const DepthResult& r);
json to_json(const Matching& m);                 // {"sigma": [...0-based...], "cost": float}
json to_json(const ContourSet& cs);              // {"tau": "k/n", "points": ..., "ref_preimage": ...}
json to_json(const ContaminationPlan& plan);
json to_json(const DivergenceVerdict& v);
json to_json(const BreakdownEstimate& est);

PointCloud cloud_from_json(const json& j, std::string label = "");

/// Experiment description for the breakdown command:
/// {
///   "kind": "map" | "contour" | "median",
///   "ref":    {"csv": path} | {"points": [[..],..]} | {"generate": {...RefSpec...}},
///   "target": same forms,
///   "index": i,            // map attacks
///   "tau": "k/n",          // contour attacks
///   "strategies": ["last_ell", ...],   // optional
///   "seed": 0,                          // optional
///   "schedule": [1e2, 1e3, ...]         // optional, absolute magnitudes
/// }
struct BreakdownConfig {
    std::string kind;
    PointCloud ref;
    PointCloud target;
    std::size_t index = 0;
    DepthValue tau{0, 1};
    HarnessOptions options;
};

BreakdownConfig parse_breakdown_config(const json& j, const std::string& base_dir = "");

RefSpec ref_spec_from_json(const json& j);

}  // namespace otdepth
