#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "hcg/fleet.hpp"
#include "hcg/graph.hpp"

namespace hcg {

inline constexpr int kInstanceSchemaVersion = 1;

// {"n": int, "edges": [[i, j], ...], "weights": [float, ...]}
nlohmann::json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const nlohmann::json& j);

// {"version": 1, "tours": [...], "classes": [...], "conflicts": [[i, j], ...]}
nlohmann::json instance_to_json(const FleetInstance& inst);
FleetInstance instance_from_json(const nlohmann::json& j);

void save_instance(const FleetInstance& inst, const std::filesystem::path& path);
FleetInstance load_instance(const std::filesystem::path& path);

}  // namespace hcg
