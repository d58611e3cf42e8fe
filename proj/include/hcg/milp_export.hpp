#pragma once

#include <filesystem>
#include <string>

#include "hcg/fleet.hpp"

namespace hcg {

// min(Σ_v N_v^max, |K|)
int milp_vehicle_count(const FleetInstance& inst);

// The vehicle-indexed assignment model in LP-file format. Variables z_c_v
// (vehicle c has class v) and x_c_k (vehicle c serves tour k), all binary.
std::string export_milp(const FleetInstance& inst);

void write_milp(const FleetInstance& inst, const std::filesystem::path& path);

}  // namespace hcg
