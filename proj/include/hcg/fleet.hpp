#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hcg/graph.hpp"

namespace hcg {

struct TimeWindow {
  double start = 0.0;
  double end = 0.0;
};

struct Tour {
  int id = 0;
  double cost = 0.0;
  std::optional<TimeWindow> window;
  std::vector<int> allowed_classes;  // sorted, non-empty

  bool allows(int class_id) const;
};

struct VehicleClass {
  int id = 0;
  double cost = 0.0;
  int n_min = 0;
  int n_max = 0;
};

// Tours and classes are indexed by id (tours[k].id == k, classes[v].id == v).
struct FleetInstance {
  std::vector<Tour> tours;
  std::vector<VehicleClass> classes;
  WeightedGraph conflicts;  // over tours

  std::size_t tour_count() const { return tours.size(); }
  std::size_t class_count() const { return classes.size(); }

  // Throws ConfigError when an invariant is broken.
  void validate() const;
  std::vector<int> tours_of_class(int class_id) const;
};

// Edge (k, k') iff the windows overlap or the tours share no class.
std::vector<std::pair<int, int>> conflict_edges_from_tours(const std::vector<Tour>& tours);

struct InstanceParams {
  int classes = 8;          // |V|
  int tours_per_class = 10; // |K_v|
  double edge_probability = 0.30;
  double mean_classes_per_tour = 2.0;  // N̄_V
  double tour_cost_mean = 10.0;
  double tour_cost_variance = 5.0;
  double class_cost_mean = 50.0;
  double class_cost_variance = 10.0;
  int n_min = 1;
  std::optional<int> n_max;  // defaults to tours_per_class
};

// ⌈|V|·|K_v| / N̄_V⌉
int synthetic_tour_count(const InstanceParams& params);

FleetInstance generate_synthetic(const InstanceParams& params, std::uint64_t seed);

struct ClassSubgraph {
  int class_id = 0;
  WeightedGraph graph;     // G_v
  std::vector<int> tours;  // local node -> global tour id
};

// `weights` is indexed by global tour id.
ClassSubgraph subgraph_for_class(const FleetInstance& inst, int class_id,
                                 const std::vector<double>& weights);

}  // namespace hcg
