#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hcg/fleet.hpp"
#include "hcg/graph.hpp"
#include "hcg/master.hpp"

namespace hcg {

inline constexpr double kAcceptEpsilon = 1e-9;

// MWIS over G_v with node weights ω_k = μ_k − C_k; a set s is an improving
// column when Σ s_k ω_k > threshold.
struct PricingProblem {
  int class_id = 0;
  WeightedGraph graph;
  double threshold = 0.0;      // −(μ_v^min + μ_v^max − c_v)
  std::vector<int> index_map;  // local node -> global tour id
};

std::vector<PricingProblem> build_pricing_problems(const FleetInstance& inst, const LPSolution& duals);

struct Acceptance {
  bool accepted = false;
  double sigma = 0.0;
};

// Throws ConfigError when s is not independent in p.graph.
Acceptance accept_column(const PricingProblem& p, const BitSet& s);

// Lifts a local set to a tour set over the whole instance.
BitSet to_global_tours(const PricingProblem& p, const BitSet& local, std::size_t tour_count);

struct SamplerRequest {
  const PricingProblem* problem = nullptr;
  int num_samples = 1;
  std::uint64_t seed = 0;
};

// Uniform interface over the pricing heuristics. Returned bitstrings are over
// problem->graph nodes and need not be independent.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual std::string name() const = 0;
  virtual std::vector<BitSet> sample(const SamplerRequest& req) const = 0;
};

}  // namespace hcg
