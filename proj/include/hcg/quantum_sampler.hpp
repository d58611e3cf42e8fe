#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcg/embedder.hpp"
#include "hcg/graph.hpp"
#include "hcg/pricing.hpp"
#include "hcg/rydberg.hpp"

namespace hcg {

enum class PulseMode { Qsol, Qsamp };

PulseMode pulse_mode_from_string(const std::string& s);
std::string to_string(PulseMode m);

struct QuantumParams {
  PulseMode mode = PulseMode::Qsamp;
  double duration = kDefaultDuration;
  double dt = kDefaultDt;
  double c6 = kDefaultC6;
  double layout_spacing = kDefaultLayoutSpacing;
  EmbedderParams embedder;
  std::optional<SpamParams> spam;
};

struct QuantumRun {
  std::vector<BitSet> samples;  // over the input graph's nodes
  int active_nodes = 0;         // nodes left after pruning
  double embedding_cost = 0.0;
  double omega_max = 0.0;
  bool emulated = false;
  bool dt_too_coarse = false;
};

// prune → normalise → embed → choose Ω_max → pulse → evolve → sample → map back.
// Pruned nodes always read 0.
QuantumRun quantum_sample(const WeightedGraph& g, int shots, const QuantumParams& params,
                          std::uint64_t seed);

std::vector<BitSet> quantum_sample_columns(const PricingProblem& p, int m, const QuantumParams& params,
                                           std::uint64_t seed);

class QuantumSampler final : public Sampler {
 public:
  explicit QuantumSampler(QuantumParams params) : params_(std::move(params)) {}
  std::string name() const override { return to_string(params_.mode); }
  std::vector<BitSet> sample(const SamplerRequest& req) const override;

 private:
  QuantumParams params_;
};

}  // namespace hcg
