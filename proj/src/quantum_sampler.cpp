#include "hcg/quantum_sampler.hpp"

#include <algorithm>

#include "hcg/errors.hpp"
#include "hcg/rng.hpp"

namespace hcg {

PulseMode pulse_mode_from_string(const std::string& s) {
  if (s == "qsol") return PulseMode::Qsol;
  if (s == "qsamp") return PulseMode::Qsamp;
  throw ConfigError("unknown pulse mode: " + s);
}

std::string to_string(PulseMode m) { return m == PulseMode::Qsol ? "qsol" : "qsamp"; }

QuantumRun quantum_sample(const WeightedGraph& g, int shots, const QuantumParams& params,
                          std::uint64_t seed) {
  if (shots < 1) throw ConfigError("shots must be at least 1");
  const std::size_t n = g.node_count();
  QuantumRun run;

  std::vector<int> active;
  for (std::size_t v = 0; v < n; ++v)
    if (g.weight(static_cast<int>(v)) > 0.0) active.push_back(static_cast<int>(v));
  run.active_nodes = static_cast<int>(active.size());
  if (active.empty()) {
    run.samples.assign(static_cast<std::size_t>(shots), BitSet(n));
    return run;
  }
  if (active.size() > kMaxStateVectorAtoms) throw LimitError("pruned pricing graph exceeds the emulator cap");

  WeightedGraph sub = g.induced(active);
  const double w_max = *std::max_element(sub.weights().begin(), sub.weights().end());
  std::vector<double> w_hat;
  for (double w : sub.weights()) w_hat.push_back(w / w_max);

  Rng rng(seed);
  const Layout layout = layout_for_graph(sub.node_count(), params.layout_spacing);
  const Embedding emb = sa_embed(sub, layout, params.embedder, rng.next());
  run.embedding_cost = emb.cost;
  run.omega_max = std::clamp(omega_for_radius(emb.radius, params.c6), kOmegaMaxLow, kOmegaMaxHigh);

  const PulseSchedule sched = params.mode == PulseMode::Qsol
                                  ? qsol_schedule(params.duration, run.omega_max, w_hat)
                                  : qsamp_schedule(params.duration, run.omega_max, w_hat);
  Register reg;
  reg.positions = emb.positions;
  reg.c6 = params.c6;
  const EvolveResult ev = evolve(reg, sched, params.dt);
  run.emulated = true;
  run.dt_too_coarse = ev.dt_too_coarse;

  const auto shots_local = sample_bitstrings(ev.state, shots, rng.next(), params.spam);
  run.samples.reserve(shots_local.size());
  for (const auto& local : shots_local) {
    BitSet full(n);
    for (std::size_t i = 0; i < active.size(); ++i)
      if (local.test(i)) full.set(static_cast<std::size_t>(active[i]));
    run.samples.push_back(std::move(full));
  }
  return run;
}

std::vector<BitSet> quantum_sample_columns(const PricingProblem& p, int m, const QuantumParams& params,
                                           std::uint64_t seed) {
  return quantum_sample(p.graph, m, params, seed).samples;
}

std::vector<BitSet> QuantumSampler::sample(const SamplerRequest& req) const {
  if (req.problem == nullptr) throw ConfigError("sampler request without a problem");
  return quantum_sample_columns(*req.problem, req.num_samples, params_, req.seed);
}

}  // namespace hcg
