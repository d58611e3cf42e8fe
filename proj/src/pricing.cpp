#include "hcg/pricing.hpp"

#include "hcg/errors.hpp"

namespace hcg {

std::vector<PricingProblem> build_pricing_problems(const FleetInstance& inst, const LPSolution& duals) {
  if (duals.tour_duals.size() != inst.tour_count() || duals.class_min_duals.size() != inst.class_count() ||
      duals.class_max_duals.size() != inst.class_count())
    throw ConfigError("build_pricing_problems: duals do not match the instance");
  std::vector<double> weights(inst.tour_count());
  for (std::size_t k = 0; k < inst.tour_count(); ++k) weights[k] = duals.tour_duals[k] - inst.tours[k].cost;
  std::vector<PricingProblem> out;
  out.reserve(inst.class_count());
  for (const auto& vc : inst.classes) {
    ClassSubgraph sub = subgraph_for_class(inst, vc.id, weights);
    PricingProblem p;
    p.class_id = vc.id;
    p.graph = std::move(sub.graph);
    p.index_map = std::move(sub.tours);
    p.threshold = -(duals.class_min_duals[vc.id] + duals.class_max_duals[vc.id] - vc.cost);
    out.push_back(std::move(p));
  }
  return out;
}

Acceptance accept_column(const PricingProblem& p, const BitSet& s) {
  if (!is_independent_set(p.graph, s))
    throw ConfigError("accept_column: sample is not an independent set (run post-processing first)");
  const double sigma = set_weight(p.graph, s);
  return Acceptance{sigma > p.threshold + kAcceptEpsilon, sigma};
}

BitSet to_global_tours(const PricingProblem& p, const BitSet& local, std::size_t tour_count) {
  if (local.size() != p.index_map.size()) throw ConfigError("to_global_tours: size mismatch");
  BitSet out(tour_count);
  for (std::size_t i = 0; i < local.size(); ++i)
    if (local.test(i)) out.set(static_cast<std::size_t>(p.index_map[i]));
  return out;
}

}  // namespace hcg
