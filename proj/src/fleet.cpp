#include "hcg/fleet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hcg/errors.hpp"
#include "hcg/rng.hpp"

namespace hcg {

bool Tour::allows(int class_id) const {
  return std::binary_search(allowed_classes.begin(), allowed_classes.end(), class_id);
}

void FleetInstance::validate() const {
  const int n_classes = static_cast<int>(classes.size());
  for (std::size_t v = 0; v < classes.size(); ++v) {
    const auto& c = classes[v];
    if (c.id != static_cast<int>(v)) throw ConfigError("instance: class ids must equal their index");
    if (c.n_min < 0 || c.n_max < c.n_min)
      throw ConfigError("instance: class " + std::to_string(v) + " needs 0 <= n_min <= n_max");
  }
  for (std::size_t k = 0; k < tours.size(); ++k) {
    const auto& t = tours[k];
    if (t.id != static_cast<int>(k)) throw ConfigError("instance: tour ids must equal their index");
    if (t.allowed_classes.empty())
      throw ConfigError("instance: tour " + std::to_string(k) + " has no allowed class");
    if (!std::is_sorted(t.allowed_classes.begin(), t.allowed_classes.end()) ||
        std::adjacent_find(t.allowed_classes.begin(), t.allowed_classes.end()) != t.allowed_classes.end())
      throw ConfigError("instance: tour " + std::to_string(k) + " allowed classes must be sorted and unique");
    for (int v : t.allowed_classes)
      if (v < 0 || v >= n_classes)
        throw ConfigError("instance: tour " + std::to_string(k) + " references unknown class");
    if (t.window && !(t.window->start < t.window->end))
      throw ConfigError("instance: tour " + std::to_string(k) + " window needs start < end");
  }
  if (conflicts.node_count() != tours.size())
    throw ConfigError("instance: conflict graph size differs from tour count");
}

std::vector<int> FleetInstance::tours_of_class(int class_id) const {
  std::vector<int> out;
  for (const auto& t : tours)
    if (t.allows(class_id)) out.push_back(t.id);
  return out;
}

std::vector<std::pair<int, int>> conflict_edges_from_tours(const std::vector<Tour>& tours) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t a = 0; a < tours.size(); ++a) {
    if (!tours[a].window) throw ConfigError("conflict_edges: tour " + std::to_string(a) + " has no time window");
  }
  for (std::size_t a = 0; a < tours.size(); ++a) {
    for (std::size_t b = a + 1; b < tours.size(); ++b) {
      const auto& wa = *tours[a].window;
      const auto& wb = *tours[b].window;
      const bool overlap = wa.start < wb.end && wb.start < wa.end;
      std::vector<int> shared;
      std::set_intersection(tours[a].allowed_classes.begin(), tours[a].allowed_classes.end(),
                            tours[b].allowed_classes.begin(), tours[b].allowed_classes.end(),
                            std::back_inserter(shared));
      if (overlap || shared.empty()) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return edges;
}

int synthetic_tour_count(const InstanceParams& p) {
  return static_cast<int>(std::ceil(static_cast<double>(p.classes) * p.tours_per_class /
                                    p.mean_classes_per_tour - 1e-9));
}

namespace {

double truncated_normal(Rng& rng, double mean, double variance) {
  const double sd = std::sqrt(variance);
  for (;;) {
    const double x = rng.normal(mean, sd);
    if (x >= 0.0) return x;
  }
}

}  // namespace

FleetInstance generate_synthetic(const InstanceParams& p, std::uint64_t seed) {
  if (p.classes < 1) throw ConfigError("synthetic: need at least one class");
  if (p.tours_per_class < 1) throw ConfigError("synthetic: need at least one tour per class");
  if (!(p.mean_classes_per_tour >= 1.0 && p.mean_classes_per_tour <= p.classes))
    throw ConfigError("synthetic: mean classes per tour must lie in [1, |V|]");
  if (!(p.edge_probability > 0.0 && p.edge_probability <= 1.0))
    throw ConfigError("synthetic: edge probability must be in (0, 1]");
  if (p.tour_cost_variance < 0.0 || p.class_cost_variance < 0.0)
    throw ConfigError("synthetic: variances must be non-negative");
  const int n_tours = synthetic_tour_count(p);
  if (p.tours_per_class > n_tours)
    throw ConfigError("synthetic: |K_v| exceeds the total tour count");
  const int n_max = p.n_max.value_or(p.tours_per_class);
  if (p.n_min < 0 || n_max < p.n_min) throw ConfigError("synthetic: need 0 <= n_min <= n_max");

  Rng rng(seed);
  FleetInstance inst;

  // Every class takes the |K_v| least-used tours (random tie order), so each
  // tour is used at least once and class memberships stay balanced.
  std::vector<int> usage(static_cast<std::size_t>(n_tours), 0);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(p.classes));
  for (int v = 0; v < p.classes; ++v) {
    std::vector<int> order(static_cast<std::size_t>(n_tours));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return usage[a] < usage[b]; });
    order.resize(static_cast<std::size_t>(p.tours_per_class));
    std::sort(order.begin(), order.end());
    for (int k : order) ++usage[k];
    members[v] = std::move(order);
  }

  inst.tours.resize(static_cast<std::size_t>(n_tours));
  for (int k = 0; k < n_tours; ++k) {
    inst.tours[k].id = k;
    inst.tours[k].cost = truncated_normal(rng, p.tour_cost_mean, p.tour_cost_variance);
  }
  for (int v = 0; v < p.classes; ++v)
    for (int k : members[v]) inst.tours[k].allowed_classes.push_back(v);

  inst.classes.resize(static_cast<std::size_t>(p.classes));
  for (int v = 0; v < p.classes; ++v) {
    inst.classes[v] = VehicleClass{v, truncated_normal(rng, p.class_cost_mean, p.class_cost_variance),
                                   p.n_min, n_max};
  }

  inst.conflicts = WeightedGraph(static_cast<std::size_t>(n_tours));
  for (int v = 0; v < p.classes; ++v) {
    const auto& local = members[v];
    if (local.size() < 2) continue;
    const WeightedGraph er = generate_erdos_renyi_connected(static_cast<int>(local.size()),
                                                            p.edge_probability, rng.next());
    for (auto [a, b] : er.edges()) inst.conflicts.add_edge(local[a], local[b]);
  }
  inst.validate();
  return inst;
}

ClassSubgraph subgraph_for_class(const FleetInstance& inst, int class_id,
                                 const std::vector<double>& weights) {
  if (class_id < 0 || class_id >= static_cast<int>(inst.class_count()))
    throw ConfigError("subgraph_for_class: unknown class id " + std::to_string(class_id));
  if (weights.size() != inst.tour_count()) throw ConfigError("subgraph_for_class: weights length mismatch");
  ClassSubgraph out;
  out.class_id = class_id;
  out.tours = inst.tours_of_class(class_id);
  WeightedGraph base = inst.conflicts;
  base.set_weights(weights);
  out.graph = base.induced(out.tours);
  return out;
}

}  // namespace hcg
