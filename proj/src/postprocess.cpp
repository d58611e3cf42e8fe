#include "hcg/postprocess.hpp"

#include <algorithm>
#include <numeric>

#include "hcg/errors.hpp"

namespace hcg {

namespace {

// Indices sorted by weight (descending or ascending), ties by index.
std::vector<int> by_weight(const WeightedGraph& g, std::vector<int> nodes, bool descending) {
  std::stable_sort(nodes.begin(), nodes.end(), [&](int a, int b) {
    const double wa = g.weight(a), wb = g.weight(b);
    if (wa != wb) return descending ? wa > wb : wa < wb;
    return a < b;
  });
  return nodes;
}

BitSet maximalize_on(const WeightedGraph& g, BitSet s, const std::vector<char>& removed) {
  const std::size_t n = g.node_count();
  if (s.size() != n) throw ConfigError("maximalize: set length differs from node count");
  for (std::size_t i = 0; i < n; ++i)
    if (removed[i]) s.reset(i);

  std::vector<int> conflicts(n, 0);
  for (auto [u, v] : g.edges()) {
    if (s.test(static_cast<std::size_t>(u)) && s.test(static_cast<std::size_t>(v))) {
      ++conflicts[u];
      ++conflicts[v];
    }
  }
  for (;;) {
    int worst = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (conflicts[i] == 0) continue;
      if (worst < 0 || g.weight(static_cast<int>(i)) < g.weight(worst)) worst = static_cast<int>(i);
    }
    if (worst < 0) break;
    s.reset(static_cast<std::size_t>(worst));
    conflicts[worst] = 0;
    for (int u : g.neighbors(worst))
      if (s.test(static_cast<std::size_t>(u))) --conflicts[u];
  }

  std::vector<char> blocked(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!s.test(i)) continue;
    blocked[i] = 1;
    for (int u : g.neighbors(static_cast<int>(i))) blocked[u] = 1;
  }
  std::vector<int> candidates;
  for (std::size_t i = 0; i < n; ++i)
    if (!blocked[i] && !removed[i] && g.weight(static_cast<int>(i)) > 0.0) candidates.push_back(static_cast<int>(i));
  for (int v : by_weight(g, std::move(candidates), true)) {
    if (blocked[v]) continue;
    s.set(static_cast<std::size_t>(v));
    blocked[v] = 1;
    for (int u : g.neighbors(v)) blocked[u] = 1;
  }
  return s;
}

bool contains(const std::vector<BitSet>& list, const BitSet& s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

}  // namespace

BitSet maximalize(const WeightedGraph& g, const BitSet& set) {
  return maximalize_on(g, set, std::vector<char>(g.node_count(), 0));
}

std::vector<BitSet> maximalize(const WeightedGraph& g, const std::vector<BitSet>& sets) {
  const std::vector<char> none(g.node_count(), 0);
  std::vector<BitSet> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.push_back(maximalize_on(g, s, none));
  return out;
}

MakeDiffResult make_diff(const WeightedGraph& g, const std::vector<BitSet>& sets) {
  MakeDiffResult res;
  for (const auto& input : sets) {
    if (!is_independent_set(g, input)) throw ConfigError("make_diff: input is not an independent set");
    BitSet current = input;
    bool exhausted = false;
    if (contains(res.sets, current)) {
      const std::vector<int> order = by_weight(g, input.indices(), false);
      std::vector<char> removed(g.node_count(), 0);
      std::size_t drop = 0;
      while (contains(res.sets, current) && drop < order.size()) {
        removed[order[drop]] = 1;
        current = maximalize_on(g, current, removed);
        ++drop;
      }
      exhausted = drop == order.size();
    }
    res.duplicate.push_back(contains(res.sets, current) ? 1 : 0);
    res.exhausted.push_back(exhausted ? 1 : 0);
    res.sets.push_back(std::move(current));
  }
  return res;
}

}  // namespace hcg
