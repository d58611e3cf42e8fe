#include "hcg/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>

#include "hcg/errors.hpp"
#include "hcg/rng.hpp"

namespace hcg {

BitSet BitSet::from_string(const std::string& bits) {
  BitSet b(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') b.set(i);
    else if (bits[i] != '0') throw ConfigError("BitSet: invalid character in '" + bits + "'");
  }
  return b;
}

BitSet BitSet::from_indices(std::size_t size, std::span<const int> indices) {
  BitSet b(size);
  for (int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= size) throw ConfigError("BitSet: index out of range");
    b.set(static_cast<std::size_t>(i));
  }
  return b;
}

void BitSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

std::size_t BitSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<int> BitSet::indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) out.push_back(static_cast<int>(i));
  return out;
}

std::string BitSet::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

std::size_t BitSet::xor_count(const BitSet& other) const {
  if (other.size_ != size_) throw ConfigError("BitSet::xor_count: size mismatch");
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_.size(); ++w)
    c += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
  return c;
}

bool BitSet::lex_less(const BitSet& other) const {
  const std::size_t n = std::min(size_, other.size_);
  for (std::size_t i = 0; i < n; ++i) {
    const bool a = test(i), b = other.test(i);
    if (a != b) return b;
  }
  return size_ < other.size_;
}

std::size_t BitSet::hash() const {
  std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
  for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL + (h >> 17);
  return h;
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

WeightedGraph::WeightedGraph(std::size_t n, double weight)
    : weights_(n, weight), neighbors_(n), adjacency_(n, BitSet(n)) {}

WeightedGraph::WeightedGraph(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                             std::vector<double> weights)
    : WeightedGraph(n) {
  set_weights(std::move(weights));
  for (auto [u, v] : edges) add_edge(u, v);
}

void WeightedGraph::add_edge(int u, int v) {
  const int n = static_cast<int>(node_count());
  if (u < 0 || v < 0 || u >= n || v >= n) throw ConfigError("graph: edge endpoint out of range");
  if (u == v) throw ConfigError("graph: self-loop");
  if (has_edge(u, v)) return;
  adjacency_[u].set(static_cast<std::size_t>(v));
  adjacency_[v].set(static_cast<std::size_t>(u));
  edges_.emplace_back(std::min(u, v), std::max(u, v));
  auto insert_sorted = [](std::vector<int>& list, int x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(neighbors_[u], v);
  insert_sorted(neighbors_[v], u);
}

int WeightedGraph::max_degree() const {
  int d = 0;
  for (const auto& nb : neighbors_) d = std::max(d, static_cast<int>(nb.size()));
  return d;
}

void WeightedGraph::set_weights(std::vector<double> weights) {
  if (weights.size() != node_count()) throw ConfigError("graph: weights length must equal node count");
  weights_ = std::move(weights);
}

bool WeightedGraph::is_connected() const {
  const std::size_t n = node_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : neighbors_[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        q.push(v);
      }
    }
  }
  return reached == n;
}

WeightedGraph WeightedGraph::induced(std::span<const int> nodes) const {
  WeightedGraph sub(nodes.size());
  std::vector<double> w;
  w.reserve(nodes.size());
  for (int u : nodes) w.push_back(weights_.at(static_cast<std::size_t>(u)));
  sub.set_weights(std::move(w));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (has_edge(nodes[i], nodes[j])) sub.add_edge(static_cast<int>(i), static_cast<int>(j));
  return sub;
}

bool is_independent_set(const WeightedGraph& g, const BitSet& s) {
  if (s.size() != g.node_count()) throw ConfigError("is_independent_set: size mismatch");
  for (auto [u, v] : g.edges())
    if (s.test(static_cast<std::size_t>(u)) && s.test(static_cast<std::size_t>(v))) return false;
  return true;
}

double set_weight(const WeightedGraph& g, const BitSet& s) {
  if (s.size() != g.node_count()) throw ConfigError("set_weight: size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.test(i)) total += g.weight(static_cast<int>(i));
  return total;
}

WeightedGraph generate_erdos_renyi_connected(int n, double p, std::uint64_t seed,
                                             ErdosRenyiOptions opts, int* attempts) {
  if (n < 2) throw ConfigError("erdos_renyi: n must be >= 2");
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("erdos_renyi: p must be in (0, 1]");
  Rng rng(seed);
  for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
    WeightedGraph g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform() < p) g.add_edge(i, j);
    if (g.is_connected()) {
      if (attempts) *attempts = attempt;
      return g;
    }
  }
  if (attempts) *attempts = opts.max_attempts;
  throw LimitError("erdos_renyi: no connected sample within " + std::to_string(opts.max_attempts) +
                   " attempts (p too small?)");
}

WeightedGraph unit_disk_graph(std::span<const Point> positions, double radius) {
  if (!(radius > 0.0)) throw ConfigError("unit_disk_graph: radius must be positive");
  const std::size_t n = positions.size();
  WeightedGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(positions[i], positions[j]);
      if (d == 0.0) throw ConfigError("unit_disk_graph: duplicate positions");
      if (d < radius) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

}  // namespace hcg
