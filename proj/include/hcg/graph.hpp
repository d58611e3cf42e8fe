#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hcg {

// Fixed-length bit vector over graph nodes (an independent-set candidate).
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  // Parses "101" style strings; character i is bit i.
  static BitSet from_string(const std::string& bits);
  static BitSet from_indices(std::size_t size, std::span<const int> indices);

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) words_[i / 64] |= mask; else words_[i / 64] &= ~mask;
  }
  void reset(std::size_t i) { set(i, false); }
  void clear();

  std::size_t count() const;
  bool none() const { return count() == 0; }
  std::vector<int> indices() const;
  std::string to_string() const;

  // |a xor b|; sizes must match.
  std::size_t xor_count(const BitSet& other) const;

  bool operator==(const BitSet& other) const = default;
  // Lexicographic order on the bit string s_0 s_1 ... s_{n-1}.
  bool lex_less(const BitSet& other) const;

  std::size_t hash() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitSetHash {
  std::size_t operator()(const BitSet& b) const { return b.hash(); }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

// Undirected node-weighted graph without self-loops.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n, double weight = 1.0);
  WeightedGraph(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                std::vector<double> weights);

  std::size_t node_count() const { return weights_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  // Adds {u, v}; duplicate edges are ignored. Throws on self-loops or bad indices.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const { return adjacency_[u].test(static_cast<std::size_t>(v)); }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int u) const { return neighbors_[u]; }
  const BitSet& adjacency_row(int u) const { return adjacency_[u]; }
  int degree(int u) const { return static_cast<int>(neighbors_[u].size()); }
  int max_degree() const;

  const std::vector<double>& weights() const { return weights_; }
  double weight(int u) const { return weights_[u]; }
  void set_weights(std::vector<double> weights);

  bool is_connected() const;

  // Induced subgraph over `nodes` (in the given order); weights carried over.
  WeightedGraph induced(std::span<const int> nodes) const;

 private:
  std::vector<double> weights_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<BitSet> adjacency_;
};

bool is_independent_set(const WeightedGraph& g, const BitSet& s);
double set_weight(const WeightedGraph& g, const BitSet& s);

struct ErdosRenyiOptions {
  int max_attempts = 10000;
};

// Connected G(n, p) by rejection sampling. Unit weights.
// `attempts`, when given, receives the number of samples drawn.
WeightedGraph generate_erdos_renyi_connected(int n, double p, std::uint64_t seed,
                                             ErdosRenyiOptions opts = {}, int* attempts = nullptr);

// Edge (i, j) iff |p_i - p_j| < radius. Unit weights.
WeightedGraph unit_disk_graph(std::span<const Point> positions, double radius);

}  // namespace hcg
