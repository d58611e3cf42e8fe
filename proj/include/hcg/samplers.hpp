#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hcg/graph.hpp"
#include "hcg/pricing.hpp"

namespace hcg {

// Forbids solutions that contain every member of `members`
// (Σ_{k∈I} x_k ≤ |I| − 1).
struct ExclusionConstraint {
  BitSet members;
  std::size_t size = 0;

  static ExclusionConstraint of(const BitSet& set) { return {set, set.count()}; }
};

inline constexpr std::size_t kExactMwisMaxNodes = 64;

// Maximum-weight independent set subject to exclusions. Only strictly
// positive nodes can be selected; ties go to the lexicographically smallest
// bit string.
BitSet exact_mwis(const WeightedGraph& g, const std::vector<ExclusionConstraint>& exclusions = {});

struct WeightedSet {
  BitSet set;
  double weight = 0.0;
};

// M best distinct independent sets by iterated exclusion; stops early when the
// solver returns the empty set.
std::vector<WeightedSet> ilp_div(const WeightedGraph& g, int m);

// M maximal independent sets over positive-weight nodes, drawing each free
// node with probability proportional to its weight.
std::vector<BitSet> greedy_sample(const WeightedGraph& g, int m, std::uint64_t seed);

// E(x) = Σ_i Q_ii x_i + Σ_{i<j} Q_ij x_i x_j, stored as a dense symmetric matrix.
struct Qubo {
  std::size_t n = 0;
  std::vector<double> q;       // row-major n×n
  std::vector<char> pruned;    // nodes with non-positive weight
  double at(std::size_t i, std::size_t j) const { return q[i * n + j]; }
};

inline constexpr double kQuboPenalty = 1.2;

// Diagonal −ω_i / max ω, penalty 1.2 per edge; non-positive nodes pruned.
Qubo mwis_qubo(const WeightedGraph& g);
double qubo_energy(const Qubo& q, const BitSet& x);

struct AnnealingSchedule {
  double beta_initial = 0.01;
  double beta_final = 10.0;
  int sweeps = 1000;
};

// Independent restarts of single-flip Metropolis with a geometric β schedule.
std::vector<BitSet> sa_sample(const WeightedGraph& g, int m, const AnnealingSchedule& schedule,
                              std::uint64_t seed);

class OneIlpSampler final : public Sampler {
 public:
  std::string name() const override { return "one-ilp"; }
  std::vector<BitSet> sample(const SamplerRequest& req) const override;
};

class IlpDivSampler final : public Sampler {
 public:
  std::string name() const override { return "ilp-div"; }
  std::vector<BitSet> sample(const SamplerRequest& req) const override;
};

class GreedySampler final : public Sampler {
 public:
  std::string name() const override { return "greedy"; }
  std::vector<BitSet> sample(const SamplerRequest& req) const override;
};

class AnnealingSampler final : public Sampler {
 public:
  AnnealingSampler(std::string name, AnnealingSchedule schedule)
      : name_(std::move(name)), schedule_(schedule) {}
  std::string name() const override { return name_; }
  std::vector<BitSet> sample(const SamplerRequest& req) const override;

 private:
  std::string name_;
  AnnealingSchedule schedule_;
};

}  // namespace hcg
