#include "hcg/samplers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "hcg/errors.hpp"
#include "hcg/rng.hpp"

namespace hcg {

namespace {

using Mask = std::uint64_t;

Mask bit(int i) { return Mask{1} << i; }

BitSet mask_to_bitset(Mask m, std::size_t n) {
  BitSet b(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((m >> i) & 1U) b.set(i);
  return b;
}

Mask bitset_to_mask(const BitSet& b) { return b.size() == 0 ? 0 : b.words()[0]; }

// Lexicographic order on s_0 s_1 ...: the lowest differing bit decides, and
// the set holding a 0 there is smaller.
bool lex_less(Mask a, Mask b) {
  const Mask diff = a ^ b;
  if (diff == 0) return false;
  const int lowest = std::countr_zero(diff);
  return ((b >> lowest) & 1U) != 0;
}

class MwisSearch {
 public:
  MwisSearch(const WeightedGraph& g, const std::vector<ExclusionConstraint>& ex) : n_(static_cast<int>(g.node_count())) {
    adj_.assign(n_, 0);
    w_ = g.weights();
    for (auto [u, v] : g.edges()) {
      adj_[u] |= bit(v);
      adj_[v] |= bit(u);
    }
    for (const auto& e : ex) {
      if (e.members.size() != g.node_count()) throw ConfigError("exact_mwis: exclusion length mismatch");
      excl_.push_back(bitset_to_mask(e.members));
    }
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return w_[a] > w_[b]; });
  }

  Mask solve() {
    Mask cand = 0;
    for (int i = 0; i < n_; ++i)
      if (w_[i] > 0.0) cand |= bit(i);
    best_ = 0;
    best_value_ = 0.0;
    if (!excluded(0)) have_best_ = true;
    dfs(0, 0.0, cand);
    return have_best_ ? best_ : 0;
  }

 private:
  bool excluded(Mask cur) const {
    for (Mask e : excl_)
      if ((cur & e) == e) return true;
    return false;
  }

  double tol() const { return 1e-9 * std::max(1.0, std::abs(best_value_)); }

  // Weighted clique-cover bound over candidate nodes.
  double bound(Mask cand) const {
    double total = 0.0;
    Mask cliques[64];
    int count = 0;
    for (int v : order_) {
      if (!((cand >> v) & 1U)) continue;
      bool placed = false;
      for (int c = 0; c < count; ++c) {
        if ((adj_[v] & cliques[c]) == cliques[c]) {
          cliques[c] |= bit(v);
          placed = true;
          break;
        }
      }
      if (!placed) {
        cliques[count++] = bit(v);
        total += w_[v];
      }
    }
    return total;
  }

  void consider(Mask cur, double value) {
    if (excluded(cur)) return;
    if (!have_best_ || value > best_value_ + tol() ||
        (value >= best_value_ - tol() && lex_less(cur, best_))) {
      best_ = cur;
      best_value_ = value;
      have_best_ = true;
    }
  }

  void dfs(Mask cur, double value, Mask cand) {
    consider(cur, value);
    if (cand == 0) return;
    if (have_best_ && value + bound(cand) < best_value_ - tol()) return;
    int v = -1;
    for (int u : order_)
      if ((cand >> u) & 1U) {
        v = u;
        break;
      }
    const Mask with = cur | bit(v);
    bool dead = false;
    for (Mask e : excl_)
      if ((with & e) == e && std::popcount(e) > 0) {
        // Adding more nodes cannot lift the violation, but other branches
        // below may still drop v; only this include branch is dead.
        dead = true;
        break;
      }
    if (!dead) dfs(with, value + w_[v], cand & ~adj_[v] & ~bit(v));
    dfs(cur, value, cand & ~bit(v));
  }

  int n_;
  std::vector<Mask> adj_;
  std::vector<double> w_;
  std::vector<Mask> excl_;
  std::vector<int> order_;
  Mask best_ = 0;
  double best_value_ = 0.0;
  bool have_best_ = false;
};

}  // namespace

BitSet exact_mwis(const WeightedGraph& g, const std::vector<ExclusionConstraint>& exclusions) {
  if (g.node_count() > kExactMwisMaxNodes)
    throw LimitError("exact_mwis: graph has " + std::to_string(g.node_count()) + " nodes (cap " +
                     std::to_string(kExactMwisMaxNodes) + ")");
  MwisSearch search(g, exclusions);
  return mask_to_bitset(search.solve(), g.node_count());
}

std::vector<WeightedSet> ilp_div(const WeightedGraph& g, int m) {
  if (m < 1) throw ConfigError("ilp_div: M must be >= 1");
  std::vector<WeightedSet> out;
  std::vector<ExclusionConstraint> exclusions;
  while (static_cast<int>(out.size()) < m) {
    BitSet best = exact_mwis(g, exclusions);
    if (best.none()) break;
    out.push_back(WeightedSet{best, set_weight(g, best)});
    exclusions.push_back(ExclusionConstraint::of(best));
  }
  return out;
}

std::vector<BitSet> greedy_sample(const WeightedGraph& g, int m, std::uint64_t seed) {
  if (m < 1) throw ConfigError("greedy_sample: M must be >= 1");
  const std::size_t n = g.node_count();
  Rng rng(seed);
  std::vector<BitSet> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    BitSet s(n);
    std::vector<double> p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) p[i] = std::max(g.weight(static_cast<int>(i)), 0.0);
    while (std::any_of(p.begin(), p.end(), [](double x) { return x > 0.0; })) {
      const int v = static_cast<int>(rng.weighted_index(p));
      s.set(static_cast<std::size_t>(v));
      p[v] = 0.0;
      for (int u : g.neighbors(v)) p[u] = 0.0;
    }
    out.push_back(std::move(s));
  }
  return out;
}

Qubo mwis_qubo(const WeightedGraph& g) {
  const std::size_t n = g.node_count();
  double w_max = 0.0;
  for (double w : g.weights()) w_max = std::max(w_max, w);
  if (!(w_max > 0.0)) throw ConfigError("mwis_qubo: graph has no positive weight");
  Qubo q;
  q.n = n;
  q.q.assign(n * n, 0.0);
  q.pruned.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = g.weight(static_cast<int>(i));
    if (w > 0.0) q.q[i * n + i] = -w / w_max;
    else q.pruned[i] = 1;
  }
  for (auto [u, v] : g.edges()) {
    q.q[static_cast<std::size_t>(u) * n + v] = kQuboPenalty;
    q.q[static_cast<std::size_t>(v) * n + u] = kQuboPenalty;
  }
  return q;
}

double qubo_energy(const Qubo& q, const BitSet& x) {
  if (x.size() != q.n) throw ConfigError("qubo_energy: size mismatch");
  double e = 0.0;
  for (std::size_t i = 0; i < q.n; ++i) {
    if (!x.test(i)) continue;
    e += q.at(i, i);
    for (std::size_t j = i + 1; j < q.n; ++j)
      if (x.test(j)) e += q.at(i, j);
  }
  return e;
}

std::vector<BitSet> sa_sample(const WeightedGraph& g, int m, const AnnealingSchedule& sched, std::uint64_t seed) {
  if (m < 1) throw ConfigError("sa_sample: M must be >= 1");
  if (!(sched.beta_initial > 0.0 && sched.beta_initial < sched.beta_final))
    throw ConfigError("sa_sample: need 0 < beta_i < beta_f");
  if (sched.sweeps < 1) throw ConfigError("sa_sample: sweeps must be >= 1");
  const Qubo q = mwis_qubo(g);
  const std::size_t n = q.n;
  std::vector<int> active;
  for (std::size_t i = 0; i < n; ++i)
    if (!q.pruned[i]) active.push_back(static_cast<int>(i));

  Rng rng(seed);
  std::vector<BitSet> out;
  std::vector<double> field(n);
  const double ratio = sched.beta_final / sched.beta_initial;
  for (int r = 0; r < m; ++r) {
    std::vector<char> x(n, 0);
    for (int i : active) x[i] = rng.bernoulli(0.5) ? 1 : 0;
    // field_i = Σ_{j≠i} Q_ij x_j
    for (std::size_t i = 0; i < n; ++i) {
      field[i] = 0.0;
      for (int u : g.neighbors(static_cast<int>(i))) field[i] += x[u] ? q.at(i, static_cast<std::size_t>(u)) : 0.0;
    }
    std::vector<int> order = active;
    for (int s = 0; s < sched.sweeps; ++s) {
      const double frac = sched.sweeps == 1 ? 1.0 : static_cast<double>(s) / (sched.sweeps - 1);
      const double beta = sched.beta_initial * std::pow(ratio, frac);
      rng.shuffle(order);
      for (int i : order) {
        const double delta = (x[i] ? -1.0 : 1.0) * (q.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) + field[i]);
        if (delta <= 0.0 || rng.uniform() < std::exp(-beta * delta)) {
          x[i] ^= 1;
          const double sign = x[i] ? 1.0 : -1.0;
          for (int u : g.neighbors(i)) field[u] += sign * q.at(static_cast<std::size_t>(u), static_cast<std::size_t>(i));
        }
      }
    }
    BitSet b(n);
    for (std::size_t i = 0; i < n; ++i)
      if (x[i]) b.set(i);
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

bool has_positive_weight(const WeightedGraph& g) {
  return std::any_of(g.weights().begin(), g.weights().end(), [](double w) { return w > 0.0; });
}

const PricingProblem& problem_of(const SamplerRequest& req) {
  if (!req.problem) throw ConfigError("sampler: request has no problem");
  if (req.num_samples < 1) throw ConfigError("sampler: M must be >= 1");
  return *req.problem;
}

}  // namespace

std::vector<BitSet> OneIlpSampler::sample(const SamplerRequest& req) const {
  const auto& p = problem_of(req);
  return {exact_mwis(p.graph)};
}

std::vector<BitSet> IlpDivSampler::sample(const SamplerRequest& req) const {
  const auto& p = problem_of(req);
  std::vector<BitSet> out;
  for (auto& ws : ilp_div(p.graph, req.num_samples)) out.push_back(std::move(ws.set));
  if (out.empty()) out.emplace_back(p.graph.node_count());
  return out;
}

std::vector<BitSet> GreedySampler::sample(const SamplerRequest& req) const {
  const auto& p = problem_of(req);
  return greedy_sample(p.graph, req.num_samples, req.seed);
}

std::vector<BitSet> AnnealingSampler::sample(const SamplerRequest& req) const {
  const auto& p = problem_of(req);
  if (!has_positive_weight(p.graph))
    return std::vector<BitSet>(static_cast<std::size_t>(req.num_samples), BitSet(p.graph.node_count()));
  return sa_sample(p.graph, req.num_samples, schedule_, req.seed);
}

}  // namespace hcg
