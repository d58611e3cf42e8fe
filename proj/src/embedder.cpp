#include "hcg/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "hcg/errors.hpp"
#include "hcg/rng.hpp"

namespace hcg {

double blockade_radius(double omega_max, double c6) {
  if (!(omega_max > 0.0) || !(c6 > 0.0)) throw ConfigError("blockade_radius: inputs must be positive");
  return std::pow(c6 / omega_max, 1.0 / 6.0);
}

double omega_for_radius(double radius, double c6) {
  if (!(radius > 0.0) || !(c6 > 0.0)) throw ConfigError("omega_for_radius: inputs must be positive");
  return c6 / std::pow(radius, 6.0);
}

double default_max_radius() { return blockade_radius(kOmegaMaxLow); }

std::size_t Layout::central_site() const {
  if (sites.empty()) throw ConfigError("layout has no sites");
  Point c;
  for (const auto& p : sites) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= static_cast<double>(sites.size());
  c.y /= static_cast<double>(sites.size());
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const double d = distance(sites[i], c);
    if (d < best_d - 1e-12) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::size_t layout_site_count(std::size_t n) {
  if (n < 2) return n;
  const double nd = static_cast<double>(n);
  const auto rule = static_cast<std::size_t>(std::ceil(std::pow(nd, 1.85) / std::log2(nd) - 1e-9));
  return std::max(n, rule);
}

Layout triangular_layout(std::size_t count, double spacing) {
  if (!(spacing > 0.0)) throw ConfigError("layout spacing must be positive");
  Layout layout;
  layout.spacing = spacing;
  if (count == 0) return layout;
  // A hexagon of lattice radius r holds 3r(r+1)+1 points.
  long r = 0;
  while (3 * r * (r + 1) + 1 < static_cast<long>(count)) ++r;
  ++r;
  // Lattice point i·a1 + j·a2 has squared norm (i² + ij + j²)·spacing².
  std::vector<std::tuple<long, long, long>> pts;
  for (long i = -2 * r; i <= 2 * r; ++i)
    for (long j = -2 * r; j <= 2 * r; ++j) pts.emplace_back(i * i + i * j + j * j, j, i);
  std::sort(pts.begin(), pts.end());
  const double h = std::sqrt(3.0) / 2.0;
  for (std::size_t s = 0; s < count; ++s) {
    const auto [norm, j, i] = pts[s];
    (void)norm;
    layout.sites.push_back({spacing * (static_cast<double>(i) + 0.5 * static_cast<double>(j)),
                            spacing * h * static_cast<double>(j)});
  }
  return layout;
}

Layout layout_for_graph(std::size_t n, double spacing) {
  return triangular_layout(layout_site_count(n), spacing);
}

double embedding_cost(const WeightedGraph& g, const WeightedGraph& gh, double lambda) {
  if (g.node_count() != gh.node_count()) throw ConfigError("embedding_cost: node counts differ");
  double missing = 0.0;
  double extra = 0.0;
  for (const auto& [u, v] : g.edges())
    if (!gh.has_edge(u, v)) missing += 1.0;
  for (const auto& [u, v] : gh.edges())
    if (!g.has_edge(u, v)) extra += 1.0;
  return 2.0 * (missing + lambda * extra);
}

RadiusChoice choose_layout_radius(const WeightedGraph& g, const Layout& layout, double r_max) {
  if (!(r_max > 0.0)) throw ConfigError("choose_layout_radius: r_max must be positive");
  const std::size_t centre = layout.central_site();
  const auto delta = static_cast<std::size_t>(g.max_degree());
  if (delta == 0) return {std::min(layout.spacing / 2.0, r_max), false};
  std::vector<double> d;
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (i != centre) d.push_back(distance(layout.sites[i], layout.sites[centre]));
  if (delta > d.size()) return {r_max, true};
  std::sort(d.begin(), d.end());
  const double target = d[delta - 1];
  const double r = target + 1e-9 * std::max(1.0, target);
  if (r > r_max) return {r_max, true};
  return {r, false};
}

namespace {

double udg_cost(const WeightedGraph& g, const std::vector<Point>& pos, double radius, double lambda) {
  return embedding_cost(g, unit_disk_graph(pos, radius), lambda);
}

}  // namespace

SpringFreeResult spring_free_embed(const WeightedGraph& g, std::uint64_t seed,
                                   const SpringFreeParams& params) {
  const std::size_t n = g.node_count();
  SpringFreeResult out;
  Rng rng(seed);
  out.positions.resize(n);
  for (auto& p : out.positions) p = {rng.uniform(), rng.uniform()};
  if (n == 0) return out;
  if (n == 1) {
    out.radius = 1.0;
    return out;
  }

  const double k = std::sqrt(1.0 / static_cast<double>(n));
  const double t0 = 0.1;
  std::vector<Point> disp(n);
  for (int it = 0; it < params.iterations; ++it) {
    const double temp = t0 * (1.0 - static_cast<double>(it) / params.iterations);
    std::fill(disp.begin(), disp.end(), Point{});
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        double dx = out.positions[a].x - out.positions[b].x;
        double dy = out.positions[a].y - out.positions[b].y;
        double d = std::hypot(dx, dy);
        if (d < 1e-9) {
          dx = 1e-6 * (rng.uniform() - 0.5);
          dy = 1e-6 * (rng.uniform() - 0.5);
          d = std::max(std::hypot(dx, dy), 1e-12);
        }
        double f = k * k / d;
        if (g.has_edge(static_cast<int>(a), static_cast<int>(b))) f -= d * d / k;
        disp[a].x += dx / d * f;
        disp[a].y += dy / d * f;
        disp[b].x -= dx / d * f;
        disp[b].y -= dy / d * f;
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      const double len = std::hypot(disp[a].x, disp[a].y);
      if (len < 1e-15) continue;
      const double step = std::min(len, temp);
      out.positions[a].x += disp[a].x / len * step;
      out.positions[a].y += disp[a].y / len * step;
    }
  }

  std::vector<double> dists;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) dists.push_back(distance(out.positions[a], out.positions[b]));
  std::sort(dists.begin(), dists.end());
  dists.erase(std::unique(dists.begin(), dists.end()), dists.end());
  if (dists.front() <= 0.0) throw std::logic_error("spring_free_embed: coincident positions");

  std::vector<double> candidates{dists.front() / 2.0};
  for (std::size_t i = 0; i + 1 < dists.size(); ++i) candidates.push_back(0.5 * (dists[i] + dists[i + 1]));
  candidates.push_back(dists.back() * 1.1);

  out.cost = std::numeric_limits<double>::infinity();
  for (double r : candidates) {
    const double c = udg_cost(g, out.positions, r, params.lambda);
    if (c < out.cost) {
      out.cost = c;
      out.radius = r;
    }
  }
  return out;
}

void EmbedderParams::validate() const {
  if (!(alpha_cool > 0.0 && alpha_cool < 1.0)) throw ConfigError("alpha_cool must lie in (0, 1)");
  if (n_it <= 0 || k_max <= 0 || dk <= 0) throw ConfigError("embedder counts must be positive");
  if (!(beta_i > 0.0)) throw ConfigError("beta_i must be positive");
  if (lambda < 0.0) throw ConfigError("lambda must be non-negative");
  if (r_max < 0.0) throw ConfigError("r_max must be non-negative");
}

namespace {

class Annealer {
 public:
  Annealer(const WeightedGraph& g, const Layout& layout, double radius, double lambda)
      : g_(g), n_(g.node_count()), sites_(layout.size()), lambda_(lambda), h_(sites_ * sites_, 0) {
    for (std::size_t s = 0; s < sites_; ++s)
      for (std::size_t t = 0; t < sites_; ++t)
        h_[s * sites_ + t] = s != t && distance(layout.sites[s], layout.sites[t]) < radius;
  }

  double pair(std::size_t i, std::size_t j, int si, int sj) const {
    const bool want = g_.has_edge(static_cast<int>(i), static_cast<int>(j));
    const bool have = h_[static_cast<std::size_t>(si) * sites_ + static_cast<std::size_t>(sj)] != 0;
    if (want && !have) return 1.0;
    if (!want && have) return lambda_;
    return 0.0;
  }

  void node_costs(const std::vector<int>& at, std::vector<double>& c) const {
    c.assign(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double p = pair(i, j, at[i], at[j]);
        c[i] += p;
        c[j] += p;
      }
  }

  double total(const std::vector<int>& at) const {
    std::vector<double> c;
    node_costs(at, c);
    return std::accumulate(c.begin(), c.end(), 0.0);
  }

  double relocate_delta(const std::vector<int>& at, std::size_t i, int to) const {
    double d = 0.0;
    for (std::size_t j = 0; j < n_; ++j)
      if (j != i) d += pair(i, j, to, at[j]) - pair(i, j, at[i], at[j]);
    return 2.0 * d;
  }

  double swap_delta(const std::vector<int>& at, std::size_t i, std::size_t j) const {
    double d = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      if (k == i || k == j) continue;
      d += pair(i, k, at[j], at[k]) - pair(i, k, at[i], at[k]);
      d += pair(j, k, at[i], at[k]) - pair(j, k, at[j], at[k]);
    }
    return 2.0 * d;
  }

 private:
  const WeightedGraph& g_;
  std::size_t n_;
  std::size_t sites_;
  double lambda_;
  std::vector<char> h_;
};

}  // namespace

Embedding sa_embed(const WeightedGraph& g, const Layout& layout, const EmbedderParams& params,
                   std::uint64_t seed) {
  params.validate();
  const std::size_t n = g.node_count();
  if (layout.size() < n) throw ConfigError("sa_embed: layout has fewer sites than graph nodes");
  Embedding out;
  if (n == 0) return out;

  const double r_max = params.r_max > 0.0 ? params.r_max : default_max_radius();
  const RadiusChoice rc = choose_layout_radius(g, layout, r_max);
  out.radius = rc.radius;
  out.radius_capped = rc.capped;

  Rng rng(seed);

  // Spring-Free seed, rescaled so its radius matches R_B and centred on the layout.
  const SpringFreeResult sf = spring_free_embed(g, rng.next());
  Point layout_c;
  for (const auto& p : layout.sites) {
    layout_c.x += p.x;
    layout_c.y += p.y;
  }
  layout_c.x /= static_cast<double>(layout.size());
  layout_c.y /= static_cast<double>(layout.size());
  Point sf_c;
  for (const auto& p : sf.positions) {
    sf_c.x += p.x;
    sf_c.y += p.y;
  }
  sf_c.x /= static_cast<double>(n);
  sf_c.y /= static_cast<double>(n);
  const double scale = sf.radius > 0.0 ? out.radius / sf.radius : 1.0;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });

  std::vector<int> at(n, -1);
  std::vector<int> occupant(layout.size(), -1);
  for (int v : order) {
    const Point target{layout_c.x + scale * (sf.positions[v].x - sf_c.x),
                       layout_c.y + scale * (sf.positions[v].y - sf_c.y)};
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < layout.size(); ++s) {
      if (occupant[s] >= 0) continue;
      const double d = distance(target, layout.sites[s]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(s);
      }
    }
    at[v] = best;
    occupant[best] = v;
  }

  const Annealer ann(g, layout, out.radius, params.lambda);
  std::vector<double> c;
  ann.node_costs(at, c);
  double cost = std::accumulate(c.begin(), c.end(), 0.0);
  std::vector<int> best_at = at;
  double best_cost = cost;

  std::vector<int> empty_sites;
  double beta = params.beta_i;
  int stall = 0;
  long moves = 0;
  for (int k = 0; k < params.k_max && best_cost > 0.0; ++k) {
    const double before = best_cost;
    for (int it = 0; it < params.n_it; ++it) {
      const std::size_t i = cost > 0.0 ? rng.weighted_index(c) : rng.index(n);
      const bool can_relocate = layout.size() > n;
      const bool can_swap = n > 1;
      bool relocate = rng.uniform() < 0.5;
      if (!can_relocate) relocate = false;
      if (!can_swap) relocate = true;
      if (relocate && !can_relocate) break;

      double delta = 0.0;
      int to = -1;
      std::size_t j = 0;
      if (relocate) {
        empty_sites.clear();
        for (std::size_t s = 0; s < layout.size(); ++s)
          if (occupant[s] < 0) empty_sites.push_back(static_cast<int>(s));
        to = empty_sites[rng.index(empty_sites.size())];
        delta = ann.relocate_delta(at, i, to);
      } else {
        j = rng.index(n - 1);
        if (j >= i) ++j;
        delta = ann.swap_delta(at, i, j);
      }

      if (delta <= 0.0 || rng.uniform() <= std::exp(-beta * delta)) {
        if (relocate) {
          occupant[at[i]] = -1;
          occupant[to] = static_cast<int>(i);
          at[i] = to;
        } else {
          std::swap(at[i], at[j]);
          occupant[at[i]] = static_cast<int>(i);
          occupant[at[j]] = static_cast<int>(j);
        }
        cost += delta;
        ann.node_costs(at, c);
        if (cost < best_cost - 1e-12) {
          best_cost = cost;
          best_at = at;
        }
      }
      if (params.check_incremental && ++moves % 50 == 0) {
        const double full = ann.total(at);
        if (std::abs(full - cost) > 1e-9 * std::max(1.0, full))
          throw std::logic_error("sa_embed: incremental cost diverged from recomputation");
      }
    }
    ++out.temperature_steps;
    out.best_history.push_back(best_cost);
    stall = best_cost < before - 1e-12 ? 0 : stall + 1;
    if (stall >= params.dk) break;
    beta /= params.alpha_cool;
  }

  out.assignment = best_at;
  out.positions.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.positions[v] = layout.sites[best_at[v]];
  out.realized = unit_disk_graph(out.positions, out.radius);
  out.realized.set_weights(g.weights());
  out.cost = embedding_cost(g, out.realized, params.lambda);
  return out;
}

}  // namespace hcg
