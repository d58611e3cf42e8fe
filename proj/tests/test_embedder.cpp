#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "hcg/embedder.hpp"
#include "hcg/errors.hpp"
#include "hcg/rng.hpp"

using namespace hcg;

namespace {

WeightedGraph star(int leaves) {
  WeightedGraph g(static_cast<std::size_t>(leaves + 1));
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

WeightedGraph path(int n) {
  WeightedGraph g(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

// Per-node mismatch count straight from adjacency tests.
double ref_cost(const WeightedGraph& g, const WeightedGraph& h, double lambda) {
  double c = 0.0;
  const int n = static_cast<int>(g.node_count());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (g.has_edge(i, j) && !h.has_edge(i, j)) c += 1.0;
      if (!g.has_edge(i, j) && h.has_edge(i, j)) c += lambda;
    }
  return c;
}

void expect_consistent(const WeightedGraph& g, const Layout& layout, const Embedding& e, double lambda) {
  ASSERT_EQ(e.assignment.size(), g.node_count());
  std::set<int> used(e.assignment.begin(), e.assignment.end());
  EXPECT_EQ(used.size(), e.assignment.size());
  for (std::size_t i = 0; i < e.assignment.size(); ++i) {
    EXPECT_GE(e.assignment[i], 0);
    EXPECT_LT(static_cast<std::size_t>(e.assignment[i]), layout.size());
    EXPECT_EQ(e.positions[i].x, layout.sites[static_cast<std::size_t>(e.assignment[i])].x);
    EXPECT_EQ(e.positions[i].y, layout.sites[static_cast<std::size_t>(e.assignment[i])].y);
  }
  const auto udg = unit_disk_graph(e.positions, e.radius);
  EXPECT_EQ(udg.edges(), e.realized.edges());
  EXPECT_DOUBLE_EQ(e.cost, ref_cost(g, udg, lambda));
  for (std::size_t i = 1; i < e.best_history.size(); ++i) EXPECT_LE(e.best_history[i], e.best_history[i - 1]);
  if (!e.best_history.empty()) {
    EXPECT_DOUBLE_EQ(e.best_history.back(), e.cost);
  }
}

}  // namespace

TEST(EmbeddingCost, Examples) {
  WeightedGraph tri(3);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  WeightedGraph one(3);
  one.add_edge(0, 1);
  EXPECT_DOUBLE_EQ(embedding_cost(tri, tri, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(embedding_cost(tri, one, 2.0), 4.0);
  WeightedGraph e2(2), edge(2);
  edge.add_edge(0, 1);
  EXPECT_DOUBLE_EQ(embedding_cost(e2, edge, 2.0), 4.0);
  EXPECT_THROW(embedding_cost(tri, e2, 2.0), ConfigError);
}

TEST(EmbeddingCost, MatchesReferenceAndVanishesOnIdentity) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.index(12));
    const auto a = generate_erdos_renyi_connected(n, 0.4, rng.next());
    const auto b = generate_erdos_renyi_connected(n, 0.4, rng.next());
    const double lambda = rng.uniform(0, 4);
    EXPECT_DOUBLE_EQ(embedding_cost(a, a, lambda), 0.0);
    EXPECT_NEAR(embedding_cost(a, b, lambda), ref_cost(a, b, lambda), 1e-9);
  }
}

TEST(BlockadeRadius, Examples) {
  const double c6 = 2.0 * std::numbers::pi * 137e3;
  EXPECT_DOUBLE_EQ(kDefaultC6, c6);
  EXPECT_NEAR(blockade_radius(2.0 * std::numbers::pi), std::exp(std::log(137e3) / 6.0), 1e-12);
  EXPECT_NEAR(blockade_radius(2.0 * std::numbers::pi), 7.18, 0.005);
  EXPECT_NEAR(blockade_radius(c6), 1.0, 1e-12);
  for (double om : {1.0, 3.0, 20.0})
    EXPECT_NEAR(blockade_radius(om) / blockade_radius(2 * om), std::pow(2.0, 1.0 / 6.0), 1e-12);
  EXPECT_NEAR(omega_for_radius(blockade_radius(5.0)), 5.0, 1e-9);
  EXPECT_NEAR(default_max_radius(), blockade_radius(2.0 * std::numbers::pi * 0.5), 1e-12);
  EXPECT_THROW(blockade_radius(0.0), ConfigError);
  EXPECT_THROW(blockade_radius(1.0, -1.0), ConfigError);
  EXPECT_THROW(omega_for_radius(0.0), ConfigError);
}

TEST(Layouts, SiteCountAndGeometry) {
  EXPECT_EQ(layout_site_count(10), static_cast<std::size_t>(std::ceil(std::pow(10.0, 1.85) / std::log2(10.0))));
  EXPECT_EQ(layout_site_count(10), 22u);
  EXPECT_EQ(layout_site_count(1), 1u);
  for (std::size_t n = 2; n <= 20; ++n) EXPECT_GE(layout_site_count(n), n);
  const auto layout = layout_for_graph(14);
  EXPECT_EQ(layout.size(), layout_site_count(14));
  double min_d = 1e9, max_d = 0.0;
  for (std::size_t i = 0; i < layout.size(); ++i)
    for (std::size_t j = i + 1; j < layout.size(); ++j) {
      min_d = std::min(min_d, distance(layout.sites[i], layout.sites[j]));
      max_d = std::max(max_d, distance(layout.sites[i], layout.sites[j]));
    }
  EXPECT_GE(min_d, kMinAtomDistance);
  EXPECT_NEAR(min_d, kDefaultLayoutSpacing, 1e-9);
  EXPECT_LE(max_d, kMaxRegisterExtent);
  const auto seven = triangular_layout(7, 5.0);
  EXPECT_EQ(seven.central_site(), 0u);
  for (std::size_t i = 1; i < 7; ++i) EXPECT_NEAR(distance(seven.sites[0], seven.sites[i]), 5.0, 1e-9);
  EXPECT_THROW(triangular_layout(3, 0.0), ConfigError);
}

TEST(LayoutRadius, Examples) {
  const auto layout = triangular_layout(61, 5.0);
  WeightedGraph p = path(3);
  auto r = choose_layout_radius(p, layout, 12.0);
  EXPECT_FALSE(r.capped);
  EXPECT_GT(r.radius, 5.0);
  EXPECT_LT(r.radius, 5.0 + 1e-6);
  const auto udg = unit_disk_graph(layout.sites, r.radius);
  EXPECT_EQ(udg.degree(static_cast<int>(layout.central_site())), 6);

  r = choose_layout_radius(WeightedGraph(3), layout, 12.0);
  EXPECT_GT(r.radius, 0.0);
  EXPECT_LE(r.radius, 5.0);
  EXPECT_FALSE(r.capped);

  r = choose_layout_radius(star(20), layout, 12.0);
  EXPECT_DOUBLE_EQ(r.radius, 12.0);
  EXPECT_TRUE(r.capped);
  // 18 sites lie within 12 of the centre, so Δ = 18 fits and Δ = 19 does not.
  EXPECT_FALSE(choose_layout_radius(star(18), layout, 12.0).capped);
  EXPECT_TRUE(choose_layout_radius(star(19), layout, 12.0).capped);
  EXPECT_THROW(choose_layout_radius(p, layout, 0.0), ConfigError);
}

TEST(SpringFree, Examples) {
  WeightedGraph edge(2);
  edge.add_edge(0, 1);
  auto r = spring_free_embed(edge, 1);
  EXPECT_DOUBLE_EQ(r.cost, 0.0);
  EXPECT_GT(r.radius, distance(r.positions[0], r.positions[1]));

  WeightedGraph tri(3);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  EXPECT_DOUBLE_EQ(spring_free_embed(tri, 2).cost, 0.0);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = spring_free_embed(star(8), seed);
    EXPECT_GT(s.cost, 0.0);
    EXPECT_DOUBLE_EQ(s.cost, ref_cost(star(8), unit_disk_graph(s.positions, s.radius), 2.0));
  }
}

TEST(SaEmbed, PathReachesZeroCost) {
  const auto g = path(4);
  const auto layout = layout_for_graph(4);
  const auto e = sa_embed(g, layout, {}, 7);
  EXPECT_DOUBLE_EQ(e.cost, 0.0);
  expect_consistent(g, layout, e, 2.0);
}

TEST(SaEmbed, StarCannotBeEmbedded) {
  const auto g = star(8);
  const auto layout = layout_for_graph(9);
  const auto e = sa_embed(g, layout, {}, 3);
  EXPECT_GT(e.cost, 0.0);
  expect_consistent(g, layout, e, 2.0);
}

TEST(SaEmbed, DeterministicAndIncrementalCostExact) {
  Rng rng(21);
  EmbedderParams params;
  params.check_incremental = true;
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 6 + static_cast<int>(rng.index(7));
    const auto g = generate_erdos_renyi_connected(n, 0.4, rng.next());
    const auto layout = layout_for_graph(static_cast<std::size_t>(n));
    const auto seed = rng.next();
    const auto a = sa_embed(g, layout, params, seed);
    const auto b = sa_embed(g, layout, params, seed);
    EXPECT_EQ(a.assignment, b.assignment);
    EXPECT_EQ(a.cost, b.cost);
    expect_consistent(g, layout, a, params.lambda);
    EXPECT_LE(a.temperature_steps, params.k_max);
  }
}

TEST(SaEmbed, ParameterValidation) {
  const auto g = path(5);
  EmbedderParams bad;
  bad.alpha_cool = 1.0;
  EXPECT_THROW(sa_embed(g, layout_for_graph(5), bad, 1), ConfigError);
  bad = {};
  bad.dk = 0;
  EXPECT_THROW(sa_embed(g, layout_for_graph(5), bad, 1), ConfigError);
  EXPECT_THROW(sa_embed(g, triangular_layout(4), {}, 1), ConfigError);
}
