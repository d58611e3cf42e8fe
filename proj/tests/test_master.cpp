#include <gtest/gtest.h>

#include <cmath>

#include "hcg/errors.hpp"
#include "hcg/master.hpp"
#include "hcg/rng.hpp"
#include "oracles.hpp"

using namespace hcg;

namespace {

FleetInstance hand_instance(const std::vector<double>& tour_costs, const std::vector<std::vector<int>>& allowed,
                            const std::vector<VehicleClass>& classes,
                            const std::vector<std::pair<int, int>>& conflicts = {}) {
  FleetInstance inst;
  for (std::size_t k = 0; k < tour_costs.size(); ++k) {
    Tour t;
    t.id = static_cast<int>(k);
    t.cost = tour_costs[k];
    t.allowed_classes = allowed[k];
    inst.tours.push_back(t);
  }
  inst.classes = classes;
  inst.conflicts = WeightedGraph(tour_costs.size(), conflicts, std::vector<double>(tour_costs.size(), 1.0));
  inst.validate();
  return inst;
}

FleetInstance tiny(std::uint64_t seed, int classes = 2, int per_class = 3) {
  InstanceParams p;
  p.classes = classes;
  p.tours_per_class = per_class;
  p.mean_classes_per_tour = 1.5;
  p.edge_probability = 0.3;
  return generate_synthetic(p, seed);
}

ColumnPool full_pool(const FleetInstance& inst) {
  ColumnPool pool;
  for (const auto& c : oracle::enumerate_columns(inst))
    pool.add(make_column(inst, c.class_id, BitSet::from_indices(inst.tour_count(), c.tours)));
  return pool;
}

void expect_lp_certificates(const FleetInstance& inst, const ColumnPool& pool, const LPSolution& s) {
  EXPECT_NEAR(s.objective, s.dual_objective, 1e-6 * std::max(1.0, std::abs(s.objective)));
  for (double mu : s.tour_duals) EXPECT_GE(mu, -1e-9);
  for (double mu : s.class_min_duals) EXPECT_GE(mu, -1e-9);
  for (double mu : s.class_max_duals) EXPECT_LE(mu, 1e-9);
  std::vector<double> cover(inst.tour_count(), 0.0);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    EXPECT_GE(s.primal[i], -1e-7);
    EXPECT_LE(s.primal[i], 1.0 + 1e-7);
    for (int k : pool[i].tours.indices()) cover[static_cast<std::size_t>(k)] += s.primal[i];
    if (s.primal[i] > 1e-7) { EXPECT_LE(reduced_cost(pool[i], s), 1e-6); }
    if (s.primal[i] < 1.0 - 1e-7) { EXPECT_GE(reduced_cost(pool[i], s), -1e-6); }
  }
  for (double c : cover) EXPECT_GE(c, 1.0 - 1e-7);
}

}  // namespace

TEST(InitialColumns, Singletons) {
  const auto one = hand_instance({1, 2, 3}, {{0}, {0}, {0}}, {{0, 10.0, 0, 3}});
  EXPECT_EQ(initial_columns(one).size(), 3u);

  const auto two = hand_instance({5}, {{0, 1}}, {{0, 50.0, 0, 1}, {1, 40.0, 0, 1}});
  const auto pool = initial_columns(two);
  ASSERT_EQ(pool.size(), 1u);
  EXPECT_EQ(pool[0].class_id, 1);
  EXPECT_DOUBLE_EQ(pool[0].cost, 45.0);

  InstanceParams p;
  EXPECT_EQ(initial_columns(generate_synthetic(p, 5)).size(), 40u);
}

TEST(Columns, ValidationAndDedup) {
  const auto inst = hand_instance({1, 2, 3}, {{0}, {0}, {0, 1}}, {{0, 10.0, 0, 3}, {1, 20.0, 0, 3}}, {{0, 1}});
  EXPECT_THROW(make_column(inst, 0, BitSet::from_string("110")), ConfigError);
  EXPECT_THROW(make_column(inst, 1, BitSet::from_string("100")), ConfigError);
  EXPECT_THROW(make_column(inst, 2, BitSet::from_string("001")), ConfigError);
  const auto c = make_column(inst, 0, BitSet::from_string("101"));
  EXPECT_DOUBLE_EQ(c.cost, 14.0);
  ColumnPool pool;
  EXPECT_TRUE(pool.add(c));
  EXPECT_FALSE(pool.add(c));
  EXPECT_TRUE(pool.add(make_column(inst, 1, BitSet::from_string("001"))));
  EXPECT_TRUE(pool.add(make_column(inst, 0, BitSet::from_string("001"))));
  EXPECT_EQ(pool.size(), 3u);
}

TEST(RmpLp, SingleColumn) {
  const auto inst = hand_instance({10}, {{0}}, {{0, 50.0, 0, 1}});
  const auto pool = initial_columns(inst);
  const auto s = solve_rmp_lp(inst, pool);
  EXPECT_NEAR(s.objective, 60.0, 1e-9);
  EXPECT_NEAR(s.primal[0], 1.0, 1e-9);
  // Bounded column: tour dual and x ≤ 1 dual split 60 between them.
  EXPECT_NEAR(s.tour_duals[0] + s.bound_duals[0], 60.0, 1e-9);
  EXPECT_NEAR(reduced_cost(pool[0], s), s.bound_duals[0], 1e-9);
  expect_lp_certificates(inst, pool, s);
}

TEST(RmpLp, StrongDualityAgainstVertexOracle) {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const double c0 = rng.uniform(1, 20), c1 = rng.uniform(1, 20), cv = rng.uniform(20, 60);
    const auto inst = hand_instance({c0, c1}, {{0}, {0}}, {{0, cv, 0, 2}});
    ColumnPool pool = initial_columns(inst);
    pool.add(make_column(inst, 0, BitSet::from_string("11")));
    const auto s = solve_rmp_lp(inst, pool);
    const auto oracle_opt = oracle::lp_by_vertices(build_rmp(inst, pool));
    ASSERT_TRUE(oracle_opt.feasible);
    EXPECT_NEAR(s.objective, oracle_opt.objective, 1e-7);
    EXPECT_NEAR(s.objective, cv + c0 + c1, 1e-7);
    expect_lp_certificates(inst, pool, s);
  }
}

TEST(RmpLp, RandomPoolsSatisfyCertificates) {
  Rng rng(5);
  int compared = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = tiny(100 + static_cast<std::uint64_t>(trial));
    const auto all = full_pool(inst);
    ColumnPool pool = initial_columns(inst);
    ensure_class_minimums(inst, pool);
    for (const auto& c : all)
      if (rng.bernoulli(trial % 2 == 0 ? 0.2 : 0.6)) pool.add(c);
    const auto s = solve_rmp_lp(inst, pool);
    expect_lp_certificates(inst, pool, s);
    if (pool.size() <= 7) {
      const auto o = oracle::lp_by_vertices(build_rmp(inst, pool));
      EXPECT_NEAR(s.objective, o.objective, 1e-7);
      ++compared;
    }
  }
  EXPECT_GE(compared, 5);
}

TEST(RmpLp, InfeasibleFamiliesReported) {
  const auto inst = hand_instance({1, 1}, {{0}, {0}}, {{0, 10.0, 3, 3}});
  auto pool = initial_columns(inst);
  try {
    solve_rmp_lp(inst, pool);
    FAIL() << "expected infeasibility";
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("class bounds"), std::string::npos);
  }
  const auto uncovered = hand_instance({1, 1}, {{0}, {0}}, {{0, 10.0, 0, 2}});
  ColumnPool partial;
  partial.add(make_column(uncovered, 0, BitSet::from_string("10")));
  try {
    solve_rmp_lp(uncovered, partial);
    FAIL() << "expected infeasibility";
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("tour coverage"), std::string::npos);
  }
  EXPECT_THROW(solve_binary_rmp(inst, pool), InfeasibleError);
}

TEST(RmpLp, AddingNegativeReducedCostColumnNeverRaisesObjective) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = tiny(300 + seed);
    const auto all = full_pool(inst);
    ColumnPool pool = initial_columns(inst);
    ensure_class_minimums(inst, pool);
    auto s = solve_rmp_lp(inst, pool);
    for (int round = 0; round < 20; ++round) {
      const Column* pick = nullptr;
      for (const auto& c : all)
        if (!pool.contains(c) && reduced_cost(c, s) < -1e-6) {
          pick = &c;
          break;
        }
      if (pick == nullptr) break;
      pool.add(*pick);
      const auto next = solve_rmp_lp(inst, pool);
      EXPECT_LE(next.objective, s.objective + 1e-6);
      s = next;
    }
  }
}

TEST(BinaryRmp, SingletonPool) {
  const auto inst = hand_instance({3, 4, 5}, {{0, 1}, {1}, {0}}, {{0, 30.0, 0, 3}, {1, 20.0, 0, 3}});
  const auto pool = initial_columns(inst);
  const auto r = solve_binary_rmp(inst, pool);
  EXPECT_NEAR(r.objective, (3 + 20) + (4 + 20) + (5 + 30), 1e-9);
  EXPECT_EQ(r.selected.size(), 3u);
  EXPECT_TRUE(r.proven_optimal);
}

TEST(BinaryRmp, OneCoveringColumnWins) {
  const auto inst = hand_instance({3, 4, 5}, {{0}, {0}, {0}}, {{0, 30.0, 0, 3}});
  ColumnPool pool = initial_columns(inst);
  pool.add(make_column(inst, 0, BitSet::from_string("111")));
  const auto r = solve_binary_rmp(inst, pool);
  EXPECT_NEAR(r.objective, 42.0, 1e-9);
  EXPECT_EQ(r.selected, (std::vector<int>{3}));
}

TEST(BinaryRmp, FullEnumerationMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto inst = tiny(seed);
    const auto pool = full_pool(inst);
    const auto r = solve_binary_rmp(inst, pool);
    const auto lp = solve_rmp_lp(inst, pool);
    EXPECT_NEAR(r.objective, oracle::fleet_optimum(inst), 1e-7) << "seed " << seed;
    EXPECT_GE(r.objective, lp.objective - 1e-7);
    double sum = 0.0;
    for (int i : r.selected) sum += pool[static_cast<std::size_t>(i)].cost;
    EXPECT_NEAR(sum, r.objective, 1e-9);
  }
}

TEST(BinaryRmp, IntegralLpMeansEqualObjectives) {
  const auto inst = hand_instance({3, 4}, {{0}, {0}}, {{0, 30.0, 1, 2}}, {{0, 1}});
  const auto pool = initial_columns(inst);
  const auto lp = solve_rmp_lp(inst, pool);
  const auto r = solve_binary_rmp(inst, pool);
  EXPECT_NEAR(lp.objective, r.objective, 1e-9);
  EXPECT_NEAR(r.objective, 67.0, 1e-9);
}
