#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <mutex>

#include "hcg/cg.hpp"
#include "hcg/errors.hpp"
#include "hcg/metrics.hpp"
#include "hcg/postprocess.hpp"
#include "hcg/quantum_sampler.hpp"
#include "oracles.hpp"

using namespace hcg;

namespace {

FleetInstance tiny(std::uint64_t seed, int classes = 3, int per_class = 6) {
  InstanceParams p;
  p.classes = classes;
  p.tours_per_class = per_class;
  p.edge_probability = 0.3;
  p.mean_classes_per_tour = 2.0;
  return generate_synthetic(p, seed);
}

class NullSampler final : public Sampler {
 public:
  std::string name() const override { return "null"; }
  std::vector<BitSet> sample(const SamplerRequest&) const override { return {}; }
};

class ThrowingSampler final : public Sampler {
 public:
  std::string name() const override { return "boom"; }
  std::vector<BitSet> sample(const SamplerRequest&) const override { throw std::runtime_error("sampler boom"); }
};

// Wraps a sampler and keeps every request and raw answer.
class RecordingSampler final : public Sampler {
 public:
  explicit RecordingSampler(const Sampler& inner) : inner_(inner) {}
  std::string name() const override { return inner_.name(); }
  std::vector<BitSet> sample(const SamplerRequest& req) const override {
    auto out = inner_.sample(req);
    calls.push_back({*req.problem, out});
    return out;
  }
  struct Call {
    PricingProblem problem;
    std::vector<BitSet> raw;
  };
  mutable std::vector<Call> calls;

 private:
  const Sampler& inner_;
};

double full_lp_optimum(const FleetInstance& inst) {
  ColumnPool pool;
  for (const auto& c : oracle::enumerate_columns(inst))
    pool.add(make_column(inst, c.class_id, BitSet::from_indices(inst.tour_count(), c.tours)));
  return solve_rmp_lp(inst, pool).objective;
}

}  // namespace

TEST(QuantumSampler, P3ModalSampleIsMwis) {
  const WeightedGraph g(3, {{0, 1}, {1, 2}}, {3.0, 1.0, 5.0});
  QuantumParams params;
  params.mode = PulseMode::Qsol;
  const auto run = quantum_sample(g, 400, params, 11);
  EXPECT_TRUE(run.emulated);
  EXPECT_EQ(run.active_nodes, 3);
  std::map<std::string, int> freq;
  for (const auto& s : maximalize(g, run.samples)) ++freq[s.to_string()];
  const auto modal = std::max_element(freq.begin(), freq.end(),
                                      [](const auto& a, const auto& b) { return a.second < b.second; });
  EXPECT_EQ(modal->first, exact_mwis(g).to_string());
  EXPECT_GE(run.omega_max, kOmegaMaxLow - 1e-12);
  EXPECT_LE(run.omega_max, kOmegaMaxHigh + 1e-12);
}

TEST(QuantumSampler, NonPositiveGraphSkipsEmulation) {
  const WeightedGraph g(3, {{0, 1}}, {-1.0, 0.0, -2.0});
  const auto run = quantum_sample(g, 5, {}, 1);
  EXPECT_FALSE(run.emulated);
  EXPECT_EQ(run.active_nodes, 0);
  PricingProblem p;
  p.graph = g;
  p.index_map = {0, 1, 2};
  const auto cols = quantum_sample_columns(p, 5, {}, 1);
  ASSERT_EQ(cols.size(), 5u);
  for (const auto& c : cols) EXPECT_TRUE(c.none());
}

TEST(QuantumSampler, PrunedNodesReadZeroAndDeterministic) {
  const WeightedGraph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {2.0, -1.0, 4.0, 0.0, 3.0});
  QuantumParams params;
  params.spam = SpamParams{};
  const auto a = quantum_sample(g, 200, params, 5);
  const auto b = quantum_sample(g, 200, params, 5);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.active_nodes, 3);
  for (const auto& s : a.samples) {
    EXPECT_FALSE(s.test(1));
    EXPECT_FALSE(s.test(3));
  }
}

TEST(QuantumSampler, SizeCapAndModeNames) {
  WeightedGraph big(15, 1.0);
  EXPECT_THROW(quantum_sample(big, 1, {}, 1), LimitError);
  EXPECT_EQ(pulse_mode_from_string("qsol"), PulseMode::Qsol);
  EXPECT_EQ(to_string(PulseMode::Qsamp), "qsamp");
  EXPECT_THROW(pulse_mode_from_string("qx"), ConfigError);
}

TEST(Samplers, FactoryNames) {
  for (const auto& name : sampler_names()) EXPECT_EQ(make_sampler(name)->name(), name);
  EXPECT_EQ(sampler_names().size(), 7u);
  EXPECT_THROW(make_sampler("no-such-sampler"), ConfigError);
}

TEST(ColumnGeneration, ExactSamplerReachesBruteForceOptimum) {
  const auto one = make_sampler("one-ilp");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = tiny(seed);
    CgConfig cfg;
    cfg.seed = seed;
    // Run to exhaustion of improving columns; a flat LP objective alone is
    // not a certificate of optimality on degenerate masters.
    cfg.stall_patience = cfg.max_iterations;
    const auto trace = run_column_generation(inst, *one, cfg);
    ASSERT_EQ(trace.termination, Termination::NoColumns) << trace.error;
    EXPECT_NEAR(trace.final_objective, oracle::fleet_optimum(inst), 1e-6) << "seed " << seed;
  }
}

TEST(ColumnGeneration, StallRuleStopsOnFlatObjective) {
  const auto one = make_sampler("one-ilp");
  const auto inst = tiny(2);
  const auto trace = run_column_generation(inst, *one, {});
  ASSERT_EQ(trace.termination, Termination::Stalled);
  const auto n = trace.iterations.size();
  ASSERT_GE(n, 2u);
  EXPECT_NEAR(trace.iterations[n - 1].lp_objective, trace.iterations[n - 2].lp_objective, 1e-6);
  EXPECT_GT(trace.iterations[n - 2].columns_accepted, 0);
  // The stopping row carries no pricing work.
  EXPECT_EQ(trace.iterations[n - 1].columns_generated, 0);

  CgConfig patient;
  patient.stall_patience = 3;
  const auto longer = run_column_generation(inst, *one, patient);
  EXPECT_GE(longer.iteration_count(), trace.iteration_count());
}

TEST(ColumnGeneration, NoColumnsMeansFullLpOptimum) {
  const auto one = make_sampler("one-ilp");
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const auto inst = tiny(seed, 2, 5);
    CgConfig cfg;
    cfg.stall_patience = 1000;
    cfg.max_iterations = 200;
    const auto trace = run_column_generation(inst, *one, cfg);
    ASSERT_EQ(trace.termination, Termination::NoColumns);
    EXPECT_NEAR(trace.final_lp_objective, full_lp_optimum(inst), 1e-6);
  }
}

TEST(ColumnGeneration, NullSamplerStopsImmediately) {
  const auto inst = tiny(3);
  NullSampler none;
  const auto trace = run_column_generation(inst, none, {});
  EXPECT_EQ(trace.termination, Termination::NoColumns);
  EXPECT_EQ(trace.iteration_count(), 1);
  auto pool = initial_columns(inst);
  ensure_class_minimums(inst, pool);
  EXPECT_NEAR(trace.final_objective, solve_binary_rmp(inst, pool).objective, 1e-9);
  EXPECT_EQ(trace.pool_size, pool.size());
}

TEST(ColumnGeneration, TraceInvariantsAcrossSamplers) {
  const auto inst = tiny(21, 3, 6);
  for (const auto& name : {"one-ilp", "ilp-div", "greedy", "sa-solver", "sa-sampler"}) {
    const auto inner = make_sampler(name);
    RecordingSampler rec(*inner);
    CgConfig cfg;
    cfg.seed = 4;
    cfg.enable_make_diff = std::string(name) == "greedy";
    const auto trace = run_column_generation(inst, rec, cfg);
    ASSERT_NE(trace.termination, Termination::Failed) << trace.error;
    auto initial = initial_columns(inst);
    ensure_class_minimums(inst, initial);
    EXPECT_EQ(trace.pool_size, initial.size() + static_cast<std::size_t>(trace.total_accepted));
    for (std::size_t i = 1; i < trace.iterations.size(); ++i)
      EXPECT_LE(trace.iterations[i].lp_objective, trace.iterations[i - 1].lp_objective + 1e-6);
    for (const auto& r : trace.iterations) {
      EXPECT_LE(r.columns_accepted, r.columns_generated);
      EXPECT_NEAR(r.lp_objective, r.dual_objective, 1e-6 * std::max(1.0, std::abs(r.lp_objective)));
      if (!std::isnan(r.alpha_psp)) {
        EXPECT_GE(r.alpha_psp, 0.0);
        EXPECT_LE(r.alpha_psp, 1.0);
      }
    }
    EXPECT_GE(trace.final_objective, trace.final_lp_objective - 1e-6);

    // Recount the improving samples seen by the driver: every accepted column
    // had σ above the threshold, i.e. a strictly negative reduced cost.
    int improving = 0;
    for (const auto& call : rec.calls) {
      auto sets = maximalize(call.problem.graph, call.raw);
      if (cfg.enable_make_diff) sets = make_diff(call.problem.graph, sets).sets;
      for (const auto& s : sets)
        if (set_weight(call.problem.graph, s) > call.problem.threshold + 1e-9) ++improving;
    }
    EXPECT_EQ(improving, trace.total_generated) << name;
  }
}

TEST(ColumnGeneration, DeterministicGivenSeed) {
  const auto inst = tiny(8);
  const auto s = make_sampler("sa-sampler");
  CgConfig cfg;
  cfg.seed = 77;
  const auto a = run_column_generation(inst, *s, cfg);
  const auto b = run_column_generation(inst, *s, cfg);
  ASSERT_EQ(a.iteration_count(), b.iteration_count());
  for (int i = 0; i < a.iteration_count(); ++i) {
    EXPECT_EQ(a.iterations[i].duals_digest, b.iterations[i].duals_digest);
    EXPECT_EQ(a.iterations[i].columns_accepted, b.iterations[i].columns_accepted);
  }
  EXPECT_EQ(a.final_objective, b.final_objective);
}

TEST(ColumnGeneration, IterationCapAndFailures) {
  const auto inst = tiny(9);
  const auto s = make_sampler("ilp-div");
  CgConfig cfg;
  cfg.max_iterations = 1;
  const auto capped = run_column_generation(inst, *s, cfg);
  EXPECT_EQ(capped.termination, Termination::MaxIterations);
  EXPECT_EQ(capped.iteration_count(), 1);
  EXPECT_GT(capped.final_objective, 0.0);

  ThrowingSampler boom;
  const auto failed = run_column_generation(inst, boom, {});
  EXPECT_EQ(failed.termination, Termination::Failed);
  EXPECT_NE(failed.error.find("sampler boom"), std::string::npos);
  EXPECT_TRUE(failed.failure != nullptr);
  EXPECT_EQ(to_string(Termination::Stalled), "stalled");

  CgConfig bad;
  bad.m = 0;
  EXPECT_THROW(run_column_generation(inst, *s, bad), ConfigError);
}
