#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hcg/embedder.hpp"
#include "hcg/errors.hpp"
#include "hcg/rng.hpp"
#include "hcg/rydberg.hpp"
#include "oracles.hpp"

using namespace hcg;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PulseSchedule constant_drive(double duration, double omega, double delta, std::size_t atoms) {
  PulseSchedule s;
  s.duration = duration;
  s.omega = Waveform::constant(omega);
  s.delta_global = Waveform::constant(delta);
  s.dmm_weights.assign(atoms, 0.0);
  s.delta_dmm = Waveform::constant(0.0);
  return s;
}

Register pair_register(double separation) {
  Register r;
  r.positions = {{0.0, 0.0}, {separation, 0.0}};
  return r;
}

Register lattice_register(std::size_t n, double spacing) {
  Register r;
  r.positions = triangular_layout(n, spacing).sites;
  return r;
}

}  // namespace

TEST(Schedules, QsolShape) {
  const double om = kTwoPi * 2.0;
  const auto s = qsol_schedule(4.0, om, {1.0, 0.5, 0.2});
  EXPECT_DOUBLE_EQ(s.omega(0.0), 0.0);
  EXPECT_NEAR(s.omega(0.6), om, 1e-12);
  EXPECT_NEAR(s.omega(2.0), om, 1e-12);
  EXPECT_NEAR(s.omega(3.4), om, 1e-12);
  EXPECT_NEAR(s.omega(4.0), 0.0, 1e-12);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(s.detuning(i, 0.0), -2.0 * om, 1e-12);
  EXPECT_NEAR(s.dmm_weights[0], 0.0, 1e-12);
  EXPECT_NEAR(s.detuning(0, 4.0), 2.0 * om, 1e-9);
  EXPECT_NEAR(s.detuning(1, 4.0), om, 1e-9);
  EXPECT_NEAR(s.detuning(2, 3.4), 2.0 * 0.2 * om, 1e-9);
  // The sweep is monotone for every atom.
  for (std::size_t i = 0; i < 3; ++i)
    for (double t = 0.0; t < 4.0; t += 0.01) EXPECT_LE(s.detuning(i, t), s.detuning(i, t + 0.01) + 1e-12);
  EXPECT_THROW(qsol_schedule(4.0, om, {0.0}), ConfigError);
  EXPECT_THROW(qsol_schedule(4.0, om, {1.5}), ConfigError);
  EXPECT_THROW(qsol_schedule(0.0, om, {1.0}), ConfigError);
  EXPECT_THROW(qsol_schedule(4.0, 0.0, {1.0}), ConfigError);
}

TEST(Schedules, QsampDiffersOnlyAfterSweep) {
  const double om = kTwoPi * 1.3;
  const std::vector<double> w{1.0, 0.7};
  const auto a = qsol_schedule(4.0, om, w);
  const auto b = qsamp_schedule(4.0, om, w);
  EXPECT_NEAR(b.omega(4.0), om, 1e-12);
  for (double t = 0.0; t <= 4.0 + 1e-12; t += 0.005) {
    for (std::size_t i = 0; i < 2; ++i) EXPECT_DOUBLE_EQ(a.detuning(i, t), b.detuning(i, t));
    if (t <= 3.4) {
      EXPECT_DOUBLE_EQ(a.omega(t), b.omega(t));
    } else if (t > 3.4 + 1e-9) {
      EXPECT_LT(a.omega(t), b.omega(t));
    }
  }
}

TEST(Waveforms, PiecewiseLinear) {
  const Waveform w({{0.0, 1.0}, {2.0, 3.0}, {4.0, -1.0}});
  EXPECT_DOUBLE_EQ(w(-1.0), 1.0);
  EXPECT_DOUBLE_EQ(w(1.0), 2.0);
  EXPECT_DOUBLE_EQ(w(3.0), 1.0);
  EXPECT_DOUBLE_EQ(w(9.0), -1.0);
  EXPECT_THROW(Waveform(std::vector<std::pair<double, double>>{}), ConfigError);
  EXPECT_THROW(Waveform({{1.0, 0.0}, {0.5, 0.0}}), ConfigError);
}

TEST(Evolve, RabiOscillation) {
  Register r;
  r.positions = {{0.0, 0.0}};
  const double om = kTwoPi * 1.0;
  for (double t : {0.1, 0.25, 0.5, 1.0, 1.7, 3.3, 4.0}) {
    const auto res = evolve(r, constant_drive(t, om, 0.0, 1));
    const double s = std::sin(om * t / 2.0);
    EXPECT_NEAR(res.state.probabilities()[1], s * s, 1e-4) << "t=" << t;
    EXPECT_LE(res.norm_drift, 1e-6);
  }
}

TEST(Evolve, DetunedRabiMatchesFormula) {
  Register r;
  r.positions = {{0.0, 0.0}};
  const double om = kTwoPi * 1.0, d = kTwoPi * 0.7, t = 1.3;
  const auto res = evolve(r, constant_drive(t, om, d, 1));
  const double gen = std::sqrt(om * om + d * d);
  const double s = std::sin(gen * t / 2.0);
  EXPECT_NEAR(res.state.probabilities()[1], om * om / (gen * gen) * s * s, 1e-6);
}

TEST(Evolve, NoDriveKeepsGroundState) {
  const auto reg = lattice_register(4, 5.0);
  const auto res = evolve(reg, constant_drive(2.0, 0.0, 0.0, 4));
  EXPECT_NEAR(res.state.probabilities()[0], 1.0, 1e-12);
}

TEST(Evolve, BlockadeSuppressesDoubleExcitation) {
  const double om = kOmegaMaxLow;
  const double rb = blockade_radius(om);
  const auto reg = pair_register(rb / 2.0);
  const auto sched = qsol_schedule(4.0, om, {1.0, 1.0});
  const auto res = evolve(reg, sched);
  const auto p = res.state.probabilities();
  EXPECT_LE(p[3], 0.02);
  const double v = kDefaultC6 / std::pow(rb / 2.0, 6.0);
  const auto ref = oracle::two_atom_rk4(
      v, [&](double t) { return sched.omega(t); }, [&](double t) { return sched.delta_global(t); }, 4.0, 1e-4);
  for (int b = 0; b < 4; ++b) EXPECT_NEAR(p[static_cast<std::size_t>(b)], ref[static_cast<std::size_t>(b)], 1e-4) << b;
}

TEST(Evolve, AgreesWithRk4AcrossRegimes) {
  Rng rng(13);
  for (int trial = 0; trial < 4; ++trial) {
    const double sep = rng.uniform(4.0, 12.0);
    const double om = kTwoPi * rng.uniform(0.5, 4.0);
    const auto sched = qsamp_schedule(1.5, om, {1.0, 1.0});
    const auto p = evolve(pair_register(sep), sched).state.probabilities();
    const auto ref = oracle::two_atom_rk4(
        kDefaultC6 / std::pow(sep, 6.0), [&](double t) { return sched.omega(t); },
        [&](double t) { return sched.delta_global(t); }, 1.5, 2e-5);
    for (int b = 0; b < 4; ++b) EXPECT_NEAR(p[static_cast<std::size_t>(b)], ref[static_cast<std::size_t>(b)], 1e-4);
  }
}

TEST(Evolve, NormAndStepConvergence) {
  Rng rng(5);
  for (int trial = 0; trial < 2; ++trial) {
    const std::size_t n = 6;
    const auto reg = lattice_register(n, 5.5);
    std::vector<double> w(n);
    for (auto& x : w) x = rng.uniform(0.1, 1.0);
    const auto sched = (trial == 0 ? qsol_schedule : qsamp_schedule)(4.0, kTwoPi * 1.5, w);
    const auto a = evolve(reg, sched, kDefaultDt);
    const auto b = evolve(reg, sched, kDefaultDt / 2.0);
    EXPECT_LE(a.norm_drift, 1e-6);
    EXPECT_LE(b.norm_drift, 1e-6);
    EXPECT_FALSE(a.dt_too_coarse);
    const auto pa = a.state.probabilities(), pb = b.state.probabilities();
    double worst = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i) worst = std::max(worst, std::abs(pa[i] - pb[i]));
    EXPECT_LE(worst, 1e-5);
  }
}

TEST(Evolve, BlockadeOnEmbeddedRegister) {
  Rng rng(8);
  const auto g = generate_erdos_renyi_connected(7, 0.35, rng.next());
  const auto layout = layout_for_graph(7);
  const auto emb = sa_embed(g, layout, {}, rng.next());
  const double om = std::clamp(omega_for_radius(emb.radius), kOmegaMaxLow, kOmegaMaxHigh);
  const double rb = blockade_radius(om);
  Register reg;
  reg.positions = emb.positions;
  std::vector<double> w(7);
  for (auto& x : w) x = rng.uniform(0.2, 1.0);
  const auto p = evolve(reg, qsol_schedule(4.0, om, w)).state.probabilities();
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j) {
      if (distance(reg.positions[i], reg.positions[j]) >= rb) continue;
      double both = 0.0;
      for (std::size_t b = 0; b < p.size(); ++b)
        if (((b >> i) & 1U) && ((b >> j) & 1U)) both += p[b];
      EXPECT_LE(both, 0.05) << i << "," << j;
    }
}

TEST(Evolve, ErrorsAndFlags) {
  Register big = lattice_register(15, 5.0);
  EXPECT_THROW(evolve(big, constant_drive(1.0, 1.0, 0.0, 15)), LimitError);
  EXPECT_THROW(evolve(pair_register(3.0), constant_drive(1.0, 1.0, 0.0, 2)), ConfigError);
  EXPECT_THROW(evolve(pair_register(5.0), constant_drive(1.0, 1.0, 0.0, 3)), ConfigError);
  EXPECT_THROW(evolve(pair_register(5.0), constant_drive(1.0, -1.0, 0.0, 2)), ConfigError);
  const auto coarse = evolve(pair_register(5.0), constant_drive(1.0, 1.0, 0.0, 2), 0.05);
  EXPECT_TRUE(coarse.dt_too_coarse);
  EXPECT_EQ(coarse.steps, 20);
}

TEST(Sampling, BasisStateIsDeterministic) {
  const auto s = QuantumState::basis(3, 0b101);
  const auto out = sample_bitstrings(s, 100, 1);
  ASSERT_EQ(out.size(), 100u);
  for (const auto& b : out) EXPECT_EQ(b.to_string(), "101");
}

TEST(Sampling, UniformSuperpositionFrequency) {
  QuantumState s;
  s.atoms = 1;
  s.amplitudes = {1.0 / std::sqrt(2.0), Amplitude(0.0, 1.0 / std::sqrt(2.0))};
  const auto out = sample_bitstrings(s, 100000, 42);
  int ones = 0;
  for (const auto& b : out) ones += b.test(0);
  const double f = ones / 1e5;
  EXPECT_GE(f, 0.497);
  EXPECT_LE(f, 0.503);
}

TEST(Sampling, SpamReadoutErrors) {
  const auto one = QuantumState::basis(1, 1);
  SpamParams spam{0.0, 0.0, 0.08};
  auto out = sample_bitstrings(one, 100000, 7, spam);
  int zeros = 0;
  for (const auto& b : out) zeros += !b.test(0);
  EXPECT_NEAR(zeros / 1e5, 0.08, 0.005);

  const auto ground = QuantumState::basis(1, 0);
  out = sample_bitstrings(ground, 100000, 8, SpamParams{0.0, 0.03, 0.0});
  int ones = 0;
  for (const auto& b : out) ones += b.test(0);
  EXPECT_NEAR(ones / 1e5, 0.03, 0.003);

  // A lost atom always reads 0.
  out = sample_bitstrings(one, 20000, 9, SpamParams{1.0, 0.5, 0.0});
  for (const auto& b : out) EXPECT_FALSE(b.test(0));

  EXPECT_THROW(sample_bitstrings(one, 10, 1, SpamParams{-0.1, 0.0, 0.0}), ConfigError);
  EXPECT_THROW(sample_bitstrings(one, 0, 1), ConfigError);
}

TEST(Sampling, ReproducibleGivenSeed) {
  const auto reg = lattice_register(4, 5.0);
  const auto st = evolve(reg, qsamp_schedule(2.0, kTwoPi, {1.0, 0.5, 0.5, 1.0})).state;
  EXPECT_EQ(sample_bitstrings(st, 500, 3), sample_bitstrings(st, 500, 3));
  EXPECT_EQ(sample_bitstrings(st, 500, 3, SpamParams{}), sample_bitstrings(st, 500, 3, SpamParams{}));
  EXPECT_NE(sample_bitstrings(st, 500, 3), sample_bitstrings(st, 500, 4));
}
