#include "hcg/rydberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hcg/errors.hpp"
#include "hcg/rng.hpp"

namespace hcg {

void Register::validate() const {
  if (positions.size() > kMaxStateVectorAtoms) throw LimitError("register exceeds the state-vector atom cap");
  if (!(c6 > 0.0)) throw ConfigError("register c6 must be positive");
  for (std::size_t i = 0; i < positions.size(); ++i)
    for (std::size_t j = i + 1; j < positions.size(); ++j)
      if (distance(positions[i], positions[j]) < min_distance - 1e-9)
        throw ConfigError("register atoms closer than the minimum distance");
}

Waveform::Waveform(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) throw ConfigError("waveform needs at least one knot");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (knots_[i].first < knots_[i - 1].first) throw ConfigError("waveform knots must be time-ordered");
}

double Waveform::operator()(double t) const {
  if (knots_.empty()) return 0.0;
  if (t <= knots_.front().first) return knots_.front().second;
  if (t >= knots_.back().first) return knots_.back().second;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double x, const std::pair<double, double>& k) { return x < k.first; });
  const auto& [t1, v1] = *it;
  const auto& [t0, v0] = *(it - 1);
  if (t1 == t0) return v1;
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

void PulseSchedule::validate(std::size_t atoms) const {
  if (!(duration > 0.0)) throw ConfigError("pulse duration must be positive");
  if (dmm_weights.size() != atoms) throw ConfigError("DMM weight count differs from atom count");
  for (double e : dmm_weights)
    if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("DMM weights must lie in [0, 1]");
  for (const auto& [t, v] : omega.knots()) {
    (void)t;
    if (v < 0.0) throw ConfigError("Rabi frequency must be non-negative");
  }
}

namespace {

PulseSchedule annealing_schedule(double duration, double omega_max, const std::vector<double>& weights,
                                 bool hold_drive) {
  if (!(duration > 0.0)) throw ConfigError("pulse duration must be positive");
  if (!(omega_max > 0.0)) throw ConfigError("omega_max must be positive");
  PulseSchedule s;
  s.duration = duration;
  const double t1 = 0.15 * duration;
  const double t2 = 0.85 * duration;
  s.omega = Waveform({{0.0, 0.0}, {t1, omega_max}, {t2, omega_max}, {duration, hold_drive ? omega_max : 0.0}});
  s.delta_global = Waveform({{0.0, -2.0 * omega_max}, {t1, -2.0 * omega_max}, {t2, 2.0 * omega_max}, {duration, 2.0 * omega_max}});
  s.delta_dmm = Waveform({{0.0, 0.0}, {t1, 0.0}, {t2, 2.0 * omega_max}, {duration, 2.0 * omega_max}});
  s.dmm_weights.reserve(weights.size());
  for (double w : weights) {
    if (!(w > 0.0 && w <= 1.0)) throw ConfigError("normalised weights must lie in (0, 1]");
    s.dmm_weights.push_back(1.0 - w);
  }
  return s;
}

}  // namespace

PulseSchedule qsol_schedule(double duration, double omega_max, const std::vector<double>& weights) {
  return annealing_schedule(duration, omega_max, weights, false);
}

PulseSchedule qsamp_schedule(double duration, double omega_max, const std::vector<double>& weights) {
  return annealing_schedule(duration, omega_max, weights, true);
}

double QuantumState::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> QuantumState::probabilities() const {
  std::vector<double> p(amplitudes.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amplitudes[i]);
  return p;
}

QuantumState QuantumState::basis(std::size_t atoms, std::uint64_t index) {
  if (atoms > kMaxStateVectorAtoms) throw LimitError("state exceeds the state-vector atom cap");
  QuantumState s;
  s.atoms = atoms;
  s.amplitudes.assign(std::size_t{1} << atoms, Amplitude{});
  if (index >= s.amplitudes.size()) throw ConfigError("basis index out of range");
  s.amplitudes[index] = 1.0;
  return s;
}

namespace {

// out = H·in for H = diag(d − shift) + (Ω/2)·Σ_i σ^x_i.
void apply_h(const std::vector<Amplitude>& in, std::vector<Amplitude>& out, std::size_t atoms,
             const std::vector<double>& d, double shift, double half_omega) {
  const std::size_t dim = in.size();
  for (std::size_t b = 0; b < dim; ++b) out[b] = (d[b] - shift) * in[b];
  if (half_omega == 0.0) return;
  for (std::size_t i = 0; i < atoms; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t b = 0; b < dim; ++b) out[b] += half_omega * in[b ^ bit];
  }
}

double max_abs(const std::vector<Amplitude>& v) {
  double m = 0.0;
  for (const auto& a : v) m = std::max(m, std::abs(a.real()) + std::abs(a.imag()));
  return m;
}

}  // namespace

void apply_step(std::vector<Amplitude>& psi, std::size_t atoms, const std::vector<double>& diagonal,
                double omega, double dt) {
  const auto [lo, hi] = std::minmax_element(diagonal.begin(), diagonal.end());
  const double shift = 0.5 * (*lo + *hi);
  const double half_omega = 0.5 * omega;
  // ‖H − shift‖ is bounded by the diagonal half-spread plus n·|Ω|/2.
  const double bound = 0.5 * (*hi - *lo) + static_cast<double>(atoms) * std::abs(half_omega);
  const int substeps = std::max(1, static_cast<int>(std::ceil(bound * dt / 3.0)));
  const double h = dt / substeps;

  std::vector<Amplitude> term(psi.size());
  std::vector<Amplitude> next(psi.size());
  const Amplitude minus_i_h(0.0, -h);
  for (int s = 0; s < substeps; ++s) {
    term = psi;
    const double scale = std::max(max_abs(psi), 1e-300);
    for (int k = 1; k <= 80; ++k) {
      apply_h(term, next, atoms, diagonal, shift, half_omega);
      const Amplitude factor = minus_i_h / static_cast<double>(k);
      for (std::size_t b = 0; b < psi.size(); ++b) {
        term[b] = factor * next[b];
        psi[b] += term[b];
      }
      if (max_abs(term) < 1e-16 * scale) break;
    }
  }
  const Amplitude phase = std::exp(Amplitude(0.0, -shift * dt));
  for (auto& a : psi) a *= phase;
}

EvolveResult evolve(const Register& reg, const PulseSchedule& sched, double dt) {
  reg.validate();
  const std::size_t n = reg.size();
  sched.validate(n);
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");

  EvolveResult out;
  out.dt_too_coarse = dt > kMaxDt;
  out.state = QuantumState::basis(n, 0);
  const std::size_t dim = std::size_t{1} << n;

  std::vector<double> interaction(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = reg.c6 / std::pow(distance(reg.positions[i], reg.positions[j]), 6.0);
      const std::size_t mask = (std::size_t{1} << i) | (std::size_t{1} << j);
      for (std::size_t b = 0; b < dim; ++b)
        if ((b & mask) == mask) interaction[b] += v;
    }

  const int steps = std::max(1, static_cast<int>(std::ceil(sched.duration / dt - 1e-9)));
  const double h = sched.duration / steps;
  std::vector<double> diag(dim);
  std::vector<double> det(n);
  for (int s = 0; s < steps; ++s) {
    const double t = (s + 0.5) * h;
    for (std::size_t i = 0; i < n; ++i) det[i] = sched.detuning(i, t);
    for (std::size_t b = 0; b < dim; ++b) {
      double d = interaction[b];
      for (std::size_t i = 0; i < n; ++i)
        if ((b >> i) & 1U) d -= det[i];
      diag[b] = d;
    }
    apply_step(out.state.amplitudes, n, diag, sched.omega(t), h);
  }
  out.steps = steps;
  out.norm_drift = std::abs(out.state.norm() - 1.0);
  return out;
}

void SpamParams::validate() const {
  for (double p : {eta, eps, eps_prime})
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("SPAM probabilities must lie in [0, 1]");
}

std::vector<BitSet> sample_bitstrings(const QuantumState& state, int shots, std::uint64_t seed,
                                      const std::optional<SpamParams>& spam) {
  if (shots < 1) throw ConfigError("shots must be at least 1");
  if (spam) spam->validate();
  const auto p = state.probabilities();
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t b = 0; b < p.size(); ++b) {
    acc += p[b];
    cdf[b] = acc;
  }
  if (!(acc > 0.0)) throw ConfigError("state has zero norm");

  Rng rng(seed);
  std::vector<BitSet> out;
  out.reserve(static_cast<std::size_t>(shots));
  for (int s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t b = static_cast<std::size_t>(it - cdf.begin());
    // Guard against zero-probability tail entries reached through rounding.
    while (b > 0 && (b >= p.size() || p[b] == 0.0)) --b;
    BitSet bits(state.atoms);
    for (std::size_t i = 0; i < state.atoms; ++i) {
      bool v = (b >> i) & 1U;
      if (spam) {
        const bool lost = rng.bernoulli(spam->eta);
        const double flip = rng.uniform();
        if (lost) v = false;
        else if (!v && flip < spam->eps) v = true;
        else if (v && flip < spam->eps_prime) v = false;
      }
      bits.set(i, v);
    }
    out.push_back(std::move(bits));
  }
  return out;
}

}  // namespace hcg
