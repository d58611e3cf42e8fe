#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hcg/embedder.hpp"
#include "hcg/graph.hpp"

namespace hcg {

inline constexpr std::size_t kMaxStateVectorAtoms = 14;

struct Register {
  std::vector<Point> positions;
  double c6 = kDefaultC6;
  double min_distance = kMinAtomDistance;

  std::size_t size() const { return positions.size(); }
  void validate() const;
};

// Piecewise-linear waveform through (t, value) knots; constant outside.
class Waveform {
 public:
  Waveform() = default;
  explicit Waveform(std::vector<std::pair<double, double>> knots);
  static Waveform constant(double value) { return Waveform({{0.0, value}}); }

  double operator()(double t) const;
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

// Per-atom detuning δ(t) − ε_i·δ_DMM(t).
struct PulseSchedule {
  double duration = 0.0;
  Waveform omega;
  Waveform delta_global;
  std::vector<double> dmm_weights;
  Waveform delta_dmm;

  double detuning(std::size_t atom, double t) const {
    return delta_global(t) - dmm_weights[atom] * delta_dmm(t);
  }
  void validate(std::size_t atoms) const;
};

// Ramp Ω to Ω_max over [0, 0.15T] at detuning −2Ω_max, sweep each atom to
// +2ω̂_iΩ_max by 0.85T, then ramp Ω back to 0.
PulseSchedule qsol_schedule(double duration, double omega_max, const std::vector<double>& weights);
// As QSOL but Ω is held at Ω_max until T.
PulseSchedule qsamp_schedule(double duration, double omega_max, const std::vector<double>& weights);

using Amplitude = std::complex<double>;

// Basis index b has atom i in |r⟩ iff bit i of b is set.
struct QuantumState {
  std::size_t atoms = 0;
  std::vector<Amplitude> amplitudes;

  double norm() const;
  std::vector<double> probabilities() const;
  static QuantumState basis(std::size_t atoms, std::uint64_t index);
};

inline constexpr double kDefaultDt = 0.002;     // μs
inline constexpr double kMaxDt = 0.01;          // μs
inline constexpr double kDefaultDuration = 4.0;  // μs

struct EvolveResult {
  QuantumState state;
  int steps = 0;
  bool dt_too_coarse = false;
  double norm_drift = 0.0;
};

// Piecewise-constant propagation from |0…0⟩: each step applies
// exp(−i·H(t_mid)·dt) with H = Σ_i [Ω/2 σ^x_i − δ_i n_i] + Σ_{i<j} C6/r_ij^6 n_i n_j.
EvolveResult evolve(const Register& reg, const PulseSchedule& sched, double dt = kDefaultDt);

// ψ ← exp(−i·H·dt)ψ for the time-independent H given by the per-basis diagonal
// and uniform Rabi frequency. Exposed for testing.
void apply_step(std::vector<Amplitude>& psi, std::size_t atoms, const std::vector<double>& diagonal,
                double omega, double dt);

struct SpamParams {
  double eta = 0.005;
  double eps = 0.03;
  double eps_prime = 0.08;
  void validate() const;
};

std::vector<BitSet> sample_bitstrings(const QuantumState& state, int shots, std::uint64_t seed,
                                      const std::optional<SpamParams>& spam = std::nullopt);

}  // namespace hcg
