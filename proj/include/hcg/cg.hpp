#pragma once

#include <cstdint>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hcg/fleet.hpp"
#include "hcg/master.hpp"
#include "hcg/pricing.hpp"
#include "hcg/quantum_sampler.hpp"
#include "hcg/samplers.hpp"

namespace hcg {

// Names accepted by make_sampler.
const std::vector<std::string>& sampler_names();

struct SamplerOptions {
  QuantumParams quantum;
  AnnealingSchedule sa_solver{0.01, 10.0, 1000};
  AnnealingSchedule sa_sampler{0.01, 1.0, 1000};
};

// one-ilp, ilp-div, greedy, sa-solver, sa-sampler, qsol, qsamp.
std::unique_ptr<Sampler> make_sampler(const std::string& name, const SamplerOptions& opts = {});

struct CgConfig {
  int m = 5;
  int max_iterations = 50;
  int stall_patience = 1;
  double stall_tolerance = 1e-6;  // relative
  bool enable_make_diff = false;
  bool record_metrics = true;
  std::uint64_t seed = 0;
  MasterOptions master;

  void validate() const;
};

enum class Termination { NoColumns, Stalled, MaxIterations, Failed };
std::string to_string(Termination t);

struct IterationRecord {
  int iteration = 0;
  double lp_objective = 0.0;
  double dual_objective = 0.0;
  std::uint64_t duals_digest = 0;
  int columns_generated = 0;  // post-processed samples passing the reduced-cost test
  int columns_accepted = 0;   // of those, new to the pool
  double alpha_psp = 0.0;     // NaN when no class has a positive exact optimum
  double diversity_samples = 0.0;  // NaN when undefined for every class
  double diversity_pool = 0.0;
  std::size_t pool_size = 0;
};

struct CgTrace {
  std::vector<IterationRecord> iterations;
  Termination termination = Termination::Failed;
  std::string error;
  std::exception_ptr failure;  // rethrow to propagate
  double final_lp_objective = 0.0;
  double final_objective = 0.0;
  bool final_proven_optimal = false;
  std::vector<Column> final_columns;
  std::size_t pool_size = 0;
  int total_generated = 0;
  int total_accepted = 0;

  int iteration_count() const { return static_cast<int>(iterations.size()); }
};

// RMP solve → pricing → sampling → post-processing → acceptance → pool update,
// then a binary solve over the final pool. Errors are caught and reported in
// the trace with termination Failed.
CgTrace run_column_generation(const FleetInstance& inst, const Sampler& sampler, const CgConfig& cfg);

}  // namespace hcg
