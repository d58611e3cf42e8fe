#include "hcg/cg.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "hcg/errors.hpp"
#include "hcg/metrics.hpp"
#include "hcg/postprocess.hpp"
#include "hcg/rng.hpp"

namespace hcg {

const std::vector<std::string>& sampler_names() {
  static const std::vector<std::string> names{"one-ilp", "ilp-div", "greedy", "sa-solver",
                                              "sa-sampler", "qsol", "qsamp"};
  return names;
}

std::unique_ptr<Sampler> make_sampler(const std::string& name, const SamplerOptions& opts) {
  if (name == "one-ilp") return std::make_unique<OneIlpSampler>();
  if (name == "ilp-div") return std::make_unique<IlpDivSampler>();
  if (name == "greedy") return std::make_unique<GreedySampler>();
  if (name == "sa-solver") return std::make_unique<AnnealingSampler>(name, opts.sa_solver);
  if (name == "sa-sampler") return std::make_unique<AnnealingSampler>(name, opts.sa_sampler);
  if (name == "qsol" || name == "qsamp") {
    QuantumParams q = opts.quantum;
    q.mode = pulse_mode_from_string(name);
    return std::make_unique<QuantumSampler>(q);
  }
  throw ConfigError("unknown sampler: " + name);
}

void CgConfig::validate() const {
  if (m < 1) throw ConfigError("M must be at least 1");
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  if (stall_patience < 1) throw ConfigError("stall_patience must be at least 1");
  if (!(stall_tolerance >= 0.0)) throw ConfigError("stall_tolerance must be non-negative");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::NoColumns: return "no columns";
    case Termination::Stalled: return "stalled";
    case Termination::MaxIterations: return "max iterations";
    case Termination::Failed: return "failed";
  }
  return "unknown";
}

namespace {

std::uint64_t digest(const std::vector<double>& v, std::uint64_t h) {
  for (double x : v) {
    // Round so that digests ignore last-bit noise.
    const double r = std::round(x * 1e9) / 1e9;
    std::uint64_t bits = 0;
    std::memcpy(&bits, &r, sizeof bits);
    h = mix_seed(h, bits);
  }
  return h;
}

std::uint64_t duals_digest(const LPSolution& lp) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  h = digest(lp.tour_duals, h);
  h = digest(lp.class_min_duals, h);
  return digest(lp.class_max_duals, h);
}

double mean_or_nan(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

CgTrace run_column_generation(const FleetInstance& inst, const Sampler& sampler, const CgConfig& cfg) {
  cfg.validate();
  inst.validate();
  CgTrace trace;
  ColumnPool pool = initial_columns(inst);
  ensure_class_minimums(inst, pool);

  try {
    double previous = std::numeric_limits<double>::quiet_NaN();
    int stall = 0;
    bool stopped = false;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
      const LPSolution lp = solve_rmp_lp(inst, pool, cfg.master);
      IterationRecord rec;
      rec.iteration = it;
      rec.lp_objective = lp.objective;
      rec.dual_objective = lp.dual_objective;
      rec.duals_digest = duals_digest(lp);

      // Columns were added in the previous iteration, otherwise we would have stopped.
      if (!std::isnan(previous) &&
          std::abs(lp.objective - previous) <= cfg.stall_tolerance * std::max(1.0, std::abs(previous))) {
        if (++stall >= cfg.stall_patience) {
          rec.pool_size = pool.size();
          rec.alpha_psp = std::numeric_limits<double>::quiet_NaN();
          rec.diversity_samples = std::numeric_limits<double>::quiet_NaN();
          rec.diversity_pool = pool.size() >= 2 ? pool_diversity(pool, inst.class_count())
                                                : std::numeric_limits<double>::quiet_NaN();
          trace.iterations.push_back(rec);
          trace.termination = Termination::Stalled;
          stopped = true;
          break;
        }
      } else {
        stall = 0;
      }
      previous = lp.objective;

      const auto problems = build_pricing_problems(inst, lp);
      std::vector<double> quality;
      std::vector<double> div;
      std::vector<Column> fresh;
      for (const auto& p : problems) {
        SamplerRequest req{&p, cfg.m, mix_seed(cfg.seed, static_cast<std::uint64_t>(it),
                                               static_cast<std::uint64_t>(p.class_id))};
        std::vector<BitSet> samples = maximalize(p.graph, sampler.sample(req));
        if (cfg.enable_make_diff) samples = make_diff(p.graph, samples).sets;

        if (cfg.record_metrics) {
          const BitSet best = exact_mwis(p.graph);
          const double exact = set_weight(p.graph, best);
          if (exact > 0.0) {
            double top = -std::numeric_limits<double>::infinity();
            for (const auto& s : samples) top = std::max(top, set_weight(p.graph, s));
            quality.push_back(psp_quality(samples.empty() ? 0.0 : top, exact));
          }
          std::size_t filled = 0;
          for (const auto& s : samples) filled += s.count();
          if (samples.size() >= 2 && filled > 0) div.push_back(diversity(samples));
        }

        for (const auto& s : samples) {
          if (!accept_column(p, s).accepted) continue;
          ++rec.columns_generated;
          Column c = make_column(inst, p.class_id, to_global_tours(p, s, inst.tour_count()));
          if (pool.contains(c)) continue;
          if (std::find(fresh.begin(), fresh.end(), c) != fresh.end()) continue;
          fresh.push_back(std::move(c));
        }
      }
      for (auto& c : fresh) {
        if (pool.add(std::move(c))) ++rec.columns_accepted;
      }
      rec.alpha_psp = mean_or_nan(quality);
      rec.diversity_samples = mean_or_nan(div);
      rec.diversity_pool =
          pool.size() >= 2 ? pool_diversity(pool, inst.class_count()) : std::numeric_limits<double>::quiet_NaN();
      rec.pool_size = pool.size();
      trace.total_generated += rec.columns_generated;
      trace.total_accepted += rec.columns_accepted;
      trace.iterations.push_back(rec);

      if (rec.columns_accepted == 0) {
        trace.termination = Termination::NoColumns;
        stopped = true;
        break;
      }
    }
    if (!stopped) trace.termination = Termination::MaxIterations;

    trace.final_lp_objective = solve_rmp_lp(inst, pool, cfg.master).objective;
    const BinaryRmpResult bin = solve_binary_rmp(inst, pool, cfg.master);
    trace.final_objective = bin.objective;
    trace.final_proven_optimal = bin.proven_optimal;
    for (int s : bin.selected) trace.final_columns.push_back(pool[static_cast<std::size_t>(s)]);
  } catch (const std::exception& e) {
    trace.termination = Termination::Failed;
    trace.error = e.what();
    trace.failure = std::current_exception();
  }
  trace.pool_size = pool.size();
  return trace;
}

}  // namespace hcg
