// Command-line front end: instance generation, column generation runs,
// benchmarks, MILP export and report aggregation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hcg/benchmark.hpp"
#include "hcg/cg.hpp"
#include "hcg/errors.hpp"
#include "hcg/fleet.hpp"
#include "hcg/io.hpp"
#include "hcg/milp_export.hpp"
#include "hcg/report.hpp"
#include "hcg/rng.hpp"

namespace fs = std::filesystem;
using namespace hcg;

namespace {

constexpr const char* kWorkersEnv = "HCG_WORKERS";

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  return f;
}

bool on_off(const std::string& v) { return v == "on"; }

int workers_from_env() {
  const char* v = std::getenv(kWorkersEnv);
  if (v == nullptr || *v == '\0') return 1;
  try {
    const int n = std::stoi(v);
    if (n < 1) throw ConfigError("");
    return n;
  } catch (const std::exception&) {
    throw ConfigError(std::string(kWorkersEnv) + " must be a positive integer");
  }
}

struct InstanceOpts {
  int classes = 8;
  int tours_per_class = 10;
  double p = 0.3;
  double mean_classes = 2.0;
  int n_min = 1;
  int n_max = 0;

  void add(CLI::App* app) {
    app->add_option("--classes", classes, "number of vehicle classes |V|")->check(CLI::PositiveNumber);
    app->add_option("--tours-per-class", tours_per_class, "tours per class |K_v|")->check(CLI::PositiveNumber);
    app->add_option("--p", p, "conflict edge probability")->check(CLI::Range(0.0, 1.0));
    app->add_option("--mean-classes", mean_classes, "mean classes per tour")->check(CLI::PositiveNumber);
    app->add_option("--n-min", n_min, "minimum vehicles per class")->check(CLI::NonNegativeNumber);
    app->add_option("--n-max", n_max, "maximum vehicles per class (0: tours per class)")
        ->check(CLI::NonNegativeNumber);
  }

  InstanceParams params() const {
    InstanceParams ip;
    ip.classes = classes;
    ip.tours_per_class = tours_per_class;
    ip.edge_probability = p;
    ip.mean_classes_per_tour = mean_classes;
    ip.n_min = n_min;
    if (n_max > 0) ip.n_max = n_max;
    return ip;
  }
};

struct CgOpts {
  int m = 5;
  int max_iterations = 50;
  int stall_patience = 1;
  std::string make_diff = "off";
  std::string spam = "off";
  double dt = kDefaultDt;
  double duration = kDefaultDuration;
  bool no_metrics = false;

  void add(CLI::App* app) {
    app->add_option("--M", m, "samples per pricing problem")->check(CLI::PositiveNumber);
    app->add_option("--max-iterations", max_iterations)->check(CLI::PositiveNumber);
    app->add_option("--stall-patience", stall_patience)->check(CLI::PositiveNumber);
    app->add_option("--make-diff", make_diff)->check(CLI::IsMember({"on", "off"}));
    app->add_option("--spam", spam, "SPAM noise for quantum samplers")->check(CLI::IsMember({"on", "off"}));
    app->add_option("--dt", dt, "emulator step (us)")->check(CLI::PositiveNumber);
    app->add_option("--T", duration, "pulse duration (us)")->check(CLI::PositiveNumber);
    app->add_flag("--no-metrics", no_metrics, "skip per-iteration quality metrics");
  }

  CgConfig config(std::uint64_t seed) const {
    CgConfig c;
    c.m = m;
    c.max_iterations = max_iterations;
    c.stall_patience = stall_patience;
    c.enable_make_diff = on_off(make_diff);
    c.record_metrics = !no_metrics;
    c.seed = seed;
    return c;
  }

  SamplerOptions samplers() const {
    SamplerOptions s;
    s.quantum.dt = dt;
    s.quantum.duration = duration;
    if (on_off(spam)) s.quantum.spam = SpamParams{};
    return s;
  }
};

nlohmann::json trace_summary(const CgTrace& t, const std::string& sampler, std::uint64_t seed) {
  nlohmann::json j;
  j["sampler"] = sampler;
  j["seed"] = seed;
  j["termination"] = to_string(t.termination);
  j["iterations"] = t.iteration_count();
  j["final_objective"] = t.final_objective;
  j["final_lp_objective"] = t.final_lp_objective;
  j["proven_optimal"] = t.final_proven_optimal;
  j["columns_generated"] = t.total_generated;
  j["columns_accepted"] = t.total_accepted;
  j["pool_size"] = t.pool_size;
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : t.final_columns) cols.push_back({{"class", c.class_id}, {"tours", c.tours.indices()}, {"cost", c.cost}});
  j["solution"] = cols;
  if (!t.error.empty()) j["error"] = t.error;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Column generation for fleet assignment with classical and emulated quantum pricing"};
  app.set_config("--config", "", "TOML/INI file with option values; unknown keys are rejected");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out_path;

  // gen-instance
  auto* gen = app.add_subcommand("gen-instance", "generate a synthetic instance as JSON");
  InstanceOpts gen_opts;
  gen_opts.add(gen);
  gen->add_option("--seed", seed)->required();
  gen->add_option("--out", out_path)->required();

  // run-cg
  auto* run = app.add_subcommand("run-cg", "run column generation on an instance");
  std::string instance_path, sampler = "ilp-div", trace_path, summary_path;
  CgOpts run_opts;
  run->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  run->add_option("--sampler", sampler)->check(CLI::IsMember(sampler_names()));
  run_opts.add(run);
  run->add_option("--seed", seed)->required();
  run->add_option("--trace", trace_path, "per-iteration CSV");
  run->add_option("--summary", summary_path, "JSON summary (default: stdout)");

  // bench-embed
  auto* be = app.add_subcommand("bench-embed", "SA-Embedder vs Spring-Free loss on random graphs");
  std::string sizes = "10,15,20", p_grid = "0.1:0.9:0.1";
  int graphs = 100;
  be->add_option("--sizes", sizes);
  be->add_option("--p-grid", p_grid);
  be->add_option("--graphs", graphs)->check(CLI::PositiveNumber);
  be->add_option("--seed", seed)->required();
  be->add_option("--out", out_path)->required();

  // bench-pulse
  auto* bp = app.add_subcommand("bench-pulse", "QSOL vs QSAMP quality and diversity");
  int pulse_n = 10, shots = 1000, pulse_graphs = 10;
  std::string pulse_spam = "off", pulse_grid = "0.2:0.6:0.2";
  double pulse_dt = kDefaultDt, pulse_t = kDefaultDuration;
  bp->add_option("--n", pulse_n)->check(CLI::Range(2, static_cast<int>(kMaxStateVectorAtoms)));
  bp->add_option("--p-grid", pulse_grid);
  bp->add_option("--graphs", pulse_graphs)->check(CLI::PositiveNumber);
  bp->add_option("--shots", shots)->check(CLI::PositiveNumber);
  bp->add_option("--spam", pulse_spam)->check(CLI::IsMember({"on", "off"}));
  bp->add_option("--dt", pulse_dt)->check(CLI::PositiveNumber);
  bp->add_option("--T", pulse_t)->check(CLI::PositiveNumber);
  bp->add_option("--seed", seed)->required();
  bp->add_option("--out", out_path)->required();

  // bench-matrix
  auto* bm = app.add_subcommand("bench-matrix", "instances x samplers; resumes an existing output file");
  std::vector<std::string> instance_files;
  int generate = 0, workers = 0;
  std::string samplers_list = "one-ilp,ilp-div,sa-solver,sa-sampler", reference = "ilp-div";
  InstanceOpts bm_inst;
  CgOpts bm_opts;
  bm->add_option("--instances", instance_files, "instance JSON files")->check(CLI::ExistingFile);
  bm->add_option("--generate", generate, "number of synthetic instances")->check(CLI::NonNegativeNumber);
  bm_inst.add(bm);
  bm_opts.add(bm);
  bm->add_option("--samplers", samplers_list);
  bm->add_option("--reference", reference);
  bm->add_option("--workers", workers, std::string("worker threads (default: $") + kWorkersEnv + " or 1)");
  bm->add_option("--seed", seed)->required();
  bm->add_option("--out", out_path)->required();

  // export-milp
  auto* em = app.add_subcommand("export-milp", "write the compact assignment MILP in LP format");
  em->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  em->add_option("--out", out_path)->required();

  // report
  auto* rp = app.add_subcommand("report", "aggregate results CSVs into medians, IQRs and confusion counts");
  std::vector<std::string> results_files, compare;
  double tolerance = 1e-6;
  rp->add_option("--results", results_files)->required()->check(CLI::ExistingFile);
  rp->add_option("--compare", compare, "pairs A:B for confusion counts");
  rp->add_option("--tolerance", tolerance, "relative tolerance for equal objectives")
      ->check(CLI::NonNegativeNumber);
  rp->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      const FleetInstance inst = generate_synthetic(gen_opts.params(), seed);
      save_instance(inst, out_path);
      std::cout << "wrote " << out_path << ": " << inst.tour_count() << " tours, " << inst.class_count()
                << " classes, " << inst.conflicts.edge_count() << " conflicts\n";
    } else if (run->parsed()) {
      const FleetInstance inst = load_instance(instance_path);
      const auto smp = make_sampler(sampler, run_opts.samplers());
      const CgTrace trace = run_column_generation(inst, *smp, run_opts.config(seed));
      if (!trace_path.empty()) {
        auto f = open_out(trace_path);
        write_trace_csv(f, trace);
      }
      const auto summary = trace_summary(trace, sampler, seed).dump(2);
      if (summary_path.empty()) {
        std::cout << summary << "\n";
      } else {
        auto f = open_out(summary_path);
        f << summary << "\n";
      }
      if (trace.failure) std::rethrow_exception(trace.failure);
    } else if (be->parsed()) {
      const auto rows = embed_benchmark(parse_int_list(sizes), parse_grid(p_grid), graphs, seed);
      auto f = open_out(out_path);
      write_embed_csv(f, rows);
    } else if (bp->parsed()) {
      QuantumParams q;
      q.dt = pulse_dt;
      q.duration = pulse_t;
      const auto rows = pulse_benchmark(pulse_n, parse_grid(pulse_grid), pulse_graphs, shots,
                                        on_off(pulse_spam), seed, q);
      auto f = open_out(out_path);
      write_pulse_csv(f, rows);
    } else if (bm->parsed()) {
      std::vector<FleetInstance> instances;
      for (const auto& p : instance_files) instances.push_back(load_instance(p));
      for (int i = 0; i < generate; ++i)
        instances.push_back(generate_synthetic(bm_inst.params(), mix_seed(seed, 0xfeed, static_cast<std::uint64_t>(i))));
      if (instances.empty()) throw ConfigError("bench-matrix needs --instances or --generate");

      MatrixOptions mo;
      mo.cg = bm_opts.config(seed);
      mo.samplers = bm_opts.samplers();
      mo.reference = reference;
      mo.workers = workers > 0 ? workers : workers_from_env();
      const auto names = parse_name_list(samplers_list);
      for (const auto& n : names)
        if (!std::count(sampler_names().begin(), sampler_names().end(), n))
          throw ConfigError("unknown sampler: " + n);

      std::vector<ResultRow> previous;
      if (fs::exists(out_path)) {
        auto in = open_in(out_path);
        previous = read_results_csv(in);
      }
      for (const auto& r : previous) mo.skip.insert({r.instance, r.sampler});

      {
        std::ofstream f(out_path, std::ios::app);
        if (!f) throw ConfigError("cannot open " + out_path);
        if (previous.empty() && fs::file_size(out_path) == 0) write_results_header(f);
        mo.on_row = [&f](const ResultRow& r) {
          write_result_row(f, r);
          f.flush();
        };
        auto fresh = run_benchmark_matrix(instances, names, mo);
        previous.insert(previous.end(), fresh.begin(), fresh.end());
      }
      fill_ratios(previous, reference);
      std::stable_sort(previous.begin(), previous.end(), [&](const ResultRow& a, const ResultRow& b) {
        if (a.instance != b.instance) return a.instance < b.instance;
        const auto ia = std::find(names.begin(), names.end(), a.sampler) - names.begin();
        const auto ib = std::find(names.begin(), names.end(), b.sampler) - names.begin();
        return ia < ib;
      });
      const std::string tmp = out_path + ".tmp";
      {
        auto f = open_out(tmp);
        write_results_header(f);
        for (const auto& r : previous) write_result_row(f, r);
      }
      fs::rename(tmp, out_path);
      int failed = 0;
      for (const auto& r : previous) failed += r.ok ? 0 : 1;
      std::cout << "cells: " << previous.size() << " (" << failed << " failed)\n";
    } else if (em->parsed()) {
      const FleetInstance inst = load_instance(instance_path);
      write_milp(inst, out_path);
      std::cout << "wrote " << out_path << " with " << milp_vehicle_count(inst) << " vehicles\n";
    } else if (rp->parsed()) {
      std::vector<ResultRow> rows;
      for (const auto& p : results_files) {
        auto in = open_in(p);
        auto part = read_results_csv(in);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      std::vector<Confusion> conf;
      for (const auto& pair : compare) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos) throw ConfigError("--compare expects A:B, got " + pair);
        conf.push_back(confusion(rows, pair.substr(0, colon), pair.substr(colon + 1), tolerance));
      }
      auto f = open_out(out_path);
      write_report_csv(f, summarize(rows), conf);
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
