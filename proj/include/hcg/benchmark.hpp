#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hcg/cg.hpp"
#include "hcg/embedder.hpp"
#include "hcg/fleet.hpp"
#include "hcg/quantum_sampler.hpp"
#include "hcg/report.hpp"

namespace hcg {

// "a:b:step" (inclusive) or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
std::vector<std::string> parse_name_list(const std::string& text);

struct EmbedRow {
  int n = 0;
  double p = 0.0;
  int graph = 0;
  std::uint64_t seed = 0;
  double sa_cost = 0.0;
  double spring_cost = 0.0;
};

std::vector<EmbedRow> embed_benchmark(const std::vector<int>& sizes, const std::vector<double>& ps, int graphs,
                                      std::uint64_t seed, const EmbedderParams& params = {});
void write_embed_csv(std::ostream& os, const std::vector<EmbedRow>& rows);

// Connected G(n, p) with node weights drawn uniformly from [1, 10].
WeightedGraph weighted_test_graph(int n, double p, std::uint64_t seed);

struct PulseRow {
  int n = 0;
  double p = 0.0;
  int graph = 0;
  std::string mode;
  bool spam = false;
  double alpha = 0.0;      // after Maximalize
  double diversity = 0.0;  // after Maximalize; NaN if undefined
  double embedding_cost = 0.0;
  double omega_max = 0.0;
};

std::vector<PulseRow> pulse_benchmark(int n, const std::vector<double>& ps, int graphs, int shots, bool spam,
                                      std::uint64_t seed, QuantumParams base = {});
void write_pulse_csv(std::ostream& os, const std::vector<PulseRow>& rows);

struct MatrixOptions {
  CgConfig cg;
  SamplerOptions samplers;
  std::string reference = "ilp-div";
  int workers = 1;
  std::set<std::pair<int, std::string>> skip;  // already completed cells
  // Called once per finished cell, serialised.
  std::function<void(const ResultRow&)> on_row;
};

// Cross product of instances × samplers. Cell (i, s) runs with seed
// mix_seed(cfg.seed, i) so every sampler sees the same stream per instance.
// Ratios are filled against the reference sampler where both cells succeed.
std::vector<ResultRow> run_benchmark_matrix(const std::vector<FleetInstance>& instances,
                                            const std::vector<std::string>& samplers, const MatrixOptions& opts);

// Fills `ratio` for every row whose instance has a successful reference row.
void fill_ratios(std::vector<ResultRow>& rows, const std::string& reference);

}  // namespace hcg
