#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hcg/cg.hpp"

namespace hcg {

// Every CSV file starts with "# schema=<id>".
inline constexpr const char* kTraceSchema = "hcg-trace/1";
inline constexpr const char* kResultsSchema = "hcg-results/1";
inline constexpr const char* kReportSchema = "hcg-report/1";

void write_schema_line(std::ostream& os, const std::string& schema);
// Throws ConfigError unless the first line declares `schema`.
void expect_schema_line(std::istream& is, const std::string& schema);

void write_trace_csv(std::ostream& os, const CgTrace& trace);

struct ResultRow {
  int instance = 0;
  std::string sampler;
  std::uint64_t seed = 0;
  bool ok = false;
  double final_objective = 0.0;
  double final_lp_objective = 0.0;
  int iterations = 0;
  int columns_generated = 0;
  int columns_accepted = 0;
  double ratio = 0.0;  // final objective over the reference sampler's; NaN if unavailable
  std::string termination;
  std::string error;
};

void write_results_header(std::ostream& os);
void write_result_row(std::ostream& os, const ResultRow& row);
std::vector<ResultRow> read_results_csv(std::istream& is);

double median(std::vector<double> v);
// Quartiles by linear interpolation between order statistics.
double quantile(std::vector<double> v, double q);
double iqr(const std::vector<double>& v);

struct SamplerSummary {
  std::string sampler;
  int runs = 0;
  int failures = 0;
  double median_objective = 0.0;
  double iqr_objective = 0.0;
  double median_ratio = 0.0;
  double iqr_ratio = 0.0;
  double median_iterations = 0.0;
  double iqr_iterations = 0.0;
  double median_accepted = 0.0;
};

std::vector<SamplerSummary> summarize(const std::vector<ResultRow>& rows);

// counts[o][i]: o indexes A's objective lower/equal/higher than B's,
// i indexes A's iteration count lower/equal/higher.
struct Confusion {
  std::string a;
  std::string b;
  std::array<std::array<int, 3>, 3> counts{};
  int total() const;
};

Confusion confusion(const std::vector<ResultRow>& rows, const std::string& a, const std::string& b,
                    double rel_tolerance = 1e-6);

void write_report_csv(std::ostream& os, const std::vector<SamplerSummary>& summaries,
                      const std::vector<Confusion>& confusions);

}  // namespace hcg
