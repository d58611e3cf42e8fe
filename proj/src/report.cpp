#include "hcg/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "hcg/errors.hpp"

namespace hcg {

namespace {

// Shortest text that parses back to the same double.
std::string num(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_num(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("bad number: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("bad number: " + s);
  }
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

const char* kResultsColumns =
    "instance,sampler,seed,status,final_objective,final_lp_objective,iterations,columns_generated,"
    "columns_accepted,ratio,termination,error";

}  // namespace

void write_schema_line(std::ostream& os, const std::string& schema) { os << "# schema=" << schema << "\n"; }

void expect_schema_line(std::istream& is, const std::string& schema) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty CSV; expected schema " + schema);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string want = "# schema=" + schema;
  if (line != want) throw ConfigError("schema mismatch: expected '" + want + "', found '" + line + "'");
}

void write_trace_csv(std::ostream& os, const CgTrace& trace) {
  write_schema_line(os, kTraceSchema);
  os << "iteration,alpha_psp,diversity_S,diversity_pool,lp_objective,columns_added,columns_generated,"
        "pool_size,duals_digest\n";
  for (const auto& r : trace.iterations) {
    os << r.iteration << ',' << num(r.alpha_psp) << ',' << num(r.diversity_samples) << ','
       << num(r.diversity_pool) << ',' << num(r.lp_objective) << ',' << r.columns_accepted << ','
       << r.columns_generated << ',' << r.pool_size << ',' << std::hex << r.duals_digest << std::dec << "\n";
  }
}

void write_results_header(std::ostream& os) {
  write_schema_line(os, kResultsSchema);
  os << kResultsColumns << "\n";
}

void write_result_row(std::ostream& os, const ResultRow& r) {
  os << r.instance << ',' << sanitize(r.sampler) << ',' << r.seed << ',' << (r.ok ? "ok" : "failed") << ','
     << num(r.final_objective) << ',' << num(r.final_lp_objective) << ',' << r.iterations << ','
     << r.columns_generated << ',' << r.columns_accepted << ',' << num(r.ratio) << ','
     << sanitize(r.termination) << ',' << sanitize(r.error) << "\n";
}

std::vector<ResultRow> read_results_csv(std::istream& is) {
  expect_schema_line(is, kResultsSchema);
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("results CSV has no header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsColumns) throw ConfigError("results CSV header does not match the schema");
  std::vector<ResultRow> rows;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split(line);
    if (f.size() != 12) throw ConfigError("results CSV row has " + std::to_string(f.size()) + " fields");
    ResultRow r;
    try {
      r.instance = std::stoi(f[0]);
      r.sampler = f[1];
      r.seed = std::stoull(f[2]);
      r.iterations = std::stoi(f[6]);
      r.columns_generated = std::stoi(f[7]);
      r.columns_accepted = std::stoi(f[8]);
    } catch (const std::logic_error&) {
      throw ConfigError("malformed results CSV row: " + line);
    }
    if (f[3] != "ok" && f[3] != "failed") throw ConfigError("bad status field: " + f[3]);
    r.ok = f[3] == "ok";
    r.final_objective = parse_num(f[4]);
    r.final_lp_objective = parse_num(f[5]);
    r.ratio = parse_num(f[9]);
    r.termination = f[10];
    r.error = f[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

double iqr(const std::vector<double>& v) { return quantile(v, 0.75) - quantile(v, 0.25); }

std::vector<SamplerSummary> summarize(const std::vector<ResultRow>& rows) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const ResultRow*>> by;
  for (const auto& r : rows) {
    if (!by.contains(r.sampler)) order.push_back(r.sampler);
    by[r.sampler].push_back(&r);
  }
  std::vector<SamplerSummary> out;
  for (const auto& name : order) {
    SamplerSummary s;
    s.sampler = name;
    std::vector<double> obj, ratio, iters, acc;
    for (const ResultRow* r : by[name]) {
      ++s.runs;
      if (!r->ok) {
        ++s.failures;
        continue;
      }
      obj.push_back(r->final_objective);
      if (!std::isnan(r->ratio)) ratio.push_back(r->ratio);
      iters.push_back(r->iterations);
      acc.push_back(r->columns_accepted);
    }
    s.median_objective = median(obj);
    s.iqr_objective = iqr(obj);
    s.median_ratio = median(ratio);
    s.iqr_ratio = iqr(ratio);
    s.median_iterations = median(iters);
    s.iqr_iterations = iqr(iters);
    s.median_accepted = median(acc);
    out.push_back(s);
  }
  return out;
}

int Confusion::total() const {
  int t = 0;
  for (const auto& row : counts)
    for (int c : row) t += c;
  return t;
}

Confusion confusion(const std::vector<ResultRow>& rows, const std::string& a, const std::string& b,
                    double rel_tolerance) {
  if (rel_tolerance < 0.0) throw ConfigError("tolerance must be non-negative");
  std::map<int, const ResultRow*> ra, rb;
  for (const auto& r : rows) {
    if (!r.ok) continue;
    if (r.sampler == a) ra[r.instance] = &r;
    if (r.sampler == b) rb[r.instance] = &r;
  }
  Confusion c;
  c.a = a;
  c.b = b;
  for (const auto& [inst, x] : ra) {
    auto it = rb.find(inst);
    if (it == rb.end()) continue;
    const ResultRow* y = it->second;
    const double scale = std::max(std::abs(x->final_objective), std::abs(y->final_objective));
    int o = 1;
    if (std::abs(x->final_objective - y->final_objective) > rel_tolerance * scale)
      o = x->final_objective < y->final_objective ? 0 : 2;
    const int i = x->iterations < y->iterations ? 0 : (x->iterations == y->iterations ? 1 : 2);
    ++c.counts[o][i];
  }
  return c;
}

void write_report_csv(std::ostream& os, const std::vector<SamplerSummary>& summaries,
                      const std::vector<Confusion>& confusions) {
  write_schema_line(os, kReportSchema);
  os << "kind,sampler,compared_to,runs,failures,median_objective,iqr_objective,median_ratio,iqr_ratio,"
        "median_iterations,iqr_iterations,median_accepted,objective,iterations,count\n";
  for (const auto& s : summaries)
    os << "summary," << s.sampler << ",," << s.runs << ',' << s.failures << ',' << num(s.median_objective) << ','
       << num(s.iqr_objective) << ',' << num(s.median_ratio) << ',' << num(s.iqr_ratio) << ','
       << num(s.median_iterations) << ',' << num(s.iqr_iterations) << ',' << num(s.median_accepted)
       << ",,,\n";
  static const char* kObj[3] = {"lower", "equal", "higher"};
  static const char* kIt[3] = {"fewer", "equal", "more"};
  for (const auto& c : confusions)
    for (int o = 0; o < 3; ++o)
      for (int i = 0; i < 3; ++i)
        os << "confusion," << c.a << ',' << c.b << ",,,,,,,,,," << kObj[o] << ',' << kIt[i] << ','
           << c.counts[o][i] << "\n";
}

}  // namespace hcg
