#include "hcg/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "hcg/errors.hpp"
#include "hcg/metrics.hpp"
#include "hcg/postprocess.hpp"
#include "hcg/rng.hpp"
#include "hcg/samplers.hpp"

namespace hcg {

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
}

std::string num(double x) {
  if (std::isnan(x)) return "";
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split_on(text, ':');
    if (parts.size() != 3) throw ConfigError("grid must look like start:stop:step");
    const double a = to_double(parts[0]);
    const double b = to_double(parts[1]);
    const double step = to_double(parts[2]);
    if (!(step > 0.0) || b < a) throw ConfigError("grid needs step > 0 and stop ≥ start");
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(std::round((a + i * step) * 1e12) / 1e12);
  } else {
    for (const auto& s : split_on(text, ',')) out.push_back(to_double(s));
  }
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split_on(text, ',')) {
    const double v = to_double(s);
    if (v != std::floor(v)) throw ConfigError("not an integer: '" + s + "'");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& s : split_on(text, ','))
    if (!s.empty()) out.push_back(s);
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::vector<EmbedRow> embed_benchmark(const std::vector<int>& sizes, const std::vector<double>& ps, int graphs,
                                      std::uint64_t seed, const EmbedderParams& params) {
  if (graphs < 1) throw ConfigError("graphs must be at least 1");
  std::vector<EmbedRow> rows;
  for (int n : sizes)
    for (std::size_t pi = 0; pi < ps.size(); ++pi)
      for (int gi = 0; gi < graphs; ++gi) {
        EmbedRow r;
        r.n = n;
        r.p = ps[pi];
        r.graph = gi;
        r.seed = mix_seed(seed, static_cast<std::uint64_t>(n), pi, static_cast<std::uint64_t>(gi));
        const WeightedGraph g = generate_erdos_renyi_connected(n, r.p, r.seed);
        r.sa_cost = sa_embed(g, layout_for_graph(g.node_count()), params, mix_seed(r.seed, 1)).cost;
        r.spring_cost = spring_free_embed(g, mix_seed(r.seed, 2)).cost;
        rows.push_back(r);
      }
  return rows;
}

void write_embed_csv(std::ostream& os, const std::vector<EmbedRow>& rows) {
  os << "# schema=hcg-embed/1\n";
  os << "n,p,graph,seed,sa_cost,spring_cost\n";
  for (const auto& r : rows)
    os << r.n << ',' << num(r.p) << ',' << r.graph << ',' << r.seed << ',' << num(r.sa_cost) << ','
       << num(r.spring_cost) << "\n";
}

WeightedGraph weighted_test_graph(int n, double p, std::uint64_t seed) {
  WeightedGraph g = generate_erdos_renyi_connected(n, p, seed);
  Rng rng(mix_seed(seed, 0x77));
  std::vector<double> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = rng.uniform(1.0, 10.0);
  g.set_weights(std::move(w));
  return g;
}

std::vector<PulseRow> pulse_benchmark(int n, const std::vector<double>& ps, int graphs, int shots, bool spam,
                                      std::uint64_t seed, QuantumParams base) {
  if (graphs < 1) throw ConfigError("graphs must be at least 1");
  if (spam && !base.spam) base.spam = SpamParams{};
  if (!spam) base.spam.reset();
  std::vector<PulseRow> rows;
  for (std::size_t pi = 0; pi < ps.size(); ++pi)
    for (int gi = 0; gi < graphs; ++gi) {
      const std::uint64_t gseed = mix_seed(seed, static_cast<std::uint64_t>(n), pi, static_cast<std::uint64_t>(gi));
      const WeightedGraph g = weighted_test_graph(n, ps[pi], gseed);
      const double opt = set_weight(g, exact_mwis(g));
      for (PulseMode mode : {PulseMode::Qsol, PulseMode::Qsamp}) {
        QuantumParams q = base;
        q.mode = mode;
        // Same embedding seed for both pulses so they share a register.
        const QuantumRun run = quantum_sample(g, shots, q, mix_seed(gseed, 3));
        const auto fixed = maximalize(g, run.samples);
        PulseRow r;
        r.n = n;
        r.p = ps[pi];
        r.graph = gi;
        r.mode = to_string(mode);
        r.spam = spam;
        r.alpha = approximation_ratio(fixed, g, opt);
        std::size_t filled = 0;
        for (const auto& s : fixed) filled += s.count();
        r.diversity = fixed.size() >= 2 && filled > 0 ? diversity(fixed) : std::numeric_limits<double>::quiet_NaN();
        r.embedding_cost = run.embedding_cost;
        r.omega_max = run.omega_max;
        rows.push_back(r);
      }
    }
  return rows;
}

void write_pulse_csv(std::ostream& os, const std::vector<PulseRow>& rows) {
  os << "# schema=hcg-pulse/1\n";
  os << "n,p,graph,mode,spam,alpha,diversity,embedding_cost,omega_max\n";
  for (const auto& r : rows)
    os << r.n << ',' << num(r.p) << ',' << r.graph << ',' << r.mode << ',' << (r.spam ? "on" : "off") << ','
       << num(r.alpha) << ',' << num(r.diversity) << ',' << num(r.embedding_cost) << ',' << num(r.omega_max)
       << "\n";
}

void fill_ratios(std::vector<ResultRow>& rows, const std::string& reference) {
  std::map<int, double> ref;
  for (const auto& r : rows)
    if (r.ok && r.sampler == reference) ref[r.instance] = r.final_objective;
  for (auto& r : rows) {
    auto it = ref.find(r.instance);
    r.ratio = r.ok && it != ref.end() && it->second != 0.0 ? r.final_objective / it->second
                                                          : std::numeric_limits<double>::quiet_NaN();
  }
}

std::vector<ResultRow> run_benchmark_matrix(const std::vector<FleetInstance>& instances,
                                            const std::vector<std::string>& samplers, const MatrixOptions& opts) {
  opts.cg.validate();
  if (opts.workers < 1) throw ConfigError("workers must be at least 1");
  std::vector<std::unique_ptr<Sampler>> built;
  for (const auto& name : samplers) built.push_back(make_sampler(name, opts.samplers));

  struct Cell {
    int instance;
    std::size_t sampler;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (std::size_t s = 0; s < samplers.size(); ++s)
      if (!opts.skip.contains({static_cast<int>(i), samplers[s]})) cells.push_back({static_cast<int>(i), s});

  std::vector<ResultRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex emit;
  auto work = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++) {
      const Cell cell = cells[c];
      ResultRow r;
      r.instance = cell.instance;
      r.sampler = samplers[cell.sampler];
      CgConfig cfg = opts.cg;
      cfg.seed = mix_seed(opts.cg.seed, static_cast<std::uint64_t>(cell.instance));
      r.seed = cfg.seed;
      try {
        const CgTrace t = run_column_generation(instances[static_cast<std::size_t>(cell.instance)],
                                                *built[cell.sampler], cfg);
        r.ok = t.termination != Termination::Failed;
        r.termination = to_string(t.termination);
        r.error = t.error;
        r.final_objective = t.final_objective;
        r.final_lp_objective = t.final_lp_objective;
        r.iterations = t.iteration_count();
        r.columns_generated = t.total_generated;
        r.columns_accepted = t.total_accepted;
      } catch (const std::exception& e) {
        r.ok = false;
        r.termination = to_string(Termination::Failed);
        r.error = e.what();
      }
      r.ratio = std::numeric_limits<double>::quiet_NaN();
      rows[c] = r;
      if (opts.on_row) {
        std::lock_guard lock(emit);
        opts.on_row(r);
      }
    }
  };
  const int nthreads = std::min<int>(opts.workers, static_cast<int>(std::max<std::size_t>(cells.size(), 1)));
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  fill_ratios(rows, opts.reference);
  return rows;
}

}  // namespace hcg
