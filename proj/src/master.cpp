#include "hcg/master.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hcg/errors.hpp"

namespace hcg {

Column make_column(const FleetInstance& inst, int class_id, const BitSet& tours) {
  if (class_id < 0 || class_id >= static_cast<int>(inst.class_count()))
    throw ConfigError("column: unknown class " + std::to_string(class_id));
  if (tours.size() != inst.tour_count()) throw ConfigError("column: tour set length mismatch");
  double cost = inst.classes[class_id].cost;
  const auto members = tours.indices();
  for (int k : members) {
    if (!inst.tours[k].allows(class_id))
      throw ConfigError("column: tour " + std::to_string(k) + " does not allow class " + std::to_string(class_id));
    cost += inst.tours[k].cost;
  }
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (inst.conflicts.has_edge(members[a], members[b]))
        throw ConfigError("column: tours " + std::to_string(members[a]) + " and " +
                          std::to_string(members[b]) + " conflict");
  return Column{class_id, tours, cost};
}

bool ColumnPool::add(Column c) {
  if (index_.contains(c)) return false;
  index_.insert(c);
  columns_.push_back(std::move(c));
  return true;
}

bool ColumnPool::contains(const Column& c) const { return index_.contains(c); }

ColumnPool initial_columns(const FleetInstance& inst) {
  ColumnPool pool;
  for (const auto& t : inst.tours) {
    if (t.allowed_classes.empty()) throw ConfigError("initial_columns: tour " + std::to_string(t.id) + " has no class");
    int best = t.allowed_classes.front();
    for (int v : t.allowed_classes)
      if (inst.classes[v].cost < inst.classes[best].cost) best = v;
    BitSet s(inst.tour_count());
    s.set(static_cast<std::size_t>(t.id));
    pool.add(make_column(inst, best, s));
  }
  return pool;
}

int ensure_class_minimums(const FleetInstance& inst, ColumnPool& pool) {
  int added = 0;
  for (const auto& vc : inst.classes) {
    int have = 0;
    for (const auto& c : pool)
      if (c.class_id == vc.id) ++have;
    if (have >= vc.n_min) continue;
    auto tours = inst.tours_of_class(vc.id);
    std::stable_sort(tours.begin(), tours.end(),
                     [&](int a, int b) { return inst.tours[a].cost < inst.tours[b].cost; });
    for (int k : tours) {
      if (have >= vc.n_min) break;
      BitSet s(inst.tour_count());
      s.set(static_cast<std::size_t>(k));
      if (pool.add(make_column(inst, vc.id, s))) {
        ++have;
        ++added;
      }
    }
  }
  return added;
}

double reduced_cost(const Column& c, const LPSolution& duals) {
  double rc = c.cost - duals.class_min_duals[c.class_id] - duals.class_max_duals[c.class_id];
  for (std::size_t k = 0; k < c.tours.size(); ++k)
    if (c.tours.test(k)) rc -= duals.tour_duals[k];
  return rc;
}

LinearProgram build_rmp(const FleetInstance& inst, const ColumnPool& pool, const MasterOptions& opts) {
  LinearProgram lp;
  const int n_tours = static_cast<int>(inst.tour_count());
  for (int k = 0; k < n_tours; ++k) lp.add_row(1.0, opts.coverage_equality ? 1.0 : kInf);
  for (const auto& vc : inst.classes) lp.add_row(vc.n_min, vc.n_max);
  for (const auto& c : pool) {
    std::vector<std::pair<int, double>> entries;
    for (int k : c.tours.indices()) entries.emplace_back(k, 1.0);
    entries.emplace_back(n_tours + c.class_id, 1.0);
    lp.add_column(c.cost, 0.0, 1.0, std::move(entries));
  }
  return lp;
}

namespace {

[[noreturn]] void report_infeasible(const FleetInstance& inst, const LpResult& r) {
  const int n_tours = static_cast<int>(inst.tour_count());
  bool coverage = false, bounds = false;
  for (int row : r.infeasible_rows) (row < n_tours ? coverage : bounds) = true;
  std::string family = coverage && bounds ? "tour coverage and class bounds"
                       : coverage         ? "tour coverage"
                       : bounds           ? "class bounds"
                                          : "unknown";
  throw InfeasibleError("restricted master infeasible: " + family + " constraints cannot be met");
}

LPSolution extract(const FleetInstance& inst, const LinearProgram& lp, const LpResult& r) {
  const int n_tours = static_cast<int>(inst.tour_count());
  LPSolution sol;
  sol.primal = r.x;
  sol.objective = r.objective;
  sol.dual_objective = r.dual_objective(lp);
  sol.iterations = r.iterations;
  sol.tour_duals.assign(r.row_duals.begin(), r.row_duals.begin() + n_tours);
  for (auto& mu : sol.tour_duals) mu = std::max(mu, 0.0);
  for (std::size_t v = 0; v < inst.class_count(); ++v) {
    const double y = r.row_duals[n_tours + v];
    sol.class_min_duals.push_back(std::max(y, 0.0));
    sol.class_max_duals.push_back(std::min(y, 0.0));
  }
  sol.bound_duals.resize(r.reduced_costs.size());
  for (std::size_t j = 0; j < r.reduced_costs.size(); ++j) sol.bound_duals[j] = std::min(r.reduced_costs[j], 0.0);
  return sol;
}

}  // namespace

LPSolution solve_rmp_lp(const FleetInstance& inst, const ColumnPool& pool, const MasterOptions& opts) {
  const LinearProgram lp = build_rmp(inst, pool, opts);
  const LpResult r = solve_lp(lp, opts.simplex);
  if (r.status == LpStatus::Infeasible) report_infeasible(inst, r);
  if (r.status != LpStatus::Optimal)
    throw std::runtime_error("restricted master: simplex ended with status " + to_string(r.status));
  return extract(inst, lp, r);
}

namespace {

struct BranchAndBound {
  const FleetInstance& inst;
  const ColumnPool& pool;
  const MasterOptions& opts;
  LinearProgram lp;
  double best = kInf;
  std::vector<int> best_sel;
  long nodes = 0;
  bool capped = false;
  bool any_feasible_lp = false;

  void dfs() {
    if (nodes >= opts.node_cap) {
      capped = true;
      return;
    }
    ++nodes;
    const LpResult r = solve_lp(lp, opts.simplex);
    if (r.status != LpStatus::Optimal) return;
    any_feasible_lp = true;
    if (r.objective >= best - 1e-9 * std::max(1.0, std::abs(best))) return;

    int branch = -1;
    double frac_best = 1e-6;
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      const double f = std::abs(r.x[j] - std::round(r.x[j]));
      if (f > frac_best) {
        frac_best = f;
        branch = static_cast<int>(j);
      }
    }
    if (branch < 0) {
      std::vector<int> sel;
      double obj = 0.0;
      for (std::size_t j = 0; j < r.x.size(); ++j) {
        if (r.x[j] > 0.5) {
          sel.push_back(static_cast<int>(j));
          obj += lp.cost[j];
        }
      }
      if (obj < best) {
        best = obj;
        best_sel = std::move(sel);
      }
      return;
    }
    const double lo = lp.lower[branch], hi = lp.upper[branch];
    const bool up_first = r.x[branch] >= 0.5;
    for (int pass = 0; pass < 2; ++pass) {
      const bool up = (pass == 0) == up_first;
      lp.lower[branch] = up ? 1.0 : 0.0;
      lp.upper[branch] = up ? 1.0 : 0.0;
      dfs();
      lp.lower[branch] = lo;
      lp.upper[branch] = hi;
    }
  }
};

}  // namespace

BinaryRmpResult solve_binary_rmp(const FleetInstance& inst, const ColumnPool& pool, const MasterOptions& opts) {
  BranchAndBound bb{inst, pool, opts, build_rmp(inst, pool, opts), kInf, {}, 0, false, false};
  bb.dfs();
  if (bb.best_sel.empty() && !std::isfinite(bb.best)) {
    if (bb.capped) throw LimitError("binary master: node cap reached without an integer solution");
    throw InfeasibleError("binary master infeasible: coverage or class bounds cannot be met with the pool");
  }
  BinaryRmpResult out;
  out.selected = std::move(bb.best_sel);
  out.objective = bb.best;
  out.proven_optimal = !bb.capped;
  out.nodes = bb.nodes;
  return out;
}

}  // namespace hcg
