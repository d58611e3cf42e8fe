#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace hcg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// min cᵀx  s.t.  row_lower ≤ A x ≤ row_upper,  lower ≤ x ≤ upper.
// A is stored column-wise as (row, coefficient) pairs.
struct LinearProgram {
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::vector<std::pair<int, double>>> columns;
  std::vector<double> row_lower;
  std::vector<double> row_upper;

  std::size_t num_cols() const { return cost.size(); }
  std::size_t num_rows() const { return row_lower.size(); }

  int add_row(double lo, double hi);
  int add_column(double c, double lo, double hi, std::vector<std::pair<int, double>> entries);
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(LpStatus s);

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-9;
  int max_iterations = 100000;
  int refactor_interval = 64;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_switch = 30;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  // Row duals y: reduced cost of column j is c_j − yᵀA_j.
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
  std::vector<double> row_activity;
  int iterations = 0;
  // Rows whose artificial stayed positive after phase 1 (infeasible models).
  std::vector<int> infeasible_rows;

  // Σ_i y_i·(active row bound) + Σ_j d_j·(active column bound).
  double dual_objective(const LinearProgram& lp) const;
};

// Bounded-variable primal revised simplex with a dense basis inverse.
LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& opts = {});

}  // namespace hcg
