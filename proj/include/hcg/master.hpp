#pragma once

#include <unordered_set>
#include <vector>

#include "hcg/fleet.hpp"
#include "hcg/graph.hpp"
#include "hcg/lp.hpp"

namespace hcg {

// One vehicle of class `class_id` serving the tours in `tours`.
struct Column {
  int class_id = 0;
  BitSet tours;  // over all tours of the instance
  double cost = 0.0;

  bool operator==(const Column& o) const { return class_id == o.class_id && tours == o.tours; }
};

// Builds a column and checks it: tours allow the class, form an independent
// set of the conflict graph; cost = class cost + tour costs.
Column make_column(const FleetInstance& inst, int class_id, const BitSet& tours);

class ColumnPool {
 public:
  // False if an identical column is already present.
  bool add(Column c);
  bool contains(const Column& c) const;
  std::size_t size() const { return columns_.size(); }
  bool empty() const { return columns_.empty(); }
  const Column& operator[](std::size_t i) const { return columns_[i]; }
  const std::vector<Column>& columns() const { return columns_; }
  auto begin() const { return columns_.begin(); }
  auto end() const { return columns_.end(); }

 private:
  struct KeyHash {
    std::size_t operator()(const Column& c) const {
      return c.tours.hash() * 31 + static_cast<std::size_t>(c.class_id);
    }
  };
  std::vector<Column> columns_;
  std::unordered_set<Column, KeyHash> index_;
};

struct LPSolution {
  std::vector<double> primal;        // x_s per pool column
  std::vector<double> tour_duals;    // μ_k ≥ 0
  std::vector<double> class_min_duals;  // μ_v^min ≥ 0
  std::vector<double> class_max_duals;  // μ_v^max ≤ 0
  std::vector<double> bound_duals;   // duals of x_s ≤ 1 (≤ 0)
  double objective = 0.0;
  double dual_objective = 0.0;
  int iterations = 0;
};

struct MasterOptions {
  bool coverage_equality = false;
  SimplexOptions simplex;
  long node_cap = 100000;
};

// One singleton per tour, using its cheapest allowed class.
ColumnPool initial_columns(const FleetInstance& inst);

// Adds cheapest singleton columns of any class that has fewer than n_min
// columns in the pool. Returns the number of columns added.
int ensure_class_minimums(const FleetInstance& inst, ColumnPool& pool);

// C_s − Σ_k a_ks μ_k − (μ_v^min + μ_v^max)
double reduced_cost(const Column& c, const LPSolution& duals);

LinearProgram build_rmp(const FleetInstance& inst, const ColumnPool& pool, const MasterOptions& opts = {});

// Throws InfeasibleError naming the violated constraint family.
LPSolution solve_rmp_lp(const FleetInstance& inst, const ColumnPool& pool, const MasterOptions& opts = {});

struct BinaryRmpResult {
  std::vector<int> selected;  // pool indices
  double objective = 0.0;
  bool proven_optimal = true;
  long nodes = 0;
};

// Branch-and-bound over x_s ∈ {0, 1} with the LP relaxation as bound.
BinaryRmpResult solve_binary_rmp(const FleetInstance& inst, const ColumnPool& pool,
                                 const MasterOptions& opts = {});

}  // namespace hcg
