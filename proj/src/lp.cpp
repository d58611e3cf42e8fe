#include "hcg/lp.hpp"

#include <algorithm>
#include <cmath>

#include "hcg/errors.hpp"

namespace hcg {

int LinearProgram::add_row(double lo, double hi) {
  row_lower.push_back(lo);
  row_upper.push_back(hi);
  return static_cast<int>(row_lower.size()) - 1;
}

int LinearProgram::add_column(double c, double lo, double hi,
                              std::vector<std::pair<int, double>> entries) {
  cost.push_back(c);
  lower.push_back(lo);
  upper.push_back(hi);
  columns.push_back(std::move(entries));
  return static_cast<int>(cost.size()) - 1;
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

double LpResult::dual_objective(const LinearProgram& lp) const {
  auto term = [](double dual, double lo, double hi) {
    if (dual > 0.0) return std::isfinite(lo) ? dual * lo : (dual > 1e-9 ? -kInf : 0.0);
    if (dual < 0.0) return std::isfinite(hi) ? dual * hi : (dual < -1e-9 ? -kInf : 0.0);
    return 0.0;
  };
  double total = 0.0;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) total += term(row_duals[i], lp.row_lower[i], lp.row_upper[i]);
  for (std::size_t j = 0; j < lp.num_cols(); ++j) total += term(reduced_costs[j], lp.lower[j], lp.upper[j]);
  return total;
}

namespace {

enum class VarState { Basic, AtLower, AtUpper, Free };

// Variables: [0, n) structural, [n, n+m) logical r_i with column −e_i,
// [n+m, n+2m) artificial with column sign_i·e_i. Constraints: A x − r + S a = 0.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& opts)
      : lp_(lp), opts_(opts), n_(static_cast<int>(lp.num_cols())), m_(static_cast<int>(lp.num_rows())) {
    const int total = n_ + 2 * m_;
    lo_.resize(total);
    hi_.resize(total);
    value_.assign(total, 0.0);
    state_.assign(total, VarState::AtLower);
    art_sign_.assign(m_, 1.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.lower[j];
      hi_[j] = lp.upper[j];
    }
    for (int i = 0; i < m_; ++i) {
      lo_[n_ + i] = lp.row_lower[i];
      hi_[n_ + i] = lp.row_upper[i];
      lo_[n_ + m_ + i] = 0.0;
      hi_[n_ + m_ + i] = kInf;
    }
  }

  LpResult run() {
    LpResult res;
    for (int j = 0; j < n_ + 2 * m_; ++j) {
      if (lo_[j] > hi_[j] + opts_.feasibility_tolerance) {
        res.status = LpStatus::Infeasible;
        if (j >= n_ && j < n_ + m_) res.infeasible_rows.push_back(j - n_);
        return res;
      }
    }
    initial_basis();

    // Phase 1: minimise the artificial sum.
    cost_.assign(n_ + 2 * m_, 0.0);
    for (int i = 0; i < m_; ++i) cost_[n_ + m_ + i] = 1.0;
    LpStatus st = iterate();
    if (st == LpStatus::IterationLimit) {
      res.status = st;
      res.iterations = iterations_;
      return res;
    }
    double infeasibility = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double a = value_[n_ + m_ + i];
      infeasibility += a;
      if (a > opts_.feasibility_tolerance) res.infeasible_rows.push_back(i);
    }
    if (infeasibility > opts_.feasibility_tolerance * std::max(1, m_)) {
      res.status = LpStatus::Infeasible;
      res.iterations = iterations_;
      return res;
    }
    res.infeasible_rows.clear();

    // Phase 2: artificials are fixed at zero.
    for (int i = 0; i < m_; ++i) {
      const int a = n_ + m_ + i;
      hi_[a] = 0.0;
      value_[a] = state_[a] == VarState::Basic ? value_[a] : 0.0;
      if (state_[a] != VarState::Basic) state_[a] = VarState::AtLower;
    }
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = lp_.cost[j];
    st = iterate();
    res.status = st;
    res.iterations = iterations_;
    if (st != LpStatus::Optimal) return res;

    refactor();
    compute_duals();
    res.x.assign(value_.begin(), value_.begin() + n_);
    for (int j = 0; j < n_; ++j) res.x[j] = std::clamp(res.x[j], lo_[j], hi_[j]);
    res.row_duals = y_;
    res.reduced_costs.resize(n_);
    for (int j = 0; j < n_; ++j) res.reduced_costs[j] = reduced_cost(j);
    res.row_activity.assign(m_, 0.0);
    for (int j = 0; j < n_; ++j)
      for (auto [r, a] : lp_.columns[j]) res.row_activity[r] += a * res.x[j];
    res.objective = 0.0;
    for (int j = 0; j < n_; ++j) res.objective += lp_.cost[j] * res.x[j];
    return res;
  }

 private:
  // Column of variable j as dense entries.
  template <class F>
  void for_column(int j, F&& f) const {
    if (j < n_) {
      for (auto [r, a] : lp_.columns[j]) f(r, a);
    } else if (j < n_ + m_) {
      f(j - n_, -1.0);
    } else {
      f(j - n_ - m_, art_sign_[j - n_ - m_]);
    }
  }

  void initial_basis() {
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lo_[j])) {
        state_[j] = VarState::AtLower;
        value_[j] = lo_[j];
      } else if (std::isfinite(hi_[j])) {
        state_[j] = VarState::AtUpper;
        value_[j] = hi_[j];
      } else {
        state_[j] = VarState::Free;
        value_[j] = 0.0;
      }
    }
    std::vector<double> activity(m_, 0.0);
    for (int j = 0; j < n_; ++j)
      if (value_[j] != 0.0)
        for (auto [r, a] : lp_.columns[j]) activity[r] += a * value_[j];
    head_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      const int r = n_ + i;
      const int art = n_ + m_ + i;
      const double act = activity[i];
      if (act >= lo_[r] - opts_.feasibility_tolerance && act <= hi_[r] + opts_.feasibility_tolerance) {
        head_[i] = r;
        state_[r] = VarState::Basic;
        value_[r] = act;
        state_[art] = VarState::AtLower;
        value_[art] = 0.0;
      } else {
        const double bound = act < lo_[r] ? lo_[r] : hi_[r];
        state_[r] = act < lo_[r] ? VarState::AtLower : VarState::AtUpper;
        value_[r] = bound;
        // A x − r + s·a = 0  =>  s·a = bound − act.
        art_sign_[i] = bound - act >= 0.0 ? 1.0 : -1.0;
        head_[i] = art;
        state_[art] = VarState::Basic;
        value_[art] = std::abs(bound - act);
      }
    }
    refactor();
  }

  // Dense Gauss-Jordan inverse of the basis matrix, then recompute basic values.
  void refactor() {
    std::vector<double> b(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i)
      for_column(head_[i], [&](int r, double a) { b[static_cast<std::size_t>(r) * m_ + i] = a; });
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    for (int col = 0; col < m_; ++col) {
      int piv = col;
      double best = std::abs(b[static_cast<std::size_t>(col) * m_ + col]);
      for (int r = col + 1; r < m_; ++r) {
        const double v = std::abs(b[static_cast<std::size_t>(r) * m_ + col]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best < 1e-12) throw std::runtime_error("simplex: singular basis");
      if (piv != col) {
        for (int c = 0; c < m_; ++c) {
          std::swap(b[static_cast<std::size_t>(piv) * m_ + c], b[static_cast<std::size_t>(col) * m_ + c]);
          std::swap(binv_[static_cast<std::size_t>(piv) * m_ + c], binv_[static_cast<std::size_t>(col) * m_ + c]);
        }
      }
      const double inv = 1.0 / b[static_cast<std::size_t>(col) * m_ + col];
      for (int c = 0; c < m_; ++c) {
        b[static_cast<std::size_t>(col) * m_ + c] *= inv;
        binv_[static_cast<std::size_t>(col) * m_ + c] *= inv;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = b[static_cast<std::size_t>(r) * m_ + col];
        if (f == 0.0) continue;
        for (int c = 0; c < m_; ++c) {
          b[static_cast<std::size_t>(r) * m_ + c] -= f * b[static_cast<std::size_t>(col) * m_ + c];
          binv_[static_cast<std::size_t>(r) * m_ + c] -= f * binv_[static_cast<std::size_t>(col) * m_ + c];
        }
      }
    }
    // x_B = −B⁻¹ N x_N
    std::vector<double> rhs(m_, 0.0);
    for (int j = 0; j < n_ + 2 * m_; ++j) {
      if (state_[j] == VarState::Basic || value_[j] == 0.0) continue;
      for_column(j, [&](int r, double a) { rhs[r] -= a * value_[j]; });
    }
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (int r = 0; r < m_; ++r) v += binv_[static_cast<std::size_t>(i) * m_ + r] * rhs[r];
      value_[head_[i]] = v;
    }
  }

  void compute_duals() {
    y_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[head_[i]];
      if (cb == 0.0) continue;
      for (int r = 0; r < m_; ++r) y_[r] += cb * binv_[static_cast<std::size_t>(i) * m_ + r];
    }
  }

  double reduced_cost(int j) const {
    double d = cost_[j];
    for_column(j, [&](int r, double a) { d -= y_[r] * a; });
    return d;
  }

  LpStatus iterate() {
    int degenerate_run = 0;
    bool bland = false;
    int since_refactor = 0;
    std::vector<double> w(m_);
    for (;;) {
      if (iterations_ >= opts_.max_iterations) return LpStatus::IterationLimit;
      compute_duals();

      // Pricing.
      int enter = -1;
      double enter_dir = 0.0;
      double best = 0.0;
      for (int j = 0; j < n_ + 2 * m_; ++j) {
        const VarState s = state_[j];
        if (s == VarState::Basic) continue;
        if (lo_[j] == hi_[j]) continue;
        const double d = reduced_cost(j);
        double dir = 0.0;
        if ((s == VarState::AtLower || s == VarState::Free) && d < -opts_.optimality_tolerance) dir = 1.0;
        else if ((s == VarState::AtUpper || s == VarState::Free) && d > opts_.optimality_tolerance) dir = -1.0;
        if (dir == 0.0) continue;
        if (bland) {
          enter = j;
          enter_dir = dir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          enter = j;
          enter_dir = dir;
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      // w = B⁻¹ a_enter
      std::fill(w.begin(), w.end(), 0.0);
      for_column(enter, [&](int r, double a) {
        for (int i = 0; i < m_; ++i) w[i] += binv_[static_cast<std::size_t>(i) * m_ + r] * a;
      });

      // Ratio test: x_B(θ) = x_B − θ·dir·w.
      double theta = hi_[enter] - lo_[enter];
      int leave_row = -1;
      double leave_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double wi = w[i] * enter_dir;
        if (std::abs(wi) <= opts_.pivot_tolerance) continue;
        const int b = head_[i];
        double limit;
        if (wi > 0.0) {
          if (!std::isfinite(lo_[b])) continue;
          limit = (value_[b] - lo_[b]) / wi;
        } else {
          if (!std::isfinite(hi_[b])) continue;
          limit = (hi_[b] - value_[b]) / (-wi);
        }
        limit = std::max(limit, 0.0);
        bool take = false;
        if (leave_row < 0) take = limit <= theta;
        else if (limit < theta - 1e-12) take = true;
        else if (limit <= theta + 1e-12)
          take = bland ? head_[i] < head_[leave_row] : std::abs(wi) > std::abs(leave_pivot);
        if (take) {
          theta = std::min(theta, limit);
          leave_row = i;
          leave_pivot = wi;
        }
      }
      if (!std::isfinite(theta)) return LpStatus::Unbounded;
      ++iterations_;

      if (theta <= 1e-12) {
        if (++degenerate_run >= opts_.degenerate_switch) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }

      // Update values.
      for (int i = 0; i < m_; ++i) value_[head_[i]] -= theta * enter_dir * w[i];
      value_[enter] += theta * enter_dir;

      if (leave_row < 0) {
        // Bound flip of the entering variable.
        state_[enter] = enter_dir > 0.0 ? VarState::AtUpper : VarState::AtLower;
        value_[enter] = enter_dir > 0.0 ? hi_[enter] : lo_[enter];
        continue;
      }

      const int leave = head_[leave_row];
      const bool to_lower = leave_pivot > 0.0;
      state_[leave] = to_lower ? VarState::AtLower : VarState::AtUpper;
      value_[leave] = to_lower ? lo_[leave] : hi_[leave];
      state_[enter] = VarState::Basic;
      head_[leave_row] = enter;

      // Eta update of B⁻¹.
      const double piv = w[leave_row];
      for (int c = 0; c < m_; ++c) binv_[static_cast<std::size_t>(leave_row) * m_ + c] /= piv;
      for (int i = 0; i < m_; ++i) {
        if (i == leave_row || w[i] == 0.0) continue;
        const double f = w[i];
        for (int c = 0; c < m_; ++c)
          binv_[static_cast<std::size_t>(i) * m_ + c] -= f * binv_[static_cast<std::size_t>(leave_row) * m_ + c];
      }
      if (++since_refactor >= opts_.refactor_interval) {
        refactor();
        since_refactor = 0;
      }
    }
  }

  const LinearProgram& lp_;
  SimplexOptions opts_;
  int n_;
  int m_;
  std::vector<double> lo_, hi_, value_, cost_, art_sign_, binv_, y_;
  std::vector<VarState> state_;
  std::vector<int> head_;
  int iterations_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& opts) {
  if (lp.lower.size() != lp.num_cols() || lp.upper.size() != lp.num_cols() ||
      lp.columns.size() != lp.num_cols() || lp.row_upper.size() != lp.num_rows())
    throw ConfigError("solve_lp: inconsistent dimensions");
  for (const auto& col : lp.columns)
    for (auto [r, a] : col)
      if (r < 0 || r >= static_cast<int>(lp.num_rows()))
        throw ConfigError("solve_lp: row index out of range");
  Simplex s(lp, opts);
  return s.run();
}

}  // namespace hcg
