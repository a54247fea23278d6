#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace fcurp {

enum class LpStatus { Optimal, Infeasible, IterLimit, Aborted };

// Bounded-variable LP, min c'x, solved by dual simplex on a dense tableau.
// The slack basis is dual feasible for every model this project builds
// (objective coefficients are nonnegative), and bound changes plus row
// additions preserve dual feasibility, so a branch-and-bound driver can
// re-solve warm from the current basis after every node transition or cut.
class DualSimplexLp {
 public:
  // Structural variables must be added before the first row.
  int add_var(double lb, double ub, double obj);
  // sense: '<', '=', '>'. Rows may be added at any time, including between
  // solves; the new slack enters the basis directly.
  int add_row(const std::vector<std::pair<int, double>>& coeffs, char sense, double rhs);

  void set_var_bounds(int j, double lb, double ub);
  double var_lb(int j) const { return lb_[j]; }
  double var_ub(int j) const { return ub_[j]; }
  int num_vars() const { return n_struct_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  LpStatus solve(const std::function<bool()>& abort = {});
  double objective() const;
  double value(int j) const;

  // Valid at optimality of the latest solve; zero for basic columns.
  double reduced_cost(int j) const { return built_ ? d_[j] : 0; }
  bool basic(int j) const { return built_ && state_[j] >= 0; }

  // Max primal residual of the original rows at the current point.
  double max_residual() const;
  // Drift recovery: drop the factorization and restart from the slack basis.
  void reset_to_slack_basis();

  long pivots() const { return pivots_; }

 private:
  struct Row {
    std::vector<std::pair<int, double>> coeffs;  // structural columns only
    char sense;
    double rhs;
  };

  static constexpr int kAtLower = -1;
  static constexpr int kAtUpper = -2;

  int n_struct_ = 0;
  std::vector<double> lb_, ub_, cost_;  // structural then slack columns
  std::vector<Row> rows_;

  bool built_ = false;
  std::vector<std::vector<double>> tab_;  // m x (n_struct + m)
  std::vector<double> beta_;              // basic variable values per row
  std::vector<int> basis_col_;
  std::vector<int> state_;  // kAtLower / kAtUpper / row index when basic
  std::vector<double> d_;   // reduced costs
  long pivots_ = 0;
  long pivots_since_build_ = 0;

  int n_total() const { return n_struct_ + static_cast<int>(rows_.size()); }
  void build();
  void append_built_row(std::size_t idx);
  double nonbasic_value(int j) const;
  void shift_nonbasic(int j, double delta);
};

}  // namespace fcurp
