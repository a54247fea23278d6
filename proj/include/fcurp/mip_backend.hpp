#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace fcurp {

struct LinearConstraint {
  std::vector<std::pair<int, double>> coeffs;
  char sense = '<';  // '<', '=', '>'
  double rhs = 0;
};

enum class MipStatus {
  Optimal,     // proved, or gap target met
  Feasible,    // limit hit with an incumbent
  Infeasible,  // proved empty
  NoSolution,  // limit hit without an incumbent
};

struct MipResult {
  MipStatus status = MipStatus::NoSolution;
  std::vector<double> values;  // incumbent, empty when none
  double objective = 0;
  double dual_bound = 0;
  long nodes = 0;
  bool start_accepted = false;
};

// Minimal solver contract the models are written against. The hook is called
// on every integer-feasible candidate; returned constraints are added lazily
// and the candidate is rejected unless the hook returns none.
class MipBackend {
 public:
  virtual ~MipBackend() = default;
  virtual int add_continuous_var(double lb, double ub, double obj) = 0;
  virtual int add_binary_var(double obj) = 0;
  // Tighten or fix a variable's box (variable-bound form of a constraint).
  virtual void set_var_bounds(int j, double lb, double ub) = 0;
  virtual void add_linear_constraint(const LinearConstraint& c) = 0;
  virtual void set_time_limit(double seconds) = 0;
  virtual void set_gap_target(double fraction) = 0;
  virtual void set_mip_start(const std::vector<double>& values) = 0;
  virtual bool supports_integer_solution_hook() const = 0;
  virtual void set_integer_solution_hook(
      std::function<std::vector<LinearConstraint>(const std::vector<double>&)> hook) = 0;
  virtual MipResult solve() = 0;
};

}  // namespace fcurp
