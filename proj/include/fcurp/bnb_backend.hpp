#pragma once

#include <memory>

#include "fcurp/mip_backend.hpp"
#include "fcurp/simplex.hpp"

namespace fcurp {

// Branch-and-bound over the dual simplex LP. Best-first on the node bound,
// branching on the most fractional binary. Deterministic for fixed inputs.
class BnbBackend : public MipBackend {
 public:
  int add_continuous_var(double lb, double ub, double obj) override;
  int add_binary_var(double obj) override;
  void set_var_bounds(int j, double lb, double ub) override;
  void add_linear_constraint(const LinearConstraint& c) override;
  void set_time_limit(double seconds) override;
  void set_gap_target(double fraction) override;
  void set_mip_start(const std::vector<double>& values) override;
  bool supports_integer_solution_hook() const override { return true; }
  void set_integer_solution_hook(
      std::function<std::vector<LinearConstraint>(const std::vector<double>&)> hook) override;
  MipResult solve() override;

  long lazy_rows_added() const { return lazy_rows_; }

 private:
  DualSimplexLp lp_;
  std::vector<bool> integer_;
  std::vector<double> obj_coef_;
  std::vector<LinearConstraint> constraints_;
  double time_limit_ = 7200;
  double gap_target_ = 0;
  std::vector<double> start_;
  std::function<std::vector<LinearConstraint>(const std::vector<double>&)> hook_;
  long lazy_rows_ = 0;

  bool start_feasible(const std::vector<double>& v) const;
};

}  // namespace fcurp
