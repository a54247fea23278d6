#include "fcurp/simplex.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "fcurp/errors.hpp"

namespace fcurp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-7;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-8;
constexpr int kStallLimit = 600;  // degenerate pivots before Bland-style rules

void slack_bounds(char sense, double& lb, double& ub) {
  switch (sense) {
    case '<': lb = 0; ub = kInf; break;
    case '=': lb = 0; ub = 0; break;
    case '>': lb = -kInf; ub = 0; break;
    default: throw BackendFailure("unknown row sense");
  }
}

}  // namespace

int DualSimplexLp::add_var(double lb, double ub, double obj) {
  if (!rows_.empty()) throw BackendFailure("variables must be added before rows");
  lb_.push_back(lb);
  ub_.push_back(ub);
  cost_.push_back(obj);
  return n_struct_++;
}

int DualSimplexLp::add_row(const std::vector<std::pair<int, double>>& coeffs, char sense,
                           double rhs) {
  for (auto [j, a] : coeffs) {
    (void)a;
    if (j < 0 || j >= n_struct_) throw BackendFailure("row references unknown variable");
  }
  double slb, sub;
  slack_bounds(sense, slb, sub);
  rows_.push_back(Row{coeffs, sense, rhs});
  // Slack columns live after the structural block, in row order, so the new
  // slack is simply the last column.
  lb_.push_back(slb);
  ub_.push_back(sub);
  cost_.push_back(0.0);
  if (built_) append_built_row(rows_.size() - 1);
  return static_cast<int>(rows_.size()) - 1;
}

double DualSimplexLp::nonbasic_value(int j) const {
  return state_[j] == kAtLower ? lb_[j] : ub_[j];
}

void DualSimplexLp::shift_nonbasic(int j, double delta) {
  if (delta == 0) return;
  int m = num_rows();
  for (int i = 0; i < m; ++i) beta_[i] -= tab_[i][j] * delta;
}

void DualSimplexLp::set_var_bounds(int j, double lb, double ub) {
  if (!built_) {
    lb_[j] = lb;
    ub_[j] = ub;
    return;
  }
  if (state_[j] >= 0) {  // basic: bounds move, value stays; dual pass repairs
    lb_[j] = lb;
    ub_[j] = ub;
    return;
  }
  double old_val = nonbasic_value(j);
  lb_[j] = lb;
  ub_[j] = ub;
  // Re-anchor to a dual-feasible bound: d >= 0 wants the lower bound,
  // d <= 0 the upper; a fixed column can sit anywhere.
  int side;
  if (lb == ub) {
    side = kAtLower;
  } else if (d_[j] > kDualTol) {
    side = kAtLower;
  } else if (d_[j] < -kDualTol) {
    side = kAtUpper;
  } else {
    side = state_[j];
    if (side == kAtLower && !std::isfinite(lb)) side = kAtUpper;
    if (side == kAtUpper && !std::isfinite(ub)) side = kAtLower;
  }
  state_[j] = side;
  shift_nonbasic(j, nonbasic_value(j) - old_val);
}

void DualSimplexLp::build() {
  int m = num_rows();
  int n = n_total();
  tab_.assign(m, {});
  beta_.assign(m, 0);
  basis_col_.assign(m, 0);
  state_.assign(n, kAtLower);
  d_ = cost_;

  for (int j = 0; j < n_struct_; ++j) {
    if (!std::isfinite(lb_[j])) state_[j] = kAtUpper;
    bool fixed = lb_[j] == ub_[j];
    if (!fixed) {
      if (state_[j] == kAtLower && d_[j] < -kDualTol) {
        if (!std::isfinite(ub_[j])) throw BackendFailure("dual infeasible start");
        state_[j] = kAtUpper;
      } else if (state_[j] == kAtUpper && d_[j] > kDualTol) {
        if (!std::isfinite(lb_[j])) throw BackendFailure("dual infeasible start");
        state_[j] = kAtLower;
      }
    }
    if (state_[j] == kAtLower && !std::isfinite(lb_[j]))
      throw BackendFailure("free variables are unsupported");
  }

  for (int i = 0; i < m; ++i) {
    auto& row = tab_[i];
    row.assign(n, 0.0);
    row.reserve(n + 512);
    for (auto [j, a] : rows_[i].coeffs) row[j] += a;
    int slack = n_struct_ + i;
    row[slack] = 1.0;
    basis_col_[i] = slack;
    state_[slack] = i;
    d_[slack] = 0;
    double activity = 0;
    for (auto [j, a] : rows_[i].coeffs) activity += a * nonbasic_value(j);
    beta_[i] = rows_[i].rhs - activity;
  }
  built_ = true;
  pivots_since_build_ = 0;
}

void DualSimplexLp::append_built_row(std::size_t idx) {
  int m = num_rows();  // already includes the new row
  int n = n_total();
  int slack = n_struct_ + static_cast<int>(idx);

  // Existing columns shift: slack columns previously sat at n_struct_..; the
  // new slack is appended last, so old tableau columns keep their indices.
  for (auto& row : tab_) row.push_back(0.0);
  d_.push_back(0.0);
  state_.push_back(static_cast<int>(idx));

  std::vector<double> row(n, 0.0);
  for (auto [j, a] : rows_[idx].coeffs) row[j] += a;
  row[slack] = 1.0;

  // Reduce against the current basis so basic columns vanish from the row.
  for (int i = 0; i < m - 1; ++i) {
    double a = row[basis_col_[i]];
    if (a != 0.0) {
      const auto& pivot_row = tab_[i];
      for (int j = 0; j < n; ++j) row[j] -= a * pivot_row[j];
    }
  }

  double activity = 0;
  for (auto [j, a] : rows_[idx].coeffs) {
    double v = state_[j] >= 0 ? beta_[state_[j]] : nonbasic_value(j);
    activity += a * v;
  }
  row.reserve(n + 512);
  tab_.push_back(std::move(row));
  beta_.push_back(rows_[idx].rhs - activity);
  basis_col_.push_back(slack);
}

double DualSimplexLp::value(int j) const {
  if (!built_) return 0;
  return state_[j] >= 0 ? beta_[state_[j]] : nonbasic_value(j);
}

double DualSimplexLp::objective() const {
  double obj = 0;
  for (int j = 0; j < n_struct_; ++j)
    if (cost_[j] != 0) obj += cost_[j] * value(j);
  return obj;
}

double DualSimplexLp::max_residual() const {
  double worst = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    double activity = 0;
    for (auto [j, a] : rows_[i].coeffs) activity += a * value(j);
    double s = value(n_struct_ + static_cast<int>(i));
    worst = std::max(worst, std::abs(activity + s - rows_[i].rhs));
  }
  return worst;
}

void DualSimplexLp::reset_to_slack_basis() { built_ = false; }

LpStatus DualSimplexLp::solve(const std::function<bool()>& abort) {
  if (!built_) build();
  int m = num_rows();
  int n = n_total();
  long max_iters = 5000 + 40L * m;
  int stall = 0;
  double last_infeas = kInf;
  bool recertified = false;

  for (long iter = 0; iter < max_iters; ++iter) {
    if (abort && (iter & 63) == 0 && abort()) return LpStatus::Aborted;

    bool bland = stall > kStallLimit;
    int r = -1;
    double worst = kPrimalTol;
    double total_infeas = 0;
    for (int i = 0; i < m; ++i) {
      int c = basis_col_[i];
      double viol = std::max(lb_[c] - beta_[i], beta_[i] - ub_[c]);
      if (viol > kPrimalTol) {
        total_infeas += viol;
        if (bland) {
          if (r == -1 || basis_col_[i] < basis_col_[r]) r = i;
        } else if (viol > worst) {
          worst = viol;
          r = i;
        }
      }
    }
    if (r == -1) return LpStatus::Optimal;
    if (total_infeas < last_infeas - 1e-12) {
      last_infeas = total_infeas;
      stall = 0;
    } else {
      ++stall;
    }

    int p = basis_col_[r];
    bool leave_low = beta_[r] < lb_[p];  // basic variable must increase
    const auto& row = tab_[r];

    int q = -1;
    double best_ratio = kInf, best_alpha = 0;
    for (int j = 0; j < n; ++j) {
      if (state_[j] >= 0 || lb_[j] == ub_[j]) continue;
      double alpha = row[j];
      if (std::abs(alpha) <= kPivotTol) continue;
      bool ok = leave_low ? (state_[j] == kAtLower ? alpha < 0 : alpha > 0)
                          : (state_[j] == kAtLower ? alpha > 0 : alpha < 0);
      if (!ok) continue;
      double ratio = std::abs(d_[j]) / std::abs(alpha);
      bool better;
      if (bland) {
        better = q == -1 || ratio < best_ratio - 1e-12;
      } else {
        better = q == -1 || ratio < best_ratio - 1e-12 ||
                 (ratio < best_ratio + 1e-12 && std::abs(alpha) > std::abs(best_alpha));
      }
      if (better) {
        q = j;
        best_ratio = ratio;
        best_alpha = alpha;
      }
    }
    if (q == -1) {
      // No admissible pivot proves infeasibility only while the tableau is
      // numerically trustworthy; accumulated eliminations on a reused basis
      // can shrink a genuine pivot entry below kPivotTol. Recertify once
      // from a fresh factorization before giving up.
      if (pivots_since_build_ > 0 && !recertified) {
        recertified = true;
        build();
        stall = 0;
        last_infeas = kInf;
        continue;
      }
      return LpStatus::Infeasible;
    }

    double v_p = leave_low ? lb_[p] : ub_[p];
    double v_q = nonbasic_value(q);
    double alpha = row[q];
    double delta = (beta_[r] - v_p) / alpha;

    for (int i = 0; i < m; ++i)
      if (i != r && tab_[i][q] != 0.0) beta_[i] -= tab_[i][q] * delta;
    beta_[r] = v_q + delta;

    double inv = 1.0 / alpha;
    auto& prow = tab_[r];
    for (int j = 0; j < n; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      double a = tab_[i][q];
      if (a == 0.0) continue;
      auto& irow = tab_[i];
      for (int j = 0; j < n; ++j) irow[j] -= a * prow[j];
      irow[q] = 0.0;
    }
    double dq = d_[q];
    if (dq != 0.0) {
      for (int j = 0; j < n; ++j) d_[j] -= dq * prow[j];
    }
    d_[q] = 0.0;

    state_[p] = leave_low ? kAtLower : kAtUpper;
    basis_col_[r] = q;
    state_[q] = r;
    ++pivots_;
    ++pivots_since_build_;
  }
  return LpStatus::IterLimit;
}

}  // namespace fcurp
