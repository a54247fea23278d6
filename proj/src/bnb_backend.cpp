#include "fcurp/bnb_backend.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "fcurp/errors.hpp"

namespace fcurp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;
constexpr double kObjTol = 1e-9;

struct Node {
  double bound;
  int depth;
  long seq;
  std::vector<std::pair<int, int>> fixes;  // (var, value)
  // Branch that created this node, for pseudocost updates. bdist is the
  // fractional distance the branch moved the variable.
  int bvar = -1;
  int bdir = 0;
  double bdist = 1;
};

struct NodeWorse {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  }
};

}  // namespace

int BnbBackend::add_continuous_var(double lb, double ub, double obj) {
  integer_.push_back(false);
  obj_coef_.push_back(obj);
  return lp_.add_var(lb, ub, obj);
}

int BnbBackend::add_binary_var(double obj) {
  integer_.push_back(true);
  obj_coef_.push_back(obj);
  return lp_.add_var(0, 1, obj);
}

void BnbBackend::set_var_bounds(int j, double lb, double ub) { lp_.set_var_bounds(j, lb, ub); }

void BnbBackend::add_linear_constraint(const LinearConstraint& c) {
  constraints_.push_back(c);
  lp_.add_row(c.coeffs, c.sense, c.rhs);
}

void BnbBackend::set_time_limit(double seconds) { time_limit_ = seconds; }
void BnbBackend::set_gap_target(double fraction) { gap_target_ = fraction; }
void BnbBackend::set_mip_start(const std::vector<double>& values) { start_ = values; }

void BnbBackend::set_integer_solution_hook(
    std::function<std::vector<LinearConstraint>(const std::vector<double>&)> hook) {
  hook_ = std::move(hook);
}

bool BnbBackend::start_feasible(const std::vector<double>& v) const {
  if (v.size() != integer_.size()) return false;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] < lp_.var_lb(static_cast<int>(j)) - kIntTol) return false;
    if (v[j] > lp_.var_ub(static_cast<int>(j)) + kIntTol) return false;
    if (integer_[j] && std::abs(v[j] - std::round(v[j])) > kIntTol) return false;
  }
  for (const auto& c : constraints_) {
    double act = 0;
    for (auto [j, a] : c.coeffs) act += a * v[j];
    if (c.sense == '<' && act > c.rhs + kIntTol) return false;
    if (c.sense == '>' && act < c.rhs - kIntTol) return false;
    if (c.sense == '=' && std::abs(act - c.rhs) > kIntTol) return false;
  }
  return true;
}

MipResult BnbBackend::solve() {
  using clock = std::chrono::steady_clock;
  auto deadline = clock::now() + std::chrono::duration_cast<clock::duration>(
                                     std::chrono::duration<double>(time_limit_));
  auto timed_out = [&] { return clock::now() >= deadline; };

  int nv = static_cast<int>(integer_.size());
  MipResult res;

  std::vector<double> incumbent;
  double ub = kInf;
  if (!start_.empty() && start_feasible(start_)) {
    incumbent = start_;
    ub = 0;
    for (int j = 0; j < nv; ++j) ub += obj_coef_[j] * start_[j];
    res.start_accepted = true;
  }

  // Original bounds, restored on every node switch and at exit.
  std::vector<double> base_lb(nv), base_ub(nv);
  for (int j = 0; j < nv; ++j) {
    base_lb[j] = lp_.var_lb(j);
    base_ub[j] = lp_.var_ub(j);
  }
  std::vector<std::pair<int, int>> applied;
  auto switch_fixes = [&](const std::vector<std::pair<int, int>>& fixes) {
    for (auto [j, v] : applied) {
      (void)v;
      lp_.set_var_bounds(j, base_lb[j], base_ub[j]);
    }
    for (auto [j, v] : fixes) lp_.set_var_bounds(j, v, v);
    applied = fixes;
  };

  auto snapshot = [&] {
    std::vector<double> vals(nv);
    for (int j = 0; j < nv; ++j) {
      vals[j] = lp_.value(j);
      if (integer_[j]) vals[j] = std::round(vals[j]);
    }
    return vals;
  };
  // Pseudocosts: observed dual-bound gain per unit of fractional distance,
  // kept per variable and direction. Unobserved pairs fall back to the
  // global average, so the first branchings reduce to most-fractional.
  std::vector<double> pc_sum_dn(nv, 0), pc_sum_up(nv, 0);
  std::vector<long> pc_cnt_dn(nv, 0), pc_cnt_up(nv, 0);
  double pc_glob_sum = 0;
  long pc_glob_cnt = 0;
  auto pc_rate = [&](int j, int dir) {
    long cnt = dir ? pc_cnt_up[j] : pc_cnt_dn[j];
    if (cnt > 0) return (dir ? pc_sum_up[j] : pc_sum_dn[j]) / double(cnt);
    return pc_glob_cnt > 0 ? pc_glob_sum / double(pc_glob_cnt) : 1.0;
  };
  auto pc_update = [&](const Node& node, double child_bound) {
    if (node.bvar < 0 || !std::isfinite(child_bound)) return;
    double rate = std::max(child_bound - node.bound, 0.0) / node.bdist;
    (node.bdir ? pc_sum_up : pc_sum_dn)[node.bvar] += rate;
    ++(node.bdir ? pc_cnt_up : pc_cnt_dn)[node.bvar];
    pc_glob_sum += rate;
    ++pc_glob_cnt;
  };

  auto pick_branch = [&] {
    int best = -1;
    double best_score = -1, best_frac = 0;
    for (int j = 0; j < nv; ++j) {
      if (!integer_[j] || lp_.var_lb(j) == lp_.var_ub(j)) continue;
      double v = lp_.value(j);
      double f = v - std::floor(v);
      double frac = std::min(f, 1 - f);
      if (frac <= kIntTol) continue;
      double score =
          std::max(pc_rate(j, 0) * f, 1e-12) * std::max(pc_rate(j, 1) * (1 - f), 1e-12);
      bool better = score > best_score * (1 + 1e-12) ||
                    (score > best_score * (1 - 1e-12) &&
                     (frac > best_frac + 1e-12 ||
                      (best >= 0 && frac > best_frac - 1e-12 &&
                       std::abs(obj_coef_[j]) > std::abs(obj_coef_[best]))));
      if (better) {
        best = j;
        best_score = score;
        best_frac = frac;
      }
    }
    return best;
  };

  // Objective minimized over the variable boxes alone: a valid bound even
  // before the first LP solve, so a timeout at the root stays finite.
  double box_bound = 0;
  for (int j = 0; j < nv; ++j) {
    double c = obj_coef_[j];
    if (c == 0) continue;
    box_bound += c * (c > 0 ? base_lb[j] : base_ub[j]);
  }

  std::priority_queue<Node, std::vector<Node>, NodeWorse> open;
  long seq = 0;
  open.push(Node{box_bound, 0, seq++, {}});

  double open_min_bound = -kInf;
  bool out_of_time = false;
  bool gap_met = false;

  while (!open.empty()) {
    Node node = open.top();
    open_min_bound = node.bound;

    if (!incumbent.empty()) {
      double lb_glob = std::min(node.bound, ub);
      if (node.bound >= ub - kObjTol) {
        open_min_bound = ub;
        break;  // nothing left can improve: proven optimal
      }
      if (ub > 0 && (ub - lb_glob) / ub <= gap_target_ + 1e-12) break;
      if (ub <= 0 && lb_glob >= ub - kObjTol) break;
    }
    if (timed_out()) {
      out_of_time = true;
      break;
    }
    open.pop();

    // Plunge: after expanding, keep descending into the child on the side
    // the LP already leans toward and queue the sibling. Dives reach
    // integer leaves quickly, which is where incumbents come from.
    bool diving = true;
    while (diving) {
      diving = false;
      if (node.bound >= ub - kObjTol) break;
      if (!incumbent.empty() && ub > 0) {
        // Same stop rule as the pop-time check; the node in hand counts
        // toward the dual bound alongside the queue.
        double glob = open.empty() ? node.bound : std::min(node.bound, open.top().bound);
        if ((ub - std::min(glob, ub)) / ub <= gap_target_ + 1e-12) {
          open_min_bound = glob;
          open.push(node);
          gap_met = true;
          break;
        }
      }
      if (timed_out()) {
        out_of_time = true;
        open.push(node);  // unexplored; keeps the dual bound honest
        break;
      }
      ++res.nodes;

      switch_fixes(node.fixes);
      LpStatus st = lp_.solve(timed_out);
      if (st == LpStatus::IterLimit) {
        lp_.reset_to_slack_basis();
        st = lp_.solve(timed_out);
        if (st == LpStatus::IterLimit) throw BackendFailure("simplex iteration limit");
      }
      if (st == LpStatus::Aborted) {
        out_of_time = true;
        open.push(node);
        break;
      }
      if (st == LpStatus::Infeasible) {
        pc_update(node, ub);  // fixing this way killed the node
        break;
      }

      double bound = lp_.objective();
      pc_update(node, bound);
      while (true) {
        if (bound >= ub - kObjTol) break;
        int j = pick_branch();
        if (j >= 0) {
          // Reduced-cost fixing: a nonbasic binary whose reduced cost exceeds
          // the remaining gap cannot move off its bound in any improving
          // descendant. The margin absorbs tableau drift in d.
          std::vector<std::pair<int, int>> child = node.fixes;
          if (std::isfinite(ub)) {
            double gap = ub - bound + 1e-6;
            for (int v = 0; v < nv; ++v) {
              if (!integer_[v] || lp_.var_lb(v) == lp_.var_ub(v) || lp_.basic(v)) continue;
              if (std::abs(lp_.reduced_cost(v)) > gap)
                child.emplace_back(v, int(std::lround(lp_.value(v))));
            }
          }
          double f = lp_.value(j) - std::floor(lp_.value(j));
          Node down{bound, node.depth + 1, seq++,
                    [&] {
                      auto fx = child;
                      fx.emplace_back(j, 0);
                      return fx;
                    }(),
                    j, 0, f};
          Node up{bound, node.depth + 1, seq++,
                  [&] {
                    auto fx = child;
                    fx.emplace_back(j, 1);
                    return fx;
                  }(),
                  j, 1, 1 - f};
          bool go_up = f >= 0.5;
          open.push(go_up ? std::move(down) : std::move(up));
          node = go_up ? std::move(up) : std::move(down);
          diving = true;
          break;
        }

        // Integer-feasible point. Give the lazy hook a chance to cut it off.
        std::vector<double> vals = snapshot();
        if (hook_) {
          std::vector<LinearConstraint> cuts = hook_(vals);
          if (!cuts.empty()) {
            for (const auto& c : cuts) {
              lp_.add_row(c.coeffs, c.sense, c.rhs);
              ++lazy_rows_;
            }
            st = lp_.solve(timed_out);
            if (st == LpStatus::IterLimit) {
              lp_.reset_to_slack_basis();
              st = lp_.solve(timed_out);
              if (st == LpStatus::IterLimit) throw BackendFailure("simplex iteration limit");
            }
            if (st == LpStatus::Aborted) {
              out_of_time = true;
              break;
            }
            if (st == LpStatus::Infeasible) break;
            bound = lp_.objective();
            continue;
          }
        }
        if (lp_.max_residual() > 1e-6) {
          // Numerical drift: rebuild and re-derive the candidate.
          lp_.reset_to_slack_basis();
          st = lp_.solve(timed_out);
          if (st != LpStatus::Optimal) {
            out_of_time = st == LpStatus::Aborted;
            break;
          }
          bound = lp_.objective();
          continue;
        }
        double cand = 0;
        for (int v = 0; v < nv; ++v) cand += obj_coef_[v] * vals[v];
        if (cand < ub - kObjTol) {
          ub = cand;
          incumbent = std::move(vals);
        }
        break;
      }
      if (out_of_time) break;
    }
    if (out_of_time || gap_met) break;
  }

  switch_fixes({});

  if (out_of_time) {
    double open_bound = open.empty() ? ub : open.top().bound;
    res.dual_bound = std::min(std::isfinite(open_bound) ? open_bound : -kInf, ub);
    if (incumbent.empty()) {
      res.status = MipStatus::NoSolution;
    } else {
      res.status = MipStatus::Feasible;
      res.values = incumbent;
      res.objective = ub;
    }
    return res;
  }

  if (incumbent.empty()) {
    res.status = MipStatus::Infeasible;
    res.dual_bound = kInf;
    return res;
  }
  res.status = MipStatus::Optimal;
  res.values = incumbent;
  res.objective = ub;
  res.dual_bound = open.empty() ? ub : std::min(std::max(open_min_bound, -kInf), ub);
  if (!std::isfinite(res.dual_bound)) res.dual_bound = ub;
  return res;
}

}  // namespace fcurp
