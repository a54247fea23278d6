#include "fcurp/oracle.hpp"

#include <algorithm>
#include <vector>

#include "fcurp/errors.hpp"
#include "fcurp/geometry.hpp"

namespace fcurp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Search {
  const RoutingGraph& g;
  double U, R;
  int cap;
  int full_mask;
  std::vector<double> min_in;  // cheapest way to enter each vertex
  std::vector<int> walk;
  std::vector<int> best_walk;
  double best;

  Search(const RoutingGraph& gr, double u, double r, int visit_cap, double prune)
      : g(gr), U(u), R(r), cap(visit_cap), full_mask((1 << gr.m) - 1), best(prune) {
    int n = g.n();
    min_in.assign(n, kInf);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (i != j) min_in[j] = std::min(min_in[j], g.f[i][j]);
  }

  // Every unvisited target still needs one incoming leg, and so does s0
  // unless the walk is already parked there with nothing left to do.
  double remaining_lb(int cur, int mask) const {
    double lb = 0;
    for (int t = 0; t < g.m; ++t)
      if (!(mask & (1 << t))) lb += min_in[t];
    if (cur != g.s0() || mask != full_mask) lb += min_in[g.s0()];
    return lb;
  }

  void dfs(int cur, double fuel, int mask, int site_visits, int last_site, double cost) {
    if (cost + remaining_lb(cur, mask) >= best) return;
    if (mask == full_mask && cur == g.s0()) {
      best = cost;
      best_walk = walk;
      return;
    }

    std::vector<int> order;
    for (int v = 0; v < g.n(); ++v)
      if (v != cur) order.push_back(v);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.f[cur][a] < g.f[cur][b]; });

    for (int v : order) {
      double leg = g.f[cur][v];
      if (leg > fuel + kDistTol) continue;
      if (v < g.m) {
        if (mask & (1 << v)) continue;
        walk.push_back(v);
        dfs(v, fuel - leg, mask | (1 << v), site_visits, last_site, cost + leg);
        walk.pop_back();
      } else {
        if (site_visits >= cap) continue;
        if (g.r[g.site_index(last_site)][g.site_index(v)] > R + kDistTol) continue;
        walk.push_back(v);
        dfs(v, U, mask, site_visits + 1, v, cost + leg);
        walk.pop_back();
      }
    }
  }
};

}  // namespace

RouteSolution brute_force_opt(const RoutingGraph& g, double U, double R, OracleConfig cfg) {
  if (g.m > cfg.max_targets || g.p > cfg.max_sites)
    throw TooLarge("instance exceeds the oracle caps: " + std::to_string(g.m) + " targets, " +
                   std::to_string(g.p) + " sites");
  int cap = cfg.max_site_visits > 0 ? cfg.max_site_visits : g.m + 2;

  Search search(g, U, R, cap, cfg.cost_prune);
  search.walk.push_back(g.s0());
  search.dfs(g.s0(), U, 0, 0, g.s0(), 0);

  RouteSolution sol;
  sol.producer = "oracle";
  if (search.best_walk.empty()) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
  sol.uav_walk = search.best_walk;
  sol.rv_route = rv_route_of_walk(g, sol.uav_walk);
  sol.fuel_profile = simulate_fuel(g, sol.uav_walk, U);
  sol.cost = search.best;
  sol.bound = search.best;
  sol.status = SolveStatus::Optimal;
  return sol;
}

}  // namespace fcurp
