#include "fcurp/heuristic.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <string>

#include "fcurp/errors.hpp"
#include "fcurp/geometry.hpp"

namespace fcurp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One first-improvement 2-opt pass over the open representation
// [s0, t...]; the closing leg back to s0 is implicit.
bool two_opt_pass(const RoutingGraph& g, std::vector<int>& order) {
  int n = static_cast<int>(order.size());
  auto at = [&](int i) { return order[i % n]; };
  bool improved = false;
  for (int i = 0; i < n - 1; ++i)
    for (int j = i + 1; j < n; ++j) {
      // reverse order[i+1..j]; legs (i,i+1) and (j,j+1) are replaced
      double before = g.f[at(i)][at(i + 1)] + g.f[at(j)][at(j + 1)];
      double after = g.f[at(i)][at(j)] + g.f[at(i + 1)][at(j + 1)];
      if (after < before - kDistTol) {
        std::reverse(order.begin() + i + 1, order.begin() + j + 1);
        improved = true;
      }
    }
  return improved;
}

// Relocate one segment of length 1..3 to the cheapest improving position
// (Or-opt). Applies the first improving move and returns; the caller loops.
bool or_opt_pass(const RoutingGraph& g, std::vector<int>& order) {
  int n = static_cast<int>(order.size());
  for (int len = 1; len <= 3; ++len) {
    if (len >= n - 1) break;
    for (int i = 1; i + len <= n; ++i) {
      int a = order[i - 1];
      int u = order[i];
      int w = order[i + len - 1];
      int b = order[(i + len) % n];
      double removal = g.f[a][u] + g.f[w][b] - g.f[a][b];
      for (int k = 0; k < n; ++k) {
        if (k >= i - 1 && k < i + len) continue;  // same place
        int c = order[k];
        int d = order[(k + 1) % n];
        double insertion = g.f[c][u] + g.f[w][d] - g.f[c][d];
        if (insertion >= removal - kDistTol) continue;
        std::vector<int> seg(order.begin() + i, order.begin() + i + len);
        order.erase(order.begin() + i, order.begin() + i + len);
        int pos = k < i ? k : k - len;
        order.insert(order.begin() + pos + 1, seg.begin(), seg.end());
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<int> tsp_tour(const RoutingGraph& g) {
  if (g.m < 1) throw std::invalid_argument("tour needs at least one target");
  std::vector<int> order = {g.s0()};
  std::vector<bool> used(g.m, false);
  while (static_cast<int>(order.size()) < g.m + 1) {
    int cur = order.back(), best = -1;
    for (int t = 0; t < g.m; ++t)
      if (!used[t] && (best < 0 || g.f[cur][t] < g.f[cur][best] - kDistTol)) best = t;
    used[best] = true;
    order.push_back(best);
  }
  while (two_opt_pass(g, order) || or_opt_pass(g, order)) {
  }
  order.push_back(g.s0());
  return order;
}

std::vector<double> cover_guards(const RoutingGraph& g) {
  std::vector<double> guard(g.n(), 0.0);
  for (int t = 0; t < g.m; ++t) {
    double d = kInf;
    for (int s = g.m; s < g.n(); ++s) d = std::min(d, g.f[t][s]);
    guard[t] = d;
  }
  return guard;
}

std::optional<Violation> fuel_check(const std::vector<int>& walk, const RoutingGraph& g,
                                    double U, double R, const std::vector<double>& guard) {
  double fuel = U;
  int mrv = walk.front();
  for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
    int a = walk[k], b = walk[k + 1];
    if (g.is_site(a)) {
      fuel = U;
      mrv = a;
    }
    bool starved = fuel < g.f[a][b] + guard[b] - kDistTol;
    bool rv_late = g.is_site(b) && g.r[g.site_index(mrv)][g.site_index(b)] > R + kDistTol;
    if (starved || rv_late)
      return Violation{static_cast<int>(k), a, b, fuel, mrv};
    fuel -= g.f[a][b];
  }
  return std::nullopt;
}

std::optional<std::vector<int>> indirect_path(int t_i, int t_j, int s_mrv, double U_rem,
                                              const RoutingGraph& g, double U, double R) {
  int n = g.n();
  std::vector<double> dist(n, kInf);
  std::vector<int> prev(n, -1);
  std::vector<bool> done(n, false);

  if (g.is_site(t_i)) {
    dist[t_i] = 0;
  } else {
    int mrv = g.site_index(s_mrv);
    for (int v = g.m; v < n; ++v) {
      if (g.r[mrv][g.site_index(v)] > R + kDistTol) continue;
      if (g.f[t_i][v] <= U_rem + kDistTol) {
        dist[v] = g.f[t_i][v];
        prev[v] = t_i;
      }
    }
  }

  // Dijkstra over the site layer; lowest id wins distance ties.
  for (;;) {
    int u = -1;
    for (int v = g.m; v < n; ++v)
      if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u])) u = v;
    if (u < 0) break;
    done[u] = true;
    if (g.is_site(t_j) && u == t_j) break;
    for (int v = g.m; v < n; ++v) {
      if (done[v] || v == u) continue;
      if (g.r[g.site_index(u)][g.site_index(v)] > R + kDistTol) continue;
      if (g.f[u][v] > U + kDistTol) continue;
      if (dist[u] + g.f[u][v] < dist[v] - kDistTol) {
        dist[v] = dist[u] + g.f[u][v];
        prev[v] = u;
      }
    }
  }

  int goal = t_j;
  if (!g.is_site(t_j)) {
    double best = kInf;
    int from = -1;
    for (int v = g.m; v < n; ++v) {
      if (dist[v] == kInf || g.f[v][t_j] > U / 2 + kDistTol) continue;
      if (dist[v] + g.f[v][t_j] < best - kDistTol) {
        best = dist[v] + g.f[v][t_j];
        from = v;
      }
    }
    if (from < 0) return std::nullopt;
    prev[t_j] = from;
  } else if (dist[t_j] == kInf) {
    return std::nullopt;
  }

  std::vector<int> chain;
  for (int v = prev[goal]; v != -1 && v != t_i; v = prev[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  if (chain.empty()) return std::nullopt;  // degenerate splice fixes nothing
  return chain;
}

RouteSolution repair(const std::vector<int>& tour, const RoutingGraph& g, double U, double R) {
  std::vector<double> guard = cover_guards(g);
  std::vector<int> walk = tour;
  std::size_t frozen = 0;  // walk[frozen] is a site; the prefix is final
  int rounds = 0;

  while (auto v = fuel_check(walk, g, U, R, guard)) {
    if (++rounds > 2 * g.m + 8)
      throw RepairFailure("repair did not converge; stage-one invariants do not hold");
    std::vector<double> fuel = simulate_fuel(g, walk, U);
    bool spliced = false;
    for (int i = v->leg; i >= static_cast<int>(frozen); --i) {
      int mrv = g.s0();
      for (int q = i; q >= 0; --q)
        if (g.is_site(walk[q])) {
          mrv = walk[q];
          break;
        }
      auto chain = indirect_path(walk[i], walk[i + 1], mrv, fuel[i], g, U, R);
      if (!chain) continue;
      walk.insert(walk.begin() + i + 1, chain->begin(), chain->end());
      std::size_t next_frozen = i + chain->size();
      if (next_frozen <= frozen)
        throw RepairFailure("repair made no progress at walk index " + std::to_string(i));
      frozen = next_frozen;
      spliced = true;
      break;
    }
    if (!spliced)
      throw RepairFailure("no refueling detour exists for the leg entering vertex " +
                          std::to_string(v->t_j));
  }

  RouteSolution sol;
  sol.uav_walk = walk;
  sol.rv_route = rv_route_of_walk(g, walk);
  sol.fuel_profile = simulate_fuel(g, walk, U);
  sol.cost = walk_cost(g, walk);
  sol.status = SolveStatus::Feasible;
  return sol;
}

RouteSolution heuristic_solve(const RoutingGraph& g, double U, double R) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  std::vector<int> tour = tsp_tour(g);
  RouteSolution sol = repair(tour, g, U, R);
  sol.producer = "tsp-repair";
  sol.wall_time_s = std::chrono::duration<double>(clock::now() - t0).count();
  return sol;
}

}  // namespace fcurp
