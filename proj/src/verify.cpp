#include "fcurp/verify.hpp"

#include <cmath>
#include <string>

namespace fcurp {

VerificationReport verify_solution(const RoutingGraph& g, double U, double R,
                                   const RouteSolution& sol) {
  VerificationReport rep;
  auto flag = [&](const std::string& msg) { rep.violations.push_back(msg); };

  const auto& walk = sol.uav_walk;
  if (walk.size() < 2) {
    flag("walk has fewer than 2 vertices");
    return rep;
  }
  for (int v : walk)
    if (v < 0 || v >= g.n()) {
      flag("walk vertex id out of range");
      return rep;
    }
  if (walk.front() != g.s0()) flag("walk does not start at s0");
  if (walk.back() != g.s0()) flag("walk does not end at s0");

  std::vector<int> visits(g.m, 0);
  for (int v : walk)
    if (!g.is_site(v)) ++visits[v];
  for (int t = 0; t < g.m; ++t)
    if (visits[t] != 1)
      flag("target " + std::to_string(t) + " visited " + std::to_string(visits[t]) +
           " times, expected exactly once");

  for (std::size_t k = 0; k + 1 < walk.size(); ++k)
    if (walk[k] == walk[k + 1]) flag("leg " + std::to_string(k) + " is a self-loop");

  double fuel = U;
  for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
    fuel -= g.f[walk[k]][walk[k + 1]];
    if (fuel < -kFeasTol) {
      flag("fuel violation at leg " + std::to_string(k));
      break;
    }
    if (g.is_site(walk[k + 1])) fuel = U;
  }

  std::vector<int> rv_expected = rv_route_of_walk(g, walk);
  if (sol.rv_route != rv_expected) flag("rv_route does not match the walk's site sequence");
  for (std::size_t k = 0; k + 1 < sol.rv_route.size(); ++k) {
    int a = sol.rv_route[k], b = sol.rv_route[k + 1];
    if (a < 0 || a >= g.p || b < 0 || b >= g.p) {
      flag("rv_route site index out of range");
      break;
    }
    if (g.r[a][b] > R + kFeasTol) flag("RV range violation at stop " + std::to_string(k));
  }

  double recomputed = walk_cost(g, walk);
  if (std::abs(recomputed - sol.cost) > kFeasTol)
    flag("reported cost differs from recomputed cost");

  return rep;
}

VerificationReport verify_solution(const Instance& in, const DiscretizedRoad& road,
                                   const SiteSelection& sel, const RouteSolution& sol) {
  RoutingGraph g = make_routing_graph(in, road, sel);
  return verify_solution(g, in.U, in.R, sol);
}

}  // namespace fcurp
