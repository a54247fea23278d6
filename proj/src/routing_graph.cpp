#include "fcurp/routing_graph.hpp"

#include <cmath>
#include <limits>

namespace fcurp {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::TimedOut: return "TimedOut";
  }
  return "Infeasible";
}

std::optional<SolveStatus> status_from_string(const std::string& s) {
  if (s == "Optimal") return SolveStatus::Optimal;
  if (s == "Feasible") return SolveStatus::Feasible;
  if (s == "Infeasible") return SolveStatus::Infeasible;
  if (s == "TimedOut") return SolveStatus::TimedOut;
  return std::nullopt;
}

RoutingGraph make_routing_graph(const Instance& in, const DiscretizedRoad& road,
                                const SiteSelection& sel) {
  RoutingGraph g;
  g.m = static_cast<int>(in.targets.size());
  g.p = static_cast<int>(sel.selected.size());
  g.coords = in.targets;
  for (int s : sel.selected) g.coords.push_back(road.sites[s]);

  int n = g.n();
  g.f.assign(n, std::vector<double>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.f[i][j] = euclid(g.coords[i], g.coords[j]);

  g.r.assign(g.p, std::vector<double>(g.p, 0));
  g.N.assign(g.p, {});
  for (int a = 0; a < g.p; ++a) {
    for (int b = 0; b < g.p; ++b) {
      g.r[a][b] = road.r[sel.selected[a]][sel.selected[b]];
      if (g.r[a][b] <= in.R + kDistTol) g.N[a].push_back(b);
    }
  }
  return g;
}

double gap_percent(double cost, const std::optional<double>& bound) {
  if (!bound) return std::numeric_limits<double>::quiet_NaN();
  if (cost == 0 && *bound == 0) return 0;
  if (cost == 0) return std::numeric_limits<double>::quiet_NaN();
  return 100.0 * (cost - *bound) / cost;
}

std::vector<double> simulate_fuel(const RoutingGraph& g, const std::vector<int>& walk, double U) {
  std::vector<double> profile;
  profile.reserve(walk.size());
  double fuel = U;
  for (std::size_t k = 0; k < walk.size(); ++k) {
    if (k > 0) fuel -= g.f[walk[k - 1]][walk[k]];
    if (g.is_site(walk[k])) fuel = U;
    profile.push_back(fuel);
  }
  return profile;
}

double walk_cost(const RoutingGraph& g, const std::vector<int>& walk) {
  double c = 0;
  for (std::size_t k = 0; k + 1 < walk.size(); ++k) c += g.f[walk[k]][walk[k + 1]];
  return c;
}

std::vector<int> rv_route_of_walk(const RoutingGraph& g, const std::vector<int>& walk) {
  std::vector<int> rv;
  for (int v : walk)
    if (g.is_site(v)) rv.push_back(g.site_index(v));
  return rv;
}

}  // namespace fcurp
