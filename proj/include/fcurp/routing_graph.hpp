#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcurp/site_selection.hpp"

namespace fcurp {

enum class SolveStatus { Optimal, Feasible, Infeasible, TimedOut };

std::string to_string(SolveStatus s);
std::optional<SolveStatus> status_from_string(const std::string& s);

// Complete directed graph over targets followed by the selected sites.
// Vertex ids: targets 0..m-1, sites m..m+p-1; s0 is vertex m.
struct RoutingGraph {
  int m = 0;
  int p = 0;
  std::vector<Point> coords;
  std::vector<std::vector<double>> f;  // euclid, (m+p)^2
  std::vector<std::vector<double>> r;  // road distance between selected sites, p^2
  // Neighbor sets over selected-site indices. Self-inclusive: r[i][i] = 0 <= R,
  // so out-and-back trips s -> t -> s stay representable.
  std::vector<std::vector<int>> N;

  int n() const { return m + p; }
  int s0() const { return m; }
  bool is_site(int v) const { return v >= m; }
  int site_index(int v) const { return v - m; }
};

RoutingGraph make_routing_graph(const Instance& in, const DiscretizedRoad& road,
                                const SiteSelection& sel);

struct RouteSolution {
  std::vector<int> uav_walk;         // vertex ids, starts and ends at s0
  std::vector<int> rv_route;         // selected-site indices in visit order
  std::vector<double> fuel_profile;  // fuel at each walk vertex, U after a site visit
  double cost = 0;
  std::optional<double> bound;
  SolveStatus status = SolveStatus::Infeasible;
  std::string producer;
  double wall_time_s = 0;
  int cuts_added = 0;
};

// 100*(UB-LB)/UB; 0 when UB = LB = 0.
double gap_percent(double cost, const std::optional<double>& bound);

// Fuel at each walk vertex: starts at U, drops by f per leg, resets to U at
// sites. Does not validate; verify_solution checks arrival fuel separately.
std::vector<double> simulate_fuel(const RoutingGraph& g, const std::vector<int>& walk, double U);

double walk_cost(const RoutingGraph& g, const std::vector<int>& walk);

// The walk's site subsequence as selected-site indices (starts/ends with s0
// for any closed walk from s0).
std::vector<int> rv_route_of_walk(const RoutingGraph& g, const std::vector<int>& walk);

}  // namespace fcurp
