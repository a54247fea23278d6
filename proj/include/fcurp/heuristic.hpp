#pragma once

#include <optional>
#include <vector>

#include "fcurp/routing_graph.hpp"

namespace fcurp {

// First leg of the walk the UAV cannot fly as planned: either the fuel on
// hand at t_i cannot cover the leg plus the guard at t_j, or t_j is a site
// the RV cannot reach from s_mrv in time.
struct Violation {
  int leg = 0;       // walk index k of the leg walk[k] -> walk[k+1]
  int t_i = 0;       // vertex the leg departs
  int t_j = 0;       // vertex the leg enters
  double U_rem = 0;  // fuel on hand at t_i
  int s_mrv = 0;     // most recently visited site at or before t_i
};

// Closed tour over the targets and s0, starting and ending at s0.
// Nearest-neighbor construction polished by 2-opt and Or-opt passes until
// neither improves. Pure scans, so the result is deterministic.
std::vector<int> tsp_tour(const RoutingGraph& g);

// guard[v]: fuel the UAV must hold on arrival at v to stay repairable; the
// distance to the nearest selected site for targets, zero for sites.
std::vector<double> cover_guards(const RoutingGraph& g);

// First violated leg of the walk, or nullopt when the walk is flyable as is.
// Fuel resets to U at every site; arrival checks use guard.
std::optional<Violation> fuel_check(const std::vector<int>& walk, const RoutingGraph& g,
                                    double U, double R, const std::vector<double>& guard);

// Cheapest flight detour t_i -> sites -> t_j. Site-site hops need both road
// distance <= R and flight distance <= U; the hop out of t_i needs fuel
// U_rem and a site the RV reaches from s_mrv; the hop into a target t_j must
// leave at least U/2. Returns the site chain strictly between t_i and t_j,
// or nullopt when no such detour exists.
std::optional<std::vector<int>> indirect_path(int t_i, int t_j, int s_mrv, double U_rem,
                                              const RoutingGraph& g, double U, double R);

// Splice refueling chains into the tour until fuel_check passes. Backtracks
// the splice point toward the frozen prefix when no detour exists; the
// frozen prefix grows every round. Throws RepairFailure when an instance
// violates the stage-one guarantees.
RouteSolution repair(const std::vector<int>& tour, const RoutingGraph& g, double U, double R);

// tsp_tour, then repair only if the tour is not directly flyable.
RouteSolution heuristic_solve(const RoutingGraph& g, double U, double R);

}  // namespace fcurp
