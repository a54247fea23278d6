#pragma once

#include <limits>

#include "fcurp/routing_graph.hpp"

namespace fcurp {

struct OracleConfig {
  int max_targets = 5;
  int max_sites = 4;
  int max_site_visits = 0;  // 0 picks the default of |T| + 2
  double cost_prune = std::numeric_limits<double>::infinity();
};

// Exhaustive ground truth for tiny instances: depth-first search over walks
// from s0, exact fuel feasibility, RV range checked between consecutive site
// visits. Returns status Optimal with bound = cost, or Infeasible when no
// walk exists under the site-visit cap. Throws TooLarge beyond the caps.
RouteSolution brute_force_opt(const RoutingGraph& g, double U, double R, OracleConfig cfg = {});

}  // namespace fcurp
