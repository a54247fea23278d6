#pragma once

#include "fcurp/routing_graph.hpp"

namespace fcurp {

using VerificationReport = ValidationReport;

// Feasibility slack for fuel and RV-range checks, km.
inline constexpr double kFeasTol = 1e-6;

// Independent re-check of a solution against the problem constraints: every
// target exactly once, closed walk from s0, arrival fuel never negative with
// capacity U, consecutive RV stops within road distance R, rv_route matches
// the walk's site sequence, reported cost matches the recomputed cost.
VerificationReport verify_solution(const Instance& in, const DiscretizedRoad& road,
                                   const SiteSelection& sel, const RouteSolution& sol);

// Same checks against a prebuilt routing graph.
VerificationReport verify_solution(const RoutingGraph& g, double U, double R,
                                   const RouteSolution& sol);

}  // namespace fcurp
