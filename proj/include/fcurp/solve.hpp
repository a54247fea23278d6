#pragma once

#include <vector>

#include "fcurp/milp_model.hpp"
#include "fcurp/mip_backend.hpp"
#include "fcurp/routing_graph.hpp"

namespace fcurp {

// How subtour cuts reach the backend: through its integer-solution hook, or
// by an outer solve/separate/re-solve loop. Auto picks the hook when offered.
enum class CutTransport { Auto, Callback, OuterLoop };

// Turn an integral arc assignment into routes. x_values holds the arc block
// in arc-major order; y_values is accepted for symmetry and not consulted.
// Walks the support as one Euler circuit from s0; detached site-only cycles
// are dropped and the cost recomputed from the walk.
RouteSolution extract_routes(const std::vector<double>& x_values,
                             const std::vector<double>& y_values, const RoutingGraph& g,
                             double U);

// Full variable assignment encoding a verified solution, suitable as a MIP
// start. Throws UnencodableWalk when the walk repeats a directed arc.
std::vector<double> warm_start_from(const RouteSolution& sol, const MilpModel& model);

// Branch-and-cut driver: lazily separates subtour cuts, extracts and verifies
// the incumbent, and reports status, bound, and the number of cuts added.
// New cuts are appended to the model's pool. warm may be null; a warm
// solution that fails verification or encoding is dropped, not fatal.
RouteSolution solve_with_cuts(MilpModel& model, MipBackend& backend, double time_limit = 7200,
                              const RouteSolution* warm = nullptr, double gap_target = 0.01,
                              CutTransport transport = CutTransport::Auto);

}  // namespace fcurp
