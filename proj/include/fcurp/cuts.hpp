#pragma once

#include <vector>

#include "fcurp/milp_model.hpp"
#include "fcurp/routing_graph.hpp"

namespace fcurp {

// Maximal strongly connected components of a digraph in adjacency-list form,
// in reverse topological discovery order. Tarjan's algorithm.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& graph);

// Violated subtour cuts for an integral arc assignment. x_values holds the
// arc block in arc-major order (index i*n+j); entries beyond it are ignored.
// One cut per component P with |P| > 1, s0 not in P, and P meeting a target.
// Members are sorted. Empty result means every target rides with s0.
std::vector<SubtourCut> separate_subtours(const std::vector<double>& x_values,
                                          const RoutingGraph& g);

}  // namespace fcurp
