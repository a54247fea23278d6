#pragma once

#include <vector>

#include "fcurp/mip_backend.hpp"
#include "fcurp/routing_graph.hpp"

namespace fcurp {

enum class FormulationKind { Node, Edge };

// Vertex subset P defining the inequality sum over arcs leaving P of x >= 1.
// s0 is never a member and P always contains a target.
struct SubtourCut {
  std::vector<int> members;  // sorted vertex ids
};

// One of the two routing formulations as plain LP data plus the cut pool.
// Columns: x block (n^2, arc-major i*n+j), y block (m*p), then the fuel
// block (u: m for Node, z: n^2 for Edge). Self-loop x and z columns exist
// but are fixed to zero so the arc-major indexing stays uniform.
struct MilpModel {
  FormulationKind kind = FormulationKind::Node;
  RoutingGraph graph;
  double U = 0;
  double R = 0;
  double M = 0;  // U + max f, the big constant of the node fuel rows

  std::vector<double> obj;
  std::vector<double> lb, ub;
  std::vector<bool> binary;
  std::vector<LinearConstraint> rows;
  std::vector<SubtourCut> cut_pool;

  int n() const { return graph.n(); }
  int num_vars() const { return static_cast<int>(obj.size()); }
  int x_index(int i, int j) const { return i * n() + j; }
  int y_index(int t, int s) const { return n() * n() + t * graph.p + s; }
  int u_index(int t) const;       // Node kind only
  int z_index(int i, int j) const;  // Edge kind only

  LinearConstraint cut_row(const SubtourCut& cut) const;
};

MilpModel build_node_model(const RoutingGraph& g, double U, double R);
MilpModel build_edge_model(const RoutingGraph& g, double U, double R);

// Load the model's variables, bounds, rows, and objective into a fresh
// backend. Fixings are applied as variable bounds, never as rows.
void instantiate(const MilpModel& model, MipBackend& backend);

}  // namespace fcurp
