#include "fcurp/milp_model.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

#include "fcurp/geometry.hpp"

namespace fcurp {

int MilpModel::u_index(int t) const {
  assert(kind == FormulationKind::Node);
  return n() * n() + graph.m * graph.p + t;
}

int MilpModel::z_index(int i, int j) const {
  assert(kind == FormulationKind::Edge);
  return n() * n() + graph.m * graph.p + i * n() + j;
}

LinearConstraint MilpModel::cut_row(const SubtourCut& cut) const {
  std::vector<char> in(static_cast<std::size_t>(n()), 0);
  for (int v : cut.members) in[v] = 1;
  LinearConstraint c;
  for (int i : cut.members)
    for (int j = 0; j < n(); ++j)
      if (!in[j]) c.coeffs.emplace_back(x_index(i, j), 1.0);
  c.sense = '>';
  c.rhs = 1;
  return c;
}

namespace {

// Columns shared by both formulations: the x block with self-loops and
// out-of-range site departures fixed to zero, and the y block.
void add_shared_vars(MilpModel& md) {
  const RoutingGraph& g = md.graph;
  int n = g.n();
  md.obj.assign(static_cast<std::size_t>(n) * n, 0.0);
  md.lb.assign(md.obj.size(), 0.0);
  md.ub.assign(md.obj.size(), 1.0);
  md.binary.assign(md.obj.size(), true);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) md.obj[md.x_index(i, j)] = g.f[i][j];
  for (int i = 0; i < n; ++i) md.ub[md.x_index(i, i)] = 0;

  // A site may only hand the route to sites within RV reach.
  for (int s = 0; s < g.p; ++s) {
    std::vector<char> near(static_cast<std::size_t>(g.p), 0);
    for (int t : g.N[s]) near[t] = 1;
    for (int t = 0; t < g.p; ++t)
      if (!near[t]) md.ub[md.x_index(g.m + s, g.m + t)] = 0;
  }

  for (int t = 0; t < g.m * g.p; ++t) {
    (void)t;
    md.obj.push_back(0);
    md.lb.push_back(0);
    md.ub.push_back(1);
    md.binary.push_back(true);
  }
}

void add_degree_rows(MilpModel& md) {
  const RoutingGraph& g = md.graph;
  int n = g.n();
  for (int j = 0; j < n; ++j) {
    LinearConstraint c;
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      c.coeffs.emplace_back(md.x_index(i, j), 1.0);
      c.coeffs.emplace_back(md.x_index(j, i), -1.0);
    }
    c.sense = '=';
    c.rhs = 0;
    md.rows.push_back(std::move(c));
  }
  for (int t = 0; t < g.m; ++t) {
    LinearConstraint c;
    for (int i = 0; i < n; ++i)
      if (i != t) c.coeffs.emplace_back(md.x_index(i, t), 1.0);
    c.sense = '=';
    c.rhs = 1;
    md.rows.push_back(std::move(c));
  }
}

void add_refuel_rows(MilpModel& md) {
  const RoutingGraph& g = md.graph;
  for (int t = 0; t < g.m; ++t)
    for (int s = 0; s < g.p; ++s) {
      LinearConstraint c;
      c.coeffs.emplace_back(md.y_index(t, s), 1.0);
      c.coeffs.emplace_back(md.x_index(g.m + s, t), -1.0);
      c.sense = '>';
      c.rhs = 0;
      md.rows.push_back(std::move(c));
    }

  // The label is inherited along target-to-target legs, both directions.
  for (int s = 0; s < g.p; ++s)
    for (int t1 = 0; t1 < g.m; ++t1)
      for (int t2 = 0; t2 < g.m; ++t2) {
        LinearConstraint c;
        if (t1 != t2) {
          c.coeffs.emplace_back(md.y_index(t2, s), 1.0);
          c.coeffs.emplace_back(md.y_index(t1, s), -1.0);
        }
        c.coeffs.emplace_back(md.x_index(t1, t2), 1.0);
        c.sense = '<';
        c.rhs = 1;
        md.rows.push_back(std::move(c));
      }
  for (int s = 0; s < g.p; ++s)
    for (int t1 = 0; t1 < g.m; ++t1)
      for (int t2 = 0; t2 < g.m; ++t2) {
        LinearConstraint c;
        if (t1 != t2) {
          c.coeffs.emplace_back(md.y_index(t2, s), 1.0);
          c.coeffs.emplace_back(md.y_index(t1, s), -1.0);
        }
        c.coeffs.emplace_back(md.x_index(t1, t2), -1.0);
        c.sense = '>';
        c.rhs = -1;
        md.rows.push_back(std::move(c));
      }

  // Leaving a target labeled s, the UAV may only enter sites the RV can
  // reach from s.
  for (int t = 0; t < g.m; ++t)
    for (int s = 0; s < g.p; ++s) {
      std::vector<char> near(static_cast<std::size_t>(g.p), 0);
      for (int k : g.N[s]) near[k] = 1;
      LinearConstraint c;
      for (int k = 0; k < g.p; ++k)
        if (!near[k]) c.coeffs.emplace_back(md.x_index(t, g.m + k), 1.0);
      c.coeffs.emplace_back(md.y_index(t, s), 1.0);
      c.sense = '<';
      c.rhs = 1;
      md.rows.push_back(std::move(c));
    }

  for (int t = 0; t < g.m; ++t) {
    LinearConstraint c;
    for (int s = 0; s < g.p; ++s) c.coeffs.emplace_back(md.y_index(t, s), 1.0);
    c.sense = '=';
    c.rhs = 1;
    md.rows.push_back(std::move(c));
  }
}

}  // namespace

MilpModel build_node_model(const RoutingGraph& g, double U, double R) {
  MilpModel md;
  md.kind = FormulationKind::Node;
  md.graph = g;
  md.U = U;
  md.R = R;
  int n = g.n();
  double fmax = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fmax = std::max(fmax, g.f[i][j]);
  md.M = U + fmax;

  add_shared_vars(md);
  // Direct site-to-site hops past fuel range cannot be flown at all.
  for (int a = 0; a < g.p; ++a)
    for (int b = 0; b < g.p; ++b)
      if (g.f[g.m + a][g.m + b] > U + kDistTol) md.ub[md.x_index(g.m + a, g.m + b)] = 0;
  for (int t = 0; t < g.m; ++t) {
    md.obj.push_back(0);
    md.lb.push_back(0);
    md.ub.push_back(U);
    md.binary.push_back(false);
  }

  add_degree_rows(md);

  double M = md.M;
  // Fuel bookkeeping between consecutive targets: u_t = u_j - f_jt when the
  // leg (j,t) is flown, inert otherwise.
  for (int t = 0; t < g.m; ++t)
    for (int j = 0; j < g.m; ++j) {
      LinearConstraint c;
      if (t != j) {
        c.coeffs.emplace_back(md.u_index(t), 1.0);
        c.coeffs.emplace_back(md.u_index(j), -1.0);
      }
      c.coeffs.emplace_back(md.x_index(j, t), M);
      c.sense = '<';
      c.rhs = M - g.f[j][t];
      md.rows.push_back(std::move(c));
    }
  for (int t = 0; t < g.m; ++t)
    for (int j = 0; j < g.m; ++j) {
      LinearConstraint c;
      if (t != j) {
        c.coeffs.emplace_back(md.u_index(t), 1.0);
        c.coeffs.emplace_back(md.u_index(j), -1.0);
      }
      c.coeffs.emplace_back(md.x_index(j, t), -M);
      c.sense = '>';
      c.rhs = -M - g.f[j][t];
      md.rows.push_back(std::move(c));
    }
  // Entering a target straight from a site: full tank minus the leg.
  for (int t = 0; t < g.m; ++t)
    for (int k = 0; k < g.p; ++k) {
      LinearConstraint c;
      c.coeffs.emplace_back(md.u_index(t), 1.0);
      c.coeffs.emplace_back(md.x_index(g.m + k, t), M);
      c.sense = '<';
      c.rhs = M + U - g.f[g.m + k][t];
      md.rows.push_back(std::move(c));
    }
  for (int t = 0; t < g.m; ++t)
    for (int k = 0; k < g.p; ++k) {
      LinearConstraint c;
      c.coeffs.emplace_back(md.u_index(t), 1.0);
      c.coeffs.emplace_back(md.x_index(g.m + k, t), -M);
      c.sense = '>';
      c.rhs = -M + U - g.f[g.m + k][t];
      md.rows.push_back(std::move(c));
    }
  // Leaving a target for a site needs the leg's worth of fuel on board.
  for (int t = 0; t < g.m; ++t)
    for (int k = 0; k < g.p; ++k) {
      LinearConstraint c;
      c.coeffs.emplace_back(md.u_index(t), -1.0);
      c.coeffs.emplace_back(md.x_index(t, g.m + k), M);
      c.sense = '<';
      c.rhs = M - g.f[t][g.m + k];
      md.rows.push_back(std::move(c));
    }
  // Total burn is covered by U per site departure.
  {
    std::vector<double> coef(static_cast<std::size_t>(md.num_vars()), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) coef[md.x_index(i, j)] += g.f[i][j];
    for (int k = 0; k < g.p; ++k)
      for (int i = 0; i < n; ++i) coef[md.x_index(g.m + k, i)] -= U;
    LinearConstraint c;
    for (int j = 0; j < n * n; ++j)
      if (coef[j] != 0) c.coeffs.emplace_back(j, coef[j]);
    c.sense = '<';
    c.rhs = 0;
    md.rows.push_back(std::move(c));
  }

  add_refuel_rows(md);
  return md;
}

MilpModel build_edge_model(const RoutingGraph& g, double U, double R) {
  MilpModel md;
  md.kind = FormulationKind::Edge;
  md.graph = g;
  md.U = U;
  md.R = R;
  int n = g.n();
  double fmax = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fmax = std::max(fmax, g.f[i][j]);
  md.M = U + fmax;

  add_shared_vars(md);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      md.obj.push_back(0);
      md.lb.push_back(0);
      md.ub.push_back(i == j ? 0 : U);
      md.binary.push_back(false);
    }

  add_degree_rows(md);

  // Burn since the last refuel is conserved across each target.
  for (int t = 0; t < g.m; ++t) {
    LinearConstraint c;
    for (int i = 0; i < n; ++i) {
      if (i == t) continue;
      c.coeffs.emplace_back(md.z_index(t, i), 1.0);
      c.coeffs.emplace_back(md.z_index(i, t), -1.0);
      if (g.f[t][i] != 0) c.coeffs.emplace_back(md.x_index(t, i), -g.f[t][i]);
    }
    c.sense = '=';
    c.rhs = 0;
    md.rows.push_back(std::move(c));
  }
  // Leaving a site the counter restarts at the leg itself.
  for (int k = 0; k < g.p; ++k)
    for (int i = 0; i < n; ++i) {
      LinearConstraint c;
      c.coeffs.emplace_back(md.z_index(g.m + k, i), 1.0);
      if (g.f[g.m + k][i] != 0) c.coeffs.emplace_back(md.x_index(g.m + k, i), -g.f[g.m + k][i]);
      c.sense = '=';
      c.rhs = 0;
      md.rows.push_back(std::move(c));
    }
  // z rides only on chosen arcs and never exceeds the tank.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LinearConstraint c;
      c.coeffs.emplace_back(md.z_index(i, j), 1.0);
      c.coeffs.emplace_back(md.x_index(i, j), -U);
      c.sense = '<';
      c.rhs = 0;
      md.rows.push_back(std::move(c));
    }

  add_refuel_rows(md);
  return md;
}

void instantiate(const MilpModel& model, MipBackend& backend) {
  for (int j = 0; j < model.num_vars(); ++j) {
    if (model.binary[j]) {
      backend.add_binary_var(model.obj[j]);
      if (model.lb[j] != 0 || model.ub[j] != 1) backend.set_var_bounds(j, model.lb[j], model.ub[j]);
    } else {
      backend.add_continuous_var(model.lb[j], model.ub[j], model.obj[j]);
    }
  }
  for (const auto& c : model.rows) backend.add_linear_constraint(c);
  for (const auto& cut : model.cut_pool) backend.add_linear_constraint(model.cut_row(cut));
}

}  // namespace fcurp
