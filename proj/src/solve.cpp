#include "fcurp/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

#include "fcurp/cuts.hpp"
#include "fcurp/errors.hpp"
#include "fcurp/verify.hpp"

namespace fcurp {

RouteSolution extract_routes(const std::vector<double>& x_values,
                             const std::vector<double>& /*y_values*/, const RoutingGraph& g,
                             double U) {
  int n = g.n();
  std::vector<std::vector<int>> adj(n);
  std::vector<int> indeg(n, 0);
  int total_arcs = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && x_values[i * n + j] > 0.5) {
        adj[i].push_back(j);
        ++indeg[j];
        ++total_arcs;
      }
  for (int v = 0; v < n; ++v)
    if (indeg[v] != static_cast<int>(adj[v].size()))
      throw ExtractionError("support digraph is unbalanced at vertex " + std::to_string(v));

  // Hierholzer from s0. Whatever the circuit does not consume belongs to a
  // detached component; targets there mean the separation missed a cut.
  std::vector<std::size_t> next(n, 0);
  std::vector<int> stack = {g.s0()};
  std::vector<int> circuit;
  while (!stack.empty()) {
    int v = stack.back();
    if (next[v] < adj[v].size()) {
      stack.push_back(adj[v][next[v]++]);
    } else {
      circuit.push_back(v);
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());

  int used = static_cast<int>(circuit.size()) - 1;
  if (used < total_arcs) {
    for (int i = 0; i < n; ++i)
      if (next[i] < adj[i].size() && i < g.m)
        throw ExtractionError("target " + std::to_string(i) + " is unreachable from s0");
    for (int i = 0; i < n; ++i)
      for (std::size_t k = next[i]; k < adj[i].size(); ++k)
        if (adj[i][k] < g.m)
          throw ExtractionError("target " + std::to_string(adj[i][k]) +
                                " is unreachable from s0");
    // Remaining arcs form site-only cycles; dropping them keeps every
    // constraint satisfied and never raises the cost.
  }

  std::vector<int> seen(g.m, 0);
  for (int v : circuit)
    if (v < g.m) ++seen[v];
  for (int t = 0; t < g.m; ++t)
    if (seen[t] != 1)
      throw ExtractionError("target " + std::to_string(t) + " appears " +
                            std::to_string(seen[t]) + " times");

  RouteSolution sol;
  sol.uav_walk = circuit;
  sol.rv_route = rv_route_of_walk(g, circuit);
  sol.fuel_profile = simulate_fuel(g, circuit, U);
  sol.cost = walk_cost(g, circuit);
  return sol;
}

std::vector<double> warm_start_from(const RouteSolution& sol, const MilpModel& model) {
  const RoutingGraph& g = model.graph;
  std::vector<double> vals(static_cast<std::size_t>(model.num_vars()), 0.0);

  const std::vector<int>& walk = sol.uav_walk;
  for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
    int idx = model.x_index(walk[k], walk[k + 1]);
    if (vals[idx] == 1)
      throw UnencodableWalk("walk repeats arc " + std::to_string(walk[k]) + "->" +
                            std::to_string(walk[k + 1]));
    vals[idx] = 1;
  }

  int last_site = g.s0();
  double burned = 0;
  for (std::size_t k = 1; k < walk.size(); ++k) {
    int v = walk[k];
    burned = (g.is_site(walk[k - 1]) ? 0.0 : burned) + g.f[walk[k - 1]][v];
    if (model.kind == FormulationKind::Edge)
      vals[model.z_index(walk[k - 1], v)] = burned;
    if (g.is_site(v)) {
      last_site = v;
    } else {
      vals[model.y_index(v, g.site_index(last_site))] = 1;
      if (model.kind == FormulationKind::Node) vals[model.u_index(v)] = model.U - burned;
    }
  }
  return vals;
}

RouteSolution solve_with_cuts(MilpModel& model, MipBackend& backend, double time_limit,
                              const RouteSolution* warm, double gap_target,
                              CutTransport transport) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };
  const RoutingGraph& g = model.graph;

  instantiate(model, backend);
  backend.set_gap_target(gap_target);

  std::vector<double> start_vals;
  if (warm && verify_solution(g, model.U, model.R, *warm).ok()) {
    try {
      start_vals = warm_start_from(*warm, model);
    } catch (const UnencodableWalk&) {
      start_vals.clear();
    }
  }
  if (!start_vals.empty()) backend.set_mip_start(start_vals);

  std::set<std::vector<int>> seen;
  for (const auto& c : model.cut_pool) seen.insert(c.members);
  int added = 0;
  auto separate_and_record = [&](const std::vector<double>& vals) {
    std::vector<LinearConstraint> rows;
    for (auto& cut : separate_subtours(vals, g)) {
      rows.push_back(model.cut_row(cut));
      if (seen.insert(cut.members).second) {
        model.cut_pool.push_back(cut);
        ++added;
      }
    }
    return rows;
  };

  bool use_callback =
      transport == CutTransport::Callback ||
      (transport == CutTransport::Auto && backend.supports_integer_solution_hook());

  MipResult res;
  double best_bound = -std::numeric_limits<double>::infinity();
  if (use_callback) {
    backend.set_integer_solution_hook(separate_and_record);
    backend.set_time_limit(time_limit);
    res = backend.solve();
    if (std::isfinite(res.dual_bound)) best_bound = res.dual_bound;
  } else {
    while (true) {
      backend.set_time_limit(std::max(0.0, time_limit - elapsed()));
      res = backend.solve();
      if (std::isfinite(res.dual_bound)) best_bound = std::max(best_bound, res.dual_bound);
      if (res.values.empty()) break;
      std::vector<LinearConstraint> rows = separate_and_record(res.values);
      if (rows.empty()) break;
      for (const auto& r : rows) backend.add_linear_constraint(r);
      if (!start_vals.empty()) backend.set_mip_start(start_vals);
    }
  }

  RouteSolution sol;
  if (!res.values.empty()) {
    sol = extract_routes(res.values, res.values, g, model.U);
    sol.status = res.status == MipStatus::Optimal ? SolveStatus::Optimal : SolveStatus::Feasible;
    if (std::isfinite(best_bound)) sol.bound = best_bound;
  } else if (res.status == MipStatus::Infeasible) {
    sol.status = SolveStatus::Infeasible;
  } else {
    sol.status = SolveStatus::TimedOut;
    if (std::isfinite(best_bound)) sol.bound = best_bound;
  }
  sol.producer = model.kind == FormulationKind::Node ? "milp-node" : "milp-edge";
  sol.cuts_added = added;
  sol.wall_time_s = elapsed();
  return sol;
}

}  // namespace fcurp
