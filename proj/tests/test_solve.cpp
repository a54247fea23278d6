#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "fcurp/bnb_backend.hpp"
#include "fcurp/errors.hpp"
#include "fcurp/geometry.hpp"
#include "fcurp/heuristic.hpp"
#include "fcurp/oracle.hpp"
#include "fcurp/solve.hpp"
#include "fcurp/verify.hpp"

using namespace fcurp;

namespace {

RoutingGraph make_graph(std::vector<Point> targets, std::vector<Point> sites, double R) {
  RoutingGraph g;
  g.m = static_cast<int>(targets.size());
  g.p = static_cast<int>(sites.size());
  g.coords = std::move(targets);
  for (Point s : sites) g.coords.push_back(s);
  int n = g.n();
  g.f.assign(n, std::vector<double>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.f[i][j] = euclid(g.coords[i], g.coords[j]);
  g.r.assign(g.p, std::vector<double>(g.p, 0));
  g.N.assign(g.p, {});
  for (int a = 0; a < g.p; ++a)
    for (int b = 0; b < g.p; ++b) {
      g.r[a][b] = euclid(g.coords[g.m + a], g.coords[g.m + b]);
      if (g.r[a][b] <= R + kDistTol) g.N[a].push_back(b);
    }
  return g;
}

std::vector<double> arcs_to_x(int n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<double> x(static_cast<std::size_t>(n) * n, 0.0);
  for (auto [i, j] : arcs) x[i * n + j] = 1.0;
  return x;
}

// Out-and-back to one target 3 km away; optimum 6.
RoutingGraph fixture_single() { return make_graph({{3, 0}}, {{0, 0}}, 5); }

// Mirror-image targets, each needing a full tank; optimum 20.
RoutingGraph fixture_mirror() { return make_graph({{5, 0}, {-5, 0}}, {{0, 0}}, 5); }

// Target only reachable via the relay site at (4,0); optimum 16 at U=8.
RoutingGraph fixture_relay() { return make_graph({{8, 0}}, {{0, 0}, {4, 0}}, 5); }

// Two targets cluster around the far site: without subtour cuts the model
// prefers a detached tour s1 -> t1 -> t2 -> s1. Connected optimum 22 at U=12.
RoutingGraph fixture_island() {
  return make_graph({{1, 0}, {9, 0}, {11, 0}}, {{0, 0}, {10, 0}}, 12);
}

double row_activity(const LinearConstraint& c, const std::vector<double>& v) {
  double lhs = 0;
  for (auto [j, a] : c.coeffs) lhs += a * v[j];
  return lhs;
}

void check_assignment_feasible(const MilpModel& model, const std::vector<double>& v) {
  REQUIRE(static_cast<int>(v.size()) == model.num_vars());
  for (int j = 0; j < model.num_vars(); ++j) {
    CHECK(v[j] >= model.lb[j] - 1e-9);
    CHECK(v[j] <= model.ub[j] + 1e-9);
    if (model.binary[j]) CHECK(std::abs(v[j] - std::round(v[j])) < 1e-9);
  }
  for (const auto& row : model.rows) {
    double lhs = row_activity(row, v);
    if (row.sense == '<') CHECK(lhs <= row.rhs + 1e-6);
    if (row.sense == '=') CHECK(std::abs(lhs - row.rhs) <= 1e-6);
    if (row.sense == '>') CHECK(lhs >= row.rhs - 1e-6);
  }
}

}  // namespace

TEST_SUITE("extraction") {
  TEST_CASE("out-and-back support becomes a two-leg walk") {
    RoutingGraph g = fixture_single();
    auto x = arcs_to_x(2, {{1, 0}, {0, 1}});
    RouteSolution sol = extract_routes(x, {}, g, 10);
    CHECK(sol.uav_walk == std::vector<int>{1, 0, 1});
    CHECK(sol.rv_route == std::vector<int>{0, 0});
    CHECK(sol.cost == doctest::Approx(6));
    REQUIRE(sol.fuel_profile.size() == 3);
    CHECK(sol.fuel_profile[1] == doctest::Approx(7));
  }

  TEST_CASE("walk follows the support through both sites") {
    // t0=0 t1=1 s0=2 s1=3; s0 -> t0 -> s1 -> t1 -> s0
    RoutingGraph g = make_graph({{1, 0}, {3, 0}}, {{0, 0}, {2, 0}}, 9);
    auto x = arcs_to_x(4, {{2, 0}, {0, 3}, {3, 1}, {1, 2}});
    RouteSolution sol = extract_routes(x, {}, g, 10);
    CHECK(sol.uav_walk == std::vector<int>{2, 0, 3, 1, 2});
    CHECK(sol.rv_route == std::vector<int>{0, 1, 0});
    double fx = 0;
    int n = g.n();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) fx += g.f[i][j] * x[i * n + j];
    CHECK(std::abs(sol.cost - fx) <= 1e-9);
  }

  TEST_CASE("a site revisited between sorties is walked twice") {
    RoutingGraph g = fixture_mirror();  // t0=0 t1=1 s0=2
    auto x = arcs_to_x(3, {{2, 0}, {0, 2}, {2, 1}, {1, 2}});
    RouteSolution sol = extract_routes(x, {}, g, 10);
    CHECK(sol.uav_walk == std::vector<int>{2, 0, 2, 1, 2});
    CHECK(sol.rv_route == std::vector<int>{0, 0, 0});
    CHECK(verify_solution(g, 10, 5, sol).ok());
  }

  TEST_CASE("unbalanced support is rejected") {
    RoutingGraph g = fixture_single();
    auto x = arcs_to_x(2, {{1, 0}});
    CHECK_THROWS_AS(extract_routes(x, {}, g, 10), ExtractionError);
  }

  TEST_CASE("a detached target cycle is rejected") {
    // t0=0 t1=1 s0=2 s1=3; s0 <-> s1 plus t0 <-> t1 off on their own
    RoutingGraph g = make_graph({{1, 0}, {3, 0}}, {{0, 0}, {2, 0}}, 9);
    auto x = arcs_to_x(4, {{2, 3}, {3, 2}, {0, 1}, {1, 0}});
    CHECK_THROWS_AS(extract_routes(x, {}, g, 10), ExtractionError);
  }

  TEST_CASE("a detached site-only cycle is dropped") {
    // t=0 s0=1 s1=2 s2=3
    RoutingGraph g = make_graph({{3, 0}}, {{0, 0}, {1, 1}, {2, 1}}, 9);
    auto x = arcs_to_x(4, {{1, 0}, {0, 1}, {2, 3}, {3, 2}});
    RouteSolution sol = extract_routes(x, {}, g, 10);
    CHECK(sol.uav_walk == std::vector<int>{1, 0, 1});
    CHECK(sol.cost == doctest::Approx(6));
  }

  TEST_CASE("a target visited twice is rejected") {
    // t0=0 t1=1 s0=2; circuit s0 -> t0 -> t1 -> t0 -> s0
    RoutingGraph g = make_graph({{1, 0}, {3, 0}}, {{0, 0}}, 9);
    auto x = arcs_to_x(3, {{2, 0}, {0, 1}, {1, 0}, {0, 2}});
    CHECK_THROWS_AS(extract_routes(x, {}, g, 10), ExtractionError);
  }

  TEST_CASE("warm start encodes the walk exactly") {
    RoutingGraph g = fixture_single();
    RouteSolution sol = brute_force_opt(g, 10, 5);
    REQUIRE(sol.status == SolveStatus::Optimal);

    MilpModel node = build_node_model(g, 10, 5);
    std::vector<double> v = warm_start_from(sol, node);
    CHECK(v[node.x_index(1, 0)] == 1);
    CHECK(v[node.x_index(0, 1)] == 1);
    CHECK(v[node.y_index(0, 0)] == 1);
    CHECK(v[node.u_index(0)] == doctest::Approx(7));

    MilpModel edge = build_edge_model(g, 10, 5);
    std::vector<double> w = warm_start_from(sol, edge);
    CHECK(w[edge.z_index(1, 0)] == doctest::Approx(3));
    CHECK(w[edge.z_index(0, 1)] == doctest::Approx(6));
  }

  TEST_CASE("a walk that repeats an arc has no binary encoding") {
    RoutingGraph g = fixture_single();
    RouteSolution sol;
    sol.uav_walk = {1, 0, 1, 0, 1};
    MilpModel node = build_node_model(g, 10, 5);
    CHECK_THROWS_AS(warm_start_from(sol, node), UnencodableWalk);
  }

  TEST_CASE("warm start satisfies every model row") {
    std::vector<RoutingGraph> graphs = {
        fixture_relay(),
        fixture_mirror(),
        make_graph({{2, 1}, {4, 3}, {1, 4}}, {{0, 0}, {3, 3}}, 6),
    };
    std::vector<double> us = {8, 10, 7};
    std::vector<double> rs = {5, 5, 6};
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      RouteSolution sol = brute_force_opt(graphs[i], us[i], rs[i]);
      REQUIRE(sol.status == SolveStatus::Optimal);
      MilpModel node = build_node_model(graphs[i], us[i], rs[i]);
      check_assignment_feasible(node, warm_start_from(sol, node));
      MilpModel edge = build_edge_model(graphs[i], us[i], rs[i]);
      check_assignment_feasible(edge, warm_start_from(sol, edge));
    }
  }

  TEST_CASE("heuristic tours satisfy every model row") {
    std::vector<RoutingGraph> graphs = {
        fixture_relay(),
        fixture_mirror(),
        make_graph({{2, 1}, {4, 3}, {1, 4}}, {{0, 0}, {3, 3}}, 6),
    };
    std::vector<double> us = {8, 10, 7};
    std::vector<double> rs = {5, 5, 6};
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      RouteSolution sol = heuristic_solve(graphs[i], us[i], rs[i]);
      REQUIRE(sol.status == SolveStatus::Feasible);
      MilpModel node = build_node_model(graphs[i], us[i], rs[i]);
      check_assignment_feasible(node, warm_start_from(sol, node));
      MilpModel edge = build_edge_model(graphs[i], us[i], rs[i]);
      check_assignment_feasible(edge, warm_start_from(sol, edge));
    }
  }
}

TEST_SUITE("solve_loop") {
  TEST_CASE("single target solves at the root without cuts") {
    RoutingGraph g = fixture_single();
    MilpModel model = build_node_model(g, 10, 5);
    BnbBackend backend;
    RouteSolution sol = solve_with_cuts(model, backend, 60, nullptr, 1e-9);
    CHECK(sol.status == SolveStatus::Optimal);
    CHECK(sol.cost == doctest::Approx(6));
    CHECK(sol.cuts_added == 0);
    CHECK(sol.producer == "milp-node");
    REQUIRE(sol.bound.has_value());
    CHECK(*sol.bound == doctest::Approx(6));
    CHECK(verify_solution(g, 10, 5, sol).ok());
  }

  TEST_CASE("detached cluster forces at least one subtour cut") {
    RoutingGraph g = fixture_island();
    for (FormulationKind kind : {FormulationKind::Node, FormulationKind::Edge}) {
      MilpModel model = kind == FormulationKind::Node ? build_node_model(g, 12, 12)
                                                      : build_edge_model(g, 12, 12);
      BnbBackend backend;
      RouteSolution sol = solve_with_cuts(model, backend, 600, nullptr, 1e-9);
      CHECK(sol.status == SolveStatus::Optimal);
      CHECK(sol.cost == doctest::Approx(22));
      CHECK(sol.cuts_added >= 1);
      CHECK(model.cut_pool.size() == static_cast<std::size_t>(sol.cuts_added));
      CHECK(verify_solution(g, 12, 12, sol).ok());
    }
  }

  TEST_CASE("cut transports agree") {
    RoutingGraph g = fixture_island();
    MilpModel a = build_edge_model(g, 12, 12);
    BnbBackend ba;
    RouteSolution hook = solve_with_cuts(a, ba, 600, nullptr, 1e-9, CutTransport::Callback);
    MilpModel b = build_edge_model(g, 12, 12);
    BnbBackend bb;
    RouteSolution outer = solve_with_cuts(b, bb, 600, nullptr, 1e-9, CutTransport::OuterLoop);
    CHECK(hook.status == SolveStatus::Optimal);
    CHECK(outer.status == SolveStatus::Optimal);
    CHECK(hook.cost == doctest::Approx(outer.cost));
    CHECK(outer.cuts_added >= 1);
  }

  TEST_CASE("unreturnable target is proved infeasible") {
    RoutingGraph g = make_graph({{6, 0}}, {{0, 0}}, 5);
    for (FormulationKind kind : {FormulationKind::Node, FormulationKind::Edge}) {
      MilpModel model = kind == FormulationKind::Node ? build_node_model(g, 10, 5)
                                                      : build_edge_model(g, 10, 5);
      BnbBackend backend;
      RouteSolution sol = solve_with_cuts(model, backend, 60);
      CHECK(sol.status == SolveStatus::Infeasible);
      CHECK(sol.uav_walk.empty());
    }
  }

  TEST_CASE("node and edge formulations match the oracle") {
    std::vector<RoutingGraph> graphs = {fixture_single(), fixture_mirror(), fixture_relay()};
    std::vector<double> us = {10, 10, 8};
    std::vector<double> rs = {5, 5, 5};
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      RouteSolution truth = brute_force_opt(graphs[i], us[i], rs[i]);
      REQUIRE(truth.status == SolveStatus::Optimal);
      MilpModel node = build_node_model(graphs[i], us[i], rs[i]);
      BnbBackend nb;
      RouteSolution ns = solve_with_cuts(node, nb, 600, nullptr, 1e-9);
      MilpModel edge = build_edge_model(graphs[i], us[i], rs[i]);
      BnbBackend eb;
      RouteSolution es = solve_with_cuts(edge, eb, 600, nullptr, 1e-9);
      CHECK(ns.status == SolveStatus::Optimal);
      CHECK(es.status == SolveStatus::Optimal);
      CHECK(ns.cost == doctest::Approx(truth.cost).epsilon(1e-6));
      CHECK(es.cost == doctest::Approx(truth.cost).epsilon(1e-6));
      CHECK(verify_solution(graphs[i], us[i], rs[i], ns).ok());
      CHECK(verify_solution(graphs[i], us[i], rs[i], es).ok());
    }
  }

  TEST_CASE("the dual bound brackets the optimum") {
    RoutingGraph g = fixture_relay();
    MilpModel model = build_edge_model(g, 8, 5);
    BnbBackend backend;
    RouteSolution sol = solve_with_cuts(model, backend, 600, nullptr, 0.01);
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(sol.bound.has_value());
    CHECK(*sol.bound <= sol.cost + 1e-6);
    CHECK(*sol.bound >= sol.cost * (1 - 0.01) - 1e-6);
  }

  TEST_CASE("a warm start is accepted and kept when optimal") {
    RoutingGraph g = fixture_relay();
    RouteSolution warm = brute_force_opt(g, 8, 5);
    REQUIRE(warm.status == SolveStatus::Optimal);
    MilpModel model = build_node_model(g, 8, 5);
    BnbBackend backend;
    RouteSolution sol = solve_with_cuts(model, backend, 600, &warm, 1e-9);
    CHECK(sol.status == SolveStatus::Optimal);
    CHECK(sol.cost == doctest::Approx(warm.cost));
  }

  TEST_CASE("an unverifiable warm start is dropped, not adopted") {
    RoutingGraph g = fixture_island();
    RouteSolution bogus;
    bogus.uav_walk = {3, 0, 1, 2, 3};  // starved on the 11 km leg home
    bogus.rv_route = {0, 0};
    bogus.cost = 5;  // claims to beat the true optimum
    bogus.status = SolveStatus::Feasible;
    REQUIRE_FALSE(verify_solution(g, 12, 12, bogus).ok());
    MilpModel model = build_edge_model(g, 12, 12);
    BnbBackend backend;
    RouteSolution sol = solve_with_cuts(model, backend, 600, &bogus, 1e-9);
    CHECK(sol.status == SolveStatus::Optimal);
    CHECK(sol.cost == doctest::Approx(22));
    CHECK(verify_solution(g, 12, 12, sol).ok());
  }

  TEST_CASE("heuristic assignments are accepted by the backend") {
    std::vector<RoutingGraph> graphs = {fixture_relay(), fixture_mirror()};
    std::vector<double> us = {8, 10};
    std::vector<double> rs = {5, 5};
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      RouteSolution h = heuristic_solve(graphs[i], us[i], rs[i]);
      REQUIRE(h.status == SolveStatus::Feasible);
      for (bool edge_kind : {false, true}) {
        MilpModel model = edge_kind ? build_edge_model(graphs[i], us[i], rs[i])
                                    : build_node_model(graphs[i], us[i], rs[i]);
        BnbBackend backend;
        instantiate(model, backend);
        backend.set_mip_start(warm_start_from(h, model));
        backend.set_time_limit(0);
        MipResult res = backend.solve();
        CHECK(res.start_accepted);
        REQUIRE(res.status == MipStatus::Feasible);
        CHECK(res.objective == doctest::Approx(h.cost));
      }
    }
  }

  TEST_CASE("zero time limit with a warm start degrades to the start") {
    RoutingGraph g = fixture_island();
    RouteSolution warm = brute_force_opt(g, 12, 12);
    REQUIRE(warm.status == SolveStatus::Optimal);
    MilpModel model = build_node_model(g, 12, 12);
    BnbBackend backend;
    RouteSolution sol = solve_with_cuts(model, backend, 0, &warm);
    CHECK(sol.status == SolveStatus::Feasible);
    CHECK(sol.cost == doctest::Approx(warm.cost));

    MilpModel bare = build_node_model(g, 12, 12);
    BnbBackend backend2;
    RouteSolution none = solve_with_cuts(bare, backend2, 0);
    CHECK(none.status == SolveStatus::TimedOut);
    CHECK(none.uav_walk.empty());
  }

  TEST_CASE("a reused cut pool is loaded up front, not rediscovered") {
    RoutingGraph g = fixture_island();
    MilpModel model = build_edge_model(g, 12, 12);
    BnbBackend first;
    RouteSolution a = solve_with_cuts(model, first, 600, nullptr, 1e-9);
    REQUIRE(a.status == SolveStatus::Optimal);
    std::size_t pool = model.cut_pool.size();
    std::set<std::vector<int>> distinct;
    for (const auto& c : model.cut_pool) distinct.insert(c.members);
    CHECK(distinct.size() == pool);

    BnbBackend second;
    RouteSolution b = solve_with_cuts(model, second, 600, nullptr, 1e-9);
    CHECK(b.status == SolveStatus::Optimal);
    CHECK(b.cost == doctest::Approx(a.cost));
    CHECK(model.cut_pool.size() >= pool);
    std::set<std::vector<int>> after;
    for (const auto& c : model.cut_pool) after.insert(c.members);
    CHECK(after.size() == model.cut_pool.size());
  }
}
