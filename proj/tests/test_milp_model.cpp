#include <doctest.h>

#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "fcurp/geometry.hpp"
#include "fcurp/instance.hpp"
#include "fcurp/milp_model.hpp"
#include "fcurp/road.hpp"
#include "fcurp/site_selection.hpp"

using namespace fcurp;

namespace {

// Hand-built routing graph: f from coordinates, r given explicitly (defaults
// to euclid between sites), N derived from r and R.
RoutingGraph toy_graph(std::vector<Point> targets, std::vector<Point> sites, double R,
                       std::vector<std::vector<double>> r = {}) {
  RoutingGraph g;
  g.m = static_cast<int>(targets.size());
  g.p = static_cast<int>(sites.size());
  g.coords = std::move(targets);
  g.coords.insert(g.coords.end(), sites.begin(), sites.end());
  int n = g.n();
  g.f.assign(n, std::vector<double>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.f[i][j] = euclid(g.coords[i], g.coords[j]);
  if (r.empty()) {
    g.r.assign(g.p, std::vector<double>(g.p, 0));
    for (int a = 0; a < g.p; ++a)
      for (int b = 0; b < g.p; ++b) g.r[a][b] = euclid(g.coords[g.m + a], g.coords[g.m + b]);
  } else {
    g.r = std::move(r);
  }
  g.N.assign(g.p, {});
  for (int a = 0; a < g.p; ++a)
    for (int b = 0; b < g.p; ++b)
      if (g.r[a][b] <= R + kDistTol) g.N[a].push_back(b);
  return g;
}

long node_row_census(int m, int p) {
  long n = m + p;
  return 1 + 2L * m + n + 5L * m * p + 2L * m * m + 2L * m * m * p;
}

long edge_row_census(int m, int p) {
  long n = m + p;
  return n + 3L * m + p * n + n * n + 2L * m * p + 2L * m * m * p;
}

// Backend stub that records what instantiate() feeds it.
struct RecordingBackend : MipBackend {
  int n_binary = 0, n_continuous = 0, n_rows = 0, n_bound_calls = 0;
  std::vector<std::pair<double, double>> boxes;   // all vars, in order
  std::vector<double> objs;
  int add_continuous_var(double lb, double ub, double obj) override {
    ++n_continuous;
    boxes.emplace_back(lb, ub);
    objs.push_back(obj);
    return static_cast<int>(boxes.size()) - 1;
  }
  int add_binary_var(double obj) override {
    ++n_binary;
    boxes.emplace_back(0, 1);
    objs.push_back(obj);
    return static_cast<int>(boxes.size()) - 1;
  }
  void set_var_bounds(int j, double lb, double ub) override {
    ++n_bound_calls;
    boxes[j] = {lb, ub};
  }
  void add_linear_constraint(const LinearConstraint&) override { ++n_rows; }
  void set_time_limit(double) override {}
  void set_gap_target(double) override {}
  void set_mip_start(const std::vector<double>&) override {}
  bool supports_integer_solution_hook() const override { return false; }
  void set_integer_solution_hook(
      std::function<std::vector<LinearConstraint>(const std::vector<double>&)>) override {}
  MipResult solve() override { return {}; }
};

}  // namespace

TEST_SUITE("milp_model") {
  TEST_CASE("single target single site census") {
    RoutingGraph g = toy_graph({{0, 0}}, {{2, 0}}, 5);
    MilpModel md = build_node_model(g, 10, 5);
    CHECK(md.kind == FormulationKind::Node);
    // 4 x columns (two of them fixed self-loops), 1 y, 1 u.
    CHECK(md.num_vars() == 6);
    CHECK(md.rows.size() == 14);
    CHECK(md.M == doctest::Approx(12));
    CHECK(md.ub[md.x_index(0, 0)] == 0);
    CHECK(md.ub[md.x_index(1, 1)] == 0);
    CHECK(md.ub[md.x_index(0, 1)] == 1);
    CHECK(md.ub[md.x_index(1, 0)] == 1);
    CHECK(md.ub[md.u_index(0)] == 10);

    MilpModel ed = build_edge_model(g, 10, 5);
    CHECK(ed.num_vars() == 2 * 4 + 1);
    CHECK(static_cast<long>(ed.rows.size()) == edge_row_census(1, 1));
    CHECK(ed.ub[ed.z_index(0, 0)] == 0);
    CHECK(ed.ub[ed.z_index(0, 1)] == 10);
  }

  TEST_CASE("row counts follow the closed-form census") {
    std::vector<std::pair<std::vector<Point>, std::vector<Point>>> shapes = {
        {{{1, 1}, {3, 2}}, {{0, 0}, {4, 0}}},
        {{{1, 1}, {3, 2}, {2, 4}}, {{0, 0}, {4, 0}}},
        {{{1, 1}, {3, 2}, {2, 4}, {5, 5}}, {{0, 0}, {4, 0}, {2, 6}}},
    };
    for (auto& [tg, st] : shapes) {
      RoutingGraph g = toy_graph(tg, st, 50);
      int m = g.m, p = g.p;
      MilpModel nd = build_node_model(g, 100, 50);
      MilpModel ed = build_edge_model(g, 100, 50);
      CHECK(static_cast<long>(nd.rows.size()) == node_row_census(m, p));
      CHECK(static_cast<long>(ed.rows.size()) == edge_row_census(m, p));
      CHECK(nd.num_vars() == g.n() * g.n() + m * p + m);
      CHECK(ed.num_vars() == 2 * g.n() * g.n() + m * p);
      CHECK(nd.cut_pool.empty());
      CHECK(ed.cut_pool.empty());
    }
  }

  TEST_CASE("objective is exactly the arc fuel") {
    RoutingGraph g = toy_graph({{1, 1}, {3, 2}, {2, 4}}, {{0, 0}, {4, 0}}, 50);
    for (MilpModel md : {build_node_model(g, 100, 50), build_edge_model(g, 100, 50)}) {
      for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) CHECK(md.obj[md.x_index(i, j)] == g.f[i][j]);
      for (int j = g.n() * g.n(); j < md.num_vars(); ++j) CHECK(md.obj[j] == 0);
    }
  }

  TEST_CASE("big constant is capacity plus the longest arc") {
    RoutingGraph g = toy_graph({{0, 0}}, {{20, 20}}, 50);
    MilpModel md = build_node_model(g, 20, 50);
    CHECK(md.M == doctest::Approx(48.2842712474619));
  }

  TEST_CASE("fuel range fixes site hops in the node model only") {
    // Sites 8 apart, well inside R, but past the U=5 tank.
    RoutingGraph g = toy_graph({{4, 1}}, {{0, 0}, {8, 0}}, 10);
    MilpModel nd = build_node_model(g, 5, 10);
    MilpModel ed = build_edge_model(g, 5, 10);
    CHECK(nd.ub[nd.x_index(1, 2)] == 0);
    CHECK(nd.ub[nd.x_index(2, 1)] == 0);
    CHECK(ed.ub[ed.x_index(1, 2)] == 1);
    CHECK(ed.ub[ed.x_index(2, 1)] == 1);
  }

  TEST_CASE("road range fixes site hops in both models") {
    // Sites 8 apart by road with R=6: departures between them are banned.
    RoutingGraph g = toy_graph({{4, 1}}, {{0, 0}, {8, 0}}, 6, {{0, 8}, {8, 0}});
    for (MilpModel md : {build_node_model(g, 100, 6), build_edge_model(g, 100, 6)}) {
      CHECK(md.ub[md.x_index(1, 2)] == 0);
      CHECK(md.ub[md.x_index(2, 1)] == 0);
      CHECK(md.ub[md.x_index(1, 0)] == 1);  // site to target unaffected
    }
  }

  TEST_CASE("worked rows at one target one site") {
    RoutingGraph g = toy_graph({{0, 0}}, {{2, 0}}, 5);
    double U = 10;
    MilpModel md = build_node_model(g, U, 5);
    // Fixed emission order: n balance rows, m visit rows, fuel, refueling.
    const LinearConstraint& visit = md.rows[2];
    REQUIRE(visit.coeffs.size() == 1);
    CHECK(visit.coeffs[0].first == md.x_index(1, 0));
    CHECK(visit.coeffs[0].second == 1);
    CHECK(visit.sense == '=');
    CHECK(visit.rhs == 1);

    // Total-burn row: f on every arc, minus U on site departures.
    const LinearConstraint& burn = md.rows[8];
    CHECK(burn.sense == '<');
    CHECK(burn.rhs == 0);
    double on_site_dep = 0, on_target_dep = 0;
    for (auto [j, a] : burn.coeffs) {
      if (j == md.x_index(1, 0)) on_site_dep = a;
      if (j == md.x_index(0, 1)) on_target_dep = a;
    }
    CHECK(on_site_dep == doctest::Approx(2.0 - U));
    CHECK(on_target_dep == doctest::Approx(2.0));

    const LinearConstraint& label = md.rows[13];
    REQUIRE(label.coeffs.size() == 1);
    CHECK(label.coeffs[0].first == md.y_index(0, 0));
    CHECK(label.sense == '=');
    CHECK(label.rhs == 1);
  }

  TEST_CASE("cut rows cover exactly the leaving arcs") {
    RoutingGraph g = toy_graph({{1, 1}, {3, 2}}, {{0, 0}, {4, 0}}, 50);
    MilpModel md = build_node_model(g, 100, 50);
    SubtourCut cut{{0, 1}};
    LinearConstraint c = md.cut_row(cut);
    CHECK(c.sense == '>');
    CHECK(c.rhs == 1);
    std::set<int> got;
    for (auto [j, a] : c.coeffs) {
      CHECK(a == 1);
      got.insert(j);
    }
    std::set<int> want = {md.x_index(0, 2), md.x_index(0, 3), md.x_index(1, 2),
                          md.x_index(1, 3)};
    CHECK(got == want);
  }

  TEST_CASE("instantiate feeds the backend every column and row") {
    RoutingGraph g = toy_graph({{1, 1}, {3, 2}}, {{0, 0}, {4, 0}}, 50);
    MilpModel md = build_node_model(g, 100, 50);
    md.cut_pool.push_back(SubtourCut{{0, 1}});

    RecordingBackend rec;
    instantiate(md, rec);
    CHECK(rec.n_binary + rec.n_continuous == md.num_vars());
    CHECK(rec.n_continuous == g.m);
    CHECK(rec.n_rows == static_cast<int>(md.rows.size()) + 1);
    for (int j = 0; j < md.num_vars(); ++j) {
      CHECK(rec.boxes[j].first == md.lb[j]);
      CHECK(rec.boxes[j].second == md.ub[j]);
      CHECK(rec.objs[j] == md.obj[j]);
    }
    // Bound calls happen only for fixed binaries (self-loops here).
    CHECK(rec.n_bound_calls == g.n());
  }

  TEST_CASE("models built from a real instance match the census") {
    Instance in;
    in.env_width = 20;
    in.env_height = 20;
    in.targets = {{1, 6}, {9, 6}};
    in.road.polylines = {{{0, 5}, {10, 5}}};
    in.U = 6;
    in.R = 3;
    in.delta = 1;
    DiscretizedRoad road = discretize_road(in);
    SiteSelection sel = select_sites(road, in.targets);
    RoutingGraph g = make_routing_graph(in, road, sel);
    REQUIRE(g.m == 2);
    REQUIRE(g.p >= 2);
    MilpModel nd = build_node_model(g, in.U, in.R);
    MilpModel ed = build_edge_model(g, in.U, in.R);
    CHECK(static_cast<long>(nd.rows.size()) == node_row_census(g.m, g.p));
    CHECK(static_cast<long>(ed.rows.size()) == edge_row_census(g.m, g.p));
    for (int i = 0; i < g.n(); ++i) {
      CHECK(nd.ub[nd.x_index(i, i)] == 0);
      CHECK(ed.ub[ed.x_index(i, i)] == 0);
    }
  }
}
