#include <doctest.h>

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "fcurp/simplex.hpp"

using namespace fcurp;

namespace {

struct TestRow {
  std::vector<std::pair<int, double>> coeffs;
  char sense;
  double rhs;
};

struct TestLp {
  std::vector<double> lb, ub, obj;
  std::vector<TestRow> rows;

  DualSimplexLp build() const {
    DualSimplexLp lp;
    for (std::size_t j = 0; j < lb.size(); ++j) lp.add_var(lb[j], ub[j], obj[j]);
    for (const auto& r : rows) lp.add_row(r.coeffs, r.sense, r.rhs);
    return lp;
  }
};

bool solve_linear_system(std::vector<std::vector<double>> a, std::vector<double>& x) {
  int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
    if (std::abs(a[piv][col]) < 1e-10) return false;
    std::swap(a[piv], a[col]);
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      double f = a[i][col] / a[col][col];
      for (int j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  x.assign(n, 0);
  for (int i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return true;
}

// Brute-force LP oracle: enumerate vertices as intersections of n active
// constraints drawn from the rows (as equalities) and the variable bounds.
// Sound for finitely boxed variables: a nonempty polytope has a vertex.
std::optional<double> brute_force_lp(const TestLp& lp) {
  int n = static_cast<int>(lp.lb.size());
  struct Cand {
    std::vector<double> row;
    double rhs;
  };
  std::vector<Cand> cands;
  for (const auto& r : lp.rows) {
    Cand c{std::vector<double>(n, 0.0), r.rhs};
    for (auto [j, a] : r.coeffs) c.row[j] += a;
    cands.push_back(c);
  }
  for (int j = 0; j < n; ++j) {
    Cand lo{std::vector<double>(n, 0.0), lp.lb[j]};
    lo.row[j] = 1;
    cands.push_back(lo);
    Cand hi{std::vector<double>(n, 0.0), lp.ub[j]};
    hi.row[j] = 1;
    cands.push_back(hi);
  }

  auto feasible = [&](const std::vector<double>& x) {
    for (int j = 0; j < n; ++j)
      if (x[j] < lp.lb[j] - 1e-7 || x[j] > lp.ub[j] + 1e-7) return false;
    for (const auto& r : lp.rows) {
      double act = 0;
      for (auto [j, a] : r.coeffs) act += a * x[j];
      if (r.sense == '<' && act > r.rhs + 1e-7) return false;
      if (r.sense == '>' && act < r.rhs - 1e-7) return false;
      if (r.sense == '=' && std::abs(act - r.rhs) > 1e-7) return false;
    }
    return true;
  };

  std::optional<double> best;
  int k = static_cast<int>(cands.size());
  std::vector<int> pick(n, 0);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = cands[pick[i]].row[j];
        a[i][n] = cands[pick[i]].rhs;
      }
      std::vector<double> x;
      if (!solve_linear_system(a, x)) return;
      if (!feasible(x)) return;
      double o = 0;
      for (int j = 0; j < n; ++j) o += lp.obj[j] * x[j];
      if (!best || o < *best) best = o;
      return;
    }
    for (int c = start; c < k; ++c) {
      pick[depth] = c;
      rec(c + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

TestLp random_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nvars(2, 4), nrows(1, 4), coef(-3, 3), cost(0, 5);
  std::uniform_int_distribution<int> ubs(1, 5), rhss(-4, 8), sense3(0, 2);
  TestLp lp;
  int n = nvars(rng);
  for (int j = 0; j < n; ++j) {
    lp.lb.push_back(0);
    lp.ub.push_back(ubs(rng));
    lp.obj.push_back(cost(rng));
  }
  int m = nrows(rng);
  for (int i = 0; i < m; ++i) {
    TestRow r;
    for (int j = 0; j < n; ++j) {
      int a = coef(rng);
      if (a != 0) r.coeffs.emplace_back(j, a);
    }
    if (r.coeffs.empty()) r.coeffs.emplace_back(0, 1);
    r.sense = "<>="[sense3(rng)];
    if (r.sense == '=') r.sense = rng() % 2 ? '<' : '>';  // keep = rare
    if (sense3(rng) == 0) r.sense = '=';
    r.rhs = rhss(rng);
    lp.rows.push_back(r);
  }
  return lp;
}

}  // namespace

TEST_SUITE("simplex") {
  TEST_CASE("covering LP") {
    DualSimplexLp lp;
    lp.add_var(0, 1, 1);
    lp.add_var(0, 1, 1);
    lp.add_row({{0, 1.0}, {1, 1.0}}, '>', 1);
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.objective() == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("mixed bounds optimum") {
    DualSimplexLp lp;
    int x = lp.add_var(0, 1.5, 2);
    int y = lp.add_var(0, 1.5, 3);
    lp.add_row({{x, 1.0}, {y, 1.0}}, '>', 2);
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.objective() == doctest::Approx(4.5).epsilon(1e-9));
    CHECK(lp.value(x) == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(lp.value(y) == doctest::Approx(0.5).epsilon(1e-7));
  }

  TEST_CASE("infeasible box") {
    DualSimplexLp lp;
    lp.add_var(0, 1, 1);
    lp.add_var(0, 1, 1);
    lp.add_row({{0, 1.0}, {1, 1.0}}, '<', 1);
    lp.add_row({{0, 1.0}, {1, 1.0}}, '>', 2.5);
    CHECK(lp.solve() == LpStatus::Infeasible);
  }

  TEST_CASE("equality row") {
    DualSimplexLp lp;
    int x = lp.add_var(0, 5, 1);
    int y = lp.add_var(0, 5, 0);
    lp.add_row({{x, 1.0}, {y, 1.0}}, '=', 1);
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.objective() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(lp.value(y) == doctest::Approx(1.0).epsilon(1e-7));
  }

  TEST_CASE("bound fix and restore re-solve") {
    DualSimplexLp lp;
    int x = lp.add_var(0, 1.5, 2);
    int y = lp.add_var(0, 1.5, 3);
    lp.add_row({{x, 1.0}, {y, 1.0}}, '>', 2);
    REQUIRE(lp.solve() == LpStatus::Optimal);

    lp.set_var_bounds(x, 0.5, 0.5);  // branch-style fix; forces y = 1.5
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.objective() == doctest::Approx(5.5).epsilon(1e-9));

    lp.set_var_bounds(x, 0, 0);  // now infeasible: y <= 1.5 < 2
    CHECK(lp.solve() == LpStatus::Infeasible);

    lp.set_var_bounds(x, 0, 1.5);  // unfix
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.objective() == doctest::Approx(4.5).epsilon(1e-9));
  }

  TEST_CASE("cut row added between solves") {
    DualSimplexLp lp;
    int x = lp.add_var(0, 2, 1);
    int y = lp.add_var(0, 2, 2);
    lp.add_row({{x, 1.0}, {y, 1.0}}, '>', 1);
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.objective() == doctest::Approx(1.0).epsilon(1e-9));  // x = 1

    lp.add_row({{x, 1.0}}, '<', 0.25);
    REQUIRE(lp.solve() == LpStatus::Optimal);
    CHECK(lp.objective() == doctest::Approx(0.25 + 2 * 0.75).epsilon(1e-9));
    CHECK(lp.max_residual() < 1e-7);
  }

  TEST_CASE("random LPs agree with the vertex-enumeration oracle") {
    std::mt19937_64 rng(101);
    int optimal_seen = 0, infeasible_seen = 0;
    for (int iter = 0; iter < 120; ++iter) {
      TestLp t = random_lp(rng);
      auto expect = brute_force_lp(t);
      DualSimplexLp lp = t.build();
      LpStatus st = lp.solve();
      if (expect) {
        ++optimal_seen;
        REQUIRE(st == LpStatus::Optimal);
        CHECK(lp.objective() == doctest::Approx(*expect).epsilon(1e-6));
        CHECK(lp.max_residual() < 1e-6);
      } else {
        ++infeasible_seen;
        REQUIRE(st == LpStatus::Infeasible);
      }
    }
    CHECK(optimal_seen > 30);
    CHECK(infeasible_seen > 5);
  }

  TEST_CASE("warm re-solves match cold solves under bound changes and cuts") {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int iter = 0; iter < 60; ++iter) {
      TestLp t = random_lp(rng);
      DualSimplexLp warm = t.build();
      LpStatus st0 = warm.solve();
      (void)st0;
      for (int step = 0; step < 4; ++step) {
        if (rng() % 2) {
          int j = static_cast<int>(rng() % t.lb.size());
          double fix = static_cast<double>(rng() % 3);
          if (rng() % 3 == 0) {
            t.lb[j] = 0;
            t.ub[j] = std::max(1.0, fix);
          } else {
            fix = std::min(fix, t.ub[j]);
            t.lb[j] = t.ub[j] = fix;
          }
          warm.set_var_bounds(j, t.lb[j], t.ub[j]);
        } else {
          TestRow r;
          for (std::size_t j = 0; j < t.lb.size(); ++j) {
            int a = coef(rng);
            if (a != 0) r.coeffs.emplace_back(static_cast<int>(j), a);
          }
          if (r.coeffs.empty()) r.coeffs.emplace_back(0, 1);
          r.sense = rng() % 2 ? '<' : '>';
          r.rhs = static_cast<double>(static_cast<int>(rng() % 9) - 2);
          t.rows.push_back(r);
          warm.add_row(r.coeffs, r.sense, r.rhs);
        }
        LpStatus warm_st = warm.solve();
        DualSimplexLp cold = t.build();
        LpStatus cold_st = cold.solve();
        REQUIRE(warm_st == cold_st);
        if (warm_st == LpStatus::Optimal) {
          CHECK(warm.objective() == doctest::Approx(cold.objective()).epsilon(1e-7));
          CHECK(warm.max_residual() < 1e-6);
        }
      }
    }
  }
}
