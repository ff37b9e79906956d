#include <doctest.h>

#include <random>

#include "leadcon/lp.hpp"

using namespace leadcon;

namespace {

LinearProgram random_standard(std::mt19937_64& rng, int m, int n) {
  std::uniform_int_distribution<int> coef(-4, 6);
  std::uniform_int_distribution<int> pos(0, 5);
  LinearProgram lp;
  std::vector<int> x0(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    lp.add_variable("x" + std::to_string(j), Rational(0), std::nullopt, Rational(pos(rng) + 1));
    x0[static_cast<std::size_t>(j)] = pos(rng);
  }
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, Rational>> terms;
    long long rhs = 0;
    for (int j = 0; j < n; ++j) {
      const int a = coef(rng);
      if (a == 0) continue;
      terms.emplace_back(j, Rational(a));
      rhs += static_cast<long long>(a) * x0[static_cast<std::size_t>(j)];
    }
    lp.add_row("r" + std::to_string(i), terms, i % 2 == 0 ? Relation::Equal : Relation::GreaterEq, Rational(rhs - (i % 2)));
  }
  return lp;
}

// Dual of min c.x, rows (= or >=), x >= 0.
LinearProgram dual_of(const LinearProgram& p) {
  LinearProgram d;
  d.maximize = true;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const bool eq = p.rows[i].rel == Relation::Equal;
    d.add_variable("y" + std::to_string(i), eq ? std::nullopt : std::optional<Rational>(Rational(0)), std::nullopt,
                   p.rows[i].rhs);
  }
  for (std::size_t j = 0; j < p.vars.size(); ++j) {
    std::vector<std::pair<int, Rational>> terms;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      for (const auto& [k, a] : p.rows[i].terms) {
        if (k == static_cast<int>(j)) terms.emplace_back(static_cast<int>(i), a);
      }
    }
    d.add_row("c" + std::to_string(j), terms, Relation::LessEq, p.vars[j].cost);
  }
  return d;
}

}  // namespace

TEST_SUITE("lp") {
  TEST_CASE("single bound") {
    LinearProgram lp;
    const int x = lp.add_variable("x", std::nullopt, std::nullopt, Rational(1));
    lp.add_row("lo", {{x, Rational(1)}}, Relation::GreaterEq, Rational(3));
    const auto out = solve_lp(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == Rational(3));
    CHECK(out.certified);
  }

  TEST_CASE("outcome lp pins alpha") {
    LinearProgram lp;
    lp.maximize = true;
    const int a1 = lp.add_variable("a1", Rational(0), std::nullopt);
    const int a2 = lp.add_variable("a2", Rational(0), std::nullopt, Rational(1));
    lp.add_row("u", {{a2, Rational(2)}}, Relation::LessEq, Rational(1));
    lp.add_row("v", {{a2, Rational(2)}}, Relation::GreaterEq, Rational(1));
    lp.add_row("s", {{a1, Rational(1)}, {a2, Rational(1)}}, Relation::Equal, Rational(1));
    const auto out = solve_lp(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.point[1] == Rational(1, 2));
    CHECK(out.value == Rational(1, 2));
    CHECK(out.certified);
  }

  TEST_CASE("infeasible pair") {
    LinearProgram lp;
    const int x = lp.add_variable("x", std::nullopt, std::nullopt);
    lp.add_row("a", {{x, Rational(1)}}, Relation::LessEq, Rational(0));
    lp.add_row("b", {{x, Rational(1)}}, Relation::GreaterEq, Rational(1));
    const auto out = solve_lp(lp);
    CHECK(out.status == LpStatus::Infeasible);
    CHECK(out.certified);
  }

  TEST_CASE("unbounded ray") {
    LinearProgram lp;
    const int x = lp.add_variable("x", Rational(0), std::nullopt, Rational(-1));
    const int y = lp.add_variable("y", Rational(0), std::nullopt);
    lp.add_row("a", {{x, Rational(1)}, {y, Rational(-1)}}, Relation::LessEq, Rational(2));
    const auto out = solve_lp(lp);
    CHECK(out.status == LpStatus::Unbounded);
    CHECK(out.certified);
  }

  TEST_CASE("dimension mismatch") {
    LinearProgram lp;
    lp.add_variable("x", Rational(0), Rational(1));
    lp.add_row("bad", {{3, Rational(1)}}, Relation::LessEq, Rational(0));
    CHECK_THROWS(solve_lp(lp));
  }

  TEST_CASE("strong duality and determinism on random programs") {
    std::mt19937_64 rng(2024);
    int solved = 0;
    for (int k = 0; k < 150; ++k) {
      const auto p = random_standard(rng, 2 + k % 4, 3 + k % 5);
      const auto po = solve_lp(p);
      const auto d = dual_of(p);
      const auto dd = solve_lp(d);
      REQUIRE(po.certified);
      REQUIRE(dd.certified);
      REQUIRE(po.status == LpStatus::Optimal);
      REQUIRE(dd.status == LpStatus::Optimal);
      CHECK(po.value == dd.value);
      CHECK(p.satisfied_by(po.point));
      CHECK(solve_lp(p).point == po.point);
      ++solved;
    }
    CHECK(solved == 150);
  }

  TEST_CASE("warm re-solve after bound changes matches a cold solve") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coef(-3, 5);
    for (int k = 0; k < 60; ++k) {
      LinearProgram lp;
      for (int j = 0; j < 6; ++j) lp.add_variable("x", Rational(0), Rational(1), Rational(coef(rng)));
      for (int i = 0; i < 4; ++i) {
        std::vector<std::pair<int, Rational>> terms;
        for (int j = 0; j < 6; ++j) terms.emplace_back(j, Rational(coef(rng)));
        lp.add_row("r", terms, Relation::LessEq, Rational(coef(rng) + 2));
      }
      Simplex warm(lp);
      const auto first = warm.solve();
      REQUIRE(first.certified);
      LinearProgram fixed = lp;
      for (int j = 0; j < 3; ++j) {
        const Rational v(static_cast<int>((k >> j) & 1));
        fixed.vars[static_cast<std::size_t>(j)].lower = v;
        fixed.vars[static_cast<std::size_t>(j)].upper = v;
        warm.set_bounds(j, v, v);
      }
      const auto a = warm.solve();
      const auto b = solve_lp(fixed);
      REQUIRE(a.status == b.status);
      CHECK(a.certified);
      if (a.status == LpStatus::Optimal) CHECK(a.value == b.value);
      for (int j = 0; j < 3; ++j) warm.set_bounds(j, Rational(0), Rational(1));
      const auto c = warm.solve();
      CHECK(c.value == first.value);
    }
  }
}
