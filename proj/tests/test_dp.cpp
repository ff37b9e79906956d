#include <doctest.h>

#include "fixtures.hpp"
#include "leadcon/dp.hpp"
#include "leadcon/errors.hpp"
#include "leadcon/forge.hpp"
#include "leadcon/oracle.hpp"

using namespace leadcon;

namespace {

std::vector<std::vector<Rational>> rows(std::initializer_list<std::initializer_list<int>> in) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : in) out.emplace_back(r.begin(), r.end());
  return out;
}

}  // namespace

TEST_SUITE("dp") {
  TEST_CASE("mixed-configuration fixture, both senses") {
    const auto g = fixtures::load("mixed_config.json");
    for (Sense s : {Sense::Optimistic, Sense::Pessimistic}) {
      const auto rep = solve_pure_commitment(g, s);
      CHECK(*rep.leader_cost == Rational(2));
      CHECK(rep.config.loads == std::vector<int>{1, 0, 2});
      CHECK(recheck_report(g, rep).empty());
      CHECK(rep.extra["pure_commitment"] == true);
    }
  }

  TEST_CASE("single resource social cost") {
    const auto chat = rows({{0, 2, 3, 7, 9}});
    const auto res = dp_optimal_ne(chat, 3, social_cost_objective(chat, 3));
    REQUIRE(res.feasible);
    CHECK(res.value == Rational(21));
    CHECK(res.config.loads == std::vector<int>{3});
  }

  TEST_CASE("equilibrium selection on two resources") {
    // Flat costs: every split is an equilibrium, so min and max social cost differ.
    const auto chat = rows({{0, 1, 1, 1, 1}, {0, 2, 2, 2, 2}});
    const auto lo = dp_optimal_ne(chat, 3, social_cost_objective(chat, 3));
    const auto hi = dp_optimal_ne(chat, 3, social_cost_objective(chat, 3, true));
    CHECK(lo.value == Rational(3));
    CHECK(lo.config.loads == std::vector<int>{3, 0});
    // 2 on resource 1 would prefer resource 0 at cost 1.
    CHECK(hi.value == Rational(3));
  }

  TEST_CASE("infeasible state and dominance") {
    const auto chat = rows({{0, 1, 5, 5}, {0, 1, 5, 5}});
    DpSolver s(chat, 2, social_cost_objective(chat, 2));
    const auto& v = s.values();
    const int top = static_cast<int>(v.size());
    CHECK_FALSE(s.state_value(0, 1, top, 0).has_value());
    CHECK(*s.state_value(0, 0, top, 0) == Rational(0));
    // A tighter deviation bound M cannot admit more loads.
    const auto loose = s.state_value(2, 2, top, 0);
    const auto tight = s.state_value(2, 2, 0, 0);
    REQUIRE(loose.has_value());
    CHECK(*loose == Rational(2));
    if (tight) CHECK(*tight >= *loose);
  }

  TEST_CASE("matches the pure oracle on arbitrary costs") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const auto g = gen_random({static_cast<int>(1 + seed % 6), static_cast<int>(1 + seed % 4), 0, seed, Monotone::None});
      for (Sense s : {Sense::Optimistic, Sense::Pessimistic}) {
        const auto rep = solve_pure_commitment(g, s);
        const auto ref = brute_force_pure(g, s);
        REQUIRE(rep.leader_cost.has_value());
        CHECK(*rep.leader_cost == *ref.leader_cost);
        CHECK(recheck_report(g, rep).empty());
      }
    }
  }

  TEST_CASE("state count stays polynomial") {
    const auto g = gen_random({30, 6, 0, 9, Monotone::None});
    const auto chat = shifted_costs(g, 0);
    DpSolver s(chat, 30, leader_objective(g, 0, false));
    (void)s.solve();
    const long d = static_cast<long>(s.values().size()) + 1;
    CHECK(s.states() <= 7L * 31 * d * d);
  }

  TEST_CASE("rejects asymmetric games") {
    CHECK_THROWS_AS(solve_pure_commitment(fixtures::load("asym_mixed_ose.json"), Sense::Optimistic), NotSymmetric);
  }
}
