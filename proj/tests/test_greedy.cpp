#include <doctest.h>

#include "fixtures.hpp"
#include "leadcon/errors.hpp"
#include "leadcon/forge.hpp"
#include "leadcon/greedy.hpp"
#include "leadcon/oracle.hpp"

using namespace leadcon;

TEST_SUITE("greedy") {
  TEST_CASE("mixed-configuration fixture") {
    const auto g = fixtures::load("mixed_config.json");
    const auto res = solve_greedy(g, Sense::Optimistic);
    CHECK(*res.report.leader_cost == Rational(2));
    CHECK(res.report.config.loads == std::vector<int>{1, 0, 2});
    CHECK(recheck_report(g, res.report).empty());
    CHECK(res.trace.runs.size() == 3);
  }

  TEST_CASE("single resource") {
    RandomSpec spec{5, 1, 0, 11, Monotone::Weak};
    const auto g = gen_random(spec);
    for (Sense s : {Sense::Optimistic, Sense::Pessimistic}) {
      const auto res = solve_greedy(g, s);
      CHECK(res.report.config.loads == std::vector<int>{5});
      CHECK(*res.report.leader_cost == g.cl(0, 6));
    }
  }

  TEST_CASE("matches the oracles on small monotone games") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      const auto g = gen_random({static_cast<int>(1 + seed % 5), static_cast<int>(1 + seed % 3), 0, seed, Monotone::Weak});
      const auto res = solve_greedy(g, Sense::Optimistic);
      CHECK(res.report.guarantee);
      CHECK(recheck_report(g, res.report).empty());
      CHECK(*res.report.leader_cost == *brute_force_ose(g).leader_cost);

      const auto gs = gen_random({static_cast<int>(1 + seed % 5), static_cast<int>(1 + seed % 3), 0, seed, Monotone::Strict});
      const auto pes = solve_greedy(gs, Sense::Pessimistic);
      CHECK(pes.report.guarantee);
      CHECK(*pes.report.leader_cost == *brute_force_pure(gs, Sense::Pessimistic).leader_cost);
    }
  }

  TEST_CASE("output is a follower equilibrium") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
      const auto g = gen_random({8, 4, 0, seed, Monotone::Weak});
      for (Sense s : {Sense::Optimistic, Sense::Pessimistic}) {
        const auto res = solve_greedy(g, s);
        CHECK(is_nash_config(g, res.report.strategy, res.report.config).is_equilibrium);
      }
    }
  }

  TEST_CASE("heap work grows linearly in followers") {
    for (int f : {10, 100, 1000}) {
      const auto g = gen_random({f, 6, 0, 5, Monotone::Weak});
      const auto res = solve_greedy(g, Sense::Optimistic);
      CHECK(res.report.stats.steps == 6L * (6 + 2L * f));
    }
  }

  TEST_CASE("class checks") {
    const auto asym = fixtures::load("asym_mixed_ose.json");
    CHECK_THROWS_AS(solve_greedy(asym, Sense::Optimistic), NotSymmetric);
    const auto nm = fixtures::load("nonmono_follower.json");
    CHECK_FALSE(solve_greedy(nm, Sense::Optimistic).report.guarantee);
    CHECK_THROWS_AS(solve_greedy(nm, Sense::Optimistic, {true}), NotMonotonic);
    const auto nl = fixtures::load("nonmono_leader.json");
    CHECK_FALSE(solve_greedy(nl, Sense::Optimistic).report.guarantee);
  }
}
