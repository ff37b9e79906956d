#include <doctest.h>

#include "fixtures.hpp"
#include "leadcon/dynamics.hpp"
#include "leadcon/forge.hpp"
#include "leadcon/milp.hpp"

using namespace leadcon;

TEST_SUITE("dynamics") {
  TEST_CASE("converges to a pure equilibrium of the full game") {
    const auto g = fixtures::load("mixed_config.json");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto rep = run_best_response(g, seed);
      CHECK(rep.converged);
      CHECK(rep.heuristic);
      CHECK((*rep.leader_cost == Rational(2) || *rep.leader_cost == Rational(3)));
      CHECK(is_nash(g, rep.strategy, *rep.profile).is_equilibrium);
    }
  }

  TEST_CASE("single resource needs no moves") {
    RandomSpec spec;
    spec.followers = 4;
    spec.resources = 1;
    const auto rep = run_best_response(gen_random(spec), 7);
    CHECK(rep.converged);
    CHECK(rep.stats.steps == 0);
  }

  TEST_CASE("deterministic per seed") {
    RandomSpec spec{6, 4, 0, 3, Monotone::Weak};
    const auto g = gen_random(spec);
    const auto a = run_best_response(g, 11);
    const auto b = run_best_response(g, 11);
    CHECK(a.profile->assignment == b.profile->assignment);
    CHECK(a.stats.steps == b.stats.steps);
  }

  TEST_CASE("budget stops the run") {
    RandomSpec spec{8, 4, 0, 5, Monotone::Weak};
    const auto g = gen_random(spec);
    const auto rep = run_best_response(g, 1, DynamicsBudget{0, 10.0});
    CHECK(rep.stats.steps == 0);
    if (!rep.converged) CHECK(rep.status == "limit");
  }

  TEST_CASE("heuristic cost dominates the optimum on partition gadgets") {
    const auto g = gen_kpartition({{1, 1, 1, 1}, 2}, Rational(1, 2)).instance;
    const auto opt = solve_ose_milp(g);
    REQUIRE(opt.status == "optimal");
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto rep = run_best_response(g, seed);
      if (rep.converged) CHECK(*opt.leader_cost <= *rep.leader_cost);
    }
  }
}
