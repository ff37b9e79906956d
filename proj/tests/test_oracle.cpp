#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "leadcon/errors.hpp"
#include "leadcon/oracle.hpp"

using namespace leadcon;

TEST_SUITE("oracle") {
  TEST_CASE("equilibrium enumeration") {
    const auto g = fixtures::load("mixed_config.json");
    const auto ne = enumerate_ne_outcomes(g, LeaderStrategy::pure(g, 0));
    REQUIRE(ne.size() == 1);
    CHECK(ne[0].config.loads == std::vector<int>{1, 0, 2});
    CHECK(enumerate_outcomes(g).size() == 10);

    auto flat = g;
    for (auto& t : flat.follower_costs) t.assign(4, Rational(5));
    CHECK(enumerate_ne_outcomes(flat, LeaderStrategy::pure(flat, 1)).size() == 10);

    const auto p1 = fixtures::load("no_pse.json");
    CHECK(enumerate_ne_outcomes(p1, fixtures::mixed(p1, {Rational(1, 2), Rational(1, 2)})).size() == 2);
  }

  TEST_CASE("ne enumeration is the is_nash subset") {
    const auto g = fixtures::load("asym_mixed_ose.json");
    const auto s = fixtures::mixed(g, {Rational(1, 3), Rational(2, 3), Rational(0)});
    const auto all = enumerate_outcomes(g);
    CHECK(all.size() == 4);
    std::size_t count = 0;
    for (const auto& o : all) count += is_nash(g, s, *o.profile).is_equilibrium ? 1 : 0;
    CHECK(enumerate_ne_outcomes(g, s).size() == count);
  }

  TEST_CASE("per-outcome leader program") {
    const auto g = fixtures::load("asym_mixed_ose.json");
    Outcome good{Configuration{{0, 1, 1}}, FollowerProfile{{1, 2}}};
    const auto lp = min_cost_alpha_for_outcome(g, good);
    REQUIRE(lp.status == LpStatus::Optimal);
    CHECK(lp.value == Rational(1, 2));
    CHECK(lp.point == std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(0)});
    CHECK(lp.certified);
    Outcome bad{Configuration{{1, 0, 1}}, FollowerProfile{{0, 2}}};
    const auto lp2 = min_cost_alpha_for_outcome(g, bad);
    CHECK(lp2.status == LpStatus::Infeasible);
    CHECK(lp2.certified);
  }

  TEST_CASE("optimistic and pure oracles on fixtures") {
    CHECK(*brute_force_ose(fixtures::load("asym_mixed_ose.json")).leader_cost == Rational(1, 2));
    CHECK(*brute_force_ose(fixtures::load("nonmono_follower.json")).leader_cost == Rational(3, 2));
    CHECK(*brute_force_ose(fixtures::load("mixed_config.json")).leader_cost == Rational(2));
    const auto g2 = fixtures::load("mixed_config.json");
    CHECK(*brute_force_pure(g2, Sense::Optimistic).leader_cost == Rational(2));
    CHECK(*brute_force_pure(g2, Sense::Pessimistic).leader_cost == Rational(2));
    const auto g4 = fixtures::load("weak_mono_pse.json");
    CHECK(*brute_force_pure(g4, Sense::Pessimistic).leader_cost == Rational(2));
    CHECK(*brute_force_pure(g4, Sense::Optimistic).leader_cost == Rational(1));
    const auto rep = brute_force_ose(g2);
    CHECK(rep.oracle);
    CHECK(recheck_report(g2, rep).empty());
  }

  TEST_CASE("pessimistic scans") {
    const auto g1 = fixtures::load("no_pse.json");
    const auto scan = pessimistic_grid_scan(g1, 1000);
    CHECK_FALSE(scan.attained);
    CHECK(scan.infimum_estimate - Rational(1) <= Rational(1, 400));
    CHECK(pessimistic_value_at(g1, fixtures::mixed(g1, {Rational(1, 2), Rational(1, 2)})) == Rational(2));
    const auto g4 = fixtures::load("weak_mono_pse.json");
    const auto s4 = pessimistic_grid_scan(g4, 10);
    CHECK(s4.infimum_estimate == Rational(3, 2));
    CHECK(s4.attained);
    CHECK(s4.argmin.probabilities[0] == Rational(1, 2));

    auto single = g4;
    single.leader_actions = {1};
    const auto s1 = pessimistic_grid_scan(single, 50);
    CHECK(s1.points == 2);
    CHECK(s1.infimum_estimate == Rational(2));
  }

  TEST_CASE("size guard") {
    auto g = fixtures::load("mixed_config.json");
    OracleOptions tiny;
    tiny.size_guard = 5;
    CHECK_THROWS_AS(enumerate_outcomes(g, tiny), SizeGuardExceeded);
  }

  TEST_CASE("adding leader actions never hurts feasibility") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> cost(0, 6);
    for (int k = 0; k < 40; ++k) {
      GameInstance g;
      g.followers = 2;
      g.resources = {"a", "b", "c"};
      g.leader_actions = {0, 1, 2};
      g.follower_actions = {{0, 1, 2}, {0, 1, 2}};
      for (int i = 0; i < 3; ++i) {
        CostTable l, f;
        for (int x = 0; x < 3; ++x) {
          l.emplace_back(cost(rng));
          f.emplace_back(cost(rng));
        }
        g.leader_costs.push_back(l);
        g.follower_costs.push_back(f);
      }
      auto narrow = g;
      narrow.leader_actions = {static_cast<int>(k % 3)};
      for (const auto& o : enumerate_outcomes(g)) {
        const bool wide_ok = min_cost_alpha_for_outcome(g, o).status == LpStatus::Optimal;
        const bool narrow_ok = min_cost_alpha_for_outcome(narrow, o).status == LpStatus::Optimal;
        CHECK((!narrow_ok || wide_ok));
      }
    }
  }
}
