#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "leadcon/errors.hpp"
#include "leadcon/game.hpp"

using namespace leadcon;

TEST_SUITE("core") {
  TEST_CASE("expected follower cost") {
    const auto inst = fixtures::load("no_pse.json");
    const auto half = fixtures::mixed(inst, {Rational(1, 2), Rational(1, 2)});
    CHECK(expected_follower_cost(inst, half, 0, 1) == Rational(3, 2));
    const auto pure0 = LeaderStrategy::pure(inst, 0);
    CHECK(expected_follower_cost(inst, pure0, 1, 1) == inst.cf(1, 1));
    CHECK(expected_follower_cost(inst, pure0, 0, 0) == inst.cf(0, 1));
    CHECK_THROWS_AS(expected_follower_cost(inst, half, 0, 2), ValidationError);
    CHECK_THROWS_AS(expected_follower_cost(inst, half, 5, 0), ValidationError);
  }

  TEST_CASE("leader cost") {
    const auto inst = fixtures::load("mixed_config.json");
    const auto s = fixtures::mixed(inst, {Rational(1, 2), Rational(0), Rational(1, 2)});
    CHECK(leader_cost(inst, s, Configuration{{1, 1, 1}}) == Rational(2));
    CHECK(leader_cost(inst, LeaderStrategy::pure(inst, 1), Configuration{{0, 3, 0}}) == inst.cl(1, 4));
    CHECK_THROWS_AS(leader_cost(inst, s, Configuration{{1, 2}}), ValidationError);

    const auto asym = fixtures::load("asym_mixed_ose.json");
    const auto h = fixtures::mixed(asym, {Rational(1, 2), Rational(1, 2), Rational(0)});
    CHECK(leader_cost(asym, h, config_of(asym, FollowerProfile{{1, 2}})) == Rational(1, 2));
  }

  TEST_CASE("nash verification") {
    const auto inst = fixtures::load("mixed_config.json");
    const auto s = fixtures::mixed(inst, {Rational(1, 2), Rational(0), Rational(1, 2)});
    CHECK(is_nash(inst, s, FollowerProfile{{0, 1, 2}}).is_equilibrium);
    const auto rep = is_nash(inst, LeaderStrategy::pure(inst, 0), FollowerProfile{{0, 1, 2}});
    REQUIRE_FALSE(rep.is_equilibrium);
    REQUIRE(rep.witness);
    CHECK(rep.witness->from == 1);
    CHECK(rep.witness->to == 2);
    CHECK(rep.witness->current_cost == Rational(4));
    CHECK(rep.witness->deviation_cost == Rational(3));
    CHECK(rep.witness->deviation_cost < rep.witness->current_cost);

    GameInstance single;
    single.followers = 1;
    single.resources = {"a"};
    single.leader_actions = {0};
    single.follower_actions = {{0}};
    single.leader_costs = {{Rational(1), Rational(2)}};
    single.follower_costs = {{Rational(1), Rational(2)}};
    single.validate();
    CHECK(is_nash(single, LeaderStrategy::pure(single, 0), FollowerProfile{{0}}).is_equilibrium);
  }

  TEST_CASE("config of profile") {
    const auto inst = fixtures::load("asym_mixed_ose.json");
    CHECK(config_of(inst, FollowerProfile{{1, 2}}).loads == std::vector<int>{0, 1, 1});
    GameInstance g;
    g.followers = 3;
    g.resources = {"a", "b"};
    g.leader_actions = {0, 1};
    g.follower_actions = {{0, 1}, {0, 1}, {0, 1}};
    g.leader_costs = g.follower_costs = {CostTable(4, Rational(1)), CostTable(4, Rational(1))};
    CHECK(config_of(g, FollowerProfile{{0, 0, 0}}).loads == std::vector<int>{3, 0});
    g.followers = 0;
    g.follower_actions.clear();
    for (auto& t : g.leader_costs) t.resize(1);
    for (auto& t : g.follower_costs) t.resize(1);
    g.validate();
    CHECK(config_of(g, FollowerProfile{}).loads == std::vector<int>{0, 0});
  }

  TEST_CASE("classification") {
    const auto f2 = classify(fixtures::load("mixed_config.json"));
    CHECK(f2.symmetric);
    CHECK(f2.follower_weak_mono);
    // The loader pads c(4) = c(3), so strictness fails at full congestion.
    CHECK_FALSE(f2.follower_strict_mono);
    CHECK_FALSE(classify(fixtures::load("nonmono_follower.json")).follower_weak_mono);
    CHECK_FALSE(classify(fixtures::load("asym_mixed_ose.json")).symmetric);
    const auto f4 = classify(fixtures::load("weak_mono_pse.json"));
    CHECK(f4.follower_weak_mono);
    CHECK_FALSE(f4.follower_strict_mono);
  }

  TEST_CASE("json loader clamps and validates") {
    const auto inst = fixtures::load("mixed_config.json");
    CHECK(inst.follower_costs[0].size() == 4);
    CHECK(inst.cf(0, 4) == Rational(6));
    CHECK(inst.cf(0, 9) == Rational(6));
    auto j = instance_to_json(inst);
    CHECK(instance_to_json(instance_from_json(j)) == j);
    auto bad = j;
    bad["follower_costs"]["r1"][0] = "-1";
    CHECK_THROWS_AS(instance_from_json(bad), ValidationError);
    bad = j;
    bad["leader_actions"] = nlohmann::json::array({"r9"});
    CHECK_THROWS_AS(instance_from_json(bad), ValidationError);
  }

  TEST_CASE("convex combination bound and relabeling invariance") {
    std::mt19937_64 rng(11);
    const auto inst = fixtures::load("mixed_config.json");
    std::uniform_int_distribution<int> q(0, 12);
    for (int k = 0; k < 200; ++k) {
      int a = q(rng), b = q(rng);
      if (a + b == 0) a = 1;
      const Rational p0(a, a + b);
      const auto s = fixtures::mixed(inst, {p0, Rational(1) - p0, Rational(0)});
      for (int i = 0; i < 3; ++i) {
        for (int x = 0; x <= 3; ++x) {
          const Rational v = expected_follower_cost(inst, s, i, x);
          CHECK(min(inst.cf(i, x), inst.cf(i, x + 1)) <= v);
          CHECK(v <= max(inst.cf(i, x), inst.cf(i, x + 1)));
        }
      }
      std::vector<int> prof{q(rng) % 3, q(rng) % 3, q(rng) % 3};
      const bool verdict = is_nash(inst, s, FollowerProfile{prof}).is_equilibrium;
      std::shuffle(prof.begin(), prof.end(), rng);
      CHECK(is_nash(inst, s, FollowerProfile{prof}).is_equilibrium == verdict);
      CHECK(is_nash_config(inst, s, config_of(inst, FollowerProfile{prof})).is_equilibrium == verdict);
    }
  }
}
