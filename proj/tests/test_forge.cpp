#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "leadcon/errors.hpp"
#include "leadcon/forge.hpp"

using namespace leadcon;

namespace {

CnfFormula two_by_three() {
  std::ifstream in(fixtures::data_path("two_clause.cnf"));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dimacs(ss.str());
}

}  // namespace

TEST_SUITE("forge") {
  TEST_CASE("random generator is reproducible") {
    const RandomSpec spec{4, 3, 2, 42, Monotone::None};
    CHECK(instance_to_json(gen_random(spec)) == instance_to_json(gen_random(spec)));
    auto other = spec;
    other.seed = 43;
    CHECK(instance_to_json(gen_random(spec)) != instance_to_json(gen_random(other)));
    const auto g = gen_random(spec);
    for (const auto& a : g.follower_actions) CHECK(a.size() == 2);
    CHECK(g.leader_actions.size() == 2);
    CHECK(g.metadata["seed"] == 42);
  }

  TEST_CASE("monotone modes") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      CHECK(classify(gen_random({5, 3, 0, seed, Monotone::Weak})).follower_weak_mono);
      const auto f = classify(gen_random({5, 3, 0, seed, Monotone::Strict}));
      CHECK(f.follower_strict_mono);
      CHECK(f.leader_weak_mono);
    }
  }

  TEST_CASE("uniform_int stays in range") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 1000; ++k) {
      const auto v = uniform_int(rng, 3, 9);
      CHECK((v >= 3 && v <= 9));
    }
  }

  TEST_CASE("dimacs parsing") {
    const auto f = two_by_three();
    CHECK(f.variables == 3);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[1] == std::array<int, 3>{-1, 2, -3});
    CHECK(parse_dimacs("c none\np cnf 2 0\n").clauses.empty());
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 0\n"), ValidationError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 3 0\n"), ValidationError);
    CHECK_THROWS_AS(parse_dimacs("1 2 3 0\n"), ValidationError);
    CHECK(brute_force_satisfiable(f));
    CHECK_FALSE(brute_force_satisfiable(parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")));
  }

  TEST_CASE("3sat gadget sizes") {
    const auto f = two_by_three();
    const auto ose = gen_3sat_ose(f, Rational(1, 2));
    CHECK(ose.instance.players() == 32);
    CHECK(ose.instance.resource_count() == 27);
    CHECK(ose.certificate.yes_value == Rational(1, 2));
    CHECK(ose.certificate.no_value_bound == Rational(4));
    CHECK(ose.instance.leader_actions.size() == 1);

    const auto pse = gen_3sat_pse(f, Rational(1, 2));
    CHECK(pse.instance.players() == 30);
    CHECK(pse.instance.resource_count() == 24);
    CHECK(pse.certificate.direction == "no->eps");
    CHECK(pse.certificate.yes_value == Rational(4));

    CHECK_THROWS_AS(gen_3sat_ose(f, Rational(0)), ValidationError);
  }

  TEST_CASE("repeated literals collapse in action sets") {
    const auto g = gen_3sat_ose(parse_dimacs("p cnf 1 1\n1 1 1 0\n"), Rational(1, 2)).instance;
    CHECK(g.follower_actions[0].size() == 2);
  }

  TEST_CASE("k-partition gadget") {
    const auto gd = gen_kpartition({{1, 1, 1, 1}, 2}, Rational(1, 2));
    const auto& g = gd.instance;
    CHECK(g.players() == 19);
    CHECK(g.resource_count() == 6);
    CHECK(classify(g).symmetric);
    const int r1 = *g.resource_index("r_1");
    CHECK(g.cf(r1, 3) == Rational(2));
    CHECK(g.cf(r1, 4) == Rational(6));
    CHECK(g.cl(r1, 3) == Rational(1, 2));
    CHECK(brute_force_partition({{1, 1, 1, 1}, 2}));
    CHECK_FALSE(brute_force_partition({{1, 1, 1, 3}, 2}));
    CHECK_THROWS_AS(gen_kpartition({{1, 1, 1, 1}, 3}, Rational(1, 2)), ValidationError);
    CHECK_THROWS_AS(gen_kpartition({{1, 1, 2}, 1}, Rational(1, 2)), ValidationError);
  }

  TEST_CASE("partition gadget") {
    CHECK_THROWS_AS(gen_partition({{1, 1}, 0}, Rational(1, 2)), ValidationError);
    const auto g = gen_partition({{1, 1, 2, 2}, 0}, Rational(1, 2)).instance;
    CHECK(g.players() == 13);
    CHECK(g.resource_count() == 5);
    const int r3 = *g.resource_index("r_3");
    // w = 2/3, s = 3: 1 / (2/3 - 1/81) = 81/53.
    CHECK(g.cf(r3, 2) == Rational(81, 53));
  }
}
