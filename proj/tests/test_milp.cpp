#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "leadcon/forge.hpp"
#include "leadcon/milp.hpp"
#include "leadcon/oracle.hpp"

using namespace leadcon;

namespace {

GameInstance random_game(int followers, int resources, std::uint64_t seed, int actions = 0) {
  RandomSpec spec;
  spec.followers = followers;
  spec.resources = resources;
  spec.seed = seed;
  spec.actions_per_player = actions;
  return gen_random(spec);
}

void check_witness(const GameInstance& g, const SolveReport& rep) {
  REQUIRE(rep.leader_cost.has_value());
  const auto ne = rep.profile ? is_nash(g, rep.strategy, *rep.profile) : is_nash_config(g, rep.strategy, rep.config);
  CHECK(ne.is_equilibrium);
  CHECK(leader_cost(g, rep.strategy, rep.config) == *rep.leader_cost);
  CHECK(recheck_report(g, rep).empty());
}

}  // namespace

TEST_SUITE("milp") {
  TEST_CASE("paper-faithful symmetric sizes") {
    const auto g = random_game(20, 10, 3);
    const auto m = build_milp(g, MilpMode::PaperFaithful);
    CHECK(m.variable_count() == 430);
    CHECK(m.binary_count() == 210);
    // r(r-1) + r(3n+1) + 2 with n = 21 players.
    CHECK(m.constraint_count() == 732);
  }

  TEST_CASE("fixture optima") {
    for (auto [name, value] : {std::pair{"mixed_config.json", Rational(2)},
                               std::pair{"nonmono_follower.json", Rational(3, 2)},
                               std::pair{"asym_mixed_ose.json", Rational(1, 2)}}) {
      CAPTURE(name);
      const auto g = fixtures::load(name);
      const auto rep = solve_ose_milp(g);
      CHECK(rep.status == "optimal");
      CHECK(*rep.leader_cost == value);
      check_witness(g, rep);
    }
    const auto g = fixtures::load("asym_mixed_ose.json");
    const auto rep = solve_ose_milp(g);
    CHECK(rep.strategy.probabilities == std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(0)});
  }

  TEST_CASE("single resource") {
    auto g = random_game(5, 1, 9);
    const auto rep = solve_ose_milp(g);
    CHECK(*rep.leader_cost == g.cl(0, 6));
  }

  TEST_CASE("lp file round trip and binary section") {
    const auto g = random_game(3, 2, 4);
    for (auto mode : {MilpMode::PaperFaithful, MilpMode::Corrected}) {
      const auto m = build_milp(g, mode);
      std::stringstream ss;
      export_lp_file(m, ss);
      const auto back = read_lp_file(ss);
      // Paper-faithful: levels 1..n. Corrected: levels 0..F, i.e. r more than 1..F.
      CHECK(back.binaries.size() == static_cast<std::size_t>(mode == MilpMode::PaperFaithful ? 4 * 2 : 3 * 2 + 2));
      REQUIRE(back.lp.rows.size() == m.lp.rows.size());
      REQUIRE(back.lp.vars.size() == m.lp.vars.size());
      for (std::size_t j = 0; j < m.lp.vars.size(); ++j) {
        CHECK(back.lp.vars[j].name == m.lp.vars[j].name);
        CHECK(back.lp.vars[j].cost == m.lp.vars[j].cost);
        CHECK(back.lp.vars[j].lower == m.lp.vars[j].lower);
        CHECK(back.lp.vars[j].upper == m.lp.vars[j].upper);
      }
      for (std::size_t k = 0; k < m.lp.rows.size(); ++k) {
        const auto& a = back.lp.rows[k];
        const auto& b = m.lp.rows[k];
        CHECK(a.name == b.name);
        CHECK(a.terms == b.terms);
        CHECK(a.rel == b.rel);
        CHECK(a.rhs == b.rhs);
      }
    }
  }

  TEST_CASE("oracle equivalence with and without the float guide") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      CAPTURE(seed);
      const bool sym = seed % 2 == 0;
      const auto g = sym ? random_game(1 + static_cast<int>(seed % 5), 2 + static_cast<int>(seed % 3), seed)
                         : random_game(1 + static_cast<int>(seed % 4), 3, seed, 2);
      const auto truth = brute_force_ose(g);
      BnBParams guided;
      BnBParams plain;
      plain.float_guide = false;
      const auto a = solve_ose_milp(g, guided);
      const auto b = solve_ose_milp(g, plain);
      REQUIRE(truth.leader_cost.has_value());
      CHECK(*a.leader_cost == *truth.leader_cost);
      CHECK(*b.leader_cost == *truth.leader_cost);
      check_witness(g, a);
      check_witness(g, b);
    }
  }

  TEST_CASE("limits report the incumbent and a bound") {
    const auto g = random_game(8, 5, 11);
    BnBParams p;
    p.node_limit = 1;
    p.incumbent = "heuristic";
    const auto rep = solve_ose_milp(g, p);
    if (rep.status == "limit") {
      CHECK(rep.bound.has_value());
      CHECK_FALSE(rep.optimal);
    } else {
      CHECK(rep.status == "optimal");
    }
  }

  TEST_CASE("3sat gadget values") {
    std::ifstream in(fixtures::data_path("two_clause.cnf"));
    std::stringstream text;
    text << in.rdbuf();
    const auto sat = parse_dimacs(text.str());
    const auto yes = gen_3sat_ose(sat, Rational(1, 2));
    CHECK(*solve_ose_milp(yes.instance).leader_cost == Rational(1, 2));
    const auto unsat = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
    const auto no = gen_3sat_ose(unsat, Rational(1, 2));
    CHECK(*solve_ose_milp(no.instance).leader_cost == Rational(4));
  }
}
