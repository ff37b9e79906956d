#pragma once

#include <cstdint>
#include <array>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "leadcon/game.hpp"

namespace leadcon {

enum class Monotone { None, Weak, Strict };
Monotone parse_monotone(const std::string& text);

/// Uniform integer in [lo, hi] by rejection sampling, identical on every platform.
std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

struct RandomSpec {
  int followers = 1;
  int resources = 1;
  int actions_per_player = 0;  // 0 means every resource
  std::uint64_t seed = 0;
  Monotone monotone = Monotone::None;
};

/// Costs are integers in [1, followers * resources]; action sets are drawn
/// without replacement. The leader's set is drawn like a follower's.
GameInstance gen_random(const RandomSpec& spec);

struct CnfFormula {
  int variables = 0;
  std::vector<std::array<int, 3>> clauses;
};

CnfFormula parse_dimacs(const std::string& text);
bool brute_force_satisfiable(const CnfFormula& f);

struct Certificate {
  std::string kind;
  Rational epsilon;
  Rational yes_value;
  Rational no_value_bound;
  std::string direction;
  nlohmann::json to_json() const;
};

struct Gadget {
  GameInstance instance;
  Certificate certificate;
};

Gadget gen_3sat_ose(const CnfFormula& f, const Rational& epsilon);
Gadget gen_3sat_pse(const CnfFormula& f, const Rational& epsilon);

struct PartitionInput {
  std::vector<long long> values;
  int k = 0;  // 0 when absent
};

bool brute_force_partition(const PartitionInput& in);

Gadget gen_kpartition(const PartitionInput& in, const Rational& epsilon);
Gadget gen_partition(const PartitionInput& in, const Rational& epsilon);

}  // namespace leadcon
