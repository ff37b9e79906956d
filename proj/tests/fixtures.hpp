#pragma once

#include <string>

#include "leadcon/game.hpp"
#include "leadcon/instance_json.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(LEADCON_TEST_DATA) + "/" + name; }
inline leadcon::GameInstance load(const std::string& name) { return leadcon::load_instance(data_path(name)); }

inline leadcon::LeaderStrategy mixed(const leadcon::GameInstance& inst, std::initializer_list<leadcon::Rational> p) {
  leadcon::LeaderStrategy s;
  s.probabilities.assign(p.begin(), p.end());
  s.probabilities.resize(static_cast<std::size_t>(inst.resource_count()), leadcon::Rational(0));
  return s;
}

}  // namespace fixtures
