#pragma once

#include <string>

#include <json.hpp>

#include "leadcon/game.hpp"

namespace leadcon {

/// Parses the JSON instance schema. Short cost tables are padded by repeating
/// their last value; the result is validated before returning.
GameInstance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const GameInstance& inst);

GameInstance load_instance(const std::string& path);
void save_instance(const GameInstance& inst, const std::string& path);

Rational rational_from_json(const nlohmann::json& j);
inline nlohmann::json rational_to_json(const Rational& q) { return q.to_string(); }

LeaderStrategy strategy_from_json(const GameInstance& inst, const nlohmann::json& j);
nlohmann::json strategy_to_json(const GameInstance& inst, const LeaderStrategy& s);
FollowerProfile profile_from_json(const GameInstance& inst, const nlohmann::json& j);
nlohmann::json profile_to_json(const GameInstance& inst, const FollowerProfile& p);

}  // namespace leadcon
