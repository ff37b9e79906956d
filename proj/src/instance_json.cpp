#include "leadcon/instance_json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "leadcon/errors.hpp"

namespace leadcon {

using nlohmann::json;

namespace {

int lookup(const GameInstance& inst, const json& id) {
  if (!id.is_string()) throw ValidationError("resource ids must be strings");
  const auto idx = inst.resource_index(id.get<std::string>());
  if (!idx) throw ValidationError("unknown resource '" + id.get<std::string>() + "'");
  return *idx;
}

std::vector<int> action_set(const GameInstance& inst, const json& j) {
  std::vector<int> out;
  if (j.is_string() && j.get<std::string>() == "ALL") {
    for (int i = 0; i < inst.resource_count(); ++i) out.push_back(i);
    return out;
  }
  if (!j.is_array()) throw ValidationError("action set must be a list or \"ALL\"");
  for (const auto& id : j) out.push_back(lookup(inst, id));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw ValidationError("duplicate resource in action set");
  return out;
}

std::vector<CostTable> cost_tables(const GameInstance& inst, const json& j, const char* field) {
  if (!j.is_object()) throw ValidationError(std::string(field) + " must map resource ids to lists");
  std::vector<CostTable> out(static_cast<std::size_t>(inst.resource_count()));
  std::vector<bool> seen(out.size(), false);
  const auto n = static_cast<std::size_t>(inst.players());
  for (const auto& [key, values] : j.items()) {
    const int i = lookup(inst, json(key));
    if (!values.is_array() || values.empty()) throw ValidationError(std::string(field) + " entry for '" + key + "' must be a nonempty list");
    CostTable t;
    for (const auto& v : values) t.push_back(rational_from_json(v));
    if (t.size() > n) throw ValidationError(std::string(field) + " entry for '" + key + "' is longer than the player count");
    while (t.size() < n) t.push_back(t.back());
    out[static_cast<std::size_t>(i)] = std::move(t);
    seen[static_cast<std::size_t>(i)] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ValidationError(std::string(field) + " missing resource '" + inst.resources[i] + "'");
  }
  return out;
}

}  // namespace

Rational rational_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ValidationError(e.what());
  }
  throw ValidationError("rational values must be strings \"p/q\" or integers");
}

GameInstance instance_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("instance must be a JSON object");
  GameInstance inst;
  try {
    inst.followers = j.at("followers").get<int>();
    for (const auto& id : j.at("resources")) inst.resources.push_back(id.get<std::string>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed instance: ") + e.what());
  }
  if (inst.followers < 0) throw ValidationError("followers must be nonnegative");
  if (!j.contains("leader_actions") || !j.contains("follower_actions") || !j.contains("leader_costs") ||
      !j.contains("follower_costs")) {
    throw ValidationError("instance is missing a required field");
  }
  inst.leader_actions = action_set(inst, j.at("leader_actions"));
  const json& fa = j.at("follower_actions");
  if (fa.is_string()) {
    for (int p = 0; p < inst.followers; ++p) inst.follower_actions.push_back(action_set(inst, fa));
  } else {
    if (!fa.is_array()) throw ValidationError("follower_actions must be a list");
    for (const auto& a : fa) inst.follower_actions.push_back(action_set(inst, a));
  }
  inst.leader_costs = cost_tables(inst, j.at("leader_costs"), "leader_costs");
  inst.follower_costs = cost_tables(inst, j.at("follower_costs"), "follower_costs");
  if (j.contains("metadata")) inst.metadata = j.at("metadata");
  inst.validate();
  return inst;
}

json instance_to_json(const GameInstance& inst) {
  json j;
  j["followers"] = inst.followers;
  j["resources"] = inst.resources;
  auto ids = [&](const std::vector<int>& set) {
    json a = json::array();
    for (int i : set) a.push_back(inst.resources[static_cast<std::size_t>(i)]);
    return a;
  };
  j["leader_actions"] = ids(inst.leader_actions);
  json fa = json::array();
  for (const auto& a : inst.follower_actions) {
    if (static_cast<int>(a.size()) == inst.resource_count()) {
      fa.push_back("ALL");
    } else {
      fa.push_back(ids(a));
    }
  }
  j["follower_actions"] = fa;
  auto tables = [&](const std::vector<CostTable>& ts) {
    json o = json::object();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      json row = json::array();
      for (const auto& v : ts[i]) row.push_back(v.to_string());
      o[inst.resources[i]] = row;
    }
    return o;
  };
  j["leader_costs"] = tables(inst.leader_costs);
  j["follower_costs"] = tables(inst.follower_costs);
  j["metadata"] = inst.metadata;
  return j;
}

GameInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid JSON in '") + path + "': " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const GameInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << instance_to_json(inst).dump(2) << '\n';
}

LeaderStrategy strategy_from_json(const GameInstance& inst, const json& j) {
  LeaderStrategy s;
  s.probabilities.assign(static_cast<std::size_t>(inst.resource_count()), Rational(0));
  if (j.is_string()) {
    s.probabilities[static_cast<std::size_t>(lookup(inst, j))] = Rational(1);
  } else if (j.is_object()) {
    for (const auto& [key, v] : j.items()) s.probabilities[static_cast<std::size_t>(lookup(inst, json(key)))] = rational_from_json(v);
  } else {
    throw ValidationError("leader strategy must be a resource id or an object of probabilities");
  }
  s.validate(inst);
  return s;
}

json strategy_to_json(const GameInstance& inst, const LeaderStrategy& s) {
  json o = json::object();
  for (std::size_t i = 0; i < s.probabilities.size(); ++i) {
    if (!s.probabilities[i].is_zero()) o[inst.resources[i]] = s.probabilities[i].to_string();
  }
  return o;
}

FollowerProfile profile_from_json(const GameInstance& inst, const json& j) {
  if (!j.is_array()) throw ValidationError("profile must be a list of resource ids");
  FollowerProfile p;
  for (const auto& id : j) p.assignment.push_back(lookup(inst, id));
  p.validate(inst);
  return p;
}

json profile_to_json(const GameInstance& inst, const FollowerProfile& p) {
  json a = json::array();
  for (int i : p.assignment) a.push_back(inst.resources[static_cast<std::size_t>(i)]);
  return a;
}

}  // namespace leadcon
