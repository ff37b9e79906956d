#include "leadcon/report.hpp"

#include "leadcon/instance_json.hpp"

namespace leadcon {

nlohmann::json report_to_json(const GameInstance& inst, const SolveReport& rep) {
  nlohmann::json j;
  j["solver"] = rep.solver;
  j["sense"] = to_string(rep.sense);
  j["status"] = rep.status;
  j["optimal"] = rep.optimal;
  j["guarantee"] = rep.guarantee;
  j["oracle"] = rep.oracle;
  j["heuristic"] = rep.heuristic;
  j["converged"] = rep.converged;
  j["exact"] = rep.exact;
  if (!rep.strategy.probabilities.empty()) j["leader_strategy"] = strategy_to_json(inst, rep.strategy);
  if (!rep.config.loads.empty()) {
    nlohmann::json loads = nlohmann::json::object();
    for (std::size_t i = 0; i < rep.config.loads.size(); ++i) loads[inst.resources[i]] = rep.config.loads[i];
    j["configuration"] = loads;
  }
  if (rep.profile) j["profile"] = profile_to_json(inst, *rep.profile);
  j["leader_cost"] = rep.leader_cost ? nlohmann::json(rep.leader_cost->to_string()) : nlohmann::json(nullptr);
  if (rep.bound) j["bound"] = rep.bound->to_string();
  if (rep.leader_cost && rep.bound) j["gap"] = (*rep.leader_cost - *rep.bound).to_string();
  j["stats"] = {{"nodes", rep.stats.nodes},
                {"lp_solves", rep.stats.lp_solves},
                {"pivots", rep.stats.pivots},
                {"steps", rep.stats.steps},
                {"wall_ms", rep.stats.wall_ms}};
  if (!rep.extra.empty()) j["extra"] = rep.extra;
  return j;
}

std::string recheck_report(const GameInstance& inst, const SolveReport& rep) {
  if (!rep.leader_cost) return rep.status == "infeasible" ? "" : "missing leader cost";
  try {
    rep.strategy.validate(inst);
    rep.config.validate(inst);
  } catch (const std::exception& e) {
    return e.what();
  }
  if (leader_cost(inst, rep.strategy, rep.config) != *rep.leader_cost) return "leader cost does not match the outcome";
  VerifyReport v;
  if (rep.profile) {
    if (config_of(inst, *rep.profile).loads != rep.config.loads) return "profile and configuration disagree";
    v = is_nash(inst, rep.strategy, *rep.profile);
  } else {
    if (!classify(inst).symmetric) return "asymmetric instance without a profile";
    v = is_nash_config(inst, rep.strategy, rep.config);
  }
  if (!v.is_equilibrium) return "outcome is not a follower equilibrium";
  return "";
}

}  // namespace leadcon
