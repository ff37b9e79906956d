#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "leadcon/bench.hpp"
#include "leadcon/errors.hpp"
#include "leadcon/forge.hpp"
#include "leadcon/instance_json.hpp"
#include "leadcon/milp.hpp"
#include "leadcon/solve.hpp"

using namespace leadcon;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitLimit = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<long long> parse_values(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw ValidationError("bad value '" + item + "' in --values");
    }
  }
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  for (long long v : parse_values(text)) out.push_back(static_cast<T>(v));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg singleton congestion game solvers"};
  app.require_subcommand(1);

  std::string out_path;
  std::string eps_text = "1/2";
  std::uint64_t seed = 1;
  long size_guard = 200000;
  std::string sense_text = "opt";
  std::string mode_text = "corrected";
  long node_limit = 5'000'000;
  double time_limit = 3600.0;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance as JSON");
  std::string gen_kind;
  int followers = 4;
  int resources = 3;
  int actions = 0;
  std::string monotone = "none";
  std::string dimacs;
  std::string values;
  int k = 0;
  gen->add_option("kind", gen_kind, "random|sat-ose|sat-pse|kpartition|partition")
      ->required()
      ->check(CLI::IsMember({"random", "sat-ose", "sat-pse", "kpartition", "partition"}));
  gen->add_option("--followers", followers, "Number of followers (random)");
  gen->add_option("--resources", resources, "Number of resources (random)");
  gen->add_option("--actions", actions, "Actions per player, 0 for all (random)");
  gen->add_option("--monotone", monotone, "none|weak|strict (random)");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--dimacs", dimacs, "CNF file (sat-ose, sat-pse)");
  gen->add_option("--values", values, "Comma-separated integers (kpartition, partition)");
  gen->add_option("--k", k, "Cardinality (kpartition)");
  gen->add_option("--eps", eps_text, "Gadget epsilon as p/q");
  gen->add_option("--out", out_path, "Output file");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and print a report");
  std::string instance_path;
  std::string algo = "auto";
  bool pure = false;
  solve_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  solve_cmd->add_option("--algo", algo, "auto|greedy|dp|milp|oracle|brd")
      ->check(CLI::IsMember({"auto", "greedy", "dp", "milp", "oracle", "brd"}));
  solve_cmd->add_option("--sense", sense_text, "opt|pes");
  solve_cmd->add_flag("--pure", pure, "Restrict the leader to pure commitments");
  solve_cmd->add_option("--mode", mode_text, "corrected|paper-faithful");
  solve_cmd->add_option("--seed", seed, "Seed for dynamics and incumbents");
  solve_cmd->add_option("--size-guard", size_guard, "Oracle enumeration cap");
  solve_cmd->add_option("--node-limit", node_limit, "Branch-and-bound node limit");
  solve_cmd->add_option("--time-limit", time_limit, "Branch-and-bound time limit in seconds");
  long max_deviations = 100'000;
  solve_cmd->add_option("--max-deviations", max_deviations, "Best-response move budget");
  solve_cmd->add_option("--out", out_path, "Output file");

  // check
  auto* check = app.add_subcommand("check", "Verify that a strategy and profile form an equilibrium");
  std::string triple_path;
  check->add_option("instance", instance_path, "Instance JSON")->required();
  check->add_option("solution", triple_path, "JSON with leader_strategy and profile (a solve report works)")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Benchmark solvers on random instances, CSV output");
  std::string seeds_text = "1,2,3";
  std::string followers_text = "4,6";
  std::string resources_text = "3,4";
  std::string algos_text = "milp,brd";
  int threads = 0;
  bench->add_option("--seeds", seeds_text, "Comma-separated seeds");
  bench->add_option("--followers", followers_text, "Comma-separated follower counts");
  bench->add_option("--resources", resources_text, "Comma-separated resource counts");
  bench->add_option("--algo", algos_text, "Comma-separated algorithms; ratios are against the first");
  bench->add_option("--sense", sense_text, "opt|pes");
  bench->add_option("--monotone", monotone, "none|weak|strict");
  bench->add_option("--actions", actions, "Actions per player, 0 for all");
  bench->add_option("--mode", mode_text, "corrected|paper-faithful");
  bench->add_option("--node-limit", node_limit, "Branch-and-bound node limit");
  bench->add_option("--time-limit", time_limit, "Branch-and-bound time limit in seconds");
  bench->add_option("--threads", threads, "Worker count (default LEADCON_THREADS)");
  bench->add_option("--out", out_path, "Output CSV file");

  // export
  auto* exp = app.add_subcommand("export", "Write the OSE model in LP format");
  exp->add_option("instance", instance_path, "Instance JSON")->required();
  exp->add_option("--mode", mode_text, "corrected|paper-faithful");
  exp->add_option("--out", out_path, "Output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const Rational eps = Rational::parse(eps_text);
      Gadget gd;
      if (gen_kind == "random") {
        RandomSpec spec;
        spec.followers = followers;
        spec.resources = resources;
        spec.actions_per_player = actions;
        spec.seed = seed;
        spec.monotone = parse_monotone(monotone);
        gd.instance = gen_random(spec);
      } else if (gen_kind == "sat-ose" || gen_kind == "sat-pse") {
        if (dimacs.empty()) throw ValidationError("--dimacs is required");
        const CnfFormula f = parse_dimacs(read_file(dimacs));
        gd = gen_kind == "sat-ose" ? gen_3sat_ose(f, eps) : gen_3sat_pse(f, eps);
      } else {
        if (values.empty()) throw ValidationError("--values is required");
        const PartitionInput in{parse_values(values), k};
        gd = gen_kind == "kpartition" ? gen_kpartition(in, eps) : gen_partition(in, eps);
      }
      emit(out_path, instance_to_json(gd.instance).dump(2) + "\n");
      return 0;
    }

    if (solve_cmd->parsed()) {
      const GameInstance inst = load_instance(instance_path);
      SolveOptions opts;
      opts.algo = algo;
      opts.sense = parse_sense(sense_text);
      opts.pure = pure;
      opts.mode = parse_milp_mode(mode_text);
      opts.seed = seed;
      opts.size_guard = size_guard;
      opts.milp.node_limit = node_limit;
      opts.milp.time_limit_s = time_limit;
      opts.dynamics.max_deviations = max_deviations;
      const SolveReport rep = solve(inst, opts);
      const std::string problem = rep.leader_cost ? recheck_report(inst, rep) : "";
      if (!problem.empty() && rep.guarantee) throw std::logic_error("report failed re-validation: " + problem);
      emit(out_path, report_to_json(inst, rep).dump(2) + "\n");
      return rep.status == "limit" ? kExitLimit : 0;
    }

    if (check->parsed()) {
      const GameInstance inst = load_instance(instance_path);
      const auto j = nlohmann::json::parse(read_file(triple_path));
      if (!j.contains("leader_strategy") || !j.contains("profile")) {
        throw ValidationError("solution needs leader_strategy and profile");
      }
      const LeaderStrategy s = strategy_from_json(inst, j.at("leader_strategy"));
      const FollowerProfile p = profile_from_json(inst, j.at("profile"));
      const VerifyReport v = is_nash(inst, s, p);
      nlohmann::json out{{"is_nash", v.is_equilibrium},
                         {"leader_cost", leader_cost(inst, s, config_of(inst, p)).to_string()}};
      if (v.witness) {
        const Deviation& d = *v.witness;
        out["witness"] = {{"follower", d.follower},
                          {"from", inst.resources[static_cast<std::size_t>(d.from)]},
                          {"to", inst.resources[static_cast<std::size_t>(d.to)]},
                          {"current_cost", d.current_cost.to_string()},
                          {"deviation_cost", d.deviation_cost.to_string()}};
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (bench->parsed()) {
      BenchSpec spec;
      spec.seeds = parse_list<std::uint64_t>(seeds_text);
      spec.followers = parse_list<int>(followers_text);
      spec.resources = parse_list<int>(resources_text);
      spec.algos.clear();
      std::stringstream ss(algos_text);
      for (std::string a; std::getline(ss, a, ',');) spec.algos.push_back(a);
      if (spec.algos.empty()) throw ValidationError("--algo needs at least one algorithm");
      spec.monotone = parse_monotone(monotone);
      spec.actions_per_player = actions;
      spec.solve.sense = parse_sense(sense_text);
      spec.solve.mode = parse_milp_mode(mode_text);
      spec.solve.milp.node_limit = node_limit;
      spec.solve.milp.time_limit_s = time_limit;
      spec.threads = threads;
      const auto rows = run_bench(spec);
      std::ostringstream csv;
      write_bench_csv(rows, csv);
      emit(out_path, csv.str());
      for (const auto& row : rows) {
        if (row.status == "limit") return kExitLimit;
      }
      return 0;
    }

    if (exp->parsed()) {
      const GameInstance inst = load_instance(instance_path);
      const MilpModel model = build_milp(inst, parse_milp_mode(mode_text));
      std::ostringstream lp;
      export_lp_file(model, lp);
      emit(out_path, lp.str());
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NotSymmetric& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NotMonotonic& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SizeGuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const LimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
