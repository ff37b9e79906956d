#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "leadcon/bench.hpp"
#include "leadcon/errors.hpp"
#include "leadcon/forge.hpp"
#include "leadcon/instance_json.hpp"
#include "leadcon/milp.hpp"
#include "leadcon/solve.hpp"

namespace py = pybind11;
using namespace leadcon;

namespace {

GameInstance parse_instance(const std::string& text) { return instance_from_json(nlohmann::json::parse(text)); }

std::string solve_json(const std::string& instance, const std::string& algo, const std::string& sense, bool pure,
                       const std::string& mode, std::uint64_t seed, long node_limit, double time_limit) {
  const GameInstance inst = parse_instance(instance);
  SolveOptions opts;
  opts.algo = algo;
  opts.sense = parse_sense(sense);
  opts.pure = pure;
  opts.mode = parse_milp_mode(mode);
  opts.seed = seed;
  opts.milp.node_limit = node_limit;
  opts.milp.time_limit_s = time_limit;
  SolveReport rep;
  {
    py::gil_scoped_release release;
    rep = solve(inst, opts);
  }
  return report_to_json(inst, rep).dump();
}

std::string check_json(const std::string& instance, const std::string& strategy, const std::string& profile) {
  const GameInstance inst = parse_instance(instance);
  const LeaderStrategy s = strategy_from_json(inst, nlohmann::json::parse(strategy));
  const FollowerProfile p = profile_from_json(inst, nlohmann::json::parse(profile));
  const VerifyReport v = is_nash(inst, s, p);
  nlohmann::json out{{"is_nash", v.is_equilibrium}, {"leader_cost", leader_cost(inst, s, config_of(inst, p)).to_string()}};
  return out.dump();
}

std::string gen_random_json(int followers, int resources, int actions, std::uint64_t seed, const std::string& monotone) {
  RandomSpec spec;
  spec.followers = followers;
  spec.resources = resources;
  spec.actions_per_player = actions;
  spec.seed = seed;
  spec.monotone = parse_monotone(monotone);
  return instance_to_json(gen_random(spec)).dump();
}

std::string gen_sat_json(const std::string& dimacs, const std::string& eps, bool pessimistic) {
  const CnfFormula f = parse_dimacs(dimacs);
  const Rational e = Rational::parse(eps);
  return instance_to_json((pessimistic ? gen_3sat_pse(f, e) : gen_3sat_ose(f, e)).instance).dump();
}

std::string gen_partition_json(const std::vector<long long>& values, int k, const std::string& eps) {
  const Rational e = Rational::parse(eps);
  const PartitionInput in{values, k};
  return instance_to_json((k > 0 ? gen_kpartition(in, e) : gen_partition(in, e)).instance).dump();
}

py::dict model_size(const std::string& instance, const std::string& mode) {
  const MilpModel m = build_milp(parse_instance(instance), parse_milp_mode(mode));
  py::dict d;
  d["variables"] = m.variable_count();
  d["binaries"] = m.binary_count();
  d["constraints"] = m.constraint_count();
  d["symmetric"] = m.symmetric;
  return d;
}

std::string export_lp(const std::string& instance, const std::string& mode) {
  std::ostringstream out;
  export_lp_file(build_milp(parse_instance(instance), parse_milp_mode(mode)), out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native solvers; instances and reports travel as JSON text.";
  m.def("solve", &solve_json, py::arg("instance"), py::arg("algo") = "auto", py::arg("sense") = "opt",
        py::arg("pure") = false, py::arg("mode") = "corrected", py::arg("seed") = 1, py::arg("node_limit") = 5'000'000,
        py::arg("time_limit") = 3600.0);
  m.def("check", &check_json, py::arg("instance"), py::arg("strategy"), py::arg("profile"));
  m.def("gen_random", &gen_random_json, py::arg("followers"), py::arg("resources"), py::arg("actions") = 0,
        py::arg("seed") = 0, py::arg("monotone") = "none");
  m.def("gen_sat", &gen_sat_json, py::arg("dimacs"), py::arg("eps") = "1/2", py::arg("pessimistic") = false);
  m.def("gen_partition", &gen_partition_json, py::arg("values"), py::arg("k") = 0, py::arg("eps") = "1/2");
  m.def("model_size", &model_size, py::arg("instance"), py::arg("mode") = "corrected");
  m.def("export_lp", &export_lp, py::arg("instance"), py::arg("mode") = "corrected");

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SizeGuardExceeded>(m, "SizeGuardExceeded", PyExc_RuntimeError);
}
