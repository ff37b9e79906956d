#include "leadcon/solve.hpp"

#include "leadcon/dp.hpp"
#include "leadcon/errors.hpp"
#include "leadcon/greedy.hpp"
#include "leadcon/oracle.hpp"

namespace leadcon {

namespace {

bool greedy_applies(const ClassFlags& f, Sense sense) {
  if (!f.symmetric || !f.leader_weak_mono || !f.follower_weak_mono) return false;
  return sense == Sense::Optimistic || f.follower_strict_mono;
}

}  // namespace

std::string pick_algorithm(const GameInstance& inst, const SolveOptions& opts) {
  if (opts.algo != "auto") return opts.algo;
  const ClassFlags f = classify(inst);
  if (greedy_applies(f, opts.sense)) return "greedy";
  if (opts.pure && f.symmetric) return "dp";
  if (opts.sense == Sense::Optimistic && !opts.pure) return "milp";
  if (opts.sense == Sense::Optimistic) return "oracle";
  throw ValidationError(
      "no exact algorithm for pessimistic commitments on this instance; use --pure on symmetric games "
      "or --algo oracle");
}

SolveReport solve(const GameInstance& inst, const SolveOptions& opts) {
  inst.validate();
  const std::string algo = pick_algorithm(inst, opts);
  OracleOptions oo;
  oo.size_guard = opts.size_guard;
  SolveReport rep;
  if (algo == "greedy") {
    if (!classify(inst).symmetric) throw ValidationError("greedy needs a symmetric instance");
    rep = solve_greedy(inst, opts.sense).report;
  } else if (algo == "dp") {
    if (!classify(inst).symmetric) throw ValidationError("dp needs a symmetric instance");
    rep = solve_pure_commitment(inst, opts.sense);
  } else if (algo == "milp") {
    if (opts.sense != Sense::Optimistic) throw ValidationError("the MILP computes optimistic equilibria only");
    BnBParams p = opts.milp;
    p.mode = opts.mode;
    p.heuristic_seed = opts.seed;
    rep = solve_ose_milp(inst, p);
  } else if (algo == "oracle") {
    rep = opts.pure || opts.sense == Sense::Pessimistic ? brute_force_pure(inst, opts.sense, oo) : brute_force_ose(inst, oo);
  } else if (algo == "brd") {
    rep = run_best_response(inst, opts.seed, opts.dynamics);
  } else {
    throw ValidationError("unknown algorithm '" + algo + "'");
  }
  rep.extra["algo"] = algo;
  return rep;
}

}  // namespace leadcon
