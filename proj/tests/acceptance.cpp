// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "leadcon/bench.hpp"
#include "leadcon/dp.hpp"
#include "leadcon/dynamics.hpp"
#include "leadcon/forge.hpp"
#include "leadcon/greedy.hpp"
#include "leadcon/instance_json.hpp"
#include "leadcon/milp.hpp"
#include "leadcon/oracle.hpp"

using namespace leadcon;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  double budget_s = 0.0;  // 0 means no wall-clock requirement
};

GameInstance fixture(const std::string& name) { return load_instance(std::string(LEADCON_TEST_DATA) + "/" + name); }

int draw(std::mt19937_64& rng, int lo, int hi) {
  return static_cast<int>(uniform_int(rng, static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)));
}

std::string show(const std::optional<Rational>& q) { return q ? q->to_string() : "none"; }

Verdict oracle_equivalence() {
  std::mt19937_64 rng(101);
  int checked = 0;
  int bad = 0;
  std::string first;
  for (int k = 0; k < 300; ++k) {
    RandomSpec spec;
    spec.seed = rng();
    if (k % 2 == 0) {
      spec.followers = draw(rng, 1, 6);
      spec.resources = draw(rng, 1, 4);
    } else {
      spec.followers = draw(rng, 1, 5);
      spec.resources = draw(rng, 2, 5);
      spec.actions_per_player = draw(rng, 1, std::min(3, spec.resources));
    }
    const GameInstance g = gen_random(spec);
    const auto truth = brute_force_ose(g);
    const auto milp = solve_ose_milp(g);
    ++checked;
    const bool ok = milp.status == "optimal" && milp.leader_cost == truth.leader_cost && recheck_report(g, milp).empty();
    if (!ok && bad++ == 0) {
      first = "seed " + std::to_string(spec.seed) + ": milp " + show(milp.leader_cost) + " vs oracle " + show(truth.leader_cost);
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " equal" + (first.empty() ? "" : "; " + first),
          600};
}

Verdict greedy_correctness() {
  std::mt19937_64 rng(202);
  int weak_ok = 0;
  int strict_ok = 0;
  for (int k = 0; k < 200; ++k) {
    RandomSpec spec{draw(rng, 1, 6), draw(rng, 1, 4), 0, rng(), Monotone::Weak};
    const GameInstance g = gen_random(spec);
    weak_ok += solve_greedy(g, Sense::Optimistic).report.leader_cost == brute_force_ose(g).leader_cost ? 1 : 0;
  }
  for (int k = 0; k < 200; ++k) {
    RandomSpec spec{draw(rng, 1, 6), draw(rng, 1, 4), 0, rng(), Monotone::Strict};
    const GameInstance g = gen_random(spec);
    strict_ok +=
        solve_greedy(g, Sense::Pessimistic).report.leader_cost == brute_force_pure(g, Sense::Pessimistic).leader_cost ? 1 : 0;
  }
  return {weak_ok == 200 && strict_ok == 200,
          "optimistic " + std::to_string(weak_ok) + "/200, pessimistic " + std::to_string(strict_ok) + "/200", 300};
}

Verdict dp_correctness() {
  std::mt19937_64 rng(303);
  int ok = 0;
  for (int k = 0; k < 200; ++k) {
    RandomSpec spec{draw(rng, 1, 8), draw(rng, 1, 5), 0, rng(), Monotone::None};
    const GameInstance g = gen_random(spec);
    bool same = true;
    for (Sense s : {Sense::Optimistic, Sense::Pessimistic}) {
      same = same && solve_pure_commitment(g, s).leader_cost == brute_force_pure(g, s).leader_cost;
    }
    ok += same ? 1 : 0;
  }
  return {ok == 200, std::to_string(ok) + "/200 equal in both senses", 600};
}

Verdict golden_fixtures() {
  std::vector<std::string> fails;
  const GameInstance p1 = fixture("no_pse.json");
  const auto scan = pessimistic_grid_scan(p1, 2000);
  if (abs(scan.infimum_estimate - Rational(1)) > Rational(1, 1000)) fails.push_back("scan estimate " + scan.infimum_estimate.to_string());
  LeaderStrategy mid{{Rational(1, 2), Rational(1, 2)}};
  if (pessimistic_value_at(p1, mid) != Rational(2)) fails.push_back("midpoint value");
  if (brute_force_ose(fixture("mixed_config.json")).leader_cost != Rational(2)) fails.push_back("mixed-configuration OSE");
  const GameInstance p4 = fixture("weak_mono_pse.json");
  LeaderStrategy uniform;
  uniform.probabilities.assign(static_cast<std::size_t>(p4.resource_count()), Rational(1, p4.resource_count()));
  if (pessimistic_value_at(p4, uniform) != Rational(3, 2)) fails.push_back("uniform pessimistic value");
  if (solve_ose_milp(fixture("nonmono_follower.json")).leader_cost != Rational(3, 2)) fails.push_back("non-monotone follower OSE");
  if (solve_ose_milp(fixture("asym_mixed_ose.json")).leader_cost != Rational(1, 2)) fails.push_back("different action spaces OSE");
  std::string detail = "scan estimate " + scan.infimum_estimate.to_string();
  for (const auto& f : fails) detail += "; failed: " + f;
  return {fails.empty(), detail, 60};
}

Verdict reductions() {
  std::mt19937_64 rng(505);
  std::set<std::string> seen;
  int sat = 0;
  int unsat = 0;
  int right = 0;
  std::string wrong;
  while (sat < 10 || unsat < 10) {
    CnfFormula f;
    f.variables = draw(rng, 1, 4);
    const int m = draw(rng, 2, 3);
    std::string key = std::to_string(f.variables) + ":";
    for (int c = 0; c < m; ++c) {
      std::array<int, 3> cl{};
      for (auto& lit : cl) {
        const int v = draw(rng, 1, f.variables);
        lit = draw(rng, 0, 1) == 1 ? v : -v;
        key += std::to_string(lit) + " ";
      }
      f.clauses.push_back(cl);
      key += "| ";
    }
    const bool yes = brute_force_satisfiable(f);
    if ((yes ? sat : unsat) >= 10 || !seen.insert(key).second) continue;
    ++(yes ? sat : unsat);
    const Gadget gd = gen_3sat_ose(f, Rational(1, 2));
    const auto rep = solve_ose_milp(gd.instance);
    const Rational want = yes ? Rational(1, 2) : Rational(4);
    if (rep.status == "optimal" && rep.leader_cost == want) {
      ++right;
    } else if (wrong.empty()) {
      wrong = "formula " + key + "gave " + show(rep.leader_cost);
    }
  }

  int kp_yes = 0;
  int kp_no = 0;
  int kp_right = 0;
  while (kp_yes < 5 || kp_no < 5) {
    PartitionInput in;
    const int size = 2 * draw(rng, 2, 3);
    long long total = 0;
    for (int i = 0; i < size; ++i) {
      in.values.push_back(draw(rng, 1, 6));
      total += in.values.back();
    }
    in.k = draw(rng, 1, size / 2);
    bool valid = total % 2 == 0;
    for (long long x : in.values) valid = valid && 2 * x <= total;
    if (!valid) continue;
    const bool yes = brute_force_partition(in);
    if ((yes ? kp_yes : kp_no) >= 5) continue;
    ++(yes ? kp_yes : kp_no);
    const auto rep = solve_ose_milp(gen_kpartition(in, Rational(1, 2)).instance);
    const bool ok = rep.status == "optimal" && rep.leader_cost &&
                    (yes ? *rep.leader_cost == Rational(1, 2) : Rational(1) <= *rep.leader_cost);
    if (ok) {
      ++kp_right;
    } else if (wrong.empty()) {
      std::ostringstream s;
      s << "partition K=" << in.k << " over";
      for (long long x : in.values) s << ' ' << x;
      s << " gave " << show(rep.leader_cost);
      wrong = s.str();
    }
  }
  return {right == 20 && kp_right == 10,
          "3SAT " + std::to_string(right) + "/20, K-PARTITION " + std::to_string(kp_right) + "/10" +
              (wrong.empty() ? "" : "; " + wrong),
          1800};
}

Verdict model_size() {
  std::mt19937_64 rng(606);
  int ok = 0;
  for (int k = 0; k < 20; ++k) {
    RandomSpec spec{draw(rng, 1, 30), draw(rng, 1, 12), 0, rng(), Monotone::None};
    const MilpModel m = build_milp(gen_random(spec), MilpMode::PaperFaithful);
    const int n = spec.followers + 1;
    const int r = spec.resources;
    ok += m.variable_count() == r * (2 * n + 1) && m.binary_count() == n * r &&
                  m.constraint_count() == r * (r - 1) + r * (3 * n + 1) + 2
              ? 1
              : 0;
  }
  return {ok == 20, std::to_string(ok) + "/20 models match", 1};
}

Verdict heuristic_dominance() {
  BenchSpec spec;
  for (std::uint64_t s = 1; s <= 15; ++s) spec.seeds.push_back(s);
  spec.followers = {4, 6};
  spec.resources = {3, 4};
  spec.algos = {"milp", "brd"};
  const auto rows = run_bench(spec);
  {
    std::ofstream csv("acceptance_bench.csv");
    write_bench_csv(rows, csv);
  }
  int instances = 0;
  int converged = 0;
  int dominated = 0;
  std::string first;
  for (std::size_t k = 0; k + 1 < rows.size(); k += 2) {
    const BenchRow& milp = rows[k];
    const BenchRow& brd = rows[k + 1];
    ++instances;
    converged += brd.converged ? 1 : 0;
    const bool dom = milp.status == "optimal" && brd.leader_cost && *milp.leader_cost <= *brd.leader_cost;
    dominated += dom ? 1 : 0;
    if ((!brd.converged || !dom) && first.empty()) {
      first = "first miss " + brd.id + (brd.converged ? " (cost below optimum)" : " (no convergence)");
    }
  }
  return {converged == instances && dominated == instances,
          "converged " + std::to_string(converged) + "/" + std::to_string(instances) + ", cost >= optimum " +
              std::to_string(dominated) + "/" + std::to_string(instances) + (first.empty() ? "" : "; " + first) +
              "; CSV in acceptance_bench.csv",
          0};
}

Verdict scaling() {
  int ok = 0;
  double worst = 0.0;
  constexpr int kSeeds = 10;
  for (int s = 1; s <= kSeeds; ++s) {
    RandomSpec spec{20, 10, 0, static_cast<std::uint64_t>(s), Monotone::None};
    BnBParams p;
    p.time_limit_s = 120;
    const auto rep = solve_ose_milp(gen_random(spec), p);
    worst = std::max(worst, rep.stats.wall_ms / 1000.0);
    ok += rep.status == "optimal" && rep.stats.wall_ms <= 120'000 ? 1 : 0;
  }
  std::ostringstream d;
  d << ok << "/" << kSeeds << " proven optimal, slowest " << worst << " s";
  return {ok == kSeeds, d.str(), 0};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"oracle equivalence (optimistic)", oracle_equivalence},
      {"greedy correctness", greedy_correctness},
      {"dp correctness", dp_correctness},
      {"golden fixtures", golden_fixtures},
      {"reduction end-to-end", reductions},
      {"model-size parity", model_size},
      {"heuristic dominance and convergence", heuristic_dominance},
      {"scaling smoke test", scaling},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  bool all_pass = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!wanted.empty() && !wanted.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what(), 0};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.budget_s > 0 && secs > out.budget_s) {
      out.pass = false;
      out.detail += "; over the time budget";
    }
    all_pass = all_pass && out.pass;
    std::cout << "criterion " << id << " [" << criteria[k].first << "]: " << (out.pass ? "PASS" : "FAIL") << " ("
              << out.detail << ", " << secs << " s)" << std::endl;
  }
  return all_pass ? 0 : 1;
}
