#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "leadcon/forge.hpp"
#include "leadcon/solve.hpp"

namespace leadcon {

struct BenchSpec {
  std::vector<std::uint64_t> seeds;
  std::vector<int> followers;  // n - 1 values
  std::vector<int> resources;
  std::vector<std::string> algos{"milp", "brd"};
  Monotone monotone = Monotone::None;
  int actions_per_player = 0;
  SolveOptions solve;
  /// 0 reads LEADCON_THREADS, falling back to the hardware concurrency.
  int threads = 0;
};

struct BenchRow {
  std::string id;
  int n = 0;
  int r = 0;
  std::string algo;
  Sense sense = Sense::Optimistic;
  std::string status;
  std::optional<Rational> leader_cost;
  double wall_ms = 0.0;
  long nodes = 0;
  bool converged = true;
  /// leader_cost over the first algorithm's cost on the same instance.
  std::optional<Rational> ratio;
};

int bench_threads(int requested);

/// One row per (instance, algorithm), ordered by instance then algorithm
/// regardless of which worker finished first.
std::vector<BenchRow> run_bench(const BenchSpec& spec);

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace leadcon
