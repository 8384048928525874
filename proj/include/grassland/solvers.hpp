#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grassland/allocation.hpp"
#include "grassland/instance.hpp"

namespace grassland {

enum class SolverKind { chapbilm, chails, ha_pbilm, ha_ils };

std::string_view to_string(SolverKind kind);
// Accepts the lower-case ids ("chapbilm", "ha-pbilm", "ha_pbilm", ...).
std::optional<SolverKind> parse_solver_kind(std::string_view name);
std::vector<SolverKind> all_solver_kinds();

struct SolverConfig {
  int gen_max = 91;
  PbilConfig pbil;
  IlsConfig ils;
  int neighborhood_size = 36;
  std::uint64_t rng_seed = 1;
  SolverKind variant = SolverKind::chapbilm;

  // Start each candidate's PBIL from the incumbent's final model instead of
  // a uniform one.
  bool warm_start = false;
  // When positive, candidate routes get this many inner iterations instead
  // of the full budget. Off by default.
  int light_iterations = 0;
  // Worker threads for candidate routes within a generation. Results are
  // identical for any thread count.
  int threads = 1;

  void validate() const;
};

struct TraceRecord {
  int generation = 0;
  int best_objective = 0;
  double best_energy = 0.0;
  double wall_seconds = 0.0;
};

// Best-so-far history; best_objective is non-decreasing.
struct RunTrace {
  std::vector<TraceRecord> records;
};

struct SolveResult {
  Solution solution;
  RunTrace trace;
};

// Cooperative route + allocation search with PBIL allocation and MRELS.
SolveResult chapbilm(const Instance& instance, const SolverConfig& config);
// Cooperative search with iterated local search allocation.
SolveResult chails(const Instance& instance, const SolverConfig& config);
// Shortest route first, then one PBIL + MRELS pass.
SolveResult ha_pbilm(const Instance& instance, const SolverConfig& config);
// Shortest route first, then ILS + MRELS.
SolveResult ha_ils(const Instance& instance, const SolverConfig& config);

// Dispatches on config.variant.
SolveResult solve(const Instance& instance, const SolverConfig& config);

// Build a Solution from a route and allocation, re-evaluated from scratch.
Solution make_solution(const Instance& instance, const Route& route, const Allocation& sigma);

// Re-evaluates a stored solution; true when the route, sigma and budgets
// all check out and the stored objective matches.
bool certify(const Instance& instance, const Solution& solution);

}  // namespace grassland
