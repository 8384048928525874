#pragma once

#include <cstdint>
#include <vector>

#include "grassland/instance.hpp"
#include "grassland/route.hpp"

namespace grassland {

struct OracleLimits {
  // Upper bound on N! * prod(c_i) evaluated states.
  double max_states = 1.0e7;
};

struct OracleResult {
  int optimal_objective = 0;  // C*
  Route route;                // lexicographically smallest optimal route
  std::vector<int> sigma;     // lowest-energy optimal allocation on that route
  double energy = 0.0;
  std::uint64_t optimal_route_count = 0;
  std::uint64_t states = 0;
  bool feasible = false;      // false when no route admits the all-ones vector
};

// Number of (route, allocation) states the exhaustive search would visit.
double oracle_state_count(const Instance& instance);

// Enumerates every visiting order and every allocation. Throws
// SizeLimitError if the state count exceeds the limit.
OracleResult solve_exact(const Instance& instance, const OracleLimits& limits = {});

// Best allocation for one fixed route by exhaustive enumeration; returns the
// objective (0 when nothing is feasible) and writes the witness.
int best_allocation_exact(const Instance& instance, const Route& route, std::vector<int>& sigma_out,
                          double& energy_out);

}  // namespace grassland
