#pragma once

// Test-only oracles. Nothing here calls into the energy module, so the
// checks built on it stay independent of the implementation under test.

#include <cstdint>
#include <vector>

#include "grassland/instance.hpp"
#include "grassland/route.hpp"

namespace grassland::testing {

struct ReferenceEnergy {
  long double seeding = 0;
  long double photography = 0;
  long double flight = 0;
  long double total = 0;
  long double seed_used = 0;
  std::vector<long double> arc_load;  // q-bar on each arc of the tour, base leg first
};

// Evaluates the model from its arc formulation: x_ij from the route, q-bar
// from flow balance (inflow - outflow = sigma_i q_i), flight energy as
// sum e^f_ij d_ij x_ij. Extended precision, std::pow throughout.
ReferenceEnergy reference_energy(const Instance& instance, const Route& route, const std::vector<int>& sigma);

// Exhaustive best allocation for a fixed route, independent of the oracle
// module: enumerates prod [1, c_i] with the reference evaluator.
int brute_force_best_allocation(const Instance& instance, const Route& route, std::vector<int>* witness = nullptr);

// Small instance whose budget binds: every route admits all-ones and no
// route admits all-capacity. Capacities are drawn from `caps`.
Instance tiny_binding_instance(std::uint64_t seed, int n, const std::vector<int>& caps, double side = 200.0);

// Exhaustive optimum over all routes and allocations (reference evaluator).
int brute_force_optimum(const Instance& instance);

std::vector<Route> all_routes(std::size_t n);

}  // namespace grassland::testing
