#include "grassland/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grassland/energy.hpp"
#include "grassland/errors.hpp"
#include "grassland/routing.hpp"

namespace grassland {

double oracle_state_count(const Instance& instance) {
  double states = 1.0;
  for (std::size_t k = 2; k <= instance.size(); ++k) states *= static_cast<double>(k);
  for (const auto& a : instance.areas) states *= a.capacity;
  return states;
}

int best_allocation_exact(const Instance& instance, const Route& route, std::vector<int>& sigma_out,
                          double& energy_out) {
  const RouteEvaluator eval(instance, route);
  const std::size_t n = instance.size();
  std::vector<int> sigma(n, 1);
  int best = 0;
  energy_out = 0.0;
  sigma_out.clear();
  // Odometer over prod [1, c_i].
  for (;;) {
    const Evaluation ev = eval.evaluate(sigma);
    if (ev.feasible && (ev.objective > best || (ev.objective == best && ev.energy.total < energy_out))) {
      best = ev.objective;
      energy_out = ev.energy.total;
      sigma_out = sigma;
    }
    std::size_t i = 0;
    while (i < n && sigma[i] == instance.areas[i].capacity) sigma[i++] = 1;
    if (i == n) break;
    ++sigma[i];
  }
  return best;
}

OracleResult solve_exact(const Instance& instance, const OracleLimits& limits) {
  validate(instance);
  const double states = oracle_state_count(instance);
  if (states > limits.max_states) {
    throw SizeLimitError("exhaustive search needs " + std::to_string(states) + " states, limit is " +
                         std::to_string(limits.max_states));
  }
  OracleResult result;
  result.states = static_cast<std::uint64_t>(states);
  Route route = identity_route(instance.size());
  std::vector<int> sigma;
  double energy = 0.0;
  // next_permutation walks routes in lexicographic order, so the first
  // optimum found is the smallest.
  do {
    const int c = best_allocation_exact(instance, route, sigma, energy);
    if (c == 0) continue;
    if (c > result.optimal_objective) {
      result.optimal_objective = c;
      result.route = route;
      result.sigma = sigma;
      result.energy = energy;
      result.optimal_route_count = 1;
      result.feasible = true;
    } else if (c == result.optimal_objective) {
      ++result.optimal_route_count;
    }
  } while (std::next_permutation(route.order.begin(), route.order.end()));
  return result;
}

}  // namespace grassland
