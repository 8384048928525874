#include <algorithm>
#include <cmath>
#include <numeric>

#include "grassland/allocation.hpp"
#include "grassland/errors.hpp"

namespace grassland {

void IlsConfig::validate() const {
  if (iterations < 0) throw ParameterError("ILS iterations must be non-negative");
  if (!(final_fraction > 0.0 && final_fraction <= initial_fraction && initial_fraction <= 1.0)) {
    throw ParameterError("ILS kick fractions must satisfy 0 < final <= initial <= 1");
  }
  if (!(fraction_step >= 0.0)) throw ParameterError("ILS fraction step must be non-negative");
  if (stagnation_interval < 1) throw ParameterError("ILS stagnation interval must be at least 1");
}

ScoredAllocation allocation_local_search(const RouteEvaluator& eval, ScoredAllocation start) {
  const Instance& instance = eval.instance();
  const std::size_t n = instance.size();
  ScoredAllocation current = score(eval, mrels(eval, std::move(start.sigma)));
  for (;;) {
    // Best transfer of one unit circle between two areas that lowers the
    // energy at the same objective, freeing budget for further increments.
    ScoredAllocation best = current;
    Allocation trial = current.sigma;
    for (std::size_t from = 0; from < n; ++from) {
      if (trial[from] <= 1) continue;
      --trial[from];
      for (std::size_t to = 0; to < n; ++to) {
        if (to == from || trial[to] >= instance.areas[to].capacity) continue;
        ++trial[to];
        const Evaluation ev = eval.evaluate(trial);
        if (ev.feasible && ev.energy.total < best.energy) best = {trial, ev.objective, ev.energy.total};
        --trial[to];
      }
      ++trial[from];
    }
    if (!(best.energy < current.energy)) return current;
    current = score(eval, mrels(eval, std::move(best.sigma)));
  }
}

IlsResult ils_optimize(const RouteEvaluator& eval, const IlsConfig& config, Rng& rng) {
  config.validate();
  const Instance& instance = eval.instance();
  const std::size_t n = instance.size();

  Allocation start(n);
  for (std::size_t i = 0; i < n; ++i) start[i] = rng.uniform_int(1, instance.areas[i].capacity);
  ScoredAllocation current = allocation_local_search(eval, score(eval, repair(eval, std::move(start))));
  ScoredAllocation best = current;

  IlsResult result;
  double fraction = config.initial_fraction;
  int stagnant = 0;
  std::vector<std::size_t> positions(n);
  for (int it = 0; it < config.iterations; ++it) {
    // Kick: resample a fraction of the components uniformly in [1, c_i].
    const auto count = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::lround(fraction * static_cast<double>(n))), 1, n);
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    Allocation kicked = current.sigma;
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t pick = k + rng.uniform_index(n - k);
      std::swap(positions[k], positions[pick]);
      const std::size_t i = positions[k];
      kicked[i] = rng.uniform_int(1, instance.areas[i].capacity);
    }
    ScoredAllocation trial = allocation_local_search(eval, score(eval, repair(eval, std::move(kicked))));

    if (!better_than(current, trial)) current = trial;
    if (better_than(trial, best)) {
      best = std::move(trial);
      stagnant = 0;
      fraction = config.initial_fraction;
    } else if (++stagnant % config.stagnation_interval == 0) {
      fraction = std::max(config.final_fraction, fraction - config.fraction_step);
    }
    result.best_history.push_back(best.objective);
  }
  result.best = score(eval, mrels(eval, std::move(best.sigma)));
  return result;
}

}  // namespace grassland
