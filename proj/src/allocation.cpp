#include "grassland/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "grassland/errors.hpp"

namespace grassland {

bool better_than(const ScoredAllocation& a, const ScoredAllocation& b) {
  if (a.objective != b.objective) return a.objective > b.objective;
  return a.energy < b.energy;
}

ScoredAllocation score(const RouteEvaluator& eval, Allocation sigma) {
  const Evaluation ev = eval.evaluate(sigma);
  return {std::move(sigma), ev.objective, ev.energy.total};
}

ProbabilityModel::ProbabilityModel(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.empty()) throw ParameterError("probability rows must be non-empty");
    for (double p : r) {
      if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("probabilities must lie in [0, 1]");
    }
  }
}

ProbabilityModel ProbabilityModel::uniform(const Instance& instance) {
  std::vector<std::vector<double>> rows;
  rows.reserve(instance.size());
  for (const auto& a : instance.areas) {
    rows.emplace_back(static_cast<std::size_t>(a.capacity), 1.0 / a.capacity);
  }
  return ProbabilityModel(std::move(rows));
}

double ProbabilityModel::max_row_error() const {
  double worst = 0.0;
  for (const auto& r : rows_) {
    worst = std::max(worst, std::abs(std::accumulate(r.begin(), r.end(), 0.0) - 1.0));
  }
  return worst;
}

void PbilConfig::validate() const {
  if (population < 2) throw ParameterError("PBIL population must be at least 2");
  if (iterations < 1) throw ParameterError("PBIL iterations must be at least 1");
  if (!(learning_rate > 0.0 && learning_rate < 1.0)) throw ParameterError("learning rate must lie in (0, 1)");
  if (!(elite_fraction > 0.0 && elite_fraction <= 1.0)) throw ParameterError("elite fraction must lie in (0, 1]");
}

ProbabilityModel init_model(const Instance& instance) { return ProbabilityModel::uniform(instance); }

std::vector<Allocation> sample_population(const ProbabilityModel& model, int population, Rng& rng) {
  std::vector<Allocation> out(static_cast<std::size_t>(std::max(population, 0)), Allocation(model.size()));
  for (auto& sigma : out) {
    for (std::size_t i = 0; i < model.size(); ++i) {
      const auto& row = model.row(i);
      const double u = rng.uniform01();
      double cum = 0.0;
      int value = 0;
      for (std::size_t v = 0; v < row.size(); ++v) {
        cum += row[v];
        if (u < cum) {
          value = static_cast<int>(v) + 1;
          break;
        }
      }
      if (value == 0) {
        // Rounding left u above the final cumulative sum.
        for (std::size_t v = row.size(); v-- > 0;) {
          if (row[v] > 0.0) {
            value = static_cast<int>(v) + 1;
            break;
          }
        }
      }
      sigma[i] = value;
    }
  }
  return out;
}

namespace {

void check_bounds(const Instance& instance, std::span<const int> sigma) {
  if (sigma.size() != instance.size()) throw StructuralError("sigma length does not match the instance");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] < 1 || sigma[i] > instance.areas[i].capacity) {
      throw ContractViolation("sigma[" + std::to_string(i) + "] = " + std::to_string(sigma[i]) +
                              " outside [1, capacity]");
    }
  }
}

// Index with the largest key among eligible entries; ties to the smaller index.
int argmax_eligible(std::span<const double> key, std::span<const int> sigma) {
  int best = -1;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (sigma[i] <= 1) continue;
    if (best < 0 || key[i] > key[best]) best = static_cast<int>(i);
  }
  return best;
}

}  // namespace

Allocation repair(const RouteEvaluator& eval, Allocation sigma) {
  const Instance& instance = eval.instance();
  check_bounds(instance, sigma);
  if (eval.feasible(sigma)) return sigma;
  const Allocation ones(instance.size(), 1);
  if (!eval.feasible(ones)) {
    throw InfeasibleInstanceError("the all-ones allocation exceeds the budgets on this route");
  }

  // Removal savings only shrink as the legs get lighter (power is convex in
  // the payload), so stale savings are upper bounds and a lazy greedy makes
  // the same choices as recomputing every area each step.
  std::vector<double> carried;
  eval.loads(sigma, carried);
  std::vector<double> key(sigma.size(), std::numeric_limits<double>::infinity());
  for (;;) {
    int chosen = -1;
    for (;;) {
      const int top = argmax_eligible(key, sigma);
      key[top] = eval.marginal_decrease(top, carried);
      if (argmax_eligible(key, sigma) == top) {
        chosen = top;
        break;
      }
    }
    --sigma[chosen];
    eval.loads(sigma, carried);
    if (eval.feasible(sigma)) return sigma;
  }
}

Allocation repair(const Instance& instance, const Route& route, Allocation sigma) {
  return repair(RouteEvaluator(instance, route), std::move(sigma));
}

int fitness(const Instance& instance, const Route& route, std::span<const int> sigma) {
  const RouteEvaluator eval(instance, route);
  const Evaluation ev = eval.evaluate(sigma);
  if (ev.feasible) return ev.objective;
  const Allocation fixed = repair(eval, Allocation(sigma.begin(), sigma.end()));
  return std::accumulate(fixed.begin(), fixed.end(), 0);
}

std::vector<std::size_t> select_elite(std::span<const int> fitnesses, double elite_fraction, Rng& rng) {
  const std::size_t np = fitnesses.size();
  if (np == 0) return {};
  if (!(elite_fraction > 0.0 && elite_fraction <= 1.0)) throw ParameterError("elite fraction must lie in (0, 1]");
  // The small offset keeps products such as 0.3 * 10 from rounding up.
  std::size_t count = static_cast<std::size_t>(std::ceil(elite_fraction * static_cast<double>(np) - 1e-9));
  count = std::clamp<std::size_t>(count, 1, np);

  std::vector<std::size_t> pool(np);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<std::size_t> elites;
  elites.reserve(count);
  while (elites.size() < count) {
    std::size_t winner_slot = 0;
    if (pool.size() > 1) {
      const std::size_t a = rng.uniform_index(pool.size());
      std::size_t b = rng.uniform_index(pool.size() - 1);
      if (b >= a) ++b;
      winner_slot = fitnesses[pool[b]] > fitnesses[pool[a]] ? b : a;
    }
    elites.push_back(pool[winner_slot]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(winner_slot));
  }
  return elites;
}

void update_model(ProbabilityModel& model, std::span<const Allocation> elites, double learning_rate) {
  if (!(learning_rate >= 0.0 && learning_rate <= 1.0)) throw ParameterError("learning rate must lie in [0, 1]");
  if (elites.empty()) return;
  const double share = 1.0 / static_cast<double>(elites.size());
  std::vector<double> freq;
  for (std::size_t i = 0; i < model.size(); ++i) {
    auto& row = model.row(i);
    freq.assign(row.size(), 0.0);
    for (const auto& e : elites) {
      if (e.size() != model.size() || e[i] < 1 || static_cast<std::size_t>(e[i]) > row.size()) {
        throw StructuralError("elite vector does not fit the probability model");
      }
      freq[static_cast<std::size_t>(e[i] - 1)] += share;
    }
    for (std::size_t v = 0; v < row.size(); ++v) {
      row[v] = (1.0 - learning_rate) * row[v] + learning_rate * freq[v];
    }
  }
}

Allocation mrels(const RouteEvaluator& eval, Allocation sigma) {
  const Instance& instance = eval.instance();
  check_bounds(instance, sigma);
  if (!eval.feasible(sigma)) throw ContractViolation("mrels requires a feasible starting allocation");

  std::vector<double> carried;
  std::vector<std::pair<double, int>> candidates;
  for (;;) {
    eval.loads(sigma, carried);
    candidates.clear();
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (sigma[i] < instance.areas[i].capacity) {
        candidates.emplace_back(eval.marginal_increase(static_cast<int>(i), carried), static_cast<int>(i));
      }
    }
    std::sort(candidates.begin(), candidates.end());
    bool accepted = false;
    for (const auto& [cost, idx] : candidates) {
      ++sigma[idx];
      if (eval.feasible(sigma)) {
        accepted = true;
        break;
      }
      --sigma[idx];
    }
    if (!accepted) return sigma;
  }
}

Allocation mrels(const Instance& instance, const Route& route, Allocation sigma) {
  return mrels(RouteEvaluator(instance, route), std::move(sigma));
}

PbilResult pbil_optimize(const RouteEvaluator& eval, const PbilConfig& config, Rng& rng,
                         const ProbabilityModel* warm_start) {
  config.validate();
  PbilResult result;
  result.model = warm_start != nullptr ? *warm_start : ProbabilityModel::uniform(eval.instance());
  if (result.model.size() != eval.size()) throw StructuralError("warm-start model does not fit the instance");

  bool have_best = false;
  std::vector<int> fits(static_cast<std::size_t>(config.population));
  std::vector<Allocation> elites;
  for (int t = 0; t < config.iterations; ++t) {
    auto population = sample_population(result.model, config.population, rng);
    for (std::size_t k = 0; k < population.size(); ++k) {
      // Repaired vectors replace their samples so the model learns from
      // feasible allocations only.
      population[k] = repair(eval, std::move(population[k]));
      ScoredAllocation scored = score(eval, population[k]);
      fits[k] = scored.objective;
      if (!have_best || better_than(scored, result.best)) {
        result.best = std::move(scored);
        have_best = true;
      }
    }
    elites.clear();
    for (std::size_t idx : select_elite(fits, config.elite_fraction, rng)) elites.push_back(population[idx]);
    update_model(result.model, elites, config.learning_rate);
    result.best_history.push_back(result.best.objective);
    result.row_errors.push_back(result.model.max_row_error());
  }
  return result;
}

PbilResult pbil_optimize(const Instance& instance, const Route& route, const PbilConfig& config, Rng& rng) {
  return pbil_optimize(RouteEvaluator(instance, route), config, rng);
}

}  // namespace grassland
