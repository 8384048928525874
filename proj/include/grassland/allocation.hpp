#pragma once

#include <span>
#include <vector>

#include "grassland/energy.hpp"
#include "grassland/instance.hpp"
#include "grassland/random.hpp"
#include "grassland/route.hpp"

namespace grassland {

using Allocation = std::vector<int>;  // sigma by area index

// Scored allocation for a fixed route. Solutions are ranked by objective,
// then by lower total energy.
struct ScoredAllocation {
  Allocation sigma;
  int objective = 0;
  double energy = 0.0;
};

bool better_than(const ScoredAllocation& a, const ScoredAllocation& b);
ScoredAllocation score(const RouteEvaluator& eval, Allocation sigma);

// PBIL probability model: one categorical distribution per area over the
// values {1..c_i}. row(i)[v - 1] is the probability of sigma_i == v.
class ProbabilityModel {
 public:
  ProbabilityModel() = default;
  explicit ProbabilityModel(std::vector<std::vector<double>> rows);

  // Uniform rows, 1 / c_i each.
  static ProbabilityModel uniform(const Instance& instance);

  std::size_t size() const { return rows_.size(); }
  const std::vector<double>& row(std::size_t i) const { return rows_[i]; }
  std::vector<double>& row(std::size_t i) { return rows_[i]; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  // Largest |sum(row) - 1| over all rows.
  double max_row_error() const;

  bool operator==(const ProbabilityModel&) const = default;

 private:
  std::vector<std::vector<double>> rows_;
};

struct PbilConfig {
  int population = 10;        // NP
  int iterations = 80;        // T_max
  double learning_rate = 0.2;  // alpha
  double elite_fraction = 0.3;  // theta

  // Throws ParameterError unless NP >= 2, 0 < alpha < 1, 0 < theta <= 1, T_max >= 1.
  void validate() const;
};

ProbabilityModel init_model(const Instance& instance);

// Roulette (inverse CDF) sampling, one draw per area per vector.
std::vector<Allocation> sample_population(const ProbabilityModel& model, int population, Rng& rng);

// Greedy repair: while infeasible, remove one unit circle from the area
// whose removal saves the most energy (ties to the smaller id), never going
// below 1. Throws InfeasibleInstanceError if the all-ones vector is
// infeasible on this route and ContractViolation for out-of-bounds input.
Allocation repair(const RouteEvaluator& eval, Allocation sigma);
Allocation repair(const Instance& instance, const Route& route, Allocation sigma);

// Objective of the vector if feasible, otherwise of its repaired descendant.
int fitness(const Instance& instance, const Route& route, std::span<const int> sigma);

// ceil(theta * NP) members picked by size-2 tournaments; winners leave the
// pool. Returns indices into the population.
std::vector<std::size_t> select_elite(std::span<const int> fitnesses, double elite_fraction, Rng& rng);

// row_i <- (1 - alpha) row_i + alpha * (frequency of each value among the elites at i)
void update_model(ProbabilityModel& model, std::span<const Allocation> elites, double learning_rate);

// Maximum-residual-energy local search: repeatedly add one unit circle to
// the area with the cheapest feasible increment (ties to the smaller id)
// until no area admits one. Throws ContractViolation for infeasible input.
Allocation mrels(const RouteEvaluator& eval, Allocation sigma);
Allocation mrels(const Instance& instance, const Route& route, Allocation sigma);

struct PbilResult {
  ScoredAllocation best;
  ProbabilityModel model;          // final model
  std::vector<int> best_history;   // best-ever objective after each generation
  std::vector<double> row_errors;  // max_row_error after each update
};

// T_max generations of sample -> repair -> score -> select -> update. The
// returned allocation is the best feasible vector ever sampled.
PbilResult pbil_optimize(const RouteEvaluator& eval, const PbilConfig& config, Rng& rng,
                         const ProbabilityModel* warm_start = nullptr);
PbilResult pbil_optimize(const Instance& instance, const Route& route, const PbilConfig& config, Rng& rng);

// Iterated local search over allocations for a fixed route.
struct IlsConfig {
  int iterations = 80;
  double initial_fraction = 0.20;  // share of components resampled per kick
  double final_fraction = 0.10;
  double fraction_step = 0.05;
  int stagnation_interval = 2;     // stagnant iterations before the kick shrinks

  void validate() const;
};

struct IlsResult {
  ScoredAllocation best;
  std::vector<int> best_history;  // best objective after each iteration
};

// Hill climbing over +1 moves and (-1, +1) transfers between two areas,
// ranked by objective and then energy.
ScoredAllocation allocation_local_search(const RouteEvaluator& eval, ScoredAllocation start);

IlsResult ils_optimize(const RouteEvaluator& eval, const IlsConfig& config, Rng& rng);

}  // namespace grassland
