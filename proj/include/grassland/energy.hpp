#pragma once

#include <span>
#include <vector>

#include "grassland/instance.hpp"
#include "grassland/route.hpp"

namespace grassland {

struct EnergyBreakdown {
  double seeding = 0.0;
  double photography = 0.0;
  double flight = 0.0;
  double total = 0.0;  // seeding + photography + flight
};

// Seed mass carried on one leg of the tour. Leg k arrives at route position
// k; leg N is the return to the base.
struct LegLoad {
  int leg_index = 0;
  double carried_seed_mass = 0.0;
};

struct LoadProfile {
  std::vector<LegLoad> legs;  // N + 1 entries
  double total_seed = 0.0;    // mass loaded at the base
  bool within_capacity = true;
};

struct Evaluation {
  EnergyBreakdown energy;
  double seed_used = 0.0;
  int objective = 0;
  bool feasible = false;
};

// Seed mass per unit circle: (1 + l)^gamma. Requires 0 <= l < 1, gamma > 0.
double seed_demand_per_unit(double degradation, double exponent);

// Hover power with carried payload, also used as flight energy per unit
// distance: (M + m)^{3/2} * sqrt(g^3 / (2 rho A h)).
double power(double carried_mass, const UavParams& uav);

double seeding_energy(const Instance& instance, const Route& route, std::span<const int> sigma);
double photography_energy(std::span<const int> sigma, double photo_energy_per_unit);
LoadProfile leg_loads(const Instance& instance, const Route& route, std::span<const int> sigma);
double flight_energy(const Instance& instance, const Route& route, std::span<const int> sigma);

// Full accounting. The objective is reported regardless of feasibility.
// Throws StructuralError if the route is not a permutation or sigma has the
// wrong length.
Evaluation evaluate(const Instance& instance, const Route& route, std::span<const int> sigma);

// Evaluator bound to one (instance, route) pair. Leg lengths, per-area seed
// demand and the power coefficient are computed once, which is what the
// allocation search needs when it scores thousands of vectors per route.
class RouteEvaluator {
 public:
  RouteEvaluator(const Instance& instance, const Route& route);

  const Instance& instance() const { return *instance_; }
  const Route& route() const { return route_; }
  std::size_t size() const { return route_.size(); }

  Evaluation evaluate(std::span<const int> sigma) const;
  bool feasible(std::span<const int> sigma) const { return evaluate(sigma).feasible; }

  // Carried seed mass per leg, by suffix sums over the visiting order.
  void loads(std::span<const int> sigma, std::vector<double>& out) const;

  // Energy change from adding (+1) or removing (-1) one unit circle at the
  // given area index, given the current leg loads.
  double marginal_increase(int area_index, std::span<const double> loads) const;
  double marginal_decrease(int area_index, std::span<const double> loads) const;

  double unit_seed(int area_index) const { return unit_seed_[area_index]; }
  int position_of(int area_index) const { return position_[area_index]; }
  double leg_length(int leg) const { return leg_length_[leg]; }
  double power_at(double carried_mass) const;

 private:
  const Instance* instance_;
  Route route_;
  std::vector<int> position_;      // area index -> route position
  std::vector<double> leg_length_;  // N + 1 legs
  std::vector<double> unit_seed_;   // (1 + l_i)^gamma by area index
  double power_coeff_ = 0.0;
};

}  // namespace grassland
