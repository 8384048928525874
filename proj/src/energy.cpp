#include "grassland/energy.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "grassland/errors.hpp"

namespace grassland {

double seed_demand_per_unit(double degradation, double exponent) {
  if (!(degradation >= 0.0 && degradation < 1.0)) {
    throw DomainError("degradation must lie in [0, 1), got " + std::to_string(degradation));
  }
  if (!(exponent > 0.0)) throw DomainError("seed demand exponent must be positive");
  return std::pow(1.0 + degradation, exponent);
}

namespace {

double power_coefficient(const UavParams& uav) {
  const double g = uav.gravity;
  return std::sqrt(g * g * g / (2.0 * uav.air_density * uav.blade_disc_area * uav.rotor_count));
}

void check_shape(const Instance& instance, const Route& route, std::span<const int> sigma) {
  if (sigma.size() != instance.size()) {
    throw StructuralError("sigma has " + std::to_string(sigma.size()) + " entries, instance has " +
                          std::to_string(instance.size()) + " areas");
  }
  if (!is_permutation_of_ids(route, instance.size())) {
    throw StructuralError("route is not a permutation of the area ids");
  }
}

}  // namespace

double power(double carried_mass, const UavParams& uav) {
  if (!(carried_mass >= 0.0)) throw DomainError("carried mass must be non-negative");
  const double m = uav.frame_plus_battery_mass + carried_mass;
  return m * std::sqrt(m) * power_coefficient(uav);
}

RouteEvaluator::RouteEvaluator(const Instance& instance, const Route& route)
    : instance_(&instance), route_(route) {
  const std::size_t n = instance.size();
  if (!is_permutation_of_ids(route, n)) throw StructuralError("route is not a permutation of the area ids");
  position_.resize(n);
  unit_seed_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    unit_seed_[i] = seed_demand_per_unit(instance.areas[i].degradation, instance.uav.seed_demand_exponent);
  }
  leg_length_.reserve(n + 1);
  Point prev = instance.base;
  for (std::size_t k = 0; k < n; ++k) {
    const int idx = route.order[k] - 1;
    position_[idx] = static_cast<int>(k);
    const Point here = instance.areas[idx].position();
    leg_length_.push_back(distance(prev, here));
    prev = here;
  }
  leg_length_.push_back(distance(prev, instance.base));
  power_coeff_ = power_coefficient(instance.uav);
}

double RouteEvaluator::power_at(double carried_mass) const {
  const double m = instance_->uav.frame_plus_battery_mass + carried_mass;
  return m * std::sqrt(m) * power_coeff_;
}

void RouteEvaluator::loads(std::span<const int> sigma, std::vector<double>& out) const {
  const std::size_t n = route_.size();
  out.assign(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    const int idx = route_.order[k] - 1;
    out[k] = out[k + 1] + sigma[idx] * unit_seed_[idx];
  }
}

Evaluation RouteEvaluator::evaluate(std::span<const int> sigma) const {
  const auto& uav = instance_->uav;
  const std::size_t n = route_.size();
  if (sigma.size() != n) throw StructuralError("sigma length does not match the route");

  Evaluation ev;
  bool in_bounds = true;
  long long units = 0;
  double seeding = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    units += sigma[i];
    seeding += sigma[i] * uav.seeding_energy_coeff * unit_seed_[i];
    in_bounds = in_bounds && sigma[i] >= 1 && sigma[i] <= instance_->areas[i].capacity;
  }

  // Suffix sums keep the return leg at exactly zero and the loads monotone.
  double flight = 0.0;
  double carried = 0.0;
  flight += power_at(0.0) * leg_length_[n];
  for (std::size_t k = n; k-- > 0;) {
    const int idx = route_.order[k] - 1;
    carried += sigma[idx] * unit_seed_[idx];
    flight += power_at(carried) * leg_length_[k];
  }

  ev.energy.seeding = seeding;
  ev.energy.photography = uav.photo_energy_per_unit * static_cast<double>(units);
  ev.energy.flight = flight;
  ev.energy.total = ev.energy.seeding + ev.energy.photography + ev.energy.flight;
  ev.seed_used = carried;
  ev.objective = static_cast<int>(units);
  ev.feasible = in_bounds && ev.energy.total <= uav.energy_capacity && ev.seed_used <= uav.seed_capacity;
  return ev;
}

double RouteEvaluator::marginal_increase(int area_index, std::span<const double> loads) const {
  const auto& uav = instance_->uav;
  const double q = unit_seed_[area_index];
  double delta = uav.seeding_energy_coeff * q + uav.photo_energy_per_unit;
  // Legs 0..k carry the seed dropped at route position k.
  const int k = position_[area_index];
  for (int j = 0; j <= k; ++j) delta += leg_length_[j] * (power_at(loads[j] + q) - power_at(loads[j]));
  return delta;
}

double RouteEvaluator::marginal_decrease(int area_index, std::span<const double> loads) const {
  const auto& uav = instance_->uav;
  const double q = unit_seed_[area_index];
  double delta = uav.seeding_energy_coeff * q + uav.photo_energy_per_unit;
  const int k = position_[area_index];
  for (int j = 0; j <= k; ++j) {
    const double lighter = loads[j] - q > 0.0 ? loads[j] - q : 0.0;
    delta += leg_length_[j] * (power_at(loads[j]) - power_at(lighter));
  }
  return delta;
}

double seeding_energy(const Instance& instance, const Route& route, std::span<const int> sigma) {
  check_shape(instance, route, sigma);
  return RouteEvaluator(instance, route).evaluate(sigma).energy.seeding;
}

double photography_energy(std::span<const int> sigma, double photo_energy_per_unit) {
  const long long units = std::accumulate(sigma.begin(), sigma.end(), 0LL);
  return photo_energy_per_unit * static_cast<double>(units);
}

LoadProfile leg_loads(const Instance& instance, const Route& route, std::span<const int> sigma) {
  check_shape(instance, route, sigma);
  RouteEvaluator ev(instance, route);
  std::vector<double> carried;
  ev.loads(sigma, carried);
  LoadProfile profile;
  profile.legs.reserve(carried.size());
  for (std::size_t k = 0; k < carried.size(); ++k) {
    profile.legs.push_back({static_cast<int>(k), carried[k]});
  }
  profile.total_seed = carried.front();
  profile.within_capacity = profile.total_seed <= instance.uav.seed_capacity;
  return profile;
}

double flight_energy(const Instance& instance, const Route& route, std::span<const int> sigma) {
  check_shape(instance, route, sigma);
  return RouteEvaluator(instance, route).evaluate(sigma).energy.flight;
}

Evaluation evaluate(const Instance& instance, const Route& route, std::span<const int> sigma) {
  check_shape(instance, route, sigma);
  return RouteEvaluator(instance, route).evaluate(sigma);
}

}  // namespace grassland
