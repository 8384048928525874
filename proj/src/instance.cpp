#include "grassland/instance.hpp"

#include <cmath>
#include <string>

#include "grassland/errors.hpp"
#include "grassland/random.hpp"
#include "grassland/route.hpp"

namespace grassland {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool is_permutation_of_ids(const Route& route, std::size_t n) {
  if (route.order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (int id : route.order) {
    if (id < 1 || static_cast<std::size_t>(id) > n || seen[id - 1]) return false;
    seen[id - 1] = true;
  }
  return true;
}

std::vector<int> Instance::capacities() const {
  std::vector<int> caps;
  caps.reserve(areas.size());
  for (const auto& a : areas) caps.push_back(a.capacity);
  return caps;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const Instance& instance) {
  const auto& u = instance.uav;
  require(positive_finite(u.frame_plus_battery_mass), "uav.frame_plus_battery_mass must be positive");
  require(positive_finite(u.gravity), "uav.gravity must be positive");
  require(positive_finite(u.air_density), "uav.air_density must be positive");
  require(positive_finite(u.blade_disc_area), "uav.blade_disc_area must be positive");
  require(u.rotor_count >= 1, "uav.rotor_count must be at least 1");
  require(positive_finite(u.energy_capacity), "uav.energy_capacity must be positive");
  require(positive_finite(u.seed_capacity), "uav.seed_capacity must be positive");
  require(positive_finite(u.photo_energy_per_unit), "uav.photo_energy_per_unit must be positive");
  require(positive_finite(u.seeding_energy_coeff), "uav.seeding_energy_coeff must be positive");
  require(positive_finite(u.seed_demand_exponent), "uav.seed_demand_exponent must be positive");
  require(std::isfinite(instance.base.x) && std::isfinite(instance.base.y), "base coordinates must be finite");

  require(!instance.areas.empty(), "areas must contain at least one area");
  for (std::size_t i = 0; i < instance.areas.size(); ++i) {
    const auto& a = instance.areas[i];
    const std::string where = "areas[" + std::to_string(i) + "]";
    require(a.id == static_cast<int>(i) + 1, where + ".id must equal " + std::to_string(i + 1));
    require(std::isfinite(a.x) && std::isfinite(a.y), where + " coordinates must be finite");
    require(a.degradation >= kMinRestorableDegradation && a.degradation <= kMaxRestorableDegradation,
            where + ".degradation " + std::to_string(a.degradation) + " outside restorable band [0.3, 0.8]");
    require(a.capacity >= 1, where + ".capacity must be at least 1");
    require(!(a.position() == instance.base), where + " coincides with the base station");
  }
}

std::vector<int> CapacityRange::values() const {
  if (min < 1 || max < min || step < 1) {
    throw ParameterError("capacity range requires 1 <= min <= max and step >= 1");
  }
  std::vector<int> out;
  for (int c = min; c <= max; c += step) out.push_back(c);
  return out;
}

Instance generate_instance(const GeneratorOptions& options) {
  if (!(options.side > 0.0) || !std::isfinite(options.side)) throw ParameterError("side must be positive");
  if (options.n_areas < 1) throw ParameterError("n_areas must be at least 1");
  if (!(options.e_max > 0.0)) throw ParameterError("e_max must be positive");
  if (options.seed_capacity && !(*options.seed_capacity > 0.0)) {
    throw ParameterError("seed_capacity must be positive");
  }
  const std::vector<int> caps = options.capacity.values();

  Rng rng(options.seed);
  Instance inst;
  inst.base = {0.0, 0.0};
  inst.uav = options.uav;
  inst.uav.energy_capacity = options.e_max;
  inst.rng_seed = options.seed;
  inst.areas.reserve(static_cast<std::size_t>(options.n_areas));

  double total_demand = 0.0;
  for (int i = 0; i < options.n_areas; ++i) {
    AreaSpec a;
    a.id = i + 1;
    do {
      a.x = rng.uniform_real(0.0, options.side);
      a.y = rng.uniform_real(0.0, options.side);
    } while (a.position() == inst.base);
    a.degradation = rng.uniform_real(kMinRestorableDegradation, kMaxRestorableDegradation);
    a.capacity = caps[rng.uniform_index(caps.size())];
    total_demand += a.capacity * std::pow(1.0 + a.degradation, inst.uav.seed_demand_exponent);
    inst.areas.push_back(a);
  }
  inst.uav.seed_capacity = options.seed_capacity.value_or(total_demand);
  validate(inst);
  return inst;
}

double scenario_side(int scenario) {
  if (scenario < 0 || scenario >= kScenarioCount) throw ParameterError("scenario index must be in [0, 5]");
  return 500.0 + 100.0 * scenario;
}

double scenario_energy_budget(int scenario) {
  if (scenario < 0 || scenario >= kScenarioCount) throw ParameterError("scenario index must be in [0, 5]");
  return 1.36e7 + scenario * 4.55e6;
}

}  // namespace grassland
