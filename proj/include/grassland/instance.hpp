#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace grassland {

inline constexpr int kInstanceSchemaVersion = 1;
inline constexpr int kSolutionSchemaVersion = 1;

// Degradation band that UAV seeding can restore.
inline constexpr double kMinRestorableDegradation = 0.3;
inline constexpr double kMaxRestorableDegradation = 0.8;

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

// Euclidean distance in the plane.
double distance(const Point& a, const Point& b);

struct AreaSpec {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double degradation = 0.5;  // l_i
  int capacity = 1;          // c_i, the number of unit circles in the area

  Point position() const { return {x, y}; }
  bool operator==(const AreaSpec&) const = default;
};

// Physical and mission parameters of the UAV. Defaults are the rotorcraft
// and energy-model constants used by the benchmark scenarios; the two
// budgets are per-instance and have no meaningful default.
struct UavParams {
  double frame_plus_battery_mass = 1.5;  // kg
  double gravity = 9.8;                  // m/s^2
  double air_density = 1.024;            // kg/m^3
  double blade_disc_area = 0.2;          // m^2
  int rotor_count = 6;
  double energy_capacity = 0.0;          // J
  double seed_capacity = 0.0;            // kg
  double photo_energy_per_unit = 2.0e4;  // J per restored unit circle
  double seeding_energy_coeff = 1.0e5;   // J per kg of sown seed
  double seed_demand_exponent = 2.0;

  bool operator==(const UavParams&) const = default;
};

struct Instance {
  Point base;
  std::vector<AreaSpec> areas;  // areas[i].id == i + 1
  UavParams uav;
  std::uint64_t rng_seed = 0;

  std::size_t size() const { return areas.size(); }
  const AreaSpec& area(int id) const { return areas.at(static_cast<std::size_t>(id - 1)); }
  std::vector<int> capacities() const;

  bool operator==(const Instance&) const = default;
};

// Throws ValidationError naming the first violated invariant.
void validate(const Instance& instance);

// A feasible route/allocation pair together with its accounting.
struct Solution {
  std::vector<int> route;  // area ids in visiting order; the base is implicit at both ends
  std::vector<int> sigma;  // sigma[i] is the number of unit circles restored in area i + 1
  int objective = 0;
  double energy_used = 0.0;
  double seed_used = 0.0;

  bool operator==(const Solution&) const = default;
};

// Capacity values {min, min + step, ..., <= max}.
struct CapacityRange {
  int min = 10;
  int max = 35;
  int step = 5;

  std::vector<int> values() const;
};

struct GeneratorOptions {
  double side = 500.0;
  int n_areas = 15;
  std::uint64_t seed = 0;
  CapacityRange capacity;
  double e_max = 1.36e7;
  // Defaults to sum_i c_i * (1 + l_i)^gamma, which never binds.
  std::optional<double> seed_capacity;
  UavParams uav;
};

Instance generate_instance(const GeneratorOptions& options);

// Benchmark schedule: scenario k in [0, 5] is a (500 + 100k)^2 field with an
// energy budget of 1.36e7 + k * 4.55e6.
inline constexpr int kScenarioCount = 6;
double scenario_side(int scenario);
double scenario_energy_budget(int scenario);

// JSON documents. Load functions throw ParseError for malformed documents
// and ValidationError for invariant violations.
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

// Content fingerprint of an instance, used to tie solutions to instances.
std::string instance_fingerprint(const Instance& instance);

struct SolutionDocument {
  std::string instance_ref;
  std::string solver;
  Solution solution;

  bool operator==(const SolutionDocument&) const = default;
};

std::string solution_to_json(const SolutionDocument& doc);
SolutionDocument solution_from_json(const std::string& text);
void save_solution(const SolutionDocument& doc, const std::filesystem::path& path);
SolutionDocument load_solution(const std::filesystem::path& path);

}  // namespace grassland
