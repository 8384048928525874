#include <cmath>
#include <filesystem>
#include <set>

#include "gtest/gtest.h"
#include "grassland/errors.hpp"
#include "grassland/instance.hpp"
#include "grassland/random.hpp"

namespace grassland {
namespace {

GeneratorOptions scenario_options(std::uint64_t seed) {
  GeneratorOptions opt;
  opt.side = 500;
  opt.n_areas = 15;
  opt.seed = seed;
  opt.capacity = {10, 35, 5};
  opt.e_max = 1.36e7;
  return opt;
}

TEST(GenerateInstanceTest, BenchmarkScenarioShape) {
  const Instance inst = generate_instance(scenario_options(42));
  ASSERT_EQ(inst.size(), 15u);
  EXPECT_EQ(inst.base, (Point{0, 0}));
  EXPECT_DOUBLE_EQ(inst.uav.energy_capacity, 1.36e7);
  const std::set<int> allowed{10, 15, 20, 25, 30, 35};
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& a = inst.areas[i];
    EXPECT_EQ(a.id, static_cast<int>(i) + 1);
    EXPECT_GE(a.x, 0.0);
    EXPECT_LE(a.x, 500.0);
    EXPECT_GE(a.y, 0.0);
    EXPECT_LE(a.y, 500.0);
    EXPECT_GE(a.degradation, 0.3);
    EXPECT_LE(a.degradation, 0.8);
    EXPECT_TRUE(allowed.count(a.capacity)) << a.capacity;
  }
}

TEST(GenerateInstanceTest, MinimalInstance) {
  GeneratorOptions opt;
  opt.side = 500;
  opt.n_areas = 1;
  opt.seed = 0;
  opt.capacity = {1, 1, 1};
  opt.e_max = 1e6;
  const Instance inst = generate_instance(opt);
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst.areas[0].capacity, 1);
}

TEST(GenerateInstanceTest, DeterministicBySeed) {
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 987654321ull}) {
    EXPECT_EQ(instance_to_json(generate_instance(scenario_options(seed))),
              instance_to_json(generate_instance(scenario_options(seed))));
  }
  EXPECT_NE(generate_instance(scenario_options(1)), generate_instance(scenario_options(2)));
}

TEST(GenerateInstanceTest, DefaultSeedCapacityNeverBinds) {
  const Instance inst = generate_instance(scenario_options(5));
  double demand = 0;
  for (const auto& a : inst.areas) demand += a.capacity * std::pow(1 + a.degradation, 2.0);
  EXPECT_NEAR(inst.uav.seed_capacity, demand, 1e-9 * demand);
}

TEST(GenerateInstanceTest, RangesAcrossManySeeds) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto opt = scenario_options(seed);
    opt.capacity = {2, 9, 3};
    for (const auto& a : generate_instance(opt).areas) {
      ASSERT_GE(a.degradation, 0.3);
      ASSERT_LE(a.degradation, 0.8);
      ASSERT_TRUE(a.capacity == 2 || a.capacity == 5 || a.capacity == 8);
    }
  }
}

TEST(GenerateInstanceTest, RejectsBadParameters) {
  auto opt = scenario_options(1);
  opt.capacity = {5, 3, 1};
  EXPECT_THROW(generate_instance(opt), ParameterError);
  opt = scenario_options(1);
  opt.capacity = {0, 3, 1};
  EXPECT_THROW(generate_instance(opt), ParameterError);
  opt = scenario_options(1);
  opt.capacity.step = 0;
  EXPECT_THROW(generate_instance(opt), ParameterError);
  opt = scenario_options(1);
  opt.side = -1;
  EXPECT_THROW(generate_instance(opt), ParameterError);
  opt = scenario_options(1);
  opt.n_areas = 0;
  EXPECT_THROW(generate_instance(opt), ParameterError);
}

TEST(ScenarioScheduleTest, SidesAndBudgets) {
  EXPECT_DOUBLE_EQ(scenario_side(0), 500);
  EXPECT_DOUBLE_EQ(scenario_side(5), 1000);
  EXPECT_DOUBLE_EQ(scenario_energy_budget(0), 1.36e7);
  EXPECT_NEAR(scenario_energy_budget(5), 3.64e7, 0.01e7);
  EXPECT_THROW(scenario_side(6), ParameterError);
}

TEST(SerializationTest, RoundTripIsFieldExact) {
  const Instance inst = generate_instance(scenario_options(77));
  const Instance back = instance_from_json(instance_to_json(inst));
  EXPECT_EQ(back, inst);

  const auto path = std::filesystem::temp_directory_path() / "grassland_instance_roundtrip.json";
  save_instance(inst, path);
  EXPECT_EQ(load_instance(path), inst);
  std::filesystem::remove(path);
}

TEST(SerializationTest, MissingAreasIsParseError) {
  std::string doc = instance_to_json(generate_instance(scenario_options(3)));
  auto j = doc.find("\"areas\"");
  ASSERT_NE(j, std::string::npos);
  doc.replace(j, 7, "\"zones\"");
  try {
    instance_from_json(doc);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("areas"), std::string::npos) << e.what();
  }
}

TEST(SerializationTest, MalformedAndWrongTypes) {
  EXPECT_THROW(instance_from_json("{not json"), ParseError);
  std::string doc = instance_to_json(generate_instance(scenario_options(3)));
  auto j = doc.find("\"rotor_count\": 6");
  ASSERT_NE(j, std::string::npos);
  doc.replace(j, 16, "\"rotor_count\": \"six\"");
  try {
    instance_from_json(doc);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("rotor_count"), std::string::npos);
  }
}

TEST(SerializationTest, OutOfBandDegradationIsValidationError) {
  Instance inst = generate_instance(scenario_options(3));
  inst.areas[4].degradation = 0.9;
  EXPECT_THROW(instance_from_json(instance_to_json(inst)), ValidationError);
}

TEST(ValidationTest, WalksInvariants) {
  const Instance good = generate_instance(scenario_options(9));
  EXPECT_NO_THROW(validate(good));

  Instance bad = good;
  bad.areas[0].capacity = 0;
  EXPECT_THROW(validate(bad), ValidationError);
  bad = good;
  bad.areas[2].id = 7;
  EXPECT_THROW(validate(bad), ValidationError);
  bad = good;
  bad.areas[1].x = bad.base.x;
  bad.areas[1].y = bad.base.y;
  EXPECT_THROW(validate(bad), ValidationError);
  bad = good;
  bad.uav.rotor_count = 0;
  EXPECT_THROW(validate(bad), ValidationError);
  bad = good;
  bad.uav.air_density = -1;
  EXPECT_THROW(validate(bad), ValidationError);
  bad = good;
  bad.areas.clear();
  EXPECT_THROW(validate(bad), ValidationError);
}

TEST(SolutionDocumentTest, RoundTrip) {
  SolutionDocument doc{"fnv1a64:0123", "chapbilm", {{2, 1, 3}, {1, 2, 3}, 6, 1234.5678901234567, 9.87654321}};
  EXPECT_EQ(solution_from_json(solution_to_json(doc)), doc);
  EXPECT_THROW(solution_from_json("{\"version\": 1}"), ParseError);
}

TEST(DistanceTest, Examples) {
  EXPECT_DOUBLE_EQ(distance({0, 0}, {3, 4}), 5.0);
  EXPECT_EQ(distance({2.5, -7}, {2.5, -7}), 0.0);
}

TEST(DistanceTest, MatchesExtendedPrecisionAndIsSymmetric) {
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Point a{rng.uniform_real(-1e3, 1e3), rng.uniform_real(-1e3, 1e3)};
    const Point b{rng.uniform_real(-1e3, 1e3), rng.uniform_real(-1e3, 1e3)};
    const long double dx = static_cast<long double>(a.x) - b.x, dy = static_cast<long double>(a.y) - b.y;
    const long double ref = std::sqrt(dx * dx + dy * dy);
    EXPECT_NEAR(distance(a, b), static_cast<double>(ref), 1e-12 * static_cast<double>(ref));
    EXPECT_EQ(distance(a, b), distance(b, a));
  }
}

}  // namespace
}  // namespace grassland
