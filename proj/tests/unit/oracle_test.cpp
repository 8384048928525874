#include "gtest/gtest.h"
#include "grassland/energy.hpp"
#include "grassland/errors.hpp"
#include "grassland/oracle.hpp"
#include "grassland/routing.hpp"
#include "support/reference.hpp"

namespace grassland {
namespace {

TEST(OracleTest, SingleAreaGenerousBudget) {
  Instance inst;
  inst.areas = {{1, 10, 10, 0.5, 3}};
  inst.uav.energy_capacity = 1e9;
  inst.uav.seed_capacity = 100;
  const OracleResult r = solve_exact(inst);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.optimal_objective, 3);
  EXPECT_EQ(r.route.order, std::vector<int>{1});
  EXPECT_EQ(r.states, 3u);
}

TEST(OracleTest, MirrorPairHasTwoOptimalRoutes) {
  // Two areas mirrored across the diagonal with equal demand: both visiting
  // orders cost the same.
  Instance inst;
  inst.areas = {{1, 30, 10, 0.5, 2}, {2, 10, 30, 0.5, 2}};
  inst.uav.energy_capacity = 1e9;
  inst.uav.seed_capacity = 100;
  const OracleResult r = solve_exact(inst);
  EXPECT_EQ(r.optimal_objective, 4);
  EXPECT_EQ(r.optimal_route_count, 2u);
  EXPECT_EQ(r.route.order, (std::vector<int>{1, 2}));
}

TEST(OracleTest, InfeasibleInstance) {
  Instance inst;
  inst.areas = {{1, 10, 10, 0.5, 2}};
  inst.uav.energy_capacity = 1.0;
  inst.uav.seed_capacity = 100;
  const OracleResult r = solve_exact(inst);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.optimal_objective, 0);
}

TEST(OracleTest, SizeLimit) {
  GeneratorOptions opt;
  opt.n_areas = 9;  // 9! * 10^9 states
  const Instance inst = generate_instance(opt);
  EXPECT_GT(oracle_state_count(inst), 1e7);
  EXPECT_THROW(solve_exact(inst), SizeLimitError);
  EXPECT_THROW(solve_exact(inst, {1e3}), SizeLimitError);
}

TEST(OracleTest, AgreesWithIndependentEnumeration) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 3 + static_cast<int>(seed % 3);
    const Instance inst = testing::tiny_binding_instance(seed, n, {2, 3});
    const OracleResult r = solve_exact(inst);
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.optimal_objective, testing::brute_force_optimum(inst)) << "seed " << seed;
    EXPECT_TRUE(evaluate(inst, r.route, r.sigma).feasible);
    EXPECT_EQ(evaluate(inst, r.route, r.sigma).objective, r.optimal_objective);
    EXPECT_GE(r.optimal_route_count, 1u);
  }
}

TEST(OracleTest, FixedRouteEnumeration) {
  const Instance inst = testing::tiny_binding_instance(3, 4, {2, 3});
  for (const Route& r : {identity_route(4), Route{{4, 2, 1, 3}}}) {
    std::vector<int> sigma;
    double energy = 0;
    const int c = best_allocation_exact(inst, r, sigma, energy);
    EXPECT_EQ(c, testing::brute_force_best_allocation(inst, r));
    EXPECT_DOUBLE_EQ(energy, evaluate(inst, r, sigma).energy.total);
  }
}

}  // namespace
}  // namespace grassland
