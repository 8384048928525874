#include <algorithm>
#include <numeric>

#include "gtest/gtest.h"
#include "grassland/errors.hpp"
#include "grassland/oracle.hpp"
#include "grassland/routing.hpp"
#include "grassland/solvers.hpp"
#include "support/reference.hpp"

namespace grassland {
namespace {

SolverConfig quick_config(SolverKind kind, std::uint64_t seed = 1) {
  SolverConfig cfg;
  cfg.variant = kind;
  cfg.rng_seed = seed;
  cfg.gen_max = 10;
  cfg.pbil.iterations = 15;
  cfg.ils.iterations = 15;
  return cfg;
}

Instance mid_instance(std::uint64_t seed, int n = 10) {
  GeneratorOptions opt;
  opt.side = 500;
  opt.n_areas = n;
  opt.seed = seed;
  opt.e_max = 1.36e7 * n / 15.0;
  return generate_instance(opt);
}

TEST(SolverKindTest, NamesRoundTrip) {
  for (SolverKind k : all_solver_kinds()) EXPECT_EQ(parse_solver_kind(to_string(k)), k);
  EXPECT_EQ(parse_solver_kind("HA-PBILM"), SolverKind::ha_pbilm);
  EXPECT_EQ(parse_solver_kind("ha_ils"), SolverKind::ha_ils);
  EXPECT_FALSE(parse_solver_kind("ga").has_value());
}

TEST(SolverConfigTest, Validation) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.gen_max = -1;
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg = SolverConfig{};
  cfg.neighborhood_size = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg = SolverConfig{};
  cfg.pbil.learning_rate = 1.5;
  EXPECT_THROW(cfg.validate(), ParameterError);
}

TEST(SolverTest, SingleArea) {
  Instance inst;
  inst.areas = {{1, 30, 40, 0.5, 4}};
  inst.uav.seed_capacity = 100;
  const Route r{{1}};
  const double e2 = evaluate(inst, r, std::vector<int>{2}).energy.total;
  const double e3 = evaluate(inst, r, std::vector<int>{3}).energy.total;
  inst.uav.energy_capacity = 0.5 * (e2 + e3);
  for (SolverKind k : all_solver_kinds()) {
    const SolveResult res = solve(inst, quick_config(k));
    EXPECT_EQ(res.solution.route, std::vector<int>{1}) << to_string(k);
    EXPECT_EQ(res.solution.sigma, std::vector<int>{2}) << to_string(k);
    EXPECT_EQ(res.solution.objective, 2);
    EXPECT_TRUE(certify(inst, res.solution));
  }
}

TEST(SolverTest, InfeasibleInstanceThrows) {
  Instance inst = mid_instance(1, 5);
  inst.uav.energy_capacity = 10.0;
  for (SolverKind k : all_solver_kinds()) EXPECT_THROW(solve(inst, quick_config(k)), InfeasibleInstanceError);
}

TEST(SolverTest, DeterministicAndCertified) {
  const Instance inst = mid_instance(2);
  for (SolverKind k : all_solver_kinds()) {
    const SolveResult a = solve(inst, quick_config(k, 7));
    const SolveResult b = solve(inst, quick_config(k, 7));
    EXPECT_EQ(a.solution, b.solution) << to_string(k);
    EXPECT_TRUE(certify(inst, a.solution)) << to_string(k);
    EXPECT_TRUE(is_permutation_of_ids(Route{a.solution.route}, inst.size()));
  }
}

TEST(SolverTest, ThreadCountDoesNotChangeResults) {
  const Instance inst = mid_instance(3);
  for (SolverKind k : {SolverKind::chapbilm, SolverKind::chails}) {
    SolverConfig one = quick_config(k, 9), four = quick_config(k, 9);
    four.threads = 4;
    EXPECT_EQ(solve(inst, one).solution, solve(inst, four).solution) << to_string(k);
  }
}

TEST(SolverTest, TracesAreMonotone) {
  const Instance inst = mid_instance(4);
  for (SolverKind k : all_solver_kinds()) {
    const SolveResult res = solve(inst, quick_config(k, 11));
    const auto& rec = res.trace.records;
    ASSERT_FALSE(rec.empty());
    for (std::size_t i = 1; i < rec.size(); ++i) {
      ASSERT_GE(rec[i].best_objective, rec[i - 1].best_objective) << to_string(k);
      ASSERT_GE(rec[i].generation, rec[i - 1].generation);
    }
    EXPECT_EQ(rec.back().best_objective, res.solution.objective) << to_string(k);
  }
  const SolveResult coop = solve(inst, quick_config(SolverKind::chapbilm, 11));
  EXPECT_EQ(coop.trace.records.size(), 11u);  // generation 0 plus gen_max
}

TEST(SolverTest, WarmStartAndLightModeStayFeasible) {
  const Instance inst = mid_instance(5);
  SolverConfig cfg = quick_config(SolverKind::chapbilm, 3);
  cfg.warm_start = true;
  EXPECT_TRUE(certify(inst, solve(inst, cfg).solution));
  cfg.warm_start = false;
  cfg.light_iterations = 3;
  EXPECT_TRUE(certify(inst, solve(inst, cfg).solution));
}

TEST(SolverTest, NoncooperativeMatchesOracleOnFixedRoute) {
  // With every area on one ray from the base, the shortest tour is also the
  // cheapest one for any allocation.
  Instance inst;
  for (int i = 1; i <= 4; ++i) inst.areas.push_back({i, 50.0 * (5 - i), 0, 0.3 + 0.1 * i, 3});
  double seed = 0;
  for (const auto& a : inst.areas) seed += a.capacity * std::pow(1 + a.degradation, 2.0);
  inst.uav.seed_capacity = seed;
  const Route line{{4, 3, 2, 1}};
  const double lo = evaluate(inst, line, std::vector<int>(4, 1)).energy.total;
  const double hi = evaluate(inst, line, inst.capacities()).energy.total;
  inst.uav.energy_capacity = lo + 0.45 * (hi - lo);
  const OracleResult exact = solve_exact(inst);
  for (SolverKind k : all_solver_kinds()) {
    const SolveResult res = solve(inst, quick_config(k, 4));
    EXPECT_EQ(res.solution.objective, exact.optimal_objective) << to_string(k);
  }
}

TEST(SolverTest, NeverBeatsTheOracle) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Instance inst = testing::tiny_binding_instance(seed, 4, {2, 3});
    const int best = solve_exact(inst).optimal_objective;
    for (SolverKind k : all_solver_kinds()) {
      const SolveResult res = solve(inst, quick_config(k, seed));
      EXPECT_LE(res.solution.objective, best);
      EXPECT_TRUE(certify(inst, res.solution));
    }
  }
}

TEST(CertifyTest, RejectsTamperedSolutions) {
  const Instance inst = mid_instance(6, 6);
  const Solution good = solve(inst, quick_config(SolverKind::chapbilm)).solution;
  ASSERT_TRUE(certify(inst, good));
  Solution bad = good;
  bad.objective += 1;
  EXPECT_FALSE(certify(inst, bad));
  bad = good;
  bad.route[0] = bad.route[1];
  EXPECT_FALSE(certify(inst, bad));
  bad = good;
  bad.sigma[0] = 0;
  EXPECT_FALSE(certify(inst, bad));
  bad = good;
  bad.sigma.pop_back();
  EXPECT_FALSE(certify(inst, bad));
  bad = good;
  for (std::size_t i = 0; i < bad.sigma.size(); ++i) bad.sigma[i] = inst.areas[i].capacity;
  bad.objective = std::accumulate(bad.sigma.begin(), bad.sigma.end(), 0);
  EXPECT_FALSE(certify(inst, bad));
}

TEST(MakeSolutionTest, ReEvaluates) {
  const Instance inst = mid_instance(7, 5);
  const Route r = identity_route(5);
  const std::vector<int> ones(5, 1);
  const Solution s = make_solution(inst, r, ones);
  EXPECT_EQ(s.objective, 5);
  EXPECT_DOUBLE_EQ(s.energy_used, evaluate(inst, r, ones).energy.total);
  EXPECT_EQ(s.route, r.order);
}

}  // namespace
}  // namespace grassland
