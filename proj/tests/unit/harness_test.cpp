#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "grassland/errors.hpp"
#include "grassland/harness.hpp"
#include "grassland/random.hpp"

namespace grassland {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentPlan small_plan() {
  ExperimentPlan plan;
  plan.scenarios = {default_scenarios()[0]};
  plan.n_areas = 8;
  plan.repetitions = 3;
  plan.master_seed = 11;
  plan.solver.gen_max = 4;
  plan.solver.pbil.iterations = 6;
  plan.solver.ils.iterations = 6;
  return plan;
}

TEST(ScenarioTest, DefaultSchedule) {
  const auto s = default_scenarios();
  ASSERT_EQ(s.size(), 6u);
  for (int k = 0; k < 6; ++k) {
    EXPECT_EQ(s[k].id, k);
    EXPECT_DOUBLE_EQ(s[k].side, 500 + 100 * k);
    EXPECT_NEAR(s[k].e_max, 1.36e7 + k * 4.55e6, 1e-3);
  }
}

TEST(SeedTest, DistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (int k = 0; k < 6; ++k) {
    seen.insert(scenario_instance_seed(2023, k));
    for (int r = 0; r < 30; ++r) seen.insert(run_seed(2023, k, r));
  }
  EXPECT_EQ(seen.size(), 6u + 180u);
  EXPECT_EQ(run_seed(2023, 2, 3), run_seed(2023, 2, 3));
  EXPECT_NE(run_seed(2023, 2, 3), run_seed(2024, 2, 3));
}

TEST(PlanJsonTest, RoundTripAndErrors) {
  ExperimentPlan plan = small_plan();
  plan.solvers = {SolverKind::chails, SolverKind::ha_ils};
  plan.seed_capacity = 50.0;
  const ExperimentPlan back = plan_from_json(plan_to_json(plan));
  EXPECT_EQ(back.scenarios, plan.scenarios);
  EXPECT_EQ(back.solvers, plan.solvers);
  EXPECT_EQ(back.repetitions, 3);
  EXPECT_EQ(back.master_seed, 11u);
  EXPECT_EQ(back.solver.gen_max, 4);
  EXPECT_EQ(back.seed_capacity, 50.0);

  const ExperimentPlan ints = plan_from_json(R"({"scenarios": [0, 5], "repetitions": 2})");
  ASSERT_EQ(ints.scenarios.size(), 2u);
  EXPECT_DOUBLE_EQ(ints.scenarios[1].side, 1000);

  EXPECT_THROW(plan_from_json("[1, 2"), ParseError);
  EXPECT_THROW(plan_from_json(R"({"solvers": ["tabu"]})"), ParseError);
  EXPECT_THROW(plan_from_json(R"({"scenarios": [9]})"), std::invalid_argument);
}

TEST(RunPlanTest, SixRunsCertifiedAndByteIdentical) {
  const fs::path a = fs::temp_directory_path() / "grassland_plan_a";
  const fs::path b = fs::temp_directory_path() / "grassland_plan_b";
  fs::remove_all(a);
  fs::remove_all(b);
  ExperimentPlan plan = small_plan();
  plan.output_dir = a;
  const PlanOutput out = run_plan(plan);
  ASSERT_EQ(out.runs.size(), 6u);
  ASSERT_EQ(out.rows.size(), 2u);
  for (const auto& r : out.runs) {
    EXPECT_TRUE(r.feasible) << r.error;
    EXPECT_TRUE(certify(out.instances[0], r.solution));
  }
  plan.output_dir = b;
  plan.workers = 3;
  run_plan(plan);

  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file() || entry.path().filename() == "timing.csv") continue;
    const fs::path rel = fs::relative(entry.path(), a);
    EXPECT_EQ(slurp(entry.path()), slurp(b / rel)) << rel;
    ++files;
  }
  // results.csv, one instance, six solutions, six traces
  EXPECT_EQ(files, 14u);
  EXPECT_TRUE(fs::exists(a / "timing.csv"));
  EXPECT_EQ(slurp(a / "results.csv").substr(0, 45), "scenario,side,e_max,solver,runs,infeasible,be");
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(AggregateTest, SampleStatistics) {
  ExperimentPlan plan = small_plan();
  plan.solvers = {SolverKind::chapbilm};
  std::vector<RunRecord> runs;
  for (int r = 0; r < 3; ++r) {
    RunRecord rec;
    rec.repetition = r;
    rec.feasible = true;
    rec.solution.objective = 10 + 2 * r;  // 10, 12, 14
    runs.push_back(rec);
  }
  RunRecord failed;
  failed.repetition = 3;
  runs.push_back(failed);
  const auto rows = aggregate(plan, runs);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].runs, 4);
  EXPECT_EQ(rows[0].infeasible, 1);
  EXPECT_EQ(rows[0].best, 14);
  EXPECT_DOUBLE_EQ(rows[0].mean, 12);
  EXPECT_DOUBLE_EQ(rows[0].sd, 2);
}

TEST(TraceCsvTest, RoundTrip) {
  LabeledTrace t{2, "chails", 4, {{{0, 10, 1.5e6, 0}, {1, 12, 1.4e6, 0}}}};
  const LabeledTrace back = parse_trace_csv(trace_csv(t));
  EXPECT_EQ(back.scenario, 2);
  EXPECT_EQ(back.solver, "chails");
  EXPECT_EQ(back.repetition, 4);
  ASSERT_EQ(back.trace.records.size(), 2u);
  EXPECT_EQ(back.trace.records[1].best_objective, 12);
  EXPECT_THROW(parse_trace_csv("gen,value\n"), ParseError);
  EXPECT_THROW(parse_trace_csv("solver,scenario,repetition,generation,best_objective\nx,0,0,a,1\n"), ParseError);
}

TEST(SummarizeTest, MeansAndHeldValues) {
  std::vector<LabeledTrace> traces;
  traces.push_back({0, "chapbilm", 0, {{{0, 10, 0, 0}, {1, 12, 0, 0}, {2, 13, 0, 0}}}});
  traces.push_back({0, "chapbilm", 1, {{{0, 8, 0, 0}, {1, 9, 0, 0}}}});
  traces.push_back({0, "ha_pbilm", 0, {{{0, 7, 0, 0}}}});
  const auto pts = summarize(traces);
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[0].solver, "chapbilm");
  EXPECT_DOUBLE_EQ(pts[0].mean_best_objective, 9);
  EXPECT_DOUBLE_EQ(pts[1].mean_best_objective, 10.5);
  EXPECT_DOUBLE_EQ(pts[2].mean_best_objective, 11);  // the short trace holds 9
  EXPECT_EQ(pts[2].runs, 2);
  EXPECT_EQ(pts[3].solver, "ha_pbilm");
  EXPECT_DOUBLE_EQ(pts[3].mean_best_objective, 7);
}

TEST(SummarizeTest, ThirtyRandomTracesMatchDirectAverage) {
  Rng rng(12);
  std::vector<LabeledTrace> traces;
  const int gens = 25;
  std::vector<std::vector<int>> values(30);
  for (int r = 0; r < 30; ++r) {
    LabeledTrace t{1, "chails", r, {}};
    int best = static_cast<int>(rng.uniform_index(20));
    for (int g = 0; g < gens; ++g) {
      best += static_cast<int>(rng.uniform_index(3));
      values[r].push_back(best);
      t.trace.records.push_back({g, best, 0, 0});
    }
    traces.push_back(t);
  }
  const auto pts = summarize(traces);
  ASSERT_EQ(pts.size(), static_cast<std::size_t>(gens));
  for (int g = 0; g < gens; ++g) {
    long sum = 0;
    for (int r = 0; r < 30; ++r) sum += values[r][g];
    EXPECT_NEAR(pts[g].mean_best_objective, sum / 30.0, 1e-12);
    EXPECT_EQ(pts[g].generation, g);
    EXPECT_EQ(pts[g].runs, 30);
  }
  EXPECT_NE(convergence_csv(pts).find("1,chails,24,"), std::string::npos);
}

}  // namespace
}  // namespace grassland
