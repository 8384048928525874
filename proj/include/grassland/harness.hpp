#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grassland/instance.hpp"
#include "grassland/solvers.hpp"

namespace grassland {

struct ScenarioSpec {
  int id = 0;
  double side = 500.0;
  double e_max = 1.36e7;

  bool operator==(const ScenarioSpec&) const = default;
};

// The six-field benchmark schedule.
std::vector<ScenarioSpec> default_scenarios();

struct ExperimentPlan {
  std::vector<ScenarioSpec> scenarios = default_scenarios();
  int n_areas = 15;
  CapacityRange capacity;
  std::optional<double> seed_capacity;
  std::vector<SolverKind> solvers = {SolverKind::chapbilm, SolverKind::ha_pbilm};
  int repetitions = 5;
  std::uint64_t master_seed = 2023;
  std::filesystem::path output_dir;  // empty: do not write files
  SolverConfig solver;               // variant and rng_seed are set per run
  int workers = 1;

  void validate() const;
};

ExperimentPlan plan_from_json(const std::string& text);
std::string plan_to_json(const ExperimentPlan& plan);
ExperimentPlan load_plan(const std::filesystem::path& path);

// Seeds derived from the master seed. All solvers share the same seed for a
// given (scenario, repetition).
std::uint64_t scenario_instance_seed(std::uint64_t master_seed, int scenario);
std::uint64_t run_seed(std::uint64_t master_seed, int scenario, int repetition);

Instance scenario_instance(const ExperimentPlan& plan, const ScenarioSpec& scenario);

struct RunRecord {
  int scenario = 0;
  SolverKind solver = SolverKind::chapbilm;
  int repetition = 0;
  std::uint64_t seed = 0;
  bool feasible = false;
  std::string error;
  Solution solution;
  RunTrace trace;
  double wall_seconds = 0.0;
};

struct ResultRow {
  int scenario = 0;
  double side = 0.0;
  double e_max = 0.0;
  std::string solver;
  int runs = 0;
  int infeasible = 0;
  int best = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation over feasible runs
  double mean_wall_seconds = 0.0;
};

struct PlanOutput {
  std::vector<ResultRow> rows;  // sorted by (scenario, solver order in the plan)
  std::vector<RunRecord> runs;  // sorted by (scenario, solver, repetition)
  std::vector<Instance> instances;
};

// Runs every scenario x solver x repetition. When plan.output_dir is set,
// writes results.csv, timing.csv, instances/, solutions/ and traces/.
// results.csv, instances, solutions and traces are byte-identical across
// re-runs; wall times only go to timing.csv.
PlanOutput run_plan(const ExperimentPlan& plan);

std::vector<ResultRow> aggregate(const ExperimentPlan& plan, const std::vector<RunRecord>& runs);

std::string results_csv(const std::vector<ResultRow>& rows);
std::string timing_csv(const std::vector<ResultRow>& rows);

struct LabeledTrace {
  int scenario = 0;
  std::string solver;
  int repetition = 0;
  RunTrace trace;
};

std::string trace_csv(const LabeledTrace& trace);
LabeledTrace parse_trace_csv(const std::string& text);

struct ConvergencePoint {
  int scenario = 0;
  std::string solver;
  int generation = 0;
  double mean_best_objective = 0.0;
  int runs = 0;
};

// Per-generation mean best-so-far across repetitions, one series per
// (scenario, solver). Shorter traces hold their last value.
std::vector<ConvergencePoint> summarize(const std::vector<LabeledTrace>& traces);
std::string convergence_csv(const std::vector<ConvergencePoint>& points);

}  // namespace grassland
