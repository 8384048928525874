// Command-line front end: generate, solve, bench, oracle, summarize.
//
// Exit codes: 0 success, 1 infeasible instance, 2 bad input.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grassland/errors.hpp"
#include "grassland/harness.hpp"
#include "grassland/instance.hpp"
#include "grassland/oracle.hpp"
#include "grassland/solvers.hpp"

namespace fs = std::filesystem;
using namespace grassland;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitBadInput = 2;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError("cannot open " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

struct GenerateArgs {
  double side = 500.0;
  int n = 15;
  std::uint64_t seed = 0;
  int cap_min = 10;
  int cap_max = 35;
  int cap_step = 5;
  double e_max = 1.36e7;
  std::optional<double> seed_capacity;
  std::optional<int> scenario;
  std::string output;
};

struct SolveArgs {
  std::string instance;
  std::string solver = "chapbilm";
  std::uint64_t seed = 1;
  int gen_max = 91;
  int pbil_iters = 80;
  int pbil_pop = 10;
  double alpha = 0.2;
  double theta = 0.3;
  int neighborhood = 36;
  int threads = 1;
  int light_iters = 0;
  bool warm_start = false;
  std::string output;
  std::string trace;
};

struct BenchArgs {
  std::string plan;
  std::string output_dir;
  std::optional<int> repetitions;
  std::optional<int> workers;
};

struct OracleArgs {
  std::string instance;
  double max_states = 1.0e7;
  std::string output;
};

struct SummarizeArgs {
  std::vector<std::string> inputs;
  std::string output;
};

int run_generate(const GenerateArgs& a) {
  GeneratorOptions opt;
  opt.side = a.side;
  opt.n_areas = a.n;
  opt.seed = a.seed;
  opt.capacity = {a.cap_min, a.cap_max, a.cap_step};
  opt.e_max = a.e_max;
  opt.seed_capacity = a.seed_capacity;
  if (a.scenario) {
    opt.side = scenario_side(*a.scenario);
    opt.e_max = scenario_energy_budget(*a.scenario);
  }
  const Instance inst = generate_instance(opt);
  write_or_print(a.output, instance_to_json(inst));
  return kExitOk;
}

int run_solve(const SolveArgs& a) {
  const Instance inst = load_instance(a.instance);
  auto kind = parse_solver_kind(a.solver);
  if (!kind) throw ParameterError("unknown solver '" + a.solver + "'");
  SolverConfig cfg;
  cfg.variant = *kind;
  cfg.rng_seed = a.seed;
  cfg.gen_max = a.gen_max;
  cfg.pbil.iterations = a.pbil_iters;
  cfg.ils.iterations = a.pbil_iters;
  cfg.pbil.population = a.pbil_pop;
  cfg.pbil.learning_rate = a.alpha;
  cfg.pbil.elite_fraction = a.theta;
  cfg.neighborhood_size = a.neighborhood;
  cfg.threads = a.threads;
  cfg.light_iterations = a.light_iters;
  cfg.warm_start = a.warm_start;

  const SolveResult res = solve(inst, cfg);
  if (!certify(inst, res.solution)) {
    std::cerr << "error: solver returned a solution that fails re-evaluation\n";
    return kExitInfeasible;
  }
  const SolutionDocument doc{instance_fingerprint(inst), std::string(to_string(*kind)), res.solution};
  write_or_print(a.output, solution_to_json(doc));
  if (!a.trace.empty()) {
    write_or_print(a.trace, trace_csv({0, std::string(to_string(*kind)), 0, res.trace}));
  }
  if (!a.output.empty() && a.output != "-") {
    std::cout << to_string(*kind) << ": objective " << res.solution.objective << ", energy "
              << res.solution.energy_used << " / " << inst.uav.energy_capacity << "\n";
  }
  return kExitOk;
}

int run_bench(const BenchArgs& a) {
  ExperimentPlan plan = load_plan(a.plan);
  if (!a.output_dir.empty()) plan.output_dir = a.output_dir;
  if (a.repetitions) plan.repetitions = *a.repetitions;
  if (a.workers) plan.workers = *a.workers;
  if (plan.output_dir.empty()) throw ParameterError("bench needs an output directory (plan or --output-dir)");
  const PlanOutput out = run_plan(plan);
  std::cout << results_csv(out.rows);
  for (const auto& r : out.runs) {
    if (!r.feasible) return kExitInfeasible;
  }
  return kExitOk;
}

int run_oracle(const OracleArgs& a) {
  const Instance inst = load_instance(a.instance);
  const OracleResult r = solve_exact(inst, {a.max_states});
  if (!r.feasible) {
    std::cerr << "instance is infeasible: no route admits the all-ones allocation\n";
    return kExitInfeasible;
  }
  const Solution sol{r.route.order, r.sigma, r.optimal_objective, r.energy,
                     make_solution(inst, r.route, r.sigma).seed_used};
  write_or_print(a.output, solution_to_json({instance_fingerprint(inst), "oracle", sol}));
  if (!a.output.empty() && a.output != "-") {
    std::cout << "optimal objective " << r.optimal_objective << " (" << r.optimal_route_count
              << " optimal routes, " << r.states << " states)\n";
  }
  return kExitOk;
}

int run_summarize(const SummarizeArgs& a) {
  std::vector<fs::path> files;
  for (const auto& in : a.inputs) {
    if (fs::is_directory(in)) {
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.path().extension() == ".csv") files.push_back(e.path());
      }
    } else {
      files.emplace_back(in);
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<LabeledTrace> traces;
  for (const auto& f : files) traces.push_back(parse_trace_csv(read_file(f)));
  write_or_print(a.output, convergence_csv(summarize(traces)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV grassland restoration: route and allocation solvers"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a random instance");
  g->add_option("--side", gen.side, "Side length of the square field");
  g->add_option("--n", gen.n, "Number of restored areas");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--cap-min", gen.cap_min, "Smallest capacity value");
  g->add_option("--cap-max", gen.cap_max, "Largest capacity value");
  g->add_option("--cap-step", gen.cap_step, "Capacity step");
  g->add_option("--e-max", gen.e_max, "Energy budget (J)");
  g->add_option("--seed-capacity", gen.seed_capacity, "Seed mass budget (kg); default never binds");
  g->add_option("--scenario", gen.scenario, "Benchmark scenario 0..5 (sets --side and --e-max)");
  g->add_option("-o,--output", gen.output, "Output file (default stdout)");

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve one instance with one solver");
  s->add_option("instance", sol.instance, "Instance file")->required();
  s->add_option("--solver", sol.solver, "chapbilm | chails | ha_pbilm | ha_ils");
  s->add_option("--seed", sol.seed, "Solver seed");
  s->add_option("--gen-max", sol.gen_max, "Outer generations");
  s->add_option("--pbil-iters", sol.pbil_iters, "Inner iterations (PBIL T_max, ILS iterations)");
  s->add_option("--pbil-pop", sol.pbil_pop, "PBIL population size");
  s->add_option("--alpha", sol.alpha, "PBIL learning rate");
  s->add_option("--theta", sol.theta, "PBIL elite fraction");
  s->add_option("--neighborhood", sol.neighborhood, "Route neighbourhood size");
  s->add_option("--threads", sol.threads, "Worker threads for candidate routes");
  s->add_option("--light-iters", sol.light_iters, "Reduced inner budget for candidate routes (0 = off)");
  s->add_flag("--warm-start", sol.warm_start, "Warm-start PBIL from the incumbent model");
  s->add_option("-o,--output", sol.output, "Solution file (default stdout)");
  s->add_option("--trace", sol.trace, "Write the convergence trace as CSV");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run an experiment plan");
  b->add_option("plan", bench.plan, "Plan file (JSON)")->required();
  b->add_option("--output-dir", bench.output_dir, "Override the plan's output directory");
  b->add_option("--repetitions", bench.repetitions, "Override the number of repetitions");
  b->add_option("--workers", bench.workers, "Override the worker count");

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Exhaustive exact solve of a small instance");
  o->add_option("instance", orc.instance, "Instance file")->required();
  o->add_option("--max-states", orc.max_states, "Enumeration limit");
  o->add_option("-o,--output", orc.output, "Solution file (default stdout)");

  SummarizeArgs sum;
  auto* m = app.add_subcommand("summarize", "Average traces into a convergence table");
  m->add_option("traces", sum.inputs, "Trace files or directories")->required();
  m->add_option("-o,--output", sum.output, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (*g) return run_generate(gen);
    if (*s) return run_solve(sol);
    if (*b) return run_bench(bench);
    if (*o) return run_oracle(orc);
    if (*m) return run_summarize(sum);
  } catch (const InfeasibleInstanceError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const SizeLimitError& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::logic_error& e) {
    // Domain and index errors from values that passed parsing.
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
