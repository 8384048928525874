#include "grassland/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "grassland/errors.hpp"
#include "grassland/random.hpp"

namespace grassland {

using nlohmann::json;

std::vector<ScenarioSpec> default_scenarios() {
  std::vector<ScenarioSpec> out;
  for (int k = 0; k < kScenarioCount; ++k) out.push_back({k, scenario_side(k), scenario_energy_budget(k)});
  return out;
}

void ExperimentPlan::validate() const {
  if (scenarios.empty()) throw ParameterError("plan needs at least one scenario");
  for (const auto& s : scenarios) {
    if (!(s.side > 0.0) || !(s.e_max > 0.0)) throw ParameterError("scenario side and e_max must be positive");
  }
  if (solvers.empty()) throw ParameterError("plan needs at least one solver");
  if (repetitions < 1) throw ParameterError("repetitions must be at least 1");
  if (n_areas < 1) throw ParameterError("n_areas must be at least 1");
  if (workers < 1) throw ParameterError("workers must be at least 1");
  capacity.values();
  solver.validate();
}

namespace {

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("plan field '") + key + "' has the wrong type");
  }
}

std::string fmt_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << text;
}

std::string run_stem(const RunRecord& r) {
  return "s" + std::to_string(r.scenario) + "_" + std::string(to_string(r.solver)) + "_r" +
         std::to_string(r.repetition);
}

}  // namespace

ExperimentPlan plan_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed plan: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("plan must be a JSON object");

  ExperimentPlan plan;
  if (auto it = j.find("scenarios"); it != j.end()) {
    if (!it->is_array()) throw ParseError("plan field 'scenarios' must be an array");
    plan.scenarios.clear();
    for (const auto& s : *it) {
      ScenarioSpec entry;
      if (s.is_number_integer()) {
        entry.id = s.get<int>();
        entry.side = scenario_side(entry.id);
        entry.e_max = scenario_energy_budget(entry.id);
      } else {
        entry.id = static_cast<int>(plan.scenarios.size());
        read_opt(s, "id", entry.id);
        read_opt(s, "side", entry.side);
        read_opt(s, "e_max", entry.e_max);
      }
      plan.scenarios.push_back(entry);
    }
  }
  read_opt(j, "n_areas", plan.n_areas);
  if (auto it = j.find("capacity"); it != j.end()) {
    read_opt(*it, "min", plan.capacity.min);
    read_opt(*it, "max", plan.capacity.max);
    read_opt(*it, "step", plan.capacity.step);
  }
  if (auto it = j.find("seed_capacity_kg"); it != j.end() && !it->is_null()) {
    double q = 0.0;
    read_opt(j, "seed_capacity_kg", q);
    plan.seed_capacity = q;
  }
  if (auto it = j.find("solvers"); it != j.end()) {
    if (!it->is_array()) throw ParseError("plan field 'solvers' must be an array");
    plan.solvers.clear();
    for (const auto& s : *it) {
      if (!s.is_string()) throw ParseError("plan field 'solvers' must hold strings");
      auto kind = parse_solver_kind(s.get<std::string>());
      if (!kind) throw ParseError("unknown solver '" + s.get<std::string>() + "'");
      plan.solvers.push_back(*kind);
    }
  }
  read_opt(j, "repetitions", plan.repetitions);
  read_opt(j, "master_seed", plan.master_seed);
  std::string out_dir;
  read_opt(j, "output_dir", out_dir);
  plan.output_dir = out_dir;
  read_opt(j, "workers", plan.workers);
  if (auto it = j.find("solver"); it != j.end()) {
    const json& s = *it;
    read_opt(s, "gen_max", plan.solver.gen_max);
    read_opt(s, "neighborhood_size", plan.solver.neighborhood_size);
    read_opt(s, "pbil_population", plan.solver.pbil.population);
    read_opt(s, "pbil_iterations", plan.solver.pbil.iterations);
    read_opt(s, "learning_rate", plan.solver.pbil.learning_rate);
    read_opt(s, "elite_fraction", plan.solver.pbil.elite_fraction);
    plan.solver.ils.iterations = plan.solver.pbil.iterations;
    read_opt(s, "ils_iterations", plan.solver.ils.iterations);
    read_opt(s, "warm_start", plan.solver.warm_start);
    read_opt(s, "light_iterations", plan.solver.light_iterations);
    read_opt(s, "threads", plan.solver.threads);
  }
  plan.validate();
  return plan;
}

std::string plan_to_json(const ExperimentPlan& plan) {
  json j;
  json scenarios = json::array();
  for (const auto& s : plan.scenarios) scenarios.push_back({{"id", s.id}, {"side", s.side}, {"e_max", s.e_max}});
  j["scenarios"] = std::move(scenarios);
  j["n_areas"] = plan.n_areas;
  j["capacity"] = {{"min", plan.capacity.min}, {"max", plan.capacity.max}, {"step", plan.capacity.step}};
  if (plan.seed_capacity) j["seed_capacity_kg"] = *plan.seed_capacity;
  json solvers = json::array();
  for (auto k : plan.solvers) solvers.push_back(std::string(to_string(k)));
  j["solvers"] = std::move(solvers);
  j["repetitions"] = plan.repetitions;
  j["master_seed"] = plan.master_seed;
  j["output_dir"] = plan.output_dir.string();
  j["workers"] = plan.workers;
  j["solver"] = {{"gen_max", plan.solver.gen_max},
                 {"neighborhood_size", plan.solver.neighborhood_size},
                 {"pbil_population", plan.solver.pbil.population},
                 {"pbil_iterations", plan.solver.pbil.iterations},
                 {"learning_rate", plan.solver.pbil.learning_rate},
                 {"elite_fraction", plan.solver.pbil.elite_fraction},
                 {"ils_iterations", plan.solver.ils.iterations},
                 {"warm_start", plan.solver.warm_start},
                 {"light_iterations", plan.solver.light_iterations},
                 {"threads", plan.solver.threads}};
  return j.dump(2) + "\n";
}

ExperimentPlan load_plan(const std::filesystem::path& path) { return plan_from_json(read_text(path)); }

std::uint64_t scenario_instance_seed(std::uint64_t master_seed, int scenario) {
  return Rng::mix(master_seed ^ (0x5ce7a210ULL + static_cast<std::uint64_t>(scenario)));
}

std::uint64_t run_seed(std::uint64_t master_seed, int scenario, int repetition) {
  return Rng::mix(Rng::mix(master_seed + static_cast<std::uint64_t>(scenario)) + static_cast<std::uint64_t>(repetition));
}

Instance scenario_instance(const ExperimentPlan& plan, const ScenarioSpec& scenario) {
  GeneratorOptions opt;
  opt.side = scenario.side;
  opt.n_areas = plan.n_areas;
  opt.seed = scenario_instance_seed(plan.master_seed, scenario.id);
  opt.capacity = plan.capacity;
  opt.e_max = scenario.e_max;
  opt.seed_capacity = plan.seed_capacity;
  return generate_instance(opt);
}

std::vector<ResultRow> aggregate(const ExperimentPlan& plan, const std::vector<RunRecord>& runs) {
  std::vector<ResultRow> rows;
  for (const auto& sc : plan.scenarios) {
    for (auto kind : plan.solvers) {
      ResultRow row;
      row.scenario = sc.id;
      row.side = sc.side;
      row.e_max = sc.e_max;
      row.solver = std::string(to_string(kind));
      std::vector<int> values;
      double wall = 0.0;
      for (const auto& r : runs) {
        if (r.scenario != sc.id || r.solver != kind) continue;
        ++row.runs;
        wall += r.wall_seconds;
        if (r.feasible) {
          values.push_back(r.solution.objective);
        } else {
          ++row.infeasible;
        }
      }
      if (row.runs > 0) row.mean_wall_seconds = wall / row.runs;
      if (!values.empty()) {
        row.best = *std::max_element(values.begin(), values.end());
        double sum = 0.0;
        for (int v : values) sum += v;
        row.mean = sum / static_cast<double>(values.size());
        if (values.size() > 1) {
          double ss = 0.0;
          for (int v : values) ss += (v - row.mean) * (v - row.mean);
          row.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string results_csv(const std::vector<ResultRow>& rows) {
  std::string out = "scenario,side,e_max,solver,runs,infeasible,best,mean,sd\n";
  for (const auto& r : rows) {
    out += std::to_string(r.scenario) + "," + fmt_double(r.side, 1) + "," + fmt_double(r.e_max, 1) + "," + r.solver +
           "," + std::to_string(r.runs) + "," + std::to_string(r.infeasible) + "," + std::to_string(r.best) + "," +
           fmt_double(r.mean, 4) + "," + fmt_double(r.sd, 4) + "\n";
  }
  return out;
}

std::string timing_csv(const std::vector<ResultRow>& rows) {
  std::string out = "scenario,solver,mean_wall_seconds\n";
  for (const auto& r : rows) {
    out += std::to_string(r.scenario) + "," + r.solver + "," + fmt_double(r.mean_wall_seconds, 3) + "\n";
  }
  return out;
}

std::string trace_csv(const LabeledTrace& t) {
  std::string out = "solver,scenario,repetition,generation,best_objective,best_energy\n";
  for (const auto& rec : t.trace.records) {
    out += t.solver + "," + std::to_string(t.scenario) + "," + std::to_string(t.repetition) + "," +
           std::to_string(rec.generation) + "," + std::to_string(rec.best_objective) + "," +
           fmt_double(rec.best_energy, 3) + "\n";
  }
  return out;
}

LabeledTrace parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("solver,scenario,repetition,generation,best_objective", 0) != 0) {
    throw ParseError("trace file lacks the expected header");
  }
  LabeledTrace t;
  bool first = true;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 5) throw ParseError("trace line " + std::to_string(line_no) + " has too few columns");
    try {
      if (first) {
        t.solver = cells[0];
        t.scenario = std::stoi(cells[1]);
        t.repetition = std::stoi(cells[2]);
        first = false;
      }
      TraceRecord rec;
      rec.generation = std::stoi(cells[3]);
      rec.best_objective = std::stoi(cells[4]);
      if (cells.size() > 5) rec.best_energy = std::stod(cells[5]);
      t.trace.records.push_back(rec);
    } catch (const std::exception&) {
      throw ParseError("trace line " + std::to_string(line_no) + " is not numeric");
    }
  }
  return t;
}

std::vector<ConvergencePoint> summarize(const std::vector<LabeledTrace>& traces) {
  std::map<std::pair<int, std::string>, std::vector<const RunTrace*>> groups;
  for (const auto& t : traces) groups[{t.scenario, t.solver}].push_back(&t.trace);

  std::vector<ConvergencePoint> out;
  for (const auto& [key, runs] : groups) {
    std::size_t length = 0;
    for (const auto* r : runs) length = std::max(length, r->records.size());
    for (std::size_t g = 0; g < length; ++g) {
      double sum = 0.0;
      int count = 0;
      int generation = static_cast<int>(g);
      for (const auto* r : runs) {
        if (r->records.empty()) continue;
        const auto& rec = g < r->records.size() ? r->records[g] : r->records.back();
        if (g < r->records.size()) generation = rec.generation;
        sum += rec.best_objective;
        ++count;
      }
      if (count == 0) continue;
      out.push_back({key.first, key.second, generation, sum / count, count});
    }
  }
  return out;
}

std::string convergence_csv(const std::vector<ConvergencePoint>& points) {
  std::string out = "scenario,solver,generation,mean_best_objective,runs\n";
  for (const auto& p : points) {
    out += std::to_string(p.scenario) + "," + p.solver + "," + std::to_string(p.generation) + "," +
           fmt_double(p.mean_best_objective, 6) + "," + std::to_string(p.runs) + "\n";
  }
  return out;
}

PlanOutput run_plan(const ExperimentPlan& plan) {
  plan.validate();
  PlanOutput output;
  for (const auto& sc : plan.scenarios) output.instances.push_back(scenario_instance(plan, sc));

  struct Job {
    std::size_t scenario_slot;
    SolverKind solver;
    int repetition;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < plan.scenarios.size(); ++s) {
    for (auto kind : plan.solvers) {
      for (int r = 0; r < plan.repetitions; ++r) jobs.push_back({s, kind, r});
    }
  }

  output.runs.resize(jobs.size());
  const auto execute = [&](std::size_t k) {
    const Job& job = jobs[k];
    const ScenarioSpec& sc = plan.scenarios[job.scenario_slot];
    RunRecord rec;
    rec.scenario = sc.id;
    rec.solver = job.solver;
    rec.repetition = job.repetition;
    rec.seed = run_seed(plan.master_seed, sc.id, job.repetition);
    SolverConfig cfg = plan.solver;
    cfg.variant = job.solver;
    cfg.rng_seed = rec.seed;
    const auto start = std::chrono::steady_clock::now();
    try {
      SolveResult res = solve(output.instances[job.scenario_slot], cfg);
      rec.solution = std::move(res.solution);
      rec.trace = std::move(res.trace);
      rec.feasible = certify(output.instances[job.scenario_slot], rec.solution);
      if (!rec.feasible) rec.error = "solution failed certification";
    } catch (const InfeasibleInstanceError& e) {
      rec.feasible = false;
      rec.error = e.what();
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    output.runs[k] = std::move(rec);
  };

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(plan.workers), jobs.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k) execute(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t k = next++; k < jobs.size(); k = next++) execute(k);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  output.rows = aggregate(plan, output.runs);

  if (!plan.output_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path root = plan.output_dir;
    std::error_code ec;
    fs::create_directories(root / "instances", ec);
    fs::create_directories(root / "solutions", ec);
    fs::create_directories(root / "traces", ec);
    if (ec) throw ParameterError("cannot create output directory " + root.string() + ": " + ec.message());
    for (std::size_t s = 0; s < plan.scenarios.size(); ++s) {
      save_instance(output.instances[s], root / "instances" / ("scenario_" + std::to_string(plan.scenarios[s].id) + ".json"));
    }
    for (std::size_t k = 0; k < output.runs.size(); ++k) {
      const auto& r = output.runs[k];
      const std::string stem = run_stem(r);
      if (r.feasible) {
        SolutionDocument doc{instance_fingerprint(output.instances[jobs[k].scenario_slot]),
                             std::string(to_string(r.solver)), r.solution};
        save_solution(doc, root / "solutions" / (stem + ".json"));
      }
      write_text(root / "traces" / (stem + ".csv"),
                 trace_csv({r.scenario, std::string(to_string(r.solver)), r.repetition, r.trace}));
    }
    write_text(root / "results.csv", results_csv(output.rows));
    write_text(root / "timing.csv", timing_csv(output.rows));
  }
  return output;
}

}  // namespace grassland
