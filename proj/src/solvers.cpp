#include "grassland/solvers.hpp"

#include <chrono>
#include <exception>
#include <functional>
#include <thread>

#include "grassland/energy.hpp"
#include "grassland/errors.hpp"
#include "grassland/routing.hpp"

namespace grassland {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::chapbilm: return "chapbilm";
    case SolverKind::chails: return "chails";
    case SolverKind::ha_pbilm: return "ha_pbilm";
    case SolverKind::ha_ils: return "ha_ils";
  }
  return "?";
}

std::optional<SolverKind> parse_solver_kind(std::string_view name) {
  std::string key(name);
  for (auto& c : key) {
    if (c == '-') c = '_';
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  for (SolverKind k : all_solver_kinds()) {
    if (key == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<SolverKind> all_solver_kinds() {
  return {SolverKind::chapbilm, SolverKind::chails, SolverKind::ha_pbilm, SolverKind::ha_ils};
}

void SolverConfig::validate() const {
  if (gen_max < 1) throw ParameterError("gen_max must be at least 1");
  if (neighborhood_size < 1) throw ParameterError("neighborhood size must be at least 1");
  if (light_iterations < 0) throw ParameterError("light iterations must be non-negative");
  if (threads < 1) throw ParameterError("threads must be at least 1");
  pbil.validate();
  ils.validate();
}

Solution make_solution(const Instance& instance, const Route& route, const Allocation& sigma) {
  const Evaluation ev = evaluate(instance, route, sigma);
  Solution s;
  s.route = route.order;
  s.sigma = sigma;
  s.objective = ev.objective;
  s.energy_used = ev.energy.total;
  s.seed_used = ev.seed_used;
  return s;
}

bool certify(const Instance& instance, const Solution& solution) {
  const Route route{solution.route};
  if (!is_permutation_of_ids(route, instance.size()) || solution.sigma.size() != instance.size()) return false;
  const Evaluation ev = evaluate(instance, route, solution.sigma);
  return ev.feasible && ev.objective == solution.objective && ev.energy.total <= instance.uav.energy_capacity &&
         ev.seed_used <= instance.uav.seed_capacity;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool ones_feasible(const Instance& instance, const Route& route) {
  return RouteEvaluator(instance, route).feasible(Allocation(instance.size(), 1));
}

// Greedy tour, or failing that a route found by minimising the all-ones
// energy with the same move operators.
Route feasible_start_route(const Instance& instance, const SolverConfig& config, Rng& rng) {
  Route route = greedy_initial_route(instance);
  if (ones_feasible(instance, route)) return route;
  const Allocation ones(instance.size(), 1);
  double best = RouteEvaluator(instance, route).evaluate(ones).energy.total;
  for (int gen = 0; gen < config.gen_max; ++gen) {
    for (auto& c : sample_neighborhood(route, config.neighborhood_size, rng)) {
      const double e = RouteEvaluator(instance, c).evaluate(ones).energy.total;
      if (e < best) {
        best = e;
        route = std::move(c);
      }
    }
    if (best <= instance.uav.energy_capacity && ones_feasible(instance, route)) return route;
  }
  throw InfeasibleInstanceError("no route admits the all-ones allocation within the energy budget");
}

struct Candidate {
  Route route;
  ScoredAllocation alloc;
  ProbabilityModel model;
  bool ok = false;
};

// Inner allocation solver for one route. `iterations` overrides the inner
// budget; `warm` optionally seeds a PBIL model.
using Allocator =
    std::function<Candidate(const Route&, Rng&, int iterations, const ProbabilityModel* warm)>;

Allocator pbil_allocator(const Instance& instance, const SolverConfig& config) {
  return [&instance, &config](const Route& route, Rng& rng, int iterations, const ProbabilityModel* warm) {
    Candidate c;
    c.route = route;
    const RouteEvaluator eval(instance, route);
    if (!eval.feasible(Allocation(instance.size(), 1))) return c;
    PbilConfig pc = config.pbil;
    pc.iterations = iterations;
    PbilResult r = pbil_optimize(eval, pc, rng, warm);
    c.alloc = std::move(r.best);
    c.model = std::move(r.model);
    c.ok = true;
    return c;
  };
}

Allocator ils_allocator(const Instance& instance, const SolverConfig& config) {
  return [&instance, &config](const Route& route, Rng& rng, int iterations, const ProbabilityModel*) {
    Candidate c;
    c.route = route;
    const RouteEvaluator eval(instance, route);
    if (!eval.feasible(Allocation(instance.size(), 1))) return c;
    IlsConfig ic = config.ils;
    ic.iterations = iterations;
    c.alloc = ils_optimize(eval, ic, rng).best;
    c.ok = true;
    return c;
  };
}

void run_candidates(const Allocator& allocate, const std::vector<Route>& routes, std::vector<Rng>& streams,
                    int iterations, const ProbabilityModel* warm, int threads, std::vector<Candidate>& out) {
  out.assign(routes.size(), Candidate{});
  const auto work = [&](std::size_t k) { out[k] = allocate(routes[k], streams[k], iterations, warm); };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), routes.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < routes.size(); ++k) work(k);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < routes.size(); k += workers) work(k);
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

int inner_iterations(const SolverConfig& config, bool use_ils) {
  return use_ils ? config.ils.iterations : config.pbil.iterations;
}

SolveResult cooperative(const Instance& instance, const SolverConfig& config, bool use_ils) {
  config.validate();
  validate(instance);
  const auto start = Clock::now();
  Rng rng(config.rng_seed);
  const Allocator allocate = use_ils ? ils_allocator(instance, config) : pbil_allocator(instance, config);
  const int full_budget = inner_iterations(config, use_ils);

  // Initial solution: greedy tour and the best of NP random repaired vectors.
  Candidate incumbent;
  incumbent.route = feasible_start_route(instance, config, rng);
  {
    const RouteEvaluator eval(instance, incumbent.route);
    bool have = false;
    for (int k = 0; k < config.pbil.population; ++k) {
      Allocation sigma(instance.size());
      for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = rng.uniform_int(1, instance.areas[i].capacity);
      ScoredAllocation s = score(eval, repair(eval, std::move(sigma)));
      if (!have || better_than(s, incumbent.alloc)) {
        incumbent.alloc = std::move(s);
        have = true;
      }
    }
    incumbent.model = ProbabilityModel::uniform(instance);
    incumbent.ok = true;
  }

  SolveResult result;
  result.trace.records.push_back({0, incumbent.alloc.objective, incumbent.alloc.energy, seconds_since(start)});

  std::vector<Candidate> results;
  for (int gen = 1; gen <= config.gen_max; ++gen) {
    const auto routes = sample_neighborhood(incumbent.route, config.neighborhood_size, rng);
    std::vector<Rng> streams;
    streams.reserve(routes.size());
    for (std::size_t k = 0; k < routes.size(); ++k) streams.push_back(rng.split());

    const int budget = config.light_iterations > 0 ? config.light_iterations : full_budget;
    const ProbabilityModel* warm = (config.warm_start && !use_ils) ? &incumbent.model : nullptr;
    run_candidates(allocate, routes, streams, budget, warm, config.threads, results);

    // Best-improvement over the sampled neighbourhood; ties keep the first.
    const Candidate* best = nullptr;
    for (const auto& c : results) {
      if (c.ok && (best == nullptr || better_than(c.alloc, best->alloc))) best = &c;
    }
    Rng polish_stream = rng.split();
    if (best != nullptr) {
      Candidate chosen = *best;
      if (config.light_iterations > 0) chosen = allocate(chosen.route, polish_stream, full_budget, warm);
      const RouteEvaluator eval(instance, chosen.route);
      chosen.alloc = score(eval, mrels(eval, std::move(chosen.alloc.sigma)));
      if (better_than(chosen.alloc, incumbent.alloc)) incumbent = std::move(chosen);
    }
    {
      const RouteEvaluator eval(instance, incumbent.route);
      incumbent.alloc = score(eval, mrels(eval, std::move(incumbent.alloc.sigma)));
    }
    result.trace.records.push_back({gen, incumbent.alloc.objective, incumbent.alloc.energy, seconds_since(start)});
  }

  result.solution = make_solution(instance, incumbent.route, incumbent.alloc.sigma);
  return result;
}

SolveResult noncooperative(const Instance& instance, const SolverConfig& config, bool use_ils) {
  config.validate();
  validate(instance);
  const auto start = Clock::now();
  Rng rng(config.rng_seed);

  Route route = shortest_route_search(instance, config.neighborhood_size, config.gen_max, rng);
  const RouteEvaluator eval(instance, route);
  if (!eval.feasible(Allocation(instance.size(), 1))) {
    throw InfeasibleInstanceError("the all-ones allocation exceeds the budgets on the shortest route");
  }

  SolveResult result;
  std::vector<int> history;
  ScoredAllocation best;
  if (use_ils) {
    IlsResult r = ils_optimize(eval, config.ils, rng);
    history = std::move(r.best_history);
    best = std::move(r.best);
  } else {
    PbilResult r = pbil_optimize(eval, config.pbil, rng);
    history = std::move(r.best_history);
    best = std::move(r.best);
  }
  best = score(eval, mrels(eval, std::move(best.sigma)));

  const double elapsed = seconds_since(start);
  for (std::size_t t = 0; t < history.size(); ++t) {
    result.trace.records.push_back({static_cast<int>(t), history[t], 0.0, elapsed});
  }
  result.trace.records.push_back({static_cast<int>(history.size()), best.objective, best.energy, elapsed});
  result.solution = make_solution(instance, route, best.sigma);
  return result;
}

}  // namespace

SolveResult chapbilm(const Instance& instance, const SolverConfig& config) {
  return cooperative(instance, config, false);
}

SolveResult chails(const Instance& instance, const SolverConfig& config) { return cooperative(instance, config, true); }

SolveResult ha_pbilm(const Instance& instance, const SolverConfig& config) {
  return noncooperative(instance, config, false);
}

SolveResult ha_ils(const Instance& instance, const SolverConfig& config) {
  return noncooperative(instance, config, true);
}

SolveResult solve(const Instance& instance, const SolverConfig& config) {
  switch (config.variant) {
    case SolverKind::chapbilm: return chapbilm(instance, config);
    case SolverKind::chails: return chails(instance, config);
    case SolverKind::ha_pbilm: return ha_pbilm(instance, config);
    case SolverKind::ha_ils: return ha_ils(instance, config);
  }
  throw ParameterError("unknown solver variant");
}

}  // namespace grassland
