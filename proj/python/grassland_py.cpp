#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "grassland/allocation.hpp"
#include "grassland/energy.hpp"
#include "grassland/errors.hpp"
#include "grassland/harness.hpp"
#include "grassland/instance.hpp"
#include "grassland/oracle.hpp"
#include "grassland/routing.hpp"
#include "grassland/solvers.hpp"

namespace py = pybind11;
using namespace grassland;

namespace {

Route as_route(const std::vector<int>& order) { return Route{order}; }

SolverConfig make_config(const std::string& solver, std::uint64_t seed, int gen_max, int pbil_iters, int pbil_pop,
                         double alpha, double theta, int neighborhood, int threads) {
  auto kind = parse_solver_kind(solver);
  if (!kind) throw ParameterError("unknown solver '" + solver + "'");
  SolverConfig cfg;
  cfg.variant = *kind;
  cfg.rng_seed = seed;
  cfg.gen_max = gen_max;
  cfg.pbil.iterations = pbil_iters;
  cfg.ils.iterations = pbil_iters;
  cfg.pbil.population = pbil_pop;
  cfg.pbil.learning_rate = alpha;
  cfg.pbil.elite_fraction = theta;
  cfg.neighborhood_size = neighborhood;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_grassland, m) {
  m.doc() = "UAV grassland restoration: energy model, route operators, PBIL allocation and solvers";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<InfeasibleInstanceError>(m, "InfeasibleInstanceError", PyExc_RuntimeError);
  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_RuntimeError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);

  py::class_<AreaSpec>(m, "AreaSpec")
      .def(py::init<>())
      .def_readwrite("id", &AreaSpec::id)
      .def_readwrite("x", &AreaSpec::x)
      .def_readwrite("y", &AreaSpec::y)
      .def_readwrite("degradation", &AreaSpec::degradation)
      .def_readwrite("capacity", &AreaSpec::capacity);

  py::class_<UavParams>(m, "UavParams")
      .def(py::init<>())
      .def_readwrite("frame_plus_battery_mass", &UavParams::frame_plus_battery_mass)
      .def_readwrite("gravity", &UavParams::gravity)
      .def_readwrite("air_density", &UavParams::air_density)
      .def_readwrite("blade_disc_area", &UavParams::blade_disc_area)
      .def_readwrite("rotor_count", &UavParams::rotor_count)
      .def_readwrite("energy_capacity", &UavParams::energy_capacity)
      .def_readwrite("seed_capacity", &UavParams::seed_capacity)
      .def_readwrite("photo_energy_per_unit", &UavParams::photo_energy_per_unit)
      .def_readwrite("seeding_energy_coeff", &UavParams::seeding_energy_coeff)
      .def_readwrite("seed_demand_exponent", &UavParams::seed_demand_exponent);

  py::class_<Instance>(m, "Instance")
      .def(py::init<>())
      .def_property(
          "base", [](const Instance& i) { return py::make_tuple(i.base.x, i.base.y); },
          [](Instance& i, std::pair<double, double> p) { i.base = {p.first, p.second}; })
      .def_readwrite("areas", &Instance::areas)
      .def_readwrite("uav", &Instance::uav)
      .def_readwrite("rng_seed", &Instance::rng_seed)
      .def("__len__", &Instance::size)
      .def("to_json", &instance_to_json)
      .def_static("from_json", &instance_from_json)
      .def("fingerprint", &instance_fingerprint)
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; });

  py::class_<Solution>(m, "Solution")
      .def(py::init<>())
      .def_readwrite("route", &Solution::route)
      .def_readwrite("sigma", &Solution::sigma)
      .def_readwrite("objective", &Solution::objective)
      .def_readwrite("energy_used", &Solution::energy_used)
      .def_readwrite("seed_used", &Solution::seed_used);

  m.def(
      "generate_instance",
      [](double side, int n_areas, std::uint64_t seed, int cap_min, int cap_max, int cap_step, double e_max) {
        GeneratorOptions opt;
        opt.side = side;
        opt.n_areas = n_areas;
        opt.seed = seed;
        opt.capacity = {cap_min, cap_max, cap_step};
        opt.e_max = e_max;
        return generate_instance(opt);
      },
      py::arg("side") = 500.0, py::arg("n_areas") = 15, py::arg("seed") = 0, py::arg("cap_min") = 10,
      py::arg("cap_max") = 35, py::arg("cap_step") = 5, py::arg("e_max") = 1.36e7);
  m.def("scenario_side", &scenario_side);
  m.def("scenario_energy_budget", &scenario_energy_budget);
  m.def("load_instance", &load_instance);
  m.def("save_instance", &save_instance);

  py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
      .def_readonly("seeding", &EnergyBreakdown::seeding)
      .def_readonly("photography", &EnergyBreakdown::photography)
      .def_readonly("flight", &EnergyBreakdown::flight)
      .def_readonly("total", &EnergyBreakdown::total);

  py::class_<Evaluation>(m, "Evaluation")
      .def_readonly("energy", &Evaluation::energy)
      .def_readonly("seed_used", &Evaluation::seed_used)
      .def_readonly("objective", &Evaluation::objective)
      .def_readonly("feasible", &Evaluation::feasible);

  m.def("seed_demand_per_unit", &seed_demand_per_unit, py::arg("degradation"), py::arg("exponent"));
  m.def("power", &power, py::arg("carried_mass"), py::arg("uav"));
  m.def(
      "evaluate",
      [](const Instance& inst, const std::vector<int>& route, const std::vector<int>& sigma) {
        return evaluate(inst, as_route(route), sigma);
      },
      py::arg("instance"), py::arg("route"), py::arg("sigma"));
  m.def(
      "leg_loads",
      [](const Instance& inst, const std::vector<int>& route, const std::vector<int>& sigma) {
        std::vector<double> out;
        for (const auto& leg : leg_loads(inst, as_route(route), sigma).legs) out.push_back(leg.carried_seed_mass);
        return out;
      },
      py::arg("instance"), py::arg("route"), py::arg("sigma"));

  m.def("greedy_initial_route", [](const Instance& inst) { return greedy_initial_route(inst).order; });
  m.def("two_opt", [](const std::vector<int>& r, std::size_t i, std::size_t j) { return two_opt(as_route(r), i, j).order; });
  m.def("or_opt", [](const std::vector<int>& r, std::size_t s, std::size_t len, std::size_t pos) {
    return or_opt(as_route(r), s, len, pos).order;
  });
  m.def("swap", [](const std::vector<int>& r, std::size_t i, std::size_t j) { return swap(as_route(r), i, j).order; });
  m.def("inversion", [](const std::vector<int>& r, std::size_t i, std::size_t j) {
    return inversion(as_route(r), i, j).order;
  });

  m.def(
      "repair",
      [](const Instance& inst, const std::vector<int>& route, std::vector<int> sigma) {
        return repair(inst, as_route(route), std::move(sigma));
      },
      py::arg("instance"), py::arg("route"), py::arg("sigma"));
  m.def(
      "mrels",
      [](const Instance& inst, const std::vector<int>& route, std::vector<int> sigma) {
        return mrels(inst, as_route(route), std::move(sigma));
      },
      py::arg("instance"), py::arg("route"), py::arg("sigma"));
  m.def(
      "pbil_optimize",
      [](const Instance& inst, const std::vector<int>& route, int population, int iterations, double alpha,
         double theta, std::uint64_t seed) {
        PbilConfig cfg{population, iterations, alpha, theta};
        Rng rng(seed);
        PbilResult r = pbil_optimize(inst, as_route(route), cfg, rng);
        return py::make_tuple(r.best.sigma, r.best.objective);
      },
      py::arg("instance"), py::arg("route"), py::arg("population") = 10, py::arg("iterations") = 80,
      py::arg("alpha") = 0.2, py::arg("theta") = 0.3, py::arg("seed") = 1);

  m.def(
      "solve",
      [](const Instance& inst, const std::string& solver, std::uint64_t seed, int gen_max, int pbil_iters,
         int pbil_pop, double alpha, double theta, int neighborhood, int threads) {
        const SolverConfig cfg =
            make_config(solver, seed, gen_max, pbil_iters, pbil_pop, alpha, theta, neighborhood, threads);
        SolveResult r;
        {
          py::gil_scoped_release release;
          r = grassland::solve(inst, cfg);
        }
        std::vector<int> trace;
        for (const auto& rec : r.trace.records) trace.push_back(rec.best_objective);
        return py::make_tuple(r.solution, trace);
      },
      py::arg("instance"), py::arg("solver") = "chapbilm", py::arg("seed") = 1, py::arg("gen_max") = 91,
      py::arg("pbil_iters") = 80, py::arg("pbil_pop") = 10, py::arg("alpha") = 0.2, py::arg("theta") = 0.3,
      py::arg("neighborhood") = 36, py::arg("threads") = 1);
  m.def("certify", &certify, py::arg("instance"), py::arg("solution"));

  m.def(
      "solve_exact",
      [](const Instance& inst, double max_states) {
        const OracleResult r = solve_exact(inst, {max_states});
        py::dict d;
        d["optimal_objective"] = r.optimal_objective;
        d["route"] = r.route.order;
        d["sigma"] = r.sigma;
        d["energy"] = r.energy;
        d["optimal_route_count"] = r.optimal_route_count;
        d["feasible"] = r.feasible;
        return d;
      },
      py::arg("instance"), py::arg("max_states") = 1.0e7);
}
