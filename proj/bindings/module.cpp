#include <optional>
#include <stdexcept>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fcurp/bnb_backend.hpp"
#include "fcurp/errors.hpp"
#include "fcurp/heuristic.hpp"
#include "fcurp/instancegen.hpp"
#include "fcurp/json_io.hpp"
#include "fcurp/milp_model.hpp"
#include "fcurp/oracle.hpp"
#include "fcurp/render.hpp"
#include "fcurp/road.hpp"
#include "fcurp/routing_graph.hpp"
#include "fcurp/site_selection.hpp"
#include "fcurp/solve.hpp"
#include "fcurp/verify.hpp"

namespace py = pybind11;

namespace {

using namespace fcurp;

// Stage-one artifacts bundled with the instance they came from. Built once,
// then handed to any number of solvers.
struct Problem {
  Instance in;
  DiscretizedRoad road;
  SiteSelection sel;
  RoutingGraph g;
};

Problem build_problem(const Instance& in) {
  Problem p;
  p.in = in;
  p.road = discretize_road(in);
  p.sel = select_sites(p.road, in.targets);
  p.g = make_routing_graph(p.in, p.road, p.sel);
  return p;
}

FormulationKind kind_from_name(const std::string& name) {
  if (name == "node") return FormulationKind::Node;
  if (name == "edge") return FormulationKind::Edge;
  throw std::invalid_argument("formulation must be \"node\" or \"edge\"");
}

RouteSolution solve_milp(const Problem& p, const std::string& formulation, double time_limit,
                         double gap, const std::optional<RouteSolution>& warm) {
  FormulationKind kind = kind_from_name(formulation);
  MilpModel model = kind == FormulationKind::Node ? build_node_model(p.g, p.in.U, p.in.R)
                                                  : build_edge_model(p.g, p.in.U, p.in.R);
  BnbBackend backend;
  return solve_with_cuts(model, backend, time_limit, warm ? &*warm : nullptr, gap);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Route planning for a fuel-limited UAV refueled by a road-bound vehicle";

  py::register_exception<DisconnectedRoad>(m, "DisconnectedRoad", PyExc_ValueError);
  py::register_exception<UncoverableTarget>(m, "UncoverableTarget", PyExc_ValueError);
  py::register_exception<FrontierExhausted>(m, "FrontierExhausted", PyExc_ValueError);
  py::register_exception<TooLarge>(m, "TooLarge", PyExc_ValueError);
  py::register_exception<RepairFailure>(m, "RepairFailure", PyExc_RuntimeError);

  py::class_<Point>(m, "Point")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return Point{x, y}; }), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y)
      .def("__repr__",
           [](const Point& p) { return "Point(" + std::to_string(p.x) + ", " +
                                       std::to_string(p.y) + ")"; });

  py::class_<RoadNetwork>(m, "RoadNetwork")
      .def(py::init<>())
      .def_readwrite("polylines", &RoadNetwork::polylines);

  py::class_<Instance>(m, "Instance")
      .def(py::init<>())
      .def_readwrite("env_width", &Instance::env_width)
      .def_readwrite("env_height", &Instance::env_height)
      .def_readwrite("targets", &Instance::targets)
      .def_readwrite("road", &Instance::road)
      .def_readwrite("U", &Instance::U)
      .def_readwrite("R", &Instance::R)
      .def_readwrite("Vu", &Instance::Vu)
      .def_readwrite("Vr", &Instance::Vr)
      .def_readwrite("delta", &Instance::delta)
      .def_readwrite("s0_hint", &Instance::s0_hint)
      .def_readwrite("seed", &Instance::seed);

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("OPTIMAL", SolveStatus::Optimal)
      .value("FEASIBLE", SolveStatus::Feasible)
      .value("INFEASIBLE", SolveStatus::Infeasible)
      .value("TIMED_OUT", SolveStatus::TimedOut);

  py::class_<RouteSolution>(m, "RouteSolution")
      .def(py::init<>())
      .def_readwrite("uav_walk", &RouteSolution::uav_walk)
      .def_readwrite("rv_route", &RouteSolution::rv_route)
      .def_readwrite("fuel_profile", &RouteSolution::fuel_profile)
      .def_readwrite("cost", &RouteSolution::cost)
      .def_readwrite("bound", &RouteSolution::bound)
      .def_readwrite("status", &RouteSolution::status)
      .def_readwrite("producer", &RouteSolution::producer)
      .def_readwrite("wall_time_s", &RouteSolution::wall_time_s)
      .def_readwrite("cuts_added", &RouteSolution::cuts_added)
      .def("__repr__", [](const RouteSolution& s) {
        return "RouteSolution(status=" + to_string(s.status) +
               ", cost=" + std::to_string(s.cost) + ")";
      });

  py::class_<SiteSetFile>(m, "SiteSet")
      .def(py::init<>())
      .def_readwrite("sites", &SiteSetFile::sites)
      .def_readwrite("s0_index", &SiteSetFile::s0_index)
      .def_readwrite("order", &SiteSetFile::order);

  py::class_<Problem>(m, "Problem")
      .def_property_readonly("num_targets", [](const Problem& p) { return p.g.m; })
      .def_property_readonly("num_sites", [](const Problem& p) { return p.g.p; })
      .def_readonly("instance", &Problem::in)
      .def("site_set", [](const Problem& p) { return make_site_set(p.road, p.sel); },
           "Selected sites in selection order; index 0 is the mission start.")
      .def("__repr__", [](const Problem& p) {
        return "Problem(targets=" + std::to_string(p.g.m) + ", sites=" + std::to_string(p.g.p) +
               ")";
      });

  py::enum_<NetworkKind>(m, "NetworkKind")
      .value("DENSE", NetworkKind::Dense)
      .value("SPARSE", NetworkKind::Sparse);

  py::enum_<TargetMode>(m, "TargetMode")
      .value("UNIFORM", TargetMode::Uniform)
      .value("CENTERS", TargetMode::Centers);

  py::class_<GenConfig>(m, "GenConfig")
      .def(py::init<>())
      .def_readwrite("env_side", &GenConfig::env_side)
      .def_readwrite("grid_n", &GenConfig::grid_n)
      .def_readwrite("U", &GenConfig::U)
      .def_readwrite("R", &GenConfig::R)
      .def_readwrite("delta", &GenConfig::delta)
      .def_readwrite("network", &GenConfig::network)
      .def_readwrite("targets", &GenConfig::targets)
      .def_readwrite("instances_per_config", &GenConfig::instances_per_config)
      .def_readwrite("seed", &GenConfig::seed);

  m.def("generate", &generate, py::arg("config"), py::arg("index"),
        "Deterministic random instance; the same (config.seed, index) pair always "
        "reproduces the same instance.");
  m.def("road_network", &road_network, py::arg("kind"), py::arg("env_side"));

  m.def("parse_instance", &parse_instance_json, py::arg("text"));
  m.def("instance_to_json", &instance_to_json, py::arg("instance"));
  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"));

  m.def("parse_solution", &parse_solution_json, py::arg("text"));
  m.def("solution_to_json", &solution_to_json, py::arg("solution"));
  m.def("load_solution", &load_solution, py::arg("path"));
  m.def("save_solution", &save_solution, py::arg("solution"), py::arg("path"));

  m.def("build_problem", &build_problem, py::arg("instance"),
        py::call_guard<py::gil_scoped_release>(),
        "Discretize the road, select refueling sites, and build the routing graph. "
        "Raises UncoverableTarget or FrontierExhausted when no site set works.");

  m.def("solve_heuristic",
        [](const Problem& p) { return heuristic_solve(p.g, p.in.U, p.in.R); },
        py::arg("problem"), py::call_guard<py::gil_scoped_release>(),
        "Nearest-neighbor tour, 2-opt and Or-opt polish, then refueling repair.");

  m.def("solve_milp", &solve_milp, py::arg("problem"), py::arg("formulation") = "edge",
        py::arg("time_limit") = 7200.0, py::arg("gap") = 0.01,
        py::arg("warm") = std::nullopt, py::call_guard<py::gil_scoped_release>(),
        "Branch and cut with lazy subtour separation. formulation is \"node\" or "
        "\"edge\"; warm seeds the search with a known solution.");

  m.def("solve_oracle",
        [](const Problem& p, int max_targets, int max_sites) {
          OracleConfig cfg;
          cfg.max_targets = max_targets;
          cfg.max_sites = max_sites;
          return brute_force_opt(p.g, p.in.U, p.in.R, cfg);
        },
        py::arg("problem"), py::arg("max_targets") = 5, py::arg("max_sites") = 4,
        py::call_guard<py::gil_scoped_release>(),
        "Exhaustive ground truth for tiny instances; raises TooLarge beyond the caps.");

  m.def("verify",
        [](const Problem& p, const RouteSolution& sol) {
          return verify_solution(p.g, p.in.U, p.in.R, sol).violations;
        },
        py::arg("problem"), py::arg("solution"),
        "Independent feasibility re-check; returns the list of violations, empty when "
        "the solution is clean.");

  m.def("render_svg",
        [](const Problem& p, const std::optional<RouteSolution>& sol) {
          SiteSetFile sites = make_site_set(p.road, p.sel);
          return render_svg(p.in, &sites, sol ? &*sol : nullptr);
        },
        py::arg("problem"), py::arg("solution") = std::nullopt,
        "Deterministic SVG map of the instance, its selected sites, and optionally a "
        "solution's UAV and RV routes.");

  m.def("render_instance_svg", [](const Instance& in) { return render_svg(in); },
        py::arg("instance"));
}
