#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "strap/bench.hpp"
#include "strap/io.hpp"
#include "strap/local_solver.hpp"
#include "strap/refine.hpp"
#include "strap/render.hpp"
#include "strap/search.hpp"

namespace py = pybind11;
using namespace strap;

namespace {

py::dict stats_to_dict(const SearchStats& s) {
  py::dict d;
  d["iterations"] = s.iterations;
  d["expansions"] = s.expansions;
  d["goal_attempts"] = s.goal_attempts;
  d["attempts_succeeded"] = s.attempts_succeeded;
  d["nodes_created"] = s.nodes_created;
  d["queue_peak"] = s.queue_peak;
  d["best_cost_trace"] = s.best_cost_trace;
  d["terminated"] = s.terminated;
  return d;
}

}  // namespace

PYBIND11_MODULE(strap, m) {
  m.doc() = "Anytime tabletop rearrangement planning (STRAP core bindings)";

  py::register_exception<Error>(m, "StrapError");

  py::enum_<Embodiment>(m, "Embodiment")
      .value("STATIONARY", Embodiment::Stationary)
      .value("MOBILE", Embodiment::Mobile);

  py::enum_<Provenance>(m, "Provenance")
      .value("RAW", Provenance::Raw)
      .value("GOAL_ATTEMPTED", Provenance::GoalAttempted)
      .value("REFINED", Provenance::Refined);

  py::class_<Pose>(m, "Pose")
      .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
      .def_readwrite("x", &Pose::x)
      .def_readwrite("y", &Pose::y)
      .def("__repr__", [](const Pose& p) {
        return "Pose(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });

  py::class_<Workspace>(m, "Workspace")
      .def(py::init<double, double>(), py::arg("width"), py::arg("height"))
      .def_readwrite("width", &Workspace::width)
      .def_readwrite("height", &Workspace::height)
      .def("perimeter", &Workspace::perimeter);

  py::class_<Action>(m, "Action")
      .def(py::init<>())
      .def_readwrite("object", &Action::object)
      .def_readwrite("pick", &Action::pick)
      .def_readwrite("place", &Action::place);

  py::class_<Plan>(m, "Plan")
      .def(py::init<>())
      .def_readwrite("actions", &Plan::actions)
      .def_readwrite("total_cost", &Plan::total_cost)
      .def_readwrite("provenance", &Plan::provenance)
      .def("__len__", [](const Plan& p) { return p.actions.size(); });

  py::class_<Instance>(m, "Instance")
      .def_readonly("workspace", &Instance::workspace)
      .def_readonly("embodiment", &Instance::embodiment)
      .def_readonly("robot_start", &Instance::robot_start)
      .def("object_count", &Instance::object_count)
      .def("radius", &Instance::radius)
      .def("start_pose", [](const Instance& i, ObjectId id) { return i.start.of(id); })
      .def("goal_pose", [](const Instance& i, ObjectId id) { return i.goal.of(id); })
      .def("to_json", &instance_to_json)
      .def_static("from_json", &instance_from_json);

  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"));
  m.def(
      "load_plan",
      [](const std::string& path) { return load_plan(path, nullptr); },
      py::arg("path"));
  m.def("save_plan", &save_plan, py::arg("plan"), py::arg("instance_ref"), py::arg("path"));

  m.def(
      "generate_instance",
      [](int n, double density, double width, double height, Embodiment embodiment,
         std::uint64_t seed, double radius) {
        GeneratorConfig cfg;
        cfg.n_objects = n;
        cfg.density = density;
        cfg.workspace = {width, height};
        cfg.embodiment = embodiment;
        cfg.rng_seed = seed;
        cfg.radius = radius;
        return generate_instance(cfg);
      },
      py::arg("n"), py::arg("density") = 0.2, py::arg("width") = 10.0, py::arg("height") = 10.0,
      py::arg("embodiment") = Embodiment::Stationary, py::arg("seed") = 0,
      py::arg("radius") = 0.0);

  m.def(
      "plan",
      [](const Instance& inst, double mc, double timeout_s, std::uint64_t max_iterations,
         std::uint64_t seed, bool goal_attempting) {
        SearchConfig cfg;
        cfg.timeout_s = timeout_s;
        cfg.max_iterations = max_iterations;
        cfg.rng_seed = seed;
        cfg.goal_attempting = goal_attempting;
        CostModel cm{inst.embodiment, mc};
        PlanResult r = plan(inst, cm, cfg);
        return py::make_tuple(r.plan ? py::cast(*r.plan) : py::none(), stats_to_dict(r.stats));
      },
      py::arg("instance"), py::arg("mc") = 1.0, py::arg("timeout_s") = 300.0,
      py::arg("max_iterations") = 0, py::arg("seed") = 0, py::arg("goal_attempting") = true,
      "Run the anytime search; returns (plan or None, stats dict)");

  m.def(
      "solve_iterative",
      [](const Instance& inst, double mc, double timeout_s, std::uint64_t max_attempts,
         std::uint64_t seed) {
        SolverBudget budget;
        budget.rng_seed = seed;
        CostModel cm{inst.embodiment, mc};
        auto r = solve_iterative(inst, cm, timeout_s, max_attempts, budget);
        return r.plan ? py::cast(*r.plan) : py::none();
      },
      py::arg("instance"), py::arg("mc") = 1.0, py::arg("timeout_s") = 60.0,
      py::arg("max_attempts") = 0, py::arg("seed") = 0,
      "Feasible-solver baseline: best plan over repeated randomized solves");

  m.def(
      "refine_plan",
      [](const Plan& p, const Instance& inst, double mc, int samples, std::uint64_t seed) {
        CostModel cm{inst.embodiment, mc};
        return refine_plan(p, inst, cm, samples, seed);
      },
      py::arg("plan"), py::arg("instance"), py::arg("mc") = 1.0, py::arg("samples") = 50,
      py::arg("seed") = 0, "Relocate buffers to cut travel; never raises the cost");

  m.def(
      "validate_plan",
      [](const Plan& p, const Instance& inst) {
        const ValidationResult r = validate_plan(p, inst);
        return py::make_tuple(r.ok, r.failed_action, r.message);
      },
      py::arg("plan"), py::arg("instance"),
      "Replay check; returns (ok, failed_action_index, message)");

  m.def(
      "travel_cost",
      [](const Pose& a, const Pose& b, Embodiment e, const Workspace& w) {
        return travel_cost(a, b, e, w);
      },
      py::arg("a"), py::arg("b"), py::arg("embodiment"), py::arg("workspace"));

  m.def(
      "plan_cost",
      [](const Instance& inst, const Plan& p, double mc) {
        CostModel cm{inst.embodiment, mc};
        const CostBreakdown cb = g_cost(inst.robot_start, p.actions, cm, inst.workspace);
        return py::make_tuple(cb.travel, cb.manipulation, cb.total());
      },
      py::arg("instance"), py::arg("plan"), py::arg("mc") = 1.0,
      "Accumulated (travel, manipulation, total) cost of a plan");

  m.def(
      "render_svg",
      [](const Instance& inst, const Plan* p, double scale) {
        RenderSpec spec;
        spec.scale = scale;
        return render_svg(inst, p ? std::optional<Plan>(*p) : std::nullopt, spec);
      },
      py::arg("instance"), py::arg("plan") = nullptr, py::arg("scale") = 60.0);

  m.def(
      "brute_force_optimal",
      [](const Instance& inst, double mc, bool allow_buffers) {
        OracleConfig cfg;
        cfg.allow_buffers = allow_buffers;
        CostModel cm{inst.embodiment, mc};
        return brute_force_optimal(inst, cm, cfg);
      },
      py::arg("instance"), py::arg("mc") = 1.0, py::arg("allow_buffers") = false,
      "Exhaustive minimum cost for tiny instances");
}
