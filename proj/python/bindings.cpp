#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>

#include "ffca/engine.hpp"
#include "ffca/floorfield.hpp"
#include "ffca/metrics_io.hpp"
#include "ffca/perception.hpp"
#include "ffca/scenario.hpp"
#include "ffca/transition.hpp"

namespace py = pybind11;
using namespace ffca;

namespace {

template <typename T>
py::array_t<T> to_array(const Matrix<T>& m) {
  py::array_t<T> out({m.height(), m.width()});
  auto data = m.data();
  std::copy(data.begin(), data.end(), out.mutable_data());
  return out;
}

Occupancy to_occupancy(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw py::value_error("occupancy must be a 2-D array");
  Occupancy m(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)), 0);
  std::transform(a.data(), a.data() + a.size(), m.data().begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v != 0); });
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Floor-field cellular automaton evacuation simulator (C++ core)";

  py::class_<Cell>(m, "Cell")
      .def(py::init<int, int>(), py::arg("row"), py::arg("col"))
      .def(py::init([](const py::tuple& t) {
        if (t.size() != 2) throw py::value_error("Cell expects (row, col)");
        return Cell{t[0].cast<int>(), t[1].cast<int>()};
      }))
      .def_readwrite("row", &Cell::row)
      .def_readwrite("col", &Cell::col)
      .def("__eq__", [](const Cell& a, const Cell& b) { return a == b; })
      .def("__hash__", [](const Cell& c) { return py::hash(py::make_tuple(c.row, c.col)); })
      .def("__iter__", [](const Cell& c) { return py::iter(py::make_tuple(c.row, c.col)); })
      .def("__repr__", [](const Cell& c) { return "Cell" + to_string(c); });
  py::implicitly_convertible<py::tuple, Cell>();

  py::enum_<Direction>(m, "Direction")
      .value("UP", Direction::Up)
      .value("RIGHT", Direction::Right)
      .value("DOWN", Direction::Down)
      .value("LEFT", Direction::Left);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("k_S", &ModelParams::k_sff)
      .def_readwrite("k_P", &ModelParams::k_people)
      .def_readwrite("k_W", &ModelParams::k_wall)
      .def_readwrite("r", &ModelParams::visibility)
      .def_readwrite("mu", &ModelParams::friction)
      .def_readwrite("seed", &ModelParams::seed)
      .def_readwrite("max_steps", &ModelParams::max_steps)
      .def("set", [](ModelParams& p, const std::string& key, const std::string& value) {
        try {
          set_param(p, key, value);
        } catch (const std::invalid_argument& e) {
          throw py::value_error(e.what());
        }
      });

  py::class_<Grid>(m, "Grid")
      .def_property_readonly("height", &Grid::height)
      .def_property_readonly("width", &Grid::width)
      .def_property_readonly("walls", [](const Grid& g) { return to_array(g.walls()); })
      .def_property_readonly("exits", &Grid::exits)
      .def("is_wall", &Grid::is_wall)
      .def("is_exit", &Grid::is_exit);

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("grid", &Scenario::grid)
      .def_readwrite("agents", &Scenario::agents)
      .def_readwrite("params", &Scenario::params)
      .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

  py::register_exception<ScenarioParseError>(m, "ScenarioParseError", PyExc_ValueError);

  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); },
        py::arg("text"));
  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("serialize_scenario", &serialize_scenario, py::arg("scenario"));
  m.def(
      "validate",
      [](const Scenario& s, const StaticField& f) {
        std::vector<std::string> messages;
        for (const Violation& v : validate(s, f)) messages.push_back(v.message);
        return messages;
      },
      py::arg("scenario"), py::arg("field"), "Violation messages; empty when the scenario is valid.");

  py::class_<StaticField>(m, "StaticField")
      .def_property_readonly("values", [](const StaticField& f) { return to_array(f.values()); })
      .def("__getitem__", [](const StaticField& f, Cell c) { return f[c]; });
  m.def("compute_sff", &compute_sff, py::arg("grid"));
  m.def("delta_s", &delta_s, py::arg("field"), py::arg("cell"), py::arg("dir"));
  m.def("max_delta_s", &max_delta_s, py::arg("field"), py::arg("cell"));

  m.def("obstacle_distance", &obstacle_distance, py::arg("grid"), py::arg("cell"), py::arg("dir"),
        py::arg("radius"));
  m.def("kernel_phi", &kernel_phi, py::arg("z"));
  m.def(
      "density",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& occ, Cell cell,
         Direction dir, int r_star) {
        try {
          return density(to_occupancy(occ), cell, dir, r_star);
        } catch (const std::invalid_argument& e) {
          throw py::value_error(e.what());
        }
      },
      py::arg("occupancy"), py::arg("cell"), py::arg("dir"), py::arg("r_star"));

  m.def(
      "transition_distribution",
      [](const StaticField& field, const Grid& grid,
         const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& occ, Cell cell,
         const ModelParams& params) {
        const auto d = transition_distribution(field, grid, to_occupancy(occ), cell, params);
        return py::make_tuple(std::vector<double>(d.p.begin(), d.p.end()), d.norm_zero);
      },
      py::arg("field"), py::arg("grid"), py::arg("occupancy"), py::arg("cell"), py::arg("params"),
      "Returns ([p_up, p_right, p_down, p_left], norm_zero).");

  py::class_<SimulationResult>(m, "SimulationResult")
      .def_readonly("initial_agents", &SimulationResult::initial_agents)
      .def_readonly("steps_run", &SimulationResult::steps_run)
      .def_readonly("evac_time", &SimulationResult::evac_time)
      .def_property_readonly("complete", &SimulationResult::complete)
      .def_property_readonly("evac_curve",
                             [](const SimulationResult& r) {
                               py::list out;
                               for (const CurvePoint& p : r.evac_curve) {
                                 out.append(py::make_tuple(p.step, p.remaining, p.spread));
                               }
                               return out;
                             })
      .def_property_readonly("snapshots",
                             [](const SimulationResult& r) {
                               py::dict out;
                               for (const SnapshotRecord& s : r.snapshots) {
                                 out[py::int_(s.step)] = s.raster.ascii;
                               }
                               return out;
                             })
      .def("spread_at", &SimulationResult::spread_at);

  m.def(
      "run",
      [](const Scenario& scenario, std::optional<std::vector<std::int64_t>> snapshot_steps) {
        RunOptions options;
        if (snapshot_steps) options.snapshot_steps = *snapshot_steps;
        try {
          py::gil_scoped_release release;
          return run(scenario, options);
        } catch (const InvalidScenario& e) {
          throw py::value_error(e.what());
        }
      },
      py::arg("scenario"), py::arg("snapshot_steps") = py::none(),
      "Runs to completion or max_steps; raises ValueError for invalid scenarios.");

  m.attr("DEFAULT_SNAPSHOT_STEPS") = kDefaultSnapshotSteps;
  m.attr("__version__") = "0.1.0";
}
