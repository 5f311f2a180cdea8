// Thin numpy-facing layer over pksns_core. Arrays are (ny, nx), row = y.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pksns/norms.hpp"
#include "pksns/output.hpp"
#include "pksns/scenarios.hpp"
#include "pksns/semigroup.hpp"

namespace py = pybind11;
using namespace pksns;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// GridPtr holds a const Grid, which pybind11 holders do not accept
struct PyGrid {
  GridPtr g;
};

ScalarField to_field(const GridPtr& g, const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != g->ny() || a.shape(1) != g->nx())
    throw py::value_error("expected an array of shape (" + std::to_string(g->ny()) + ", " +
                          std::to_string(g->nx()) + ")");
  RealVec v(a.data(), a.data() + a.size());
  return ScalarField(g, std::move(v));
}

Array to_array(const ScalarField& f) {
  Array out({f.g().ny(), f.g().nx()});
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

ScenarioConfig config_from(const std::string& text) { return parse_config(text, "<python>"); }

py::dict series_columns(const DiagSeries& s) {
  std::vector<double> t, m, linf, minn, xn, xw, xdx, bd, orc;
  for (const auto& p : s.points()) {
    t.push_back(p.t);
    m.push_back(p.mass);
    linf.push_back(p.linf_n);
    minn.push_back(p.min_n);
    xn.push_back(p.x_norm_n_nonzero);
    xw.push_back(p.x_norm_omega_nonzero);
    xdx.push_back(p.x_norm_dxn);
    bd.push_back(p.boundary_mass_fraction);
    orc.push_back(p.mode_oracle_residual);
  }
  py::dict d;
  d["t"] = t;
  d["mass"] = m;
  d["linf_n"] = linf;
  d["min_n"] = minn;
  d["x_norm_n_nonzero"] = xn;
  d["x_norm_omega_nonzero"] = xw;
  d["x_norm_dxn"] = xdx;
  d["boundary_mass_fraction"] = bd;
  d["mode_oracle_residual"] = orc;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pksns, m) {
  m.doc() = "PKS-Navier-Stokes around Poiseuille flow: spectral solver bindings";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<PyGrid>(m, "Grid")
      .def(py::init([](int nx, int ny, double ly) {
             GridSpec s;
             s.nx = nx;
             s.ny = ny;
             s.ly = ly;
             try {
               return PyGrid{make_grid(s)};
             } catch (const std::invalid_argument& e) {
               throw py::value_error(e.what());
             }
           }),
           py::arg("nx"), py::arg("ny"), py::arg("ly"))
      .def_property_readonly("nx", [](const PyGrid& p) { return p.g->nx(); })
      .def_property_readonly("ny", [](const PyGrid& p) { return p.g->ny(); })
      .def_property_readonly("ly", [](const PyGrid& p) { return p.g->ly(); })
      .def_property_readonly("dx", [](const PyGrid& p) { return p.g->dx(); })
      .def_property_readonly("dy", [](const PyGrid& p) { return p.g->dy(); })
      .def("mesh", [](const PyGrid& p) {
        const GridPtr& g = p.g;
        auto x = to_array(ScalarField::from_function(g, [](double x, double) { return x; }));
        auto y = to_array(ScalarField::from_function(g, [](double, double y) { return y; }));
        return py::make_tuple(x, y);
      }, "Coordinate arrays (X, Y), each of shape (ny, nx).");

  m.def("lambda_A", &lambda_A, py::arg("a"));

  m.def("norm_x", [](const PyGrid& p, const Array& a) { return norm_x(to_field(p.g, a)); });
  m.def("norm_l2", [](const PyGrid& p, const Array& a) { return norm_l2(to_field(p.g, a)); });
  m.def("mass", [](const PyGrid& p, const Array& a) { return mass(to_field(p.g, a)); });
  m.def("project_zero", [](const PyGrid& p, const Array& a) { return to_array(project_zero(to_field(p.g, a))); });
  m.def("project_nonzero", [](const PyGrid& p, const Array& a) { return to_array(project_nonzero(to_field(p.g, a))); });

  m.def(
      "evolve_linear",
      [](const PyGrid& p, const Array& a, const std::string& op, double A, double horizon, bool diffusion) {
        LinearOptions o;
        o.a = A;
        o.horizon = horizon;
        o.diffusion = diffusion;
        LinearRun r;
        const ScalarField f = to_field(p.g, a);
        {
          py::gil_scoped_release nogil;
          r = evolve_linear(f, parse_operator(op), o);
        }
        return py::make_tuple(r.x_norm.t, r.x_norm.value);
      },
      py::arg("grid"), py::arg("f"), py::arg("op") = "L_tilde", py::arg("a") = 200.0, py::arg("horizon") = 0.0,
      py::arg("diffusion") = true, "Returns (t, |f(t)|_X).");

  m.def("envelope_check", [](const std::vector<double>& t, const std::vector<double>& v, double a) {
    NormSeries s{t, v};
    return to_py(to_json(envelope_check(s, a)));
  });

  m.def("dump_config", [](const std::string& text) { return dump_config(config_from(text)); });
  m.def("dry_run", [](const std::string& text) { return dry_run_report(config_from(text)); });

  m.def(
      "simulate",
      [](const std::string& text, const std::string& out_dir) {
        const ScenarioConfig cfg = config_from(text);
        SimulationResult r;
        {
          py::gil_scoped_release nogil;
          r = run_simulation(cfg, out_dir);
        }
        py::dict d;
        d["outcome"] = to_py(to_json(r.outcome));
        d["series"] = series_columns(r.series);
        d["n"] = to_array(to_physical(r.outcome.final_state.n));
        d["omega"] = to_array(to_physical(r.outcome.final_state.omega));
        return d;
      },
      py::arg("config"), py::arg("out_dir") = "");

  auto json_runner = [&m](const char* name, Json (*fn)(const ScenarioConfig&, int)) {
    m.def(
        name,
        [fn](const std::string& text, int threads) {
          const ScenarioConfig cfg = config_from(text);
          Json j;
          {
            py::gil_scoped_release nogil;
            j = fn(cfg, threads);
          }
          return to_py(j);
        },
        py::arg("config"), py::arg("threads") = 1);
  };
  json_runner("semigroup", &run_semigroup_scenario);
  json_runner("verify", &run_verify_scenario);

  m.def(
      "run",
      [](const std::string& text, const std::string& out_dir, int threads) {
        const ScenarioConfig cfg = config_from(text);
        py::gil_scoped_release nogil;
        return run_scenario(cfg, out_dir, threads);
      },
      py::arg("config"), py::arg("out_dir"), py::arg("threads") = 1, "Runs any scenario kind; returns the exit code.");
}
