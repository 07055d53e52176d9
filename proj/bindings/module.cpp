#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "pmelab/barenblatt.hpp"
#include "pmelab/errors.hpp"
#include "pmelab/experiment.hpp"
#include "pmelab/exponents.hpp"
#include "pmelab/norms.hpp"
#include "pmelab/regularity.hpp"
#include "pmelab/scaling.hpp"
#include "pmelab/solver.hpp"
#include "pmelab/version.hpp"

namespace py = pybind11;
using namespace pmelab;
using nlohmann::json;

namespace {

// Copy one time slice out as a numpy array shaped (n,) or (n, n).
py::array_t<double> slice_array(const Field& f, int j) {
  const Grid& g = f.grid();
  const auto s = f.slice(j);
  if (g.d == 1) {
    py::array_t<double> out(static_cast<py::ssize_t>(g.n));
    std::copy(s.begin(), s.end(), out.mutable_data());
    return out;
  }
  py::array_t<double> out({static_cast<py::ssize_t>(g.n), static_cast<py::ssize_t>(g.n)});
  // storage is x-major within a row, rows stacked along y; numpy wants [iy, ix]
  auto r = out.mutable_unchecked<2>();
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) r(iy, ix) = s[static_cast<std::size_t>(ix + g.n * iy)];
  return out;
}

void set_slice(Field& f, int j, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  const Grid& g = f.grid();
  auto s = f.slice(j);
  if (g.d == 1) {
    if (a.ndim() != 1 || a.shape(0) != g.n)
      throw std::domain_error("set_slice: expected a length-n 1d array");
    std::copy(a.data(), a.data() + g.n, s.begin());
    return;
  }
  if (a.ndim() != 2 || a.shape(0) != g.n || a.shape(1) != g.n)
    throw std::domain_error("set_slice: expected an (n, n) array");
  auto r = a.unchecked<2>();
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) s[static_cast<std::size_t>(ix + g.n * iy)] = r(iy, ix);
}

Point as_point(const std::vector<double>& v, int d, const char* what) {
  if (static_cast<int>(v.size()) != d)
    throw std::domain_error(std::string(what) + ": expected " + std::to_string(d) +
                            " coordinates");
  Point p{0.0, 0.0};
  for (int k = 0; k < d; ++k) p[k] = v[k];
  return p;
}

json py_to_json(const py::object& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object json_to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "numerical laboratory for the inhomogeneous porous medium equation";
  mod.attr("__version__") = kVersion;
  mod.attr("inf") = kInf;

  py::register_exception<numerical_error>(mod, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<io_error>(mod, "IoError", PyExc_IOError);

  // ---- exponents ----
  mod.def("sigma_of", &sigma_of, py::arg("m"), py::arg("alpha"),
          "intrinsic time exponent 2 + (1 - m) alpha");
  mod.def(
      "barenblatt_exponents",
      [](double m, int d) {
        const auto e = barenblatt_exponents(m, d);
        return py::make_tuple(e.alpha, e.beta);
      },
      py::arg("m"), py::arg("d"), "self-similar decay and spread exponents (alpha, beta)");
  mod.def("source_transport_exponent", &source_transport_exponent, py::arg("p"), py::arg("q"),
          py::arg("m"), py::arg("d"), py::arg("alpha"));
  mod.def("admissible", &admissible, py::arg("p"), py::arg("q"), py::arg("m"), py::arg("d"),
          "integrability gate for the source norm");
  mod.def(
      "check_admissibility",
      [](double p, double q, double m, int d) {
        const auto r = check_admissibility(p, q, m, d);
        py::dict out;
        out["admissible"] = r.admissible;
        out["p_min"] = r.p_min;
        out["q_min"] = r.q_min;
        out["reason"] = r.reason;
        return out;
      },
      py::arg("p"), py::arg("q"), py::arg("m"), py::arg("d"));
  mod.def(
      "universal_rho_delta",
      [](double c, double alpha) {
        const auto u = universal_rho_delta(c, alpha);
        py::dict out;
        out["c"] = u.c_approx;
        out["alpha"] = u.alpha;
        out["rho"] = u.rho;
        out["delta"] = u.delta;
        out["eps"] = u.eps;
        return out;
      },
      py::arg("c"), py::arg("alpha"), "zoom radius and decrement for the oscillation cascade");

  // ---- grid and field ----
  py::class_<Grid>(mod, "Grid")
      .def(py::init([](int d, int n, double xlo, double xhi, double t0, double T, int slices) {
             if (!(xhi > xlo)) throw std::domain_error("Grid: xhi must exceed xlo");
             Grid g;
             g.d = d;
             g.n = n;
             g.xlo = {xlo, xlo};
             g.h = (xhi - xlo) / n;
             g.t0 = t0;
             g.T = T;
             g.slices = slices;
             g.validate();
             return g;
           }),
           py::arg("d"), py::arg("n"), py::arg("xlo"), py::arg("xhi"), py::arg("t0"),
           py::arg("T"), py::arg("slices"))
      .def_readonly("d", &Grid::d)
      .def_readonly("n", &Grid::n)
      .def_readonly("h", &Grid::h)
      .def_readonly("xlo", &Grid::xlo)
      .def_readonly("t0", &Grid::t0)
      .def_readonly("T", &Grid::T)
      .def_readonly("slices", &Grid::slices)
      .def_readwrite("dt", &Grid::dt)
      .def("extent", &Grid::extent)
      .def("cells", &Grid::cells)
      .def("__repr__", [](const Grid& g) {
        return "Grid(d=" + std::to_string(g.d) + ", n=" + std::to_string(g.n) + ", h=" +
               std::to_string(g.h) + ", slices=" + std::to_string(g.slices) + ")";
      });

  py::class_<Field>(mod, "Field")
      .def(py::init([](const Grid& g) {
             g.validate();
             return Field(g, linspace(g.t0, g.T, g.slices));
           }),
           py::arg("grid"))
      .def_property_readonly("grid", &Field::grid)
      .def_property_readonly("times", [](const Field& f) { return f.times(); })
      .def_property_readonly("slice_count", &Field::slice_count)
      .def("slice", &slice_array, py::arg("j"))
      .def("set_slice", &set_slice, py::arg("j"), py::arg("values"))
      .def(
          "interpolate",
          [](const Field& f, const std::vector<double>& x, double t) {
            return f.interpolate(as_point(x, f.grid().d, "interpolate"), t);
          },
          py::arg("x"), py::arg("t"))
      .def("max_abs", &Field::max_abs)
      .def("min_value", &Field::min_value)
      .def("max_value", &Field::max_value)
      .def("slice_mass", &Field::slice_mass, py::arg("j"))
      .def("__repr__", [](const Field& f) {
        return "Field(d=" + std::to_string(f.grid().d) + ", n=" + std::to_string(f.grid().n) +
               ", slices=" + std::to_string(f.slice_count()) + ")";
      });

  mod.def(
      "write_snapshot",
      [](const Field& f, double m, const std::string& path) { write_snapshot({f, m}, path); },
      py::arg("field"), py::arg("m"), py::arg("path"));
  mod.def(
      "read_snapshot",
      [](const std::string& path) {
        Snapshot s = read_snapshot(path);
        return py::make_tuple(std::move(s.field), s.m);
      },
      py::arg("path"), "returns (field, m)");

  // ---- exact solution ----
  py::class_<BarenblattSolution>(mod, "BarenblattSolution")
      .def(py::init<double, int, double>(), py::arg("m"), py::arg("d"), py::arg("M") = 1.0)
      .def_property_readonly("alpha", &BarenblattSolution::alpha)
      .def_property_readonly("beta", &BarenblattSolution::beta)
      .def_property_readonly("k", [](const BarenblattSolution& s) { return s.params().k; })
      .def("__call__",
           [](const BarenblattSolution& s, const std::vector<double>& x, double t) {
             return s(as_point(x, s.params().d, "BarenblattSolution"), t);
           })
      .def("radial", &BarenblattSolution::radial, py::arg("r"), py::arg("t"))
      .def("support_radius", &BarenblattSolution::support_radius, py::arg("t"))
      .def("mass", &BarenblattSolution::mass)
      .def("sample", &BarenblattSolution::sample, py::arg("grid"));

  mod.def("barenblatt_curvature", &barenblatt_curvature, py::arg("m"), py::arg("d"));

  // ---- norms ----
  mod.def(
      "lpq_norm",
      [](const Field& f, double p, double q, py::object center, double radius, double t_begin,
         double t_end) {
        Cylinder c = full_cylinder(f);
        if (!center.is_none())
          c.center = as_point(center.cast<std::vector<double>>(), f.grid().d, "lpq_norm center");
        if (radius > 0.0) c.radius = radius;
        if (t_end > t_begin) {
          c.t_begin = t_begin;
          c.t_end = t_end;
        }
        return lpq_norm(f, p, q, c);
      },
      py::arg("field"), py::arg("p"), py::arg("q"), py::arg("center") = py::none(),
      py::arg("radius") = -1.0, py::arg("t_begin") = 0.0, py::arg("t_end") = 0.0,
      "mixed norm over a ball in space and a window in time (defaults: inscribed, full range)");

  // ---- solver ----
  mod.def(
      "solve",
      [](const Grid& grid, double m, const std::function<double(std::vector<double>)>& initial,
         py::object source, const std::string& boundary, double cfl_safety) {
        PMEProblem prob;
        prob.m = m;
        const int d = grid.d;
        prob.initial = [initial, d](const Point& x) {
          return initial(std::vector<double>(x.begin(), x.begin() + d));
        };
        if (!source.is_none()) {
          auto fn = source.cast<std::function<double(std::vector<double>, double)>>();
          prob.source = [fn, d](const Point& x, double t) {
            return fn(std::vector<double>(x.begin(), x.begin() + d), t);
          };
        }
        if (boundary == "dirichlet0")
          prob.boundary = {BoundaryKind::DirichletZero, {}};
        else if (boundary == "periodic")
          prob.boundary = {BoundaryKind::Periodic, {}};
        else
          throw std::domain_error("solve: boundary must be dirichlet0 or periodic");
        SolveOptions opt;
        opt.cfl_safety = cfl_safety;
        SolveResult r = solve(prob, grid, opt);
        py::dict info;
        info["steps"] = r.steps;
        info["dt_min"] = r.dt_min;
        info["dt_max"] = r.dt_max;
        return py::make_tuple(std::move(r.field), info);
      },
      py::arg("grid"), py::arg("m"), py::arg("initial"), py::arg("source") = py::none(),
      py::arg("boundary") = "dirichlet0", py::arg("cfl_safety") = 0.4,
      "explicit scheme; initial takes x (list), source takes (x, t); returns (field, info)");

  // ---- scaling ----
  mod.def("gamma_of", &gamma_of, py::arg("a"), py::arg("b"), py::arg("m"));
  mod.def("rescaled_source_factor", &rescaled_source_factor, py::arg("a"), py::arg("b"),
          py::arg("m"));
  mod.def("norm_transport_factor", &norm_transport_factor, py::arg("a"), py::arg("b"),
          py::arg("m"), py::arg("p"), py::arg("q"), py::arg("d"));
  mod.def(
      "rescale_field",
      [](const Field& u, const std::vector<double>& x0, double t0, double a, double b, double m,
         int n_space, int n_slices) {
        ScalingParams s;
        s.x0 = as_point(x0, u.grid().d, "rescale_field x0");
        s.t0 = t0;
        s.a = a;
        s.b = b;
        s.m = m;
        return rescale_field(u, s, n_space, n_slices);
      },
      py::arg("field"), py::arg("x0"), py::arg("t0"), py::arg("a"), py::arg("b"), py::arg("m"),
      py::arg("n_space") = 0, py::arg("n_slices") = 0);
  mod.def(
      "normalize",
      [](const Field& u, const Field& f, double m, double eps, double p, double q) {
        NormalizeResult r = normalize(u, f, m, eps, p, q);
        py::dict info;
        info["K"] = r.K;
        info["a"] = r.a;
        return py::make_tuple(std::move(r.v), std::move(r.f_tilde), info);
      },
      py::arg("u"), py::arg("f"), py::arg("m"), py::arg("eps"), py::arg("p"), py::arg("q"),
      "flatten to the unit cylinder with sup |v| <= 1 and small source norm");

  // ---- regularity ----
  mod.def(
      "detect_zero_set",
      [](const Field& u, double tol) {
        const ZeroSet z = detect_zero_set(u, tol);
        py::list pts;
        for (const auto& p : z.points) {
          py::dict e;
          e["x"] = std::vector<double>(p.x.begin(), p.x.begin() + u.grid().d);
          e["t"] = p.t;
          e["value"] = p.value;
          pts.append(e);
        }
        py::dict out;
        out["points"] = pts;
        out["tol"] = z.tol;
        return out;
      },
      py::arg("field"), py::arg("tol") = -1.0);
  mod.def(
      "estimate_exponent",
      [](const Field& u, const std::vector<double>& x0, double t0,
         const std::vector<double>& radii, double sigma, bool two_sided_time) {
        const ExponentReport r =
            estimate_exponent(u, as_point(x0, u.grid().d, "estimate_exponent x0"), t0, radii,
                              sigma, two_sided_time);
        return json_to_py(to_json(r));
      },
      py::arg("field"), py::arg("x0"), py::arg("t0"), py::arg("radii"), py::arg("sigma") = 2.0,
      py::arg("two_sided_time") = true,
      "oscillation decay fits around a point; returns a plain dict");
  mod.def(
      "cascade_check",
      [](const Field& u, const std::vector<double>& x0, double t0, double rho, double alpha,
         double sigma, int n_levels, bool two_sided) {
        const CascadeReport r = cascade_check(u, as_point(x0, u.grid().d, "cascade_check x0"),
                                              t0, rho, alpha, sigma, n_levels, two_sided);
        return json_to_py(to_json(r));
      },
      py::arg("field"), py::arg("x0"), py::arg("t0"), py::arg("rho"), py::arg("alpha"),
      py::arg("sigma") = 2.0, py::arg("n_levels") = 4, py::arg("two_sided") = false);
  mod.def(
      "caloric_gap",
      [](const Field& u, double delta_target, const std::string& boundary, int oversample) {
        BoundaryKind kind = BoundaryKind::DirichletData;
        if (boundary == "periodic")
          kind = BoundaryKind::Periodic;
        else if (boundary == "dirichlet0")
          kind = BoundaryKind::DirichletZero;
        else if (boundary != "data")
          throw std::domain_error("caloric_gap: boundary must be data, dirichlet0 or periodic");
        const CaloricGapReport r = caloric_gap(u, delta_target, kind, oversample);
        py::dict out;
        out["gap"] = r.gap;
        out["delta_target"] = r.delta_target;
        out["within"] = r.within;
        return out;
      },
      py::arg("field"), py::arg("delta_target"), py::arg("boundary") = "data",
      py::arg("oversample") = 4,
      "sup distance to the matching caloric function on the interior subcylinder");

  // ---- experiment pipeline ----
  mod.def(
      "run_experiment",
      [](const py::dict& config) {
        const ExperimentConfig cfg = parse_experiment(py_to_json(config));
        return json_to_py(run_experiment(cfg));
      },
      py::arg("config"), "full pipeline from a config dict; returns the report as a dict");
  mod.def(
      "config_hash",
      [](const py::dict& config) { return config_hash_hex(py_to_json(config)); },
      py::arg("config"));
}
