#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "hyperstab/boundary.hpp"
#include "hyperstab/config.hpp"
#include "hyperstab/error.hpp"
#include "hyperstab/experiments.hpp"
#include "hyperstab/lmi.hpp"
#include "hyperstab/monitor.hpp"
#include "hyperstab/smallmat.hpp"
#include "hyperstab/systems.hpp"

namespace py = pybind11;
using namespace hyperstab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const Matrix& m) {
  Array out({m.rows(), m.cols()});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j);
  return out;
}

Array to_array(const std::vector<double>& x) {
  Array out(static_cast<py::ssize_t>(x.size()));
  std::copy(x.begin(), x.end(), out.mutable_data());
  return out;
}

Matrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw Error(ErrorKind::InvalidInput, "expected a 2-d array");
  const auto v = a.unchecked<2>();
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v(i, j);
  return m;
}

SymMatrix to_sym(const Array& a) { return SymMatrix::from_matrix(to_matrix(a), 0.0); }

// Interior cells as an (ny, nx, n) array.
Array field(const GridState& s) {
  const Grid& g = s.grid();
  Array out({static_cast<std::size_t>(g.ny), static_cast<std::size_t>(g.nx), s.n()});
  auto v = out.mutable_unchecked<3>();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      for (std::size_t k = 0; k < s.n(); ++k) v(j, i, k) = s.at(i, j, k);
  return out;
}

py::dict result_dict(const ExperimentResult& r) {
  py::dict lyap, bound, fitted, worst, ok;
  for (std::size_t w = 0; w < r.names.size(); ++w) {
    const py::str name(r.names[w]);
    lyap[name] = to_array(r.lyapunov[w]);
    if (!r.boundary[w].empty()) bound[name] = to_array(r.boundary[w]);
    fitted[name] = r.fitted_rates[w];
    worst[name] = r.worst_ratio[w];
    ok[name] = static_cast<bool>(r.bound_ok[w]);
  }
  py::dict d;
  d["times"] = to_array(r.times);
  d["lyapunov"] = lyap;
  d["boundary"] = bound;
  d["state_norm_sq"] = to_array(r.state_norm_sq);
  d["control_u"] = to_array(r.control_u);
  d["fitted_rates"] = fitted;
  d["worst_ratio"] = worst;
  d["bound_ok"] = ok;
  d["rate"] = r.rate;
  d["slack"] = r.slack;
  d["steps"] = r.steps;
  d["final_state"] = field(r.final_state);
  return d;
}

py::dict verdict_dict(const LmiVerdict& v) {
  py::dict d;
  d["feasible"] = v.feasible;
  d["lambda_max"] = v.lambda_max;
  d["tolerance"] = v.tolerance;
  d["matrix"] = to_array(v.matrix.dense());
  return d;
}

SvWeightSet weight_set(const std::string& s) { return parse_weight_set(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Boundary feedback stabilization of 2D linear hyperbolic systems";

  py::register_exception<Error>(m, "HyperstabError", PyExc_RuntimeError);

  // ------------------------------------------------------------ parameters

  py::class_<SaintVenantParams>(m, "SaintVenantParams")
      .def(py::init<>())
      .def_readwrite("g", &SaintVenantParams::g)
      .def_readwrite("h_star", &SaintVenantParams::h_star)
      .def_readwrite("w_star", &SaintVenantParams::w_star)
      .def_readwrite("k", &SaintVenantParams::k_drag)
      .def_readwrite("l", &SaintVenantParams::l_coriolis)
      .def_readwrite("length", &SaintVenantParams::domain_l)
      .def("celerity", &SaintVenantParams::celerity)
      .def("validate", &SaintVenantParams::validate);

  py::class_<SvControlGains>(m, "SvControlGains")
      .def(py::init<>())
      .def_readwrite("alpha", &SvControlGains::alpha)
      .def_readwrite("beta", &SvControlGains::beta)
      .def_readwrite("gamma", &SvControlGains::gamma)
      .def_readwrite("epsilon", &SvControlGains::epsilon)
      .def_static("defaults", &SvControlGains::defaults)
      .def("validate", &SvControlGains::validate);

  py::class_<PotentialSpec>(m, "PotentialSpec")
      .def(py::init([](std::array<double, 2> grad, double c0, double decay_c, double chi) {
             PotentialSpec p{grad, c0, decay_c, chi};
             p.validate();
             return p;
           }),
           py::arg("m") = std::array<double, 2>{0.0, 0.0}, py::arg("c0") = 0.0,
           py::arg("decay_c") = 1.0, py::arg("chi") = 1.0)
      .def_readwrite("m", &PotentialSpec::m)
      .def_readwrite("c0", &PotentialSpec::c0)
      .def_readwrite("decay_c", &PotentialSpec::decay_c)
      .def_readwrite("chi", &PotentialSpec::chi);

  // ------------------------------------------------------------ systems

  py::class_<SystemSpec>(m, "SystemSpec")
      .def(py::init([](const Array& a1, const Array& a2, const Array& b) {
             SystemSpec s;
             s.a1 = to_sym(a1);
             s.a2 = to_sym(a2);
             s.b = to_matrix(b);
             s.n = s.a1.n();
             s.validate();
             return s;
           }),
           py::arg("a1"), py::arg("a2"), py::arg("b"))
      .def_property_readonly("n", [](const SystemSpec& s) { return s.n; })
      .def_property_readonly("a1", [](const SystemSpec& s) { return to_array(s.a1.dense()); })
      .def_property_readonly("a2", [](const SystemSpec& s) { return to_array(s.a2.dense()); })
      .def_property_readonly("b", [](const SystemSpec& s) { return to_array(s.b); })
      .def_readonly("labels", &SystemSpec::labels);

  m.def("saint_venant", &saint_venant, py::arg("params") = SaintVenantParams{});
  m.def("diagonal_system", [](double c_l) { return diagonal_example(c_l).to_system(); },
        py::arg("c_l") = 4.0);

  py::class_<SscSystem>(m, "SscSystem")
      .def_readonly("n", &SscSystem::n)
      .def_readonly("r", &SscSystem::r)
      .def_readonly("alpha", &SscSystem::alpha)
      .def("jacobian", [](const SscSystem& s, std::size_t k) { return to_array(s.jacobian(k)); });
  m.def("parse_ssc", [](const std::string& text) { return parse_ssc(text); }, py::arg("text"));
  m.def("load_ssc", &load_ssc, py::arg("path"));
  m.def("validate_ssc", [](const SscSystem& s) {
    const auto r = validate_ssc(s);
    py::dict d;
    d["ok"] = r.all_ok();
    d["failures"] = r.failures();
    d["drift_max_real"] = r.drift_max_real;
    d["dissipation_min"] = r.dissipation_min;
    d["max_asymmetry"] = r.max_asymmetry;
    return d;
  });
  m.def("ssc_to_symmetric", &ssc_to_symmetric);
  m.def("construct_potential", [](const SscSystem& s, double c) {
    const auto cp = construct_potential_from_ssc(s, c);
    py::dict d = verdict_dict(cp.verdict);
    d["k"] = cp.k;
    d["potential"] = cp.potential;
    d["system"] = cp.symmetric;
    return d;
  }, py::arg("ssc"), py::arg("c") = 1e-3);

  // ------------------------------------------------------------ linear algebra

  m.def("eigen_sym", [](const Array& a) {
    const auto e = eigen_sym(to_sym(a));
    return py::make_tuple(to_array(e.eigenvalues), to_array(e.eigenvectors));
  });
  m.def("classify_definiteness", [](const Array& a, std::optional<double> tol) {
    const SymMatrix s = to_sym(a);
    const auto d = tol ? classify_definiteness(s, *tol) : classify_definiteness(s);
    return py::make_tuple(std::string(to_string(d.classification)), d.lambda_min, d.lambda_max);
  }, py::arg("matrix"), py::arg("tol") = py::none());

  // ------------------------------------------------------------ LMI

  m.def("assemble_lmi", [](const SystemSpec& s, const PotentialSpec& p) {
    return to_array(assemble_lmi(s, p).dense());
  });
  m.def("check_feasibility", [](const SystemSpec& s, const PotentialSpec& p,
                                std::optional<double> tol) {
    return verdict_dict(tol ? check_feasibility(s, p, *tol) : check_feasibility(s, p));
  }, py::arg("system"), py::arg("potential"), py::arg("tol") = py::none());
  m.def("sv_max_decay_rate", &sv_max_decay_rate, py::arg("params") = SaintVenantParams{});
  m.def("sv_feasibility_conditions", &sv_feasibility_conditions, py::arg("params"), py::arg("m"),
        py::arg("chi"), py::arg("c"));
  m.def("diag_control_constant", &diag_control_constant, py::arg("c_l"));

  // ------------------------------------------------------------ experiments

  m.def("run_saint_venant",
        [](double dx, double t_end, double cfl, double rate, const std::string& weights,
           const SaintVenantParams& params, std::optional<SvControlGains> gains) {
          SvExperiment e;
          e.params = params;
          e.gains = gains;
          e.grid = {dx, 0, 0};
          e.t_end = t_end;
          e.cfl = cfl;
          e.rate = rate;
          e.weights = weight_set(weights);
          ExperimentResult r;
          {
            py::gil_scoped_release release;
            r = run_experiment(sv_setup(e));
          }
          return result_dict(r);
        },
        py::arg("dx") = 0.02, py::arg("t_end") = 3.0, py::arg("cfl") = 0.5,
        py::arg("rate") = 1.4, py::arg("weights") = "both",
        py::arg("params") = SaintVenantParams{}, py::arg("gains") = py::none());

  m.def("run_diagonal",
        [](int n, double t_end, double cfl, double c_l, std::optional<double> rate) {
          DiagExperiment e;
          e.grid = {0.0, n, n};
          e.t_end = t_end;
          e.cfl = cfl;
          e.c_l = c_l;
          e.rate = rate;
          ExperimentResult r;
          {
            py::gil_scoped_release release;
            r = run_experiment(diag_setup(e));
          }
          return result_dict(r);
        },
        py::arg("n") = 100, py::arg("t_end") = 3.0, py::arg("cfl") = 0.5, py::arg("c_l") = 4.0,
        py::arg("rate") = py::none());

  m.def("run_config", [](const std::string& text) {
    const RunConfig c = parse_run_config(text);
    return result_dict(run_experiment(make_setup(c)));
  }, py::arg("text"), "Run an experiment described by INI text.");

  m.def("advection_convergence", [](const std::vector<int>& nxs, double cfl, double t_end) {
    py::list rows;
    for (const auto& r : advection_convergence(nxs, cfl, t_end)) {
      py::dict d;
      d["nx"] = r.nx;
      d["dx"] = r.dx;
      d["l1_error"] = r.l1_error;
      d["order"] = r.order;
      rows.append(d);
    }
    return rows;
  }, py::arg("nxs"), py::arg("cfl") = 0.5, py::arg("t_end") = 0.5);

  m.def("fit_decay", [](std::vector<double> t, std::vector<double> v) {
    return fit_decay({std::move(t), std::move(v)});
  }, py::arg("times"), py::arg("values"));
  m.def("check_decay_bound",
        [](std::vector<double> t, std::vector<double> v, double rate, double slack, double t_min) {
          return check_decay_bound({std::move(t), std::move(v)}, rate, slack, t_min);
        },
        py::arg("times"), py::arg("values"), py::arg("rate"), py::arg("slack") = 1.05,
        py::arg("t_min") = 0.0);
}
