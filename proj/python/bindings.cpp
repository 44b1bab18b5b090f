#include "eqtrack/verification.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace eqtrack;
using Eigen::Matrix3d;
using Eigen::Vector3d;

namespace {

py::dict records_to_arrays(const std::vector<SimRecord>& records) {
  const auto n = static_cast<py::ssize_t>(records.size());
  py::array_t<double> t(n), L(n), cfg(n), mom(n);
  py::array_t<double> RE({n, py::ssize_t{3}, py::ssize_t{3}});
  py::array_t<double> pE({n, py::ssize_t{3}}), tau({n, py::ssize_t{3}});
  auto t_ = t.mutable_unchecked<1>();
  auto L_ = L.mutable_unchecked<1>();
  auto c_ = cfg.mutable_unchecked<1>();
  auto m_ = mom.mutable_unchecked<1>();
  auto R_ = RE.mutable_unchecked<3>();
  auto p_ = pE.mutable_unchecked<2>();
  auto u_ = tau.mutable_unchecked<2>();
  for (py::ssize_t k = 0; k < n; ++k) {
    const SimRecord& r = records[static_cast<std::size_t>(k)];
    t_(k) = r.t;
    L_(k) = r.lyapunov;
    c_(k) = r.config_err;
    m_(k) = r.momentum_err;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) R_(k, i, j) = r.R_E(i, j);
      p_(k, i) = r.p_E(i);
      u_(k, i) = r.tau(i);
    }
  }
  py::dict out;
  out["t"] = t;
  out["lyapunov"] = L;
  out["config_err"] = cfg;
  out["momentum_err"] = mom;
  out["R_E"] = RE;
  out["p_E"] = pE;
  out["tau"] = tau;
  return out;
}

py::dict check_to_dict(const CheckResult& c) {
  py::dict d;
  d["name"] = c.name;
  d["residual"] = c.residual;
  d["threshold"] = c.threshold;
  d["samples"] = c.samples;
  d["passed"] = c.passed();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Equivariant trajectory tracking on matrix Lie groups";
  m.attr("__version__") = EQTRACK_VERSION;

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<StepError>(m, "StepError", PyExc_RuntimeError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

  m.def("hat", &hat, py::arg("v"));
  m.def("vee", &vee, py::arg("S"));
  m.def("rodrigues", &rodrigues, py::arg("w"));
  m.def("expm", &expm_pade13, py::arg("A"));
  m.def("nearest_rotation", &nearest_rotation, py::arg("A"));

  // Algebra and coalgebra elements are passed as coordinate vectors in the
  // orthonormal basis of the group description.
  py::class_<GroupDescription>(m, "Group")
      .def_static("so3", &GroupDescription::so3, py::return_value_policy::reference)
      .def_static("se3", &GroupDescription::se3, py::return_value_policy::reference)
      .def_static("special_orthogonal", &GroupDescription::special_orthogonal, py::arg("n"))
      .def_property_readonly("name", &GroupDescription::name)
      .def_property_readonly("dim_matrix", &GroupDescription::dim_matrix)
      .def_property_readonly("dim_algebra", &GroupDescription::dim_algebra)
      .def_property_readonly("basis", &GroupDescription::basis)
      .def("contains", &GroupDescription::contains, py::arg("A"))
      .def("exp", [](const GroupDescription& G, const Vector& u) { return G.exp({u}).mat; })
      .def("to_matrix", [](const GroupDescription& G, const Vector& u) { return G.to_matrix({u}); })
      .def("project", [](const GroupDescription& G, const Matrix& A) { return G.project(A).coords; })
      .def("adjoint", [](const GroupDescription& G, const Matrix& X, const Vector& u) {
        return G.adjoint(G.element(X), {u}).coords;
      })
      .def("co_adjoint", [](const GroupDescription& G, const Matrix& X, const Vector& p) {
        return G.co_adjoint(G.element(X), {p}).coords;
      })
      .def("ad", [](const GroupDescription& G, const Vector& u, const Vector& v) {
        return G.ad({u}, {v}).coords;
      })
      .def("co_ad", [](const GroupDescription& G, const Vector& u, const Vector& p) {
        return G.co_ad({u}, {p}).coords;
      })
      .def("sd_mul", [](const GroupDescription& G, const Matrix& Q1, const Vector& P1,
                        const Matrix& Q2, const Vector& P2) {
        const PhaseState r = sd_mul(G, {G.element(Q1), {P1}}, {G.element(Q2), {P2}});
        return py::make_tuple(r.Q.mat, r.P.coords);
      })
      .def("vector_field", [](const GroupDescription& G, const Matrix& Q, const Vector& P,
                              const Vector& U, const Vector& tau) {
        const PhaseVelocity v = vector_field(G, {G.element(Q), {P}}, {{U}, {tau}});
        return py::make_tuple(v.dQ, v.dP.coords);
      })
      .def("step", [](const GroupDescription& G, const Matrix& Q, const Vector& P,
                      const std::function<py::tuple(double, const Matrix&, const Vector&)>& inputs,
                      double t, double h) {
        const InputProvider provider = [&](double s, const PhaseState& x) {
          const py::tuple in = inputs(s, x.Q.mat, x.P.coords);
          return InputPair{{in[0].cast<Vector>()}, {in[1].cast<Vector>()}};
        };
        const PhaseState r = step(G, {G.element(Q), {P}}, provider, t, h);
        return py::make_tuple(r.Q.mat, r.P.coords);
      }, py::arg("Q"), py::arg("P"), py::arg("inputs"), py::arg("t"), py::arg("h"));

  py::class_<Gains>(m, "Gains")
      .def(py::init([](double k_p, double k_v) { return Gains{k_p, k_v}; }),
           py::arg("k_p") = 1.0, py::arg("k_v") = 1.0)
      .def_readwrite("k_p", &Gains::k_p)
      .def_readwrite("k_v", &Gains::k_v);

  auto so3m = m.def_submodule("so3", "Reduced attitude-tracking formulas on SO(3)");
  so3m.def("error", [](const Matrix3d& R, const Vector3d& p, const Matrix3d& Rd, const Vector3d& pd) {
    const so3::AttitudeError e = so3::error({R, p}, {Rd, pd});
    return py::make_tuple(e.R_E, e.p_E);
  }, py::arg("R"), py::arg("p"), py::arg("Rd"), py::arg("pd"));
  so3m.def("control", [](const Matrix3d& R_E, const Vector3d& p_E, const Matrix3d& Rd,
                         const Vector3d& Omega_d, const Matrix3d& inertia, const Gains& g) {
    return so3::control({R_E, p_E}, Rd, Omega_d, inertia, g);
  }, py::arg("R_E"), py::arg("p_E"), py::arg("Rd"), py::arg("Omega_d"), py::arg("inertia"),
     py::arg("gains"));
  so3m.def("recover_torque", [](const Vector3d& tau_tilde, const Matrix3d& Rd, const Vector3d& pd,
                                const Vector3d& Omega, const Vector3d& Omega_d,
                                const Vector3d& tau_d) {
    return so3::recover_torque(tau_tilde, {Rd, pd}, Omega, Omega_d, tau_d);
  });
  so3m.def("lyapunov", [](const Matrix3d& R_E, const Vector3d& p_E, const Matrix3d& Rd,
                          const Matrix3d& inertia, const Gains& g) {
    return so3::lyapunov({R_E, p_E}, Rd, inertia, g);
  });
  so3m.def("classify_equilibrium", [](const Matrix3d& R_E, const Vector3d& p_E, double tol) {
    return std::string(so3::to_string(so3::classify_equilibrium({R_E, p_E}, tol)));
  }, py::arg("R_E"), py::arg("p_E"), py::arg("tol") = so3::kDefaultEquilibriumTol);

  py::class_<Scenario>(m, "Scenario")
      .def_static("reference_example", &Scenario::reference_example)
      .def_readwrite("inertia", &Scenario::inertia)
      .def_readwrite("R0", &Scenario::R0)
      .def_readwrite("Omega0", &Scenario::Omega0)
      .def_readwrite("Rd0", &Scenario::Rd0)
      .def_readwrite("Omegad0", &Scenario::Omegad0)
      .def_readwrite("gains", &Scenario::gains)
      .def_readwrite("dt", &Scenario::dt)
      .def_readwrite("duration", &Scenario::duration)
      .def_readwrite("output_decimation", &Scenario::output_decimation)
      .def("validate", &Scenario::validate)
      .def_property_readonly("num_steps", &Scenario::num_steps);

  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def("parse_scenario", &parse_scenario, py::arg("json_text"));
  m.def("simulate", [](const Scenario& s) {
    std::vector<SimRecord> records;
    {
      py::gil_scoped_release release;
      records = run_simulation(s);
    }
    return records_to_arrays(records);
  }, py::arg("scenario"),
     "Run the closed loop; returns a dict of numpy arrays, one row per record.");

  m.def("suite_names", &suite_names);
  m.def("run_suite", [](const std::string& name, std::uint64_t seed) {
    SuiteReport r;
    {
      py::gil_scoped_release release;
      r = run_suite(name, seed);
    }
    py::list checks;
    for (const auto& c : r.checks) checks.append(check_to_dict(c));
    return checks;
  }, py::arg("name"), py::arg("seed") = kDefaultSeed);
}
