#include "test_support.hpp"

#include <numbers>

using namespace eqtrack;
using namespace eqtrack::so3;
using eqtrack::testing::e;
using eqtrack::testing::max_abs;

TEST_CASE("coordinate identifications") {
  const Vector3d w(1, -2, 3);
  CHECK((from_algebra(to_algebra(w)) - w).norm() < 1e-15);
  CHECK((from_coalgebra(to_coalgebra(w)) - w).norm() < 1e-15);
  const auto& G = GroupDescription::so3();
  CHECK(max_abs(G.to_matrix(to_algebra(w)) - hat(w)) < 1e-15);
  // the pairing of p and Omega is the dot product
  const Vector3d p(0.5, 0.25, -1);
  CHECK(GroupDescription::pair(to_coalgebra(p), to_algebra(w)) == doctest::Approx(p.dot(w)));
  const Matrix3d I = Vector3d(1, 2, 3).asDiagonal();
  const InertiaOp op = to_inertia_op(I);
  CHECK((from_coalgebra(op.momentum(to_algebra(w))) - I * w).norm() < 1e-14);
  const AttitudeState x{rodrigues({0.1, 0.2, 0.3}), p};
  const AttitudeState y = from_phase(to_phase(x));
  CHECK(max_abs(y.R - x.R) == 0.0);
  CHECK((y.p - x.p).norm() < 1e-15);
}

TEST_CASE("reduced tracking error and control errors") {
  const AttitudeState x{rodrigues({0.3, -0.1, 0.7}), {1, 2, 3}};
  const AttitudeError self = error(x, x);
  CHECK(max_abs(self.R_E - Matrix3d::Identity()) < 1e-15);
  CHECK(self.p_E.norm() == 0.0);
  const AttitudeError at_id = error(x, {Matrix3d::Identity(), Vector3d::Zero()});
  CHECK(max_abs(at_id.R_E - x.R) == 0.0);
  CHECK((at_id.p_E - x.p).norm() == 0.0);
  const ReducedControlErrors ce = control_errors({1, 0, 0}, {1, 0, 0}, {0, 1, 0},
                                                 {0, 1, 0}, x);
  CHECK(ce.Omega_tilde.norm() == 0.0);
  CHECK(ce.tau_tilde.norm() == 0.0);
}

TEST_CASE("reduced control law examples") {
  const Matrix3d Rd = rodrigues({0.2, 0.4, -0.3});
  const Matrix3d I = Vector3d(0.4, 0.6, 0.8).asDiagonal();
  const Vector3d Omega_d(0.3, 0.1, -0.2);
  const Gains gains{1.7, 0.9};
  CHECK(control({Matrix3d::Identity(), Vector3d::Zero()}, Rd, Omega_d, I, gains).norm() == 0.0);
  for (double theta : {0.1, 0.7, 1.5, 2.5, 3.0}) {
    const Vector3d a = Vector3d(0.8, 0.6, 0.0);
    const Vector3d tau = control({rodrigues(theta * a), Vector3d::Zero()}, Rd, Omega_d, I, gains);
    CHECK((tau + gains.k_p * std::sin(theta) * a).norm() < 1e-14);
  }
  const Vector3d tau_pi =
      control({rodrigues(std::numbers::pi * e(2)), Vector3d::Zero()}, Rd, Omega_d, I, gains);
  CHECK(tau_pi.norm() < 1e-14);
  // pure momentum error: -k_v Omega_tilde + (Rd Omega_d) x p_E
  const Vector3d pE(0.1, -0.3, 0.2);
  const Vector3d Om_t = Rd * I.inverse() * Rd.transpose() * pE;
  const Vector3d tau_p = control({Matrix3d::Identity(), pE}, Rd, Omega_d, I, gains);
  CHECK((tau_p - (-gains.k_v * Om_t + (Rd * Omega_d).cross(pE))).norm() < 1e-14);
}

TEST_CASE("torque recovery") {
  const AttitudeState xd{rodrigues({0.5, 0.1, 0.2}), {0.2, 0.1, 0.3}};
  const Vector3d Omega(0.4, -0.2, 0.1), Omega_d(0.1, 0.1, 0.1), tau_d(1, 2, 3);
  CHECK((recover_torque(Vector3d::Zero(), xd, Omega_d, Omega_d, tau_d) - tau_d).norm() == 0.0);
  const AttitudeState at_id{Matrix3d::Identity(), xd.p};
  const Vector3d tt(0.5, -0.5, 0.25);
  CHECK((recover_torque(tt, at_id, Omega_d, Omega_d, tau_d) - (tau_d + tt)).norm() < 1e-15);
  const Vector3d tau = recover_torque(tt, xd, Omega, Omega_d, tau_d);
  CHECK((control_errors(Omega, Omega_d, tau, tau_d, xd).tau_tilde - tt).norm() < 1e-14);
}

TEST_CASE("reduced Lyapunov function and equilibria") {
  const Matrix3d I = Vector3d(0.4, 0.6, 0.8).asDiagonal();
  const Gains gains{1.0, 0.5};
  const AttitudeError antipode{rodrigues(std::numbers::pi * Vector3d(0.8, 0.6, 0)),
                               Vector3d::Zero()};
  CHECK((antipode.R_E - Matrix3d::Identity()).squaredNorm() ==
        doctest::Approx(8.0).epsilon(1e-14));
  CHECK(lyapunov(antipode, Matrix3d::Identity(), I, gains) == doctest::Approx(2.0));
  CHECK(lyapunov({Matrix3d::Identity(), Vector3d::Zero()}, Matrix3d::Identity(), I, gains) == 0.0);

  CHECK(classify_equilibrium({Matrix3d::Identity(), Vector3d::Zero()}) == Equilibrium::Identity);
  CHECK(classify_equilibrium({Vector3d(1, -1, -1).asDiagonal(), Vector3d::Zero()}) ==
        Equilibrium::Antipodal);
  CHECK(classify_equilibrium(antipode) == Equilibrium::Antipodal);
  CHECK(classify_equilibrium({rodrigues(0.3 * e(0)), Vector3d::Zero()}) ==
        Equilibrium::NonEquilibrium);
  CHECK(classify_equilibrium({Matrix3d::Identity(), Vector3d(0, 0.1, 0)}) ==
        Equilibrium::NonEquilibrium);
  CHECK(classify_equilibrium({rodrigues(1e-4 * e(1)), Vector3d(1e-4, 0, 0)}) ==
        Equilibrium::Identity);
  CHECK(classify_equilibrium({rodrigues(1e-4 * e(1)), Vector3d::Zero()}, 1e-6) ==
        Equilibrium::NonEquilibrium);
  CHECK(to_string(Equilibrium::Antipodal) == "Antipodal");
  CHECK(to_string(Equilibrium::Identity) == "Identity");
  CHECK(to_string(Equilibrium::NonEquilibrium) == "NonEquilibrium");
}

TEST_CASE("configuration term near the antipode") {
  // along R(s) = exp((pi - s) hat(a)) the term 4 + 4 cos(s) = 8 - 2 s^2 + O(s^4)
  const Vector3d a = Vector3d(1, 2, 2).normalized();
  for (double s : {0.01, 0.02, 0.05}) {
    const Matrix3d R = rodrigues((std::numbers::pi - s) * a);
    const double c = (R - Matrix3d::Identity()).squaredNorm();
    CHECK(c == doctest::Approx(4 + 4 * std::cos(s)).epsilon(1e-13));
    CHECK(std::abs(c - (8 - 2 * s * s)) <= s * s * s);
  }
}

TEST_CASE("reduced error dynamics match the generic vector field") {
  const auto& G = GroupDescription::so3();
  RandomSampler rs(G, 41);
  for (int k = 0; k < 50; ++k) {
    const AttitudeError err{rs.element().mat, rs.gaussian(3)};
    const Vector3d Om = rs.gaussian(3), tau = rs.gaussian(3);
    const ErrorRate r = error_dynamics(err, Om, tau);
    const PhaseVelocity v = error_vector_field(
        G, {GroupElement{err.R_E}, to_coalgebra(err.p_E)}, {to_algebra(Om), to_coalgebra(tau)});
    CHECK(max_abs(r.dR_E - v.dQ) < 1e-13);
    CHECK((r.dp_E - from_coalgebra(v.dP)).norm() < 1e-13);
  }
}
