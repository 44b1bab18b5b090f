#include "eqtrack/so3.hpp"

#include <cmath>

namespace eqtrack::so3 {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

AttitudeError error(const AttitudeState& x, const AttitudeState& xd) {
  return {x.R * xd.R.transpose(), xd.R * (x.p - xd.p)};
}

ReducedControlErrors control_errors(const Vector3d& Omega,
                                    const Vector3d& Omega_d,
                                    const Vector3d& tau, const Vector3d& tau_d,
                                    const AttitudeState& xd) {
  const Vector3d Omega_tilde = xd.R * (Omega - Omega_d);
  return {Omega_tilde,
          xd.R * (tau - tau_d) - Omega_tilde.cross(xd.R * xd.p)};
}

ErrorRate error_dynamics(const AttitudeError& err, const Vector3d& Omega_tilde,
                         const Vector3d& tau_tilde) {
  return {err.R_E * hat(Omega_tilde), -Omega_tilde.cross(err.p_E) + tau_tilde};
}

Matrix3d inertia_error(const Matrix3d& Rd, const Matrix3d& inertia) {
  return Rd * inertia * Rd.transpose();
}

Vector3d control(const AttitudeError& err, const Matrix3d& Rd,
                 const Vector3d& Omega_d, const Matrix3d& inertia,
                 const Gains& gains) {
  const Vector3d Omega_tilde = Rd * inertia.ldlt().solve(Rd.transpose() * err.p_E);
  const Matrix3d skew = err.R_E - err.R_E.transpose();
  return -gains.k_v * Omega_tilde + (Rd * Omega_d).cross(err.p_E) -
         0.5 * gains.k_p * vee(skew);
}

Vector3d recover_torque(const Vector3d& tau_tilde, const AttitudeState& xd,
                        const Vector3d& Omega, const Vector3d& Omega_d,
                        const Vector3d& tau_d) {
  return tau_d + xd.R.transpose() * tau_tilde + (Omega - Omega_d).cross(xd.p);
}

double lyapunov(const AttitudeError& err, const Matrix3d& Rd,
                const Matrix3d& inertia, const Gains& gains) {
  const Vector3d Omega_tilde = Rd * inertia.ldlt().solve(Rd.transpose() * err.p_E);
  const double config = (err.R_E - Matrix3d::Identity()).squaredNorm();
  return 0.5 * err.p_E.dot(Omega_tilde) + 0.25 * gains.k_p * config;
}

Equilibrium classify_equilibrium(const AttitudeError& err, double tol) {
  if (err.p_E.norm() >= tol) return Equilibrium::NonEquilibrium;
  if ((err.R_E - Matrix3d::Identity()).norm() < tol) return Equilibrium::Identity;
  if (std::abs(err.R_E.trace() + 1.0) < tol) return Equilibrium::Antipodal;
  return Equilibrium::NonEquilibrium;
}

std::string_view to_string(Equilibrium e) {
  switch (e) {
    case Equilibrium::Identity:
      return "Identity";
    case Equilibrium::Antipodal:
      return "Antipodal";
    case Equilibrium::NonEquilibrium:
      return "NonEquilibrium";
  }
  return "?";
}

AlgebraVec to_algebra(const Vector3d& Omega) { return {kSqrt2 * Omega}; }

Vector3d from_algebra(const AlgebraVec& u) { return u.coords / kSqrt2; }

CoalgebraVec to_coalgebra(const Vector3d& p) { return {p / kSqrt2}; }

Vector3d from_coalgebra(const CoalgebraVec& p) { return kSqrt2 * p.coords; }

PhaseState to_phase(const AttitudeState& x) {
  return {GroupElement{x.R}, to_coalgebra(x.p)};
}

AttitudeState from_phase(const PhaseState& x) {
  return {x.Q.mat, from_coalgebra(x.P)};
}

InertiaOp to_inertia_op(const Matrix3d& inertia) {
  return InertiaOp(0.5 * inertia);
}

}  // namespace eqtrack::so3
