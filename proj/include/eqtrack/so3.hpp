#pragma once

// Attitude tracking on SO(3) in reduced R^3 form. Momenta use the
// identification P(v^x) = p^T v, so Ad*_R p = R^T p and ad*_v p = -v x p.

#include "eqtrack/tracking.hpp"

#include <string_view>

namespace eqtrack::so3 {

using Eigen::Matrix3d;
using Eigen::Vector3d;

struct AttitudeState {
  Matrix3d R;
  Vector3d p;
};

struct AttitudeError {
  Matrix3d R_E;
  Vector3d p_E;
};

/// R_E = R R_d^T, p_E = R_d (p - p_d).
AttitudeError error(const AttitudeState& x, const AttitudeState& xd);

/// Omega~ = R_d (Omega - Omega_d),
/// tau~ = R_d (tau - tau_d) - Omega~ x R_d p_d.
struct ReducedControlErrors {
  Vector3d Omega_tilde;
  Vector3d tau_tilde;
};
ReducedControlErrors control_errors(const Vector3d& Omega,
                                    const Vector3d& Omega_d,
                                    const Vector3d& tau, const Vector3d& tau_d,
                                    const AttitudeState& xd);

/// R_E' = R_E Omega~^x, p_E' = -Omega~ x p_E + tau~.
struct ErrorRate {
  Matrix3d dR_E;
  Vector3d dp_E;
};
ErrorRate error_dynamics(const AttitudeError& err, const Vector3d& Omega_tilde,
                         const Vector3d& tau_tilde);

/// R_d I R_d^T.
Matrix3d inertia_error(const Matrix3d& Rd, const Matrix3d& inertia);

/// tau~ = -k_v Omega~ + (R_d Omega_d) x p_E - k_p/2 (R_E - R_E^T)^v
/// with Omega~ = (R_d I R_d^T)^{-1} p_E.
Vector3d control(const AttitudeError& err, const Matrix3d& Rd,
                 const Vector3d& Omega_d, const Matrix3d& inertia,
                 const Gains& gains);

/// Physical torque for a desired tau~:
/// tau = tau_d + R_d^T tau~ + (Omega - Omega_d) x p_d.
Vector3d recover_torque(const Vector3d& tau_tilde, const AttitudeState& xd,
                        const Vector3d& Omega, const Vector3d& Omega_d,
                        const Vector3d& tau_d);

/// 1/2 p_E . Omega~ + k_p/4 ||R_E - I||_F^2, the function dissipated by
/// control() with the same gains: its rate is -k_v |Omega~|^2.
double lyapunov(const AttitudeError& err, const Matrix3d& Rd,
                const Matrix3d& inertia, const Gains& gains);

enum class Equilibrium { Identity, Antipodal, NonEquilibrium };

inline constexpr double kDefaultEquilibriumTol = 1e-3;

Equilibrium classify_equilibrium(const AttitudeError& err,
                                 double tol = kDefaultEquilibriumTol);

std::string_view to_string(Equilibrium e);

// Conversions to the generic layer (basis hat(e_i)/sqrt(2)).
AlgebraVec to_algebra(const Vector3d& Omega);
Vector3d from_algebra(const AlgebraVec& u);
CoalgebraVec to_coalgebra(const Vector3d& p);
Vector3d from_coalgebra(const CoalgebraVec& p);
PhaseState to_phase(const AttitudeState& x);
AttitudeState from_phase(const PhaseState& x);
/// Generic inertia operator equivalent to the R^3 inertia matrix.
InertiaOp to_inertia_op(const Matrix3d& inertia);

}  // namespace eqtrack::so3
