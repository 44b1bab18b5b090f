#pragma once

// Equivariant tracking error, its dynamics, the inertia error operator,
// error energy, control law and Lyapunov function.

#include "eqtrack/dynamics.hpp"

namespace eqtrack {

/// e = phi((Q_d, P_d)^{-1}, (Q, P)).
struct ErrorState {
  GroupElement Q_E;
  CoalgebraVec P_E;

  PhaseState as_phase() const { return {Q_E, P_E}; }
};

struct ControlErrors {
  AlgebraVec U_tilde;
  CoalgebraVec tau_tilde;
};

/// Symmetric positive-definite map from the algebra to its dual.
class InertiaOp {
 public:
  /// Throws PreconditionError unless I is symmetric (1e-12) and positive
  /// definite.
  explicit InertiaOp(Matrix I);

  const Matrix& matrix() const { return I_; }
  const Matrix& inverse() const { return I_inv_; }
  int dim() const { return static_cast<int>(I_.rows()); }

  CoalgebraVec momentum(const AlgebraVec& u) const { return {I_ * u.coords}; }
  AlgebraVec velocity(const CoalgebraVec& p) const { return {I_inv_ * p.coords}; }

 private:
  Matrix I_;
  Matrix I_inv_;
};

struct Gains {
  double k_p = 1.0;
  double k_v = 1.0;
};

/// Throws PreconditionError unless both gains are strictly positive.
void validate(const Gains& g);

/// The inertia in the frame of the reference, Ad*_{Qd^-1} I Ad_{Qd^-1}, with
/// its inverse obtained by conjugating I^{-1}.
struct InertiaError {
  Matrix bar;
  Matrix bar_inv;
};

ErrorState tracking_error(const GroupDescription& G, const PhaseState& x,
                          const PhaseState& xd);

/// psi((Q_d, P_d)^{-1}, (U - U_d, tau - tau_d)).
ControlErrors control_errors(const GroupDescription& G, const InputPair& in,
                             const InputPair& ind, const PhaseState& xd);

/// Q_E' = Q_E U~, P_E' = ad*_{U~} P_E + tau~.
PhaseVelocity error_vector_field(const GroupDescription& G, const ErrorState& e,
                                 const ControlErrors& ce);

InertiaError inertia_error(const GroupDescription& G, const InertiaOp& I,
                           const GroupElement& Qd);

/// d/dt of the inverse inertia error along Q_d' = Q_d U_d:
/// ad_w Ibar^{-1} + Ibar^{-1} ad*_w with w = Ad_{Q_d} U_d.
Matrix inertia_error_inv_derivative(const GroupDescription& G,
                                    const InertiaOp& I, const GroupElement& Qd,
                                    const AlgebraVec& Ud);

/// 1/2 P_E(Ibar^{-1} P_E). Throws PreconditionError if Ibar is not SPD.
double error_energy(const ErrorState& e, const Matrix& Ibar);

/// Closed-form rate of the error energy when U~ = Ibar^{-1} P_E:
/// tau~(Ibar^{-1} P_E) + (ad*_w P_E)(Ibar^{-1} P_E).
double error_energy_rate(const GroupDescription& G, const ErrorState& e,
                         const InertiaError& Ibar, const CoalgebraVec& tau_tilde,
                         const GroupElement& Qd, const AlgebraVec& Ud);

/// tau~ = -k_v K(U~) - ad*_{Ad_{Qd} Ud} P_E - k_p K(P_g(Q_E^T (Q_E - I))),
/// with U~ = Ibar^{-1} P_E. K is the identity in orthonormal coordinates.
CoalgebraVec control_law(const GroupDescription& G, const ErrorState& e,
                         const InertiaError& Ibar, const PhaseState& xd,
                         const AlgebraVec& Ud, const Gains& gains);

/// <Q_E - I, Q_E - I>_F.
double configuration_error(const GroupElement& Q_E);

/// 1/2 P_E(Ibar^{-1} P_E) + k_p/2 <Q_E - I, Q_E - I>_F.
double lyapunov(const ErrorState& e, const InertiaError& Ibar, const Gains& gains);

/// Rate of the Lyapunov function under control_law: -k_v ||U~||_F^2.
double lyapunov_rate(const ErrorState& e, const InertiaError& Ibar,
                     const Gains& gains);

}  // namespace eqtrack
