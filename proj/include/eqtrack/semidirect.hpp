#pragma once

// The semidirect product G x| g* on configuration-momentum pairs, its right
// action on the phase space and the companion action on inputs.

#include "eqtrack/lie_core.hpp"

namespace eqtrack {

/// Configuration and left-trivialised momentum.
struct PhaseState {
  GroupElement Q;
  CoalgebraVec P;
};

/// Velocity input U and force input tau.
struct InputPair {
  AlgebraVec U;
  CoalgebraVec tau;
};

PhaseState sd_identity(const GroupDescription& G);

/// (Q1, P1)(Q2, P2) = (Q1 Q2, Ad*_{Q2} P1 + P2).
PhaseState sd_mul(const GroupDescription& G, const PhaseState& a,
                  const PhaseState& b);

/// (Q, P)^{-1} = (Q^{-1}, -Ad*_{Q^{-1}} P).
PhaseState sd_inv(const GroupDescription& G, const PhaseState& a);

/// Right action on the phase space: phi(g, x) = x g.
PhaseState phi(const GroupDescription& G, const PhaseState& g,
               const PhaseState& x);

/// Input action for g = (X, P):
/// (U, tau) -> (Ad_{X^{-1}} U, Ad*_X tau - ad*_{Ad_{X^{-1}} U} P).
InputPair psi(const GroupDescription& G, const PhaseState& g,
              const InputPair& in);

/// Solve psi(g, (Ad_X U_t, tau)).tau == tau_t for tau.
CoalgebraVec psi_invert_tau(const GroupDescription& G, const PhaseState& g,
                            const AlgebraVec& U_transformed,
                            const CoalgebraVec& tau_transformed);

/// Max-abs distance between two states (matrix and momentum parts).
double state_distance(const PhaseState& a, const PhaseState& b);
double input_distance(const InputPair& a, const InputPair& b);

}  // namespace eqtrack
