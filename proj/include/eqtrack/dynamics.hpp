#pragma once

// Extended Euler-Poincare vector field, a fixed-step integrator that keeps
// states on the group, and a numerical equivariance certificate.

#include "eqtrack/semidirect.hpp"

#include <functional>
#include <span>
#include <vector>

namespace eqtrack {

/// Tangent vector at (Q, P): dQ = Q U in ambient coordinates.
struct PhaseVelocity {
  Matrix dQ;
  CoalgebraVec dP;
};

/// (Q U, ad*_U P + tau).
PhaseVelocity vector_field(const GroupDescription& G, const PhaseState& x,
                           const InputPair& in);

/// Inputs as a function of time and the current (stage) state.
using InputProvider = std::function<InputPair(double t, const PhaseState& x)>;

/// Inputs for several states integrated together, e.g. a plant and the
/// reference it tracks. Returns one input pair per state.
using CoupledInputProvider = std::function<std::vector<InputPair>(
    double t, std::span<const PhaseState> xs)>;

/// One classical RK4 step of size h on the ambient coordinates of (Q, P)
/// followed by retraction of Q onto the group. Throws PreconditionError for
/// h <= 0 and StepError if retraction fails.
PhaseState step(const GroupDescription& G, const PhaseState& x,
                const InputProvider& inputs, double t, double h);

/// As above for a set of states whose inputs depend on one another. The
/// provider is evaluated at every RK4 stage.
std::vector<PhaseState> step(const GroupDescription& G,
                             std::span<const PhaseState> xs,
                             const CoupledInputProvider& inputs, double t,
                             double h);

struct EquivarianceResidual {
  double algebraic = 0.0;
  double finite_difference = 0.0;
  double max() const {
    return algebraic > finite_difference ? algebraic : finite_difference;
  }
};

/// || D phi_g(x)[f(x, in)] - f(phi(g, x), psi(g, in)) || evaluated with the
/// closed-form differential and with central differences (step fd_h) along
/// the curve s -> (Q exp(sU), P + s dP).
EquivarianceResidual equivariance_residual(const GroupDescription& G,
                                           const PhaseState& g,
                                           const PhaseState& x,
                                           const InputPair& in,
                                           double fd_h = 1e-4);

}  // namespace eqtrack
