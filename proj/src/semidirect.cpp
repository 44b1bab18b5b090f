#include "eqtrack/semidirect.hpp"

#include <algorithm>

namespace eqtrack {

PhaseState sd_identity(const GroupDescription& G) {
  return {G.identity(), G.zero_coalgebra()};
}

PhaseState sd_mul(const GroupDescription& G, const PhaseState& a,
                  const PhaseState& b) {
  return {G.compose(a.Q, b.Q),
          {G.co_adjoint(b.Q, a.P).coords + b.P.coords}};
}

PhaseState sd_inv(const GroupDescription& G, const PhaseState& a) {
  const GroupElement Qinv = G.inverse(a.Q);
  return {Qinv, {-G.co_adjoint(Qinv, a.P).coords}};
}

PhaseState phi(const GroupDescription& G, const PhaseState& g,
               const PhaseState& x) {
  return sd_mul(G, x, g);
}

InputPair psi(const GroupDescription& G, const PhaseState& g,
              const InputPair& in) {
  const AlgebraVec U = G.adjoint(G.inverse(g.Q), in.U);
  const CoalgebraVec tau{G.co_adjoint(g.Q, in.tau).coords -
                         G.co_ad(U, g.P).coords};
  return {U, tau};
}

CoalgebraVec psi_invert_tau(const GroupDescription& G, const PhaseState& g,
                            const AlgebraVec& U_transformed,
                            const CoalgebraVec& tau_transformed) {
  // tau_t = Ad*_X tau - ad*_{U_t} P  =>  tau = Ad*_{X^{-1}} (tau_t + ad*_{U_t} P)
  const CoalgebraVec rhs{tau_transformed.coords +
                         G.co_ad(U_transformed, g.P).coords};
  return G.co_adjoint(G.inverse(g.Q), rhs);
}

double state_distance(const PhaseState& a, const PhaseState& b) {
  return std::max((a.Q.mat - b.Q.mat).cwiseAbs().maxCoeff(),
                  (a.P.coords - b.P.coords).cwiseAbs().maxCoeff());
}

double input_distance(const InputPair& a, const InputPair& b) {
  return std::max((a.U.coords - b.U.coords).cwiseAbs().maxCoeff(),
                  (a.tau.coords - b.tau.coords).cwiseAbs().maxCoeff());
}

}  // namespace eqtrack
