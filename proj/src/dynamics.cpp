#include "eqtrack/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace eqtrack {

PhaseVelocity vector_field(const GroupDescription& G, const PhaseState& x,
                           const InputPair& in) {
  return {x.Q.mat * G.to_matrix(in.U),
          {G.co_ad(in.U, x.P).coords + in.tau.coords}};
}

namespace {

PhaseState advance(const PhaseState& x, const PhaseVelocity& v, double a) {
  return {GroupElement{x.Q.mat + a * v.dQ}, {x.P.coords + a * v.dP.coords}};
}

std::vector<PhaseVelocity> evaluate(const GroupDescription& G,
                                    std::span<const PhaseState> xs,
                                    const CoupledInputProvider& inputs,
                                    double t) {
  const std::vector<InputPair> in = inputs(t, xs);
  if (in.size() != xs.size()) {
    throw PreconditionError("step: provider returned wrong number of inputs");
  }
  std::vector<PhaseVelocity> v;
  v.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    v.push_back(vector_field(G, xs[i], in[i]));
  }
  return v;
}

std::vector<PhaseState> advance_all(std::span<const PhaseState> xs,
                                    const std::vector<PhaseVelocity>& v,
                                    double a) {
  std::vector<PhaseState> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out.push_back(advance(xs[i], v[i], a));
  return out;
}

}  // namespace

std::vector<PhaseState> step(const GroupDescription& G,
                             std::span<const PhaseState> xs,
                             const CoupledInputProvider& inputs, double t,
                             double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw PreconditionError("step: step size must be positive");
  }
  const auto k1 = evaluate(G, xs, inputs, t);
  const auto x2 = advance_all(xs, k1, 0.5 * h);
  const auto k2 = evaluate(G, x2, inputs, t + 0.5 * h);
  const auto x3 = advance_all(xs, k2, 0.5 * h);
  const auto k3 = evaluate(G, x3, inputs, t + 0.5 * h);
  const auto x4 = advance_all(xs, k3, h);
  const auto k4 = evaluate(G, x4, inputs, t + h);

  std::vector<PhaseState> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Matrix Q = xs[i].Q.mat + (h / 6.0) * (k1[i].dQ + 2.0 * k2[i].dQ +
                                                 2.0 * k3[i].dQ + k4[i].dQ);
    const Vector P =
        xs[i].P.coords + (h / 6.0) * (k1[i].dP.coords + 2.0 * k2[i].dP.coords +
                                      2.0 * k3[i].dP.coords + k4[i].dP.coords);
    if (!P.allFinite()) throw StepError("step: non-finite momentum");
    GroupElement Qr = G.retract(Q);
    if (!G.contains(Qr.mat)) {
      std::ostringstream msg;
      msg << "step: retracted configuration off the group (distance "
          << G.distance(Qr.mat) << ")";
      throw StepError(msg.str());
    }
    out.push_back({std::move(Qr), {P}});
  }
  return out;
}

PhaseState step(const GroupDescription& G, const PhaseState& x,
                const InputProvider& inputs, double t, double h) {
  const CoupledInputProvider wrapped =
      [&inputs](double s, std::span<const PhaseState> xs) {
        return std::vector<InputPair>{inputs(s, xs[0])};
      };
  return step(G, std::span<const PhaseState>(&x, 1), wrapped, t, h)[0];
}

EquivarianceResidual equivariance_residual(const GroupDescription& G,
                                           const PhaseState& g,
                                           const PhaseState& x,
                                           const InputPair& in, double fd_h) {
  const PhaseVelocity fx = vector_field(G, x, in);
  const PhaseVelocity rhs = vector_field(G, phi(G, g, x), psi(G, g, in));

  // D phi_g(Q, P)[Q V, W] = (Q V X_Q, Ad*_{X_Q} W)
  const PhaseVelocity pushed{fx.dQ * g.Q.mat, G.co_adjoint(g.Q, fx.dP)};

  auto gap = [](const PhaseVelocity& a, const PhaseVelocity& b) {
    return std::sqrt((a.dQ - b.dQ).squaredNorm() +
                     (a.dP.coords - b.dP.coords).squaredNorm());
  };

  auto curve = [&](double s) {
    AlgebraVec su{s * in.U.coords};
    return PhaseState{G.compose(x.Q, G.exp(su)), {x.P.coords + s * fx.dP.coords}};
  };
  const PhaseState fwd = phi(G, g, curve(fd_h));
  const PhaseState bwd = phi(G, g, curve(-fd_h));
  const PhaseVelocity fd{(fwd.Q.mat - bwd.Q.mat) / (2.0 * fd_h),
                         {(fwd.P.coords - bwd.P.coords) / (2.0 * fd_h)}};

  return {gap(pushed, rhs), gap(fd, rhs)};
}

}  // namespace eqtrack
