#include "eqtrack/tracking.hpp"

namespace eqtrack {

InertiaOp::InertiaOp(Matrix I) : I_(std::move(I)) {
  if (I_.rows() != I_.cols() || I_.rows() == 0) {
    throw PreconditionError("InertiaOp: matrix must be square and non-empty");
  }
  if (!I_.allFinite() || (I_ - I_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw PreconditionError("InertiaOp: matrix is not symmetric");
  }
  Eigen::LLT<Matrix> llt(I_);
  if (llt.info() != Eigen::Success) {
    throw PreconditionError("InertiaOp: matrix is not positive definite");
  }
  I_inv_ = llt.solve(Matrix::Identity(I_.rows(), I_.cols()));
  I_inv_ = 0.5 * (I_inv_ + I_inv_.transpose()).eval();
}

void validate(const Gains& g) {
  if (!(g.k_p > 0.0) || !(g.k_v > 0.0)) {
    throw PreconditionError("Gains: k_p and k_v must be strictly positive");
  }
}

ErrorState tracking_error(const GroupDescription& G, const PhaseState& x,
                          const PhaseState& xd) {
  const GroupElement Qd_inv = G.inverse(xd.Q);
  return {G.compose(x.Q, Qd_inv),
          G.co_adjoint(Qd_inv, {x.P.coords - xd.P.coords})};
}

ControlErrors control_errors(const GroupDescription& G, const InputPair& in,
                             const InputPair& ind, const PhaseState& xd) {
  const InputPair diff{{in.U.coords - ind.U.coords},
                       {in.tau.coords - ind.tau.coords}};
  InputPair out = psi(G, sd_inv(G, xd), diff);
  return {std::move(out.U), std::move(out.tau)};
}

PhaseVelocity error_vector_field(const GroupDescription& G, const ErrorState& e,
                                 const ControlErrors& ce) {
  return vector_field(G, e.as_phase(), {ce.U_tilde, ce.tau_tilde});
}

InertiaError inertia_error(const GroupDescription& G, const InertiaOp& I,
                           const GroupElement& Qd) {
  if (I.dim() != G.dim_algebra()) {
    throw PreconditionError("inertia_error: inertia has wrong dimension");
  }
  const Matrix Ad_inv = G.adjoint_matrix(G.inverse(Qd));
  const Matrix Ad = G.adjoint_matrix(Qd);
  Matrix bar = Ad_inv.transpose() * I.matrix() * Ad_inv;
  Matrix bar_inv = Ad * I.inverse() * Ad.transpose();
  return {0.5 * (bar + bar.transpose()), 0.5 * (bar_inv + bar_inv.transpose())};
}

Matrix inertia_error_inv_derivative(const GroupDescription& G,
                                    const InertiaOp& I, const GroupElement& Qd,
                                    const AlgebraVec& Ud) {
  const Matrix bar_inv = inertia_error(G, I, Qd).bar_inv;
  const Matrix ad_w = G.ad_matrix(G.adjoint(Qd, Ud));
  return ad_w * bar_inv + bar_inv * ad_w.transpose();
}

double error_energy(const ErrorState& e, const Matrix& Ibar) {
  if (Ibar.rows() != Ibar.cols() || Ibar.rows() != e.P_E.coords.size()) {
    throw PreconditionError("error_energy: inertia error has wrong shape");
  }
  if ((Ibar - Ibar.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, Ibar.cwiseAbs().maxCoeff())) {
    throw PreconditionError("error_energy: inertia error is not symmetric");
  }
  Eigen::LLT<Matrix> llt(Ibar);
  if (llt.info() != Eigen::Success) {
    throw PreconditionError("error_energy: inertia error is not positive definite");
  }
  return 0.5 * e.P_E.coords.dot(llt.solve(e.P_E.coords));
}

double error_energy_rate(const GroupDescription& G, const ErrorState& e,
                         const InertiaError& Ibar, const CoalgebraVec& tau_tilde,
                         const GroupElement& Qd, const AlgebraVec& Ud) {
  const Vector U_tilde = Ibar.bar_inv * e.P_E.coords;
  const AlgebraVec w = G.adjoint(Qd, Ud);
  return tau_tilde.coords.dot(U_tilde) + G.co_ad(w, e.P_E).coords.dot(U_tilde);
}

CoalgebraVec control_law(const GroupDescription& G, const ErrorState& e,
                         const InertiaError& Ibar, const PhaseState& xd,
                         const AlgebraVec& Ud, const Gains& gains) {
  const Vector U_tilde = Ibar.bar_inv * e.P_E.coords;
  const AlgebraVec w = G.adjoint(xd.Q, Ud);
  const Matrix& QE = e.Q_E.mat;
  const Matrix I = Matrix::Identity(QE.rows(), QE.cols());
  const AlgebraVec config = G.project(QE.transpose() * (QE - I));
  return {-gains.k_v * U_tilde - G.co_ad(w, e.P_E).coords -
          gains.k_p * config.coords};
}

double configuration_error(const GroupElement& Q_E) {
  const Matrix D = Q_E.mat - Matrix::Identity(Q_E.mat.rows(), Q_E.mat.cols());
  return frobenius(D, D);
}

double lyapunov(const ErrorState& e, const InertiaError& Ibar,
                const Gains& gains) {
  return 0.5 * e.P_E.coords.dot(Ibar.bar_inv * e.P_E.coords) +
         0.5 * gains.k_p * configuration_error(e.Q_E);
}

double lyapunov_rate(const ErrorState& e, const InertiaError& Ibar,
                     const Gains& gains) {
  return -gains.k_v * (Ibar.bar_inv * e.P_E.coords).squaredNorm();
}

}  // namespace eqtrack
