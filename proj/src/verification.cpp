#include "eqtrack/verification.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>

namespace eqtrack {

// ---------------------------------------------------------------------------
// RandomSampler
// ---------------------------------------------------------------------------

RandomSampler::RandomSampler(const GroupDescription& G, std::uint64_t seed)
    : G_(G), rng_(seed) {}

double RandomSampler::normal(double stddev) {
  return std::normal_distribution<double>(0.0, stddev)(rng_);
}

double RandomSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

Vector RandomSampler::gaussian(int n, double stddev) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(stddev);
  return v;
}

AlgebraVec RandomSampler::algebra(double stddev) {
  return {gaussian(G_.dim_algebra(), stddev)};
}

CoalgebraVec RandomSampler::coalgebra(double stddev) {
  return {gaussian(G_.dim_algebra(), stddev)};
}

GroupElement RandomSampler::element(double stddev) {
  return G_.exp(algebra(stddev));
}

PhaseState RandomSampler::state() {
  GroupElement Q = element();
  return {std::move(Q), coalgebra()};
}

InputPair RandomSampler::input() {
  AlgebraVec U = algebra();
  return {std::move(U), coalgebra()};
}

Matrix RandomSampler::spd(int n, double lo, double hi) {
  const Matrix A = gaussian(n * n).reshaped(n, n);
  const Eigen::HouseholderQR<Matrix> qr(A);
  const Matrix Qm = qr.householderQ();
  Vector eig(n);
  for (int i = 0; i < n; ++i) eig(i) = uniform(lo, hi);
  Matrix S = Qm * eig.asDiagonal() * Qm.transpose();
  return 0.5 * (S + S.transpose());
}

// ---------------------------------------------------------------------------

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed(); });
}

namespace {

const GroupDescription& so3g() { return GroupDescription::so3(); }

/// Running maximum that treats NaN as a failure.
struct Worst {
  double value = 0.0;
  std::size_t count = 0;
  void add(double r) {
    ++count;
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    value = std::max(value, r);
  }
  CheckResult result(std::string name, double threshold) const {
    return {std::move(name), value, threshold, count};
  }
};

double max_abs(const Matrix& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

double velocity_gap(const PhaseVelocity& a, const PhaseVelocity& b) {
  return std::max(max_abs(a.dQ - b.dQ), max_abs(a.dP.coords - b.dP.coords));
}

PhaseVelocity central_difference(const PhaseState& before, const PhaseState& after,
                                 double h) {
  return {(after.Q.mat - before.Q.mat) / (2.0 * h),
          {(after.P.coords - before.P.coords) / (2.0 * h)}};
}

/// a + b sin(w t + phase), componentwise, for velocity and force inputs.
struct SmoothInput {
  Vector U0, U1, tau0, tau1;
  double w = 1.0;
  double phase = 0.0;

  static SmoothInput sample(RandomSampler& rs) {
    const int n = rs.group().dim_algebra();
    SmoothInput s;
    s.U0 = rs.gaussian(n);
    s.U1 = rs.gaussian(n);
    s.tau0 = rs.gaussian(n);
    s.tau1 = rs.gaussian(n);
    s.w = rs.uniform(0.5, 2.0);
    s.phase = rs.uniform(0.0, 6.0);
    return s;
  }

  InputPair at(double t) const {
    const double sn = std::sin(w * t + phase);
    return {{U0 + sn * U1}, {tau0 + sn * tau1}};
  }
  CoalgebraVec tau(double t) const { return at(t).tau; }
};

constexpr double kFdStep = 1e-4;

/// Plant and reference states sampled along the reference example.
struct TrajectorySample {
  double t;
  std::vector<PhaseState> xs;
};

std::vector<TrajectorySample> reference_samples(const ClosedLoop& loop,
                                                int stride) {
  std::vector<TrajectorySample> out;
  loop.run([&](int k, double t, std::span<const PhaseState> xs) {
    if (k % stride == 0) out.push_back({t, {xs.begin(), xs.end()}});
  });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

namespace checks {

std::vector<CheckResult> group_axioms(std::uint64_t seed, int samples) {
  const auto& G = so3g();
  RandomSampler rs(G, seed);
  const PhaseState e = sd_identity(G);
  Worst assoc, ident, inv, invol;
  for (int i = 0; i < samples; ++i) {
    const PhaseState a = rs.state();
    const PhaseState b = rs.state();
    const PhaseState c = rs.state();
    assoc.add(state_distance(sd_mul(G, sd_mul(G, a, b), c),
                             sd_mul(G, a, sd_mul(G, b, c))));
    ident.add(std::max(state_distance(sd_mul(G, e, a), a),
                       state_distance(sd_mul(G, a, e), a)));
    const PhaseState ai = sd_inv(G, a);
    inv.add(std::max(state_distance(sd_mul(G, a, ai), e),
                     state_distance(sd_mul(G, ai, a), e)));
    invol.add(state_distance(sd_inv(G, ai), a));
  }
  return {assoc.result("semidirect associativity", 1e-11),
          ident.result("semidirect identity", 1e-11),
          inv.result("semidirect inverse", 1e-11),
          invol.result("semidirect inverse involution", 1e-11)};
}

std::vector<CheckResult> action_laws(std::uint64_t seed, int samples) {
  const auto& G = so3g();
  RandomSampler rs(G, seed + 1);
  const PhaseState e = sd_identity(G);
  Worst phi_id, phi_comp, psi_id, psi_comp, psi_lin, psi_inv;
  for (int i = 0; i < samples; ++i) {
    const PhaseState a = rs.state();
    const PhaseState b = rs.state();
    const PhaseState x = rs.state();
    const InputPair in = rs.input();
    const InputPair in2 = rs.input();
    const double alpha = rs.normal();
    const double beta = rs.normal();

    phi_id.add(state_distance(phi(G, e, x), x));
    phi_comp.add(state_distance(phi(G, b, phi(G, a, x)), phi(G, sd_mul(G, a, b), x)));
    psi_id.add(input_distance(psi(G, e, in), in));
    psi_comp.add(input_distance(psi(G, b, psi(G, a, in)), psi(G, sd_mul(G, a, b), in)));

    const InputPair combo{{alpha * in.U.coords + beta * in2.U.coords},
                          {alpha * in.tau.coords + beta * in2.tau.coords}};
    const InputPair lhs = psi(G, a, combo);
    const InputPair p1 = psi(G, a, in);
    const InputPair p2 = psi(G, a, in2);
    const InputPair rhs{{alpha * p1.U.coords + beta * p2.U.coords},
                        {alpha * p1.tau.coords + beta * p2.tau.coords}};
    psi_lin.add(input_distance(lhs, rhs));

    const CoalgebraVec tau = psi_invert_tau(G, a, p1.U, p1.tau);
    psi_inv.add(max_abs(tau.coords - in.tau.coords));
  }
  return {phi_id.result("phi identity", 1e-11),
          phi_comp.result("phi compatibility", 1e-11),
          psi_id.result("psi identity", 1e-11),
          psi_comp.result("psi compatibility", 1e-11),
          psi_lin.result("psi linearity", 1e-11),
          psi_inv.result("psi torque inversion round trip", 1e-11)};
}

std::vector<CheckResult> equivariance(std::uint64_t seed, int samples) {
  const auto& G = so3g();
  RandomSampler rs(G, seed + 2);
  Worst alg, fd, mom_alg, mom_fd;
  for (int i = 0; i < samples; ++i) {
    const PhaseState g = rs.state();
    const PhaseState x = rs.state();
    const InputPair in = rs.input();
    const EquivarianceResidual r = equivariance_residual(G, g, x, in, kFdStep);
    alg.add(r.algebraic);
    fd.add(r.finite_difference);

    const PhaseState pure{G.identity(), rs.coalgebra()};
    const EquivarianceResidual m = equivariance_residual(G, pure, x, in, kFdStep);
    mom_alg.add(m.algebraic);
    mom_fd.add(m.finite_difference);
  }
  return {alg.result("equivariance (closed-form differential)", 1e-10),
          fd.result("equivariance (finite differences, h=1e-4)", 1e-5),
          mom_alg.result("equivariance, g = (I, P) (closed form)", 1e-10),
          mom_fd.result("equivariance, g = (I, P) (finite differences)", 1e-5)};
}

std::vector<CheckResult> error_dynamics(std::uint64_t seed, int samples) {
  const auto& G = so3g();
  RandomSampler rs(G, seed + 3);
  const double h = kFdStep;
  Worst mismatched, matched, along;

  for (int i = 0; i < samples; ++i) {
    const PhaseState x0 = rs.state();
    const PhaseState xd0 = rs.state();
    const SmoothInput f = SmoothInput::sample(rs);
    const SmoothInput fd = SmoothInput::sample(rs);
    const double t0 = rs.uniform(0.0, 5.0);

    for (bool same : {false, true}) {
      const SmoothInput& ref = same ? f : fd;
      const InputProvider plant_in = [&f](double t, const PhaseState&) { return f.at(t); };
      const InputProvider ref_in = [&ref](double t, const PhaseState&) { return ref.at(t); };
      const PhaseState x1 = step(G, x0, plant_in, t0, h);
      const PhaseState x2 = step(G, x1, plant_in, t0 + h, h);
      const PhaseState xd1 = step(G, xd0, ref_in, t0, h);
      const PhaseState xd2 = step(G, xd1, ref_in, t0 + h, h);

      const PhaseVelocity numeric =
          central_difference(tracking_error(G, x0, xd0).as_phase(),
                             tracking_error(G, x2, xd2).as_phase(), h);
      const ErrorState e1 = tracking_error(G, x1, xd1);
      const ControlErrors ce = control_errors(G, f.at(t0 + h), ref.at(t0 + h), xd1);
      (same ? matched : mismatched).add(
          velocity_gap(numeric, error_vector_field(G, e1, ce)));
    }
  }

  const ClosedLoop loop(Scenario::reference_example());
  for (const auto& s : reference_samples(loop, 100)) {
    const auto s1 = loop.advance(s.xs, s.t, h);
    const auto s2 = loop.advance(s1, s.t + h, h);
    const PhaseVelocity numeric =
        central_difference(tracking_error(G, s.xs[0], s.xs[1]).as_phase(),
                           tracking_error(G, s2[0], s2[1]).as_phase(), h);
    const auto in = loop.inputs(s.t + h, s1);
    const ErrorState e1 = tracking_error(G, s1[0], s1[1]);
    const ControlErrors ce = control_errors(G, in[0], in[1], s1[1]);
    along.add(velocity_gap(numeric, error_vector_field(G, e1, ce)));
  }

  return {mismatched.result("error dynamics, mismatched inputs (h=1e-4)", 1e-5),
          matched.result("error dynamics, matched inputs (h=1e-4)", 1e-5),
          along.result("error dynamics along reference example (h=1e-4)", 1e-5)};
}

std::vector<CheckResult> energy(std::uint64_t seed, int samples) {
  const auto& G = so3g();
  RandomSampler rs(G, seed + 4);
  const double h = kFdStep;
  Worst random_rate, along;

  auto check = [&](const InertiaOp& I, std::span<const PhaseState> before,
                   std::span<const PhaseState> mid, std::span<const PhaseState> after,
                   const InputPair& in, const InputPair& ind) {
    auto energy_at = [&](std::span<const PhaseState> xs) {
      return error_energy(tracking_error(G, xs[0], xs[1]),
                          inertia_error(G, I, xs[1].Q).bar);
    };
    const double numeric = (energy_at(after) - energy_at(before)) / (2.0 * h);
    const ErrorState e = tracking_error(G, mid[0], mid[1]);
    const ControlErrors ce = control_errors(G, in, ind, mid[1]);
    const double closed = error_energy_rate(G, e, inertia_error(G, I, mid[1].Q),
                                            ce.tau_tilde, mid[1].Q, ind.U);
    return std::abs(numeric - closed);
  };

  for (int i = 0; i < samples; ++i) {
    const InertiaOp I(rs.spd(G.dim_algebra()));
    const SmoothInput f = SmoothInput::sample(rs);
    const SmoothInput fd = SmoothInput::sample(rs);
    const double t0 = rs.uniform(0.0, 5.0);
    // Physical constraint U = I^{-1} P on both trajectories.
    const CoupledInputProvider provider = [&](double t, std::span<const PhaseState> xs) {
      return std::vector<InputPair>{{I.velocity(xs[0].P), f.tau(t)},
                                    {I.velocity(xs[1].P), fd.tau(t)}};
    };
    const std::vector<PhaseState> x0{rs.state(), rs.state()};
    const auto x1 = step(G, x0, provider, t0, h);
    const auto x2 = step(G, x1, provider, t0 + h, h);
    const auto in = provider(t0 + h, x1);
    random_rate.add(check(I, x0, x1, x2, in[0], in[1]));
  }

  const ClosedLoop loop(Scenario::reference_example());
  const InertiaOp I = so3::to_inertia_op(loop.scenario().inertia);
  for (const auto& s : reference_samples(loop, 100)) {
    const auto s1 = loop.advance(s.xs, s.t, h);
    const auto s2 = loop.advance(s1, s.t + h, h);
    const auto in = loop.inputs(s.t + h, s1);
    along.add(check(I, s.xs, s1, s2, in[0], in[1]));
  }

  return {random_rate.result("error energy rate, random constrained pairs (h=1e-4)", 1e-5),
          along.result("error energy rate along reference example (h=1e-4)", 1e-5)};
}

std::vector<CheckResult> dissipation(std::uint64_t seed, int samples) {
  const auto& G = so3g();
  RandomSampler rs(G, seed + 5);
  const double h = kFdStep;
  Worst along, generic, consistency, monotone;

  // Reference example: reduced law with gains (k_p, k_v) is the generic law
  // with (k_p/2, k_v/2).
  const ClosedLoop loop(Scenario::reference_example());
  const Scenario& sc = loop.scenario();
  const InertiaOp I = so3::to_inertia_op(sc.inertia);
  const Gains half{0.5 * sc.gains.k_p, 0.5 * sc.gains.k_v};
  auto L = [&](std::span<const PhaseState> xs) {
    return lyapunov(tracking_error(G, xs[0], xs[1]), inertia_error(G, I, xs[1].Q), half);
  };

  for (const auto& s : reference_samples(loop, 50)) {
    const auto s1 = loop.advance(s.xs, s.t, h);
    const auto s2 = loop.advance(s1, s.t + h, h);
    const double numeric = (L(s2) - L(s.xs)) / (2.0 * h);
    const ErrorState e1 = tracking_error(G, s1[0], s1[1]);
    const double rate = lyapunov_rate(e1, inertia_error(G, I, s1[1].Q), half);
    along.add(std::abs(numeric - rate) / std::abs(rate));

    const so3::AttitudeError re =
        so3::error(so3::from_phase(s.xs[0]), so3::from_phase(s.xs[1]));
    consistency.add(std::abs(so3::lyapunov(re, s.xs[1].Q.mat, sc.inertia, sc.gains) -
                             L(s.xs)));
  }

  double previous = std::numeric_limits<double>::infinity();
  loop.run([&](int, double, std::span<const PhaseState> xs) {
    const double value = L(xs);
    monotone.add(std::max(0.0, value - previous));
    previous = value;
  });

  // Generic law with random inertia, gains and reference torque; the plant
  // torque is recovered by inverting the input action.
  for (int i = 0; i < samples; ++i) {
    const InertiaOp Ir(rs.spd(G.dim_algebra()));
    const Gains gains{rs.uniform(0.2, 3.0), rs.uniform(0.2, 3.0)};
    const SmoothInput fd = SmoothInput::sample(rs);
    const CoupledInputProvider provider = [&](double t, std::span<const PhaseState> xs) {
      const PhaseState& x = xs[0];
      const PhaseState& xd = xs[1];
      const AlgebraVec U = Ir.velocity(x.P);
      const AlgebraVec Ud = Ir.velocity(xd.P);
      const ErrorState e = tracking_error(G, x, xd);
      const CoalgebraVec tau_tilde =
          control_law(G, e, inertia_error(G, Ir, xd.Q), xd, Ud, gains);
      const AlgebraVec U_tilde = G.adjoint(xd.Q, {U.coords - Ud.coords});
      const CoalgebraVec tau_d = fd.tau(t);
      const CoalgebraVec tau{
          tau_d.coords + psi_invert_tau(G, sd_inv(G, xd), U_tilde, tau_tilde).coords};
      return std::vector<InputPair>{{U, tau}, {Ud, tau_d}};
    };
    auto Lr = [&](std::span<const PhaseState> xs) {
      return lyapunov(tracking_error(G, xs[0], xs[1]), inertia_error(G, Ir, xs[1].Q),
                      gains);
    };
    const double t0 = rs.uniform(0.0, 5.0);
    const std::vector<PhaseState> x0{rs.state(), rs.state()};
    const auto x1 = step(G, x0, provider, t0, h);
    const auto x2 = step(G, x1, provider, t0 + h, h);
    const double numeric = (Lr(x2) - Lr(x0)) / (2.0 * h);
    const double rate =
        lyapunov_rate(tracking_error(G, x1[0], x1[1]), inertia_error(G, Ir, x1[1].Q), gains);
    generic.add(std::abs(numeric - rate) / std::abs(rate));
  }

  return {along.result("dL/dt = -k_v |U~|^2 along reference example (relative)", 1e-6),
          generic.result("dL/dt = -k_v |U~|^2, generic law, random data (relative)", 1e-6),
          consistency.result("reduced Lyapunov equals generic with halved gains", 1e-10),
          monotone.result("Lyapunov per-step increase along reference example", 1e-8)};
}

std::vector<CheckResult> inertia(std::uint64_t seed, int samples) {
  const auto& G = so3g();
  RandomSampler rs(G, seed + 6);
  const double h = kFdStep;
  Worst deriv, spectrum, symmetric, inverse, constraint, trace;
  for (int i = 0; i < samples; ++i) {
    const InertiaOp I(rs.spd(G.dim_algebra()));
    const GroupElement Qd = rs.element();
    const AlgebraVec Ud = rs.algebra();

    auto bar_inv_at = [&](double s) {
      return inertia_error(G, I, G.compose(Qd, G.exp({s * Ud.coords}))).bar_inv;
    };
    const Matrix numeric = (bar_inv_at(h) - bar_inv_at(-h)) / (2.0 * h);
    const Matrix closed = inertia_error_inv_derivative(G, I, Qd, Ud);
    deriv.add(max_abs(numeric - closed));
    trace.add(std::abs(closed.trace()));

    const InertiaError Ibar = inertia_error(G, I, Qd);
    Eigen::SelfAdjointEigenSolver<Matrix> es_bar(Ibar.bar);
    Eigen::SelfAdjointEigenSolver<Matrix> es_I(I.matrix());
    spectrum.add(max_abs(es_bar.eigenvalues() - es_I.eigenvalues()));
    symmetric.add(max_abs(Ibar.bar - Ibar.bar.transpose()));
    inverse.add(max_abs(Ibar.bar * Ibar.bar_inv -
                        Matrix::Identity(I.dim(), I.dim())));

    // P_E = Ibar U~ when P = I U and P_d = I U_d.
    const AlgebraVec U = rs.algebra();
    const AlgebraVec U_d = rs.algebra();
    const PhaseState x{rs.element(), I.momentum(U)};
    const PhaseState xd{Qd, I.momentum(U_d)};
    const ErrorState e = tracking_error(G, x, xd);
    const ControlErrors ce =
        control_errors(G, {U, rs.coalgebra()}, {U_d, rs.coalgebra()}, xd);
    constraint.add(max_abs(Ibar.bar * ce.U_tilde.coords - e.P_E.coords));
  }
  return {deriv.result("d/dt Ibar^{-1} closed form vs finite difference (h=1e-4)", 1e-5),
          trace.result("trace of d/dt Ibar^{-1}", 1e-10),
          spectrum.result("spectrum of Ibar equals spectrum of I", 1e-10),
          symmetric.result("Ibar symmetric", 1e-12),
          inverse.result("Ibar * Ibar^{-1} = identity", 1e-10),
          constraint.result("P_E = Ibar U~ under the physical constraint", 1e-10)};
}

std::vector<CheckResult> reduced_vs_generic(std::uint64_t seed, int samples) {
  const auto& G = so3g();
  RandomSampler rs(G, seed + 7);
  using Eigen::Matrix3d;
  using Eigen::Vector3d;
  auto v3 = [&] { return Vector3d(rs.gaussian(3)); };

  Worst err, cerr, dyn, ibar, law, torque, roundtrip, lyap;
  for (int i = 0; i < samples; ++i) {
    const so3::AttitudeState x{rs.element().mat, v3()};
    const so3::AttitudeState xd{rs.element().mat, v3()};
    const Vector3d Omega = v3(), Omega_d = v3(), tau = v3(), tau_d = v3();
    const Matrix3d inertia = rs.spd(3);
    const Gains gains{rs.uniform(0.1, 3.0), rs.uniform(0.1, 3.0)};
    const Gains doubled{2.0 * gains.k_p, 2.0 * gains.k_v};

    const PhaseState gx = so3::to_phase(x);
    const PhaseState gxd = so3::to_phase(xd);

    const so3::AttitudeError re = so3::error(x, xd);
    const ErrorState ge = tracking_error(G, gx, gxd);
    err.add(std::max(max_abs(re.R_E - ge.Q_E.mat),
                     max_abs(re.p_E - so3::from_coalgebra(ge.P_E))));

    const so3::ReducedControlErrors rce =
        so3::control_errors(Omega, Omega_d, tau, tau_d, xd);
    const InputPair gin{so3::to_algebra(Omega), so3::to_coalgebra(tau)};
    const InputPair gind{so3::to_algebra(Omega_d), so3::to_coalgebra(tau_d)};
    const ControlErrors gce = control_errors(G, gin, gind, gxd);
    cerr.add(std::max(max_abs(rce.Omega_tilde - so3::from_algebra(gce.U_tilde)),
                      max_abs(rce.tau_tilde - so3::from_coalgebra(gce.tau_tilde))));

    const so3::ErrorRate rrate = so3::error_dynamics(re, rce.Omega_tilde, rce.tau_tilde);
    const PhaseVelocity grate = error_vector_field(G, ge, gce);
    dyn.add(std::max(max_abs(rrate.dR_E - grate.dQ),
                     max_abs(rrate.dp_E - so3::from_coalgebra(grate.dP))));

    const InertiaOp gI = so3::to_inertia_op(inertia);
    const InertiaError gbar = inertia_error(G, gI, GroupElement{xd.R});
    ibar.add(max_abs(so3::inertia_error(xd.R, inertia) - 2.0 * gbar.bar));

    const Vector3d rlaw = so3::control(re, xd.R, Omega_d, inertia, doubled);
    const CoalgebraVec glaw =
        control_law(G, ge, gbar, gxd, so3::to_algebra(Omega_d), gains);
    law.add(max_abs(rlaw - so3::from_coalgebra(glaw)));

    const Vector3d rtau = so3::recover_torque(rce.tau_tilde, xd, Omega, Omega_d, tau_d);
    const CoalgebraVec gtau{
        gind.tau.coords +
        psi_invert_tau(G, sd_inv(G, gxd), gce.U_tilde, gce.tau_tilde).coords};
    torque.add(std::max(max_abs(rtau - tau), max_abs(rtau - so3::from_coalgebra(gtau))));
    roundtrip.add(max_abs(
        so3::control_errors(Omega, Omega_d, rtau, tau_d, xd).tau_tilde - rce.tau_tilde));

    lyap.add(std::abs(so3::lyapunov(re, xd.R, inertia, doubled) -
                      lyapunov(ge, gbar, gains)));
  }
  return {err.result("tracking error (R_E, p_E)", 1e-10),
          cerr.result("control errors (Omega~, tau~)", 1e-10),
          dyn.result("error dynamics", 1e-10),
          ibar.result("inertia error R_d I R_d^T", 1e-10),
          law.result("control law: generic(k_p, k_v) = reduced(2k_p, 2k_v)", 1e-10),
          torque.result("torque recovery vs generic input-action inversion", 1e-10),
          roundtrip.result("torque recovery round trip through control errors", 1e-10),
          lyap.result("Lyapunov: generic(k_p, k_v) = reduced(2k_p, 2k_v)", 1e-10)};
}

}  // namespace checks

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "group-axioms", "equivariance", "error-dynamics", "energy",
      "lyapunov",     "inertia",      "reduced-vs-generic"};
  return names;
}

bool is_suite_name(std::string_view name) {
  const auto& names = suite_names();
  return name == "all" || std::find(names.begin(), names.end(), name) != names.end();
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = std::string(name);
  report.seed = seed;
  auto append = [&report](std::vector<CheckResult> more) {
    for (auto& c : more) report.checks.push_back(std::move(c));
  };
  if (name == "group-axioms") {
    append(checks::group_axioms(seed));
    append(checks::action_laws(seed));
  } else if (name == "equivariance") {
    append(checks::equivariance(seed));
  } else if (name == "error-dynamics") {
    append(checks::error_dynamics(seed));
  } else if (name == "energy") {
    append(checks::energy(seed));
  } else if (name == "lyapunov") {
    append(checks::dissipation(seed));
  } else if (name == "inertia") {
    append(checks::inertia(seed));
  } else if (name == "reduced-vs-generic") {
    append(checks::reduced_vs_generic(seed));
  } else {
    throw PreconditionError("unknown verification suite '" + std::string(name) + "'");
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SuiteReport> run_suites(std::string_view name, std::uint64_t seed) {
  if (name != "all") return {run_suite(name, seed)};
  std::vector<std::future<SuiteReport>> jobs;
  for (const auto& suite : suite_names()) {
    jobs.push_back(std::async(std::launch::async,
                              [suite, seed] { return run_suite(suite, seed); }));
  }
  std::vector<SuiteReport> reports;
  for (auto& job : jobs) reports.push_back(job.get());
  return reports;
}

void print_report(std::ostream& out, const SuiteReport& report) {
  out << fmt::format("[{}] seed={}\n", report.suite, report.seed);
  std::size_t passed = 0;
  for (const auto& c : report.checks) {
    passed += c.passed() ? 1 : 0;
    out << fmt::format("  {}  {:<62} {:.3e} < {:.0e}  ({} samples)\n",
                       c.passed() ? "PASS" : "FAIL", c.name, c.residual,
                       c.threshold, c.samples);
  }
  out << fmt::format("[{}] {} ({}/{} checks, {:.2f} s)\n", report.suite,
                     report.passed() ? "PASS" : "FAIL", passed,
                     report.checks.size(), report.seconds);
}

}  // namespace eqtrack
