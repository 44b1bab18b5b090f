#include "test_support.hpp"

#include <numbers>

using namespace eqtrack;
using eqtrack::testing::e;
using eqtrack::testing::max_abs;
using Eigen::Matrix3d;
using Eigen::Vector3d;

TEST_CASE("tracking error") {
  const auto& G = GroupDescription::so3();
  RandomSampler rs(G, 31);
  for (int k = 0; k < 50; ++k) {
    const PhaseState x = rs.state(), xd = rs.state();
    const ErrorState self = tracking_error(G, x, x);
    CHECK(max_abs(self.Q_E.mat - Matrix::Identity(3, 3)) < 1e-14);
    CHECK(self.P_E.coords.norm() == 0.0);
    CHECK(state_distance(tracking_error(G, x, sd_identity(G)).as_phase(), x) < 1e-15);
    // (Q Qd^-1, Ad*_{Qd^-1}(P - Pd)) in reduced form
    const auto r = so3::from_phase(x), rd = so3::from_phase(xd);
    const so3::AttitudeError re = so3::error(r, rd);
    const ErrorState ge = tracking_error(G, x, xd);
    CHECK(max_abs(ge.Q_E.mat - re.R_E) < 1e-14);
    CHECK((so3::from_coalgebra(ge.P_E) - re.p_E).norm() < 1e-13);
    CHECK(max_abs(re.R_E - r.R * rd.R.transpose()) < 1e-14);
    CHECK((re.p_E - rd.R * (r.p - rd.p)).norm() < 1e-13);
  }
}

TEST_CASE("control errors") {
  const auto& G = GroupDescription::so3();
  RandomSampler rs(G, 32);
  const PhaseState xd = rs.state();
  const InputPair in = rs.input(), ind = rs.input();
  const ControlErrors zero = control_errors(G, in, in, xd);
  CHECK(zero.U_tilde.coords.norm() < 1e-15);
  CHECK(zero.tau_tilde.coords.norm() < 1e-15);
  const ControlErrors at_id = control_errors(G, in, ind, sd_identity(G));
  CHECK((at_id.U_tilde.coords - (in.U.coords - ind.U.coords)).norm() < 1e-14);
  CHECK((at_id.tau_tilde.coords - (in.tau.coords - ind.tau.coords)).norm() < 1e-14);
}

TEST_CASE("error vector field") {
  const auto& G = GroupDescription::so3();
  RandomSampler rs(G, 33);
  const PhaseState x = rs.state();
  const ErrorState err{x.Q, x.P};
  const PhaseVelocity still = error_vector_field(G, err, {G.zero_algebra(), G.zero_coalgebra()});
  CHECK(max_abs(still.dQ) == 0.0);
  CHECK(still.dP.coords.norm() == 0.0);
  const AlgebraVec U = rs.algebra();
  const CoalgebraVec tau = rs.coalgebra();
  const PhaseVelocity at_id =
      error_vector_field(G, {G.identity(), G.zero_coalgebra()}, {U, tau});
  CHECK(max_abs(at_id.dQ - G.to_matrix(U)) < 1e-15);
  CHECK((at_id.dP.coords - tau.coords).norm() < 1e-15);
}

TEST_CASE("inertia operator and inertia error") {
  CHECK_THROWS_AS(InertiaOp(Matrix::Zero(0, 0)), PreconditionError);
  Matrix asym = Matrix::Identity(3, 3);
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS(InertiaOp{asym}, PreconditionError);
  CHECK_THROWS_AS(InertiaOp(-Matrix::Identity(3, 3)), PreconditionError);

  const auto& G = GroupDescription::so3();
  RandomSampler rs(G, 34);
  const InertiaOp I(rs.spd(3));
  CHECK(max_abs(I.matrix() * I.inverse() - Matrix::Identity(3, 3)) < 1e-12);
  const InertiaError at_id = inertia_error(G, I, G.identity());
  CHECK(max_abs(at_id.bar - I.matrix()) < 1e-14);
  for (int k = 0; k < 20; ++k) {
    const GroupElement Qd = rs.element();
    const InertiaError ie = inertia_error(G, I, Qd);
    CHECK(max_abs(ie.bar * ie.bar_inv - Matrix::Identity(3, 3)) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> a(ie.bar), b(I.matrix());
    CHECK((a.eigenvalues() - b.eigenvalues()).norm() < 1e-12);
    // P_E = Ibar U_tilde for the constrained system
    const PhaseState xd{Qd, rs.coalgebra()};
    const PhaseState x{rs.element(), rs.coalgebra()};
    const InputPair in{I.velocity(x.P), rs.coalgebra()};
    const InputPair ind{I.velocity(xd.P), rs.coalgebra()};
    const ControlErrors ce = control_errors(G, in, ind, xd);
    const ErrorState err = tracking_error(G, x, xd);
    CHECK((ie.bar * ce.U_tilde.coords - err.P_E.coords).norm() < 1e-12);
  }
  CHECK_THROWS_AS(inertia_error(G, InertiaOp(Matrix::Identity(2, 2)), G.identity()),
                  PreconditionError);
}

TEST_CASE("inertia error derivative") {
  for (const GroupDescription* G :
       {&GroupDescription::so3(), &GroupDescription::se3()}) {
    RandomSampler rs(*G, 35);
    const InertiaOp I(rs.spd(G->dim_algebra()));
    const GroupElement Qd = rs.element();
    CHECK(max_abs(inertia_error_inv_derivative(*G, I, Qd, G->zero_algebra())) == 0.0);
    for (int k = 0; k < 10; ++k) {
      const GroupElement Q = rs.element();
      const AlgebraVec Ud = rs.algebra();
      const double h = 1e-4;
      auto bar_inv = [&](double s) {
        return inertia_error(*G, I, G->compose(Q, G->exp({s * Ud.coords}))).bar_inv;
      };
      const Matrix fd = (bar_inv(h) - bar_inv(-h)) / (2 * h);
      CHECK(max_abs(fd - inertia_error_inv_derivative(*G, I, Q, Ud)) < 1e-6);
    }
  }
}

TEST_CASE("error energy") {
  const auto& G = GroupDescription::so3();
  RandomSampler rs(G, 36);
  const CoalgebraVec p = rs.coalgebra();
  CHECK(error_energy({G.identity(), G.zero_coalgebra()}, Matrix::Identity(3, 3)) == 0.0);
  CHECK(error_energy({G.identity(), p}, Matrix::Identity(3, 3)) ==
        doctest::Approx(0.5 * p.coords.squaredNorm()));
  CHECK(error_energy({G.identity(), p}, 2.0 * Matrix::Identity(3, 3)) ==
        doctest::Approx(0.25 * p.coords.squaredNorm()));
  Matrix asym = Matrix::Identity(3, 3);
  asym(2, 0) = 0.5;
  CHECK_THROWS_AS(error_energy({G.identity(), p}, asym), PreconditionError);
  CHECK_THROWS_AS(error_energy({G.identity(), p}, -Matrix::Identity(3, 3)),
                  PreconditionError);
  CHECK_THROWS_AS(error_energy({G.identity(), p}, Matrix::Identity(2, 2)),
                  PreconditionError);
}

TEST_CASE("control law and Lyapunov function examples") {
  const auto& G = GroupDescription::so3();
  RandomSampler rs(G, 37);
  const InertiaOp I(rs.spd(3));
  const PhaseState xd = rs.state();
  const AlgebraVec Ud = rs.algebra();
  const InertiaError ie = inertia_error(G, I, xd.Q);
  const Gains gains{1.0, 1.0};

  const ErrorState at_id{G.identity(), G.zero_coalgebra()};
  CHECK(control_law(G, at_id, ie, xd, Ud, gains).coords.norm() < 1e-15);
  CHECK(lyapunov(at_id, ie, gains) == 0.0);

  // symmetric configuration error (rotation by pi) gives no restoring torque
  const ErrorState flipped{GroupElement{rodrigues(std::numbers::pi * e(1))},
                           G.zero_coalgebra()};
  CHECK(control_law(G, flipped, ie, xd, Ud, gains).coords.norm() < 1e-14);
  CHECK(configuration_error(flipped.Q_E) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(lyapunov(flipped, ie, gains) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(lyapunov(flipped, ie, {3.0, 1.0}) == doctest::Approx(12.0).epsilon(1e-14));

  const ErrorState moving{rs.element(), rs.coalgebra()};
  CHECK(lyapunov(moving, ie, gains) > 0.0);
  CHECK(lyapunov_rate(moving, ie, {1.0, 2.0}) ==
        doctest::Approx(-2.0 * (ie.bar_inv * moving.P_E.coords).squaredNorm()));
  // the closed-form rate with the law applied equals the Lyapunov rate minus
  // the configuration part
  const CoalgebraVec tau_tilde = control_law(G, moving, ie, xd, Ud, gains);
  const double kinetic_rate = error_energy_rate(G, moving, ie, tau_tilde, xd.Q, Ud);
  const Vector U_tilde = ie.bar_inv * moving.P_E.coords;
  const Matrix& QE = moving.Q_E.mat;
  const double config_rate =
      gains.k_p * frobenius(QE - Matrix::Identity(3, 3), QE * G.to_matrix({U_tilde}));
  CHECK(kinetic_rate + config_rate ==
        doctest::Approx(lyapunov_rate(moving, ie, gains)).epsilon(1e-10));

  CHECK_THROWS_AS(validate(Gains{0.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(validate(Gains{1.0, -1.0}), PreconditionError);
  CHECK_NOTHROW(validate(Gains{0.1, 0.1}));
}

TEST_CASE("generic closed loop on SE(3) dissipates the Lyapunov function") {
  const auto& G = GroupDescription::se3();
  RandomSampler rs(G, 38);
  const InertiaOp I(rs.spd(6, 0.5, 2.0));
  const Gains gains{2.0, 1.5};
  const CoalgebraVec tau_d = rs.coalgebra(0.2);

  auto controller = [&](double, std::span<const PhaseState> xs) {
    const PhaseState& x = xs[0];
    const PhaseState& xd = xs[1];
    const AlgebraVec U = I.velocity(x.P), Ud = I.velocity(xd.P);
    const ErrorState err = tracking_error(G, x, xd);
    const InertiaError ie = inertia_error(G, I, xd.Q);
    const CoalgebraVec tt = control_law(G, err, ie, xd, Ud, gains);
    const ControlErrors ce = control_errors(G, {U, tau_d}, {Ud, tau_d}, xd);
    // input difference whose transformed torque is the commanded one
    const InputPair diff = psi(G, xd, {ce.U_tilde, tt});
    return std::vector<InputPair>{{U, {tau_d.coords + diff.tau.coords}}, {Ud, tau_d}};
  };
  auto L = [&](std::span<const PhaseState> xs) {
    return lyapunov(tracking_error(G, xs[0], xs[1]), inertia_error(G, I, xs[1].Q), gains);
  };

  std::vector<PhaseState> xs{{G.exp(rs.algebra(0.5)), rs.coalgebra()},
                             {G.identity(), rs.coalgebra(0.3)}};
  const double L0 = L(xs);
  double prev = L0, worst_increase = 0.0;
  const double dt = 0.01;
  for (int k = 0; k < 1500; ++k) {
    xs = step(G, std::span<const PhaseState>(xs), controller, k * dt, dt);
    CHECK(G.contains(xs[0].Q.mat));
    const double now = L(xs);
    worst_increase = std::max(worst_increase, now - prev);
    prev = now;
  }
  CHECK(worst_increase < 1e-8);
  CHECK(prev < 1e-2 * L0);
}
