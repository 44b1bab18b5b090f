#include "eqtrack/simulation.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <ostream>

namespace eqtrack {

using Eigen::Matrix3d;
using Eigen::Vector3d;

ClosedLoop::ClosedLoop(Scenario scenario) : scenario_(std::move(scenario)) {
  scenario_.validate();
  inertia_inv_ = scenario_.inertia.inverse();
}

ClosedLoop::Evaluation ClosedLoop::evaluate(double t, const PhaseState& plant,
                                            const PhaseState& reference) const {
  const so3::AttitudeState x = so3::from_phase(plant);
  const so3::AttitudeState xd = so3::from_phase(reference);
  Evaluation ev;
  ev.Omega = inertia_inv_ * x.p;
  ev.Omega_d = inertia_inv_ * xd.p;
  ev.tau_d = scenario_.tau_d(t);
  ev.error = so3::error(x, xd);
  ev.tau_tilde =
      so3::control(ev.error, xd.R, ev.Omega_d, scenario_.inertia, scenario_.gains);
  ev.tau = so3::recover_torque(ev.tau_tilde, xd, ev.Omega, ev.Omega_d, ev.tau_d);
  return ev;
}

std::vector<InputPair> ClosedLoop::inputs(double t,
                                          std::span<const PhaseState> xs) const {
  const Evaluation ev = evaluate(t, xs[0], xs[1]);
  return {{so3::to_algebra(ev.Omega), so3::to_coalgebra(ev.tau)},
          {so3::to_algebra(ev.Omega_d), so3::to_coalgebra(ev.tau_d)}};
}

std::vector<PhaseState> ClosedLoop::initial_states() const {
  const Scenario& s = scenario_;
  return {so3::to_phase({s.R0, s.inertia * s.Omega0}),
          so3::to_phase({s.Rd0, s.inertia * s.Omegad0})};
}

std::vector<PhaseState> ClosedLoop::advance(std::span<const PhaseState> xs,
                                            double t, double h) const {
  const CoupledInputProvider provider =
      [this](double s, std::span<const PhaseState> stage) {
        return inputs(s, stage);
      };
  return step(GroupDescription::so3(), xs, provider, t, h);
}

SimRecord ClosedLoop::record(double t, const PhaseState& plant,
                             const PhaseState& reference) const {
  const Evaluation ev = evaluate(t, plant, reference);
  SimRecord r;
  r.t = t;
  r.lyapunov = so3::lyapunov(ev.error, reference.Q.mat, scenario_.inertia,
                             scenario_.gains);
  r.config_err = (ev.error.R_E - Matrix3d::Identity()).norm();
  r.momentum_err = ev.error.p_E.norm();
  r.R_E = ev.error.R_E;
  r.p_E = ev.error.p_E;
  r.tau = ev.tau;
  return r;
}

void ClosedLoop::run(
    const std::function<void(int, double, std::span<const PhaseState>)>& visit)
    const {
  std::vector<PhaseState> xs = initial_states();
  const int steps = scenario_.num_steps();
  const double dt = scenario_.dt;
  visit(0, 0.0, xs);
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    try {
      xs = advance(xs, t, dt);
    } catch (const StepError& e) {
      throw SimulationError(fmt::format("step {} (t = {}): {}", k + 1, t + dt, e.what()));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!xs[i].Q.mat.allFinite() || !xs[i].P.coords.allFinite()) {
        throw SimulationError(fmt::format("step {} (t = {}): non-finite {} state",
                                          k + 1, t + dt,
                                          i == 0 ? "plant" : "reference"));
      }
    }
    visit(k + 1, (k + 1) * dt, xs);
  }
}

std::vector<SimRecord> run_simulation(const Scenario& scenario) {
  const ClosedLoop loop(scenario);
  std::vector<SimRecord> records;
  records.reserve(static_cast<std::size_t>(
      scenario.num_steps() / scenario.output_decimation + 1));
  loop.run([&](int k, double t, std::span<const PhaseState> xs) {
    if (k % scenario.output_decimation == 0) {
      records.push_back(loop.record(t, xs[0], xs[1]));
    }
  });
  return records;
}

void write_csv(std::ostream& out, const std::vector<SimRecord>& records) {
  out << "t,lyapunov,config_err,momentum_err";
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) out << ",RE_" << i << j;
  }
  out << ",pE_1,pE_2,pE_3,tau_1,tau_2,tau_3\n";
  for (const SimRecord& r : records) {
    std::string line = fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}", r.t,
                                   r.lyapunov, r.config_err, r.momentum_err);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) line += fmt::format(",{:.17g}", r.R_E(i, j));
    }
    for (int i = 0; i < 3; ++i) line += fmt::format(",{:.17g}", r.p_E(i));
    for (int i = 0; i < 3; ++i) line += fmt::format(",{:.17g}", r.tau(i));
    out << line << '\n';
  }
}

void write_plot_script(std::ostream& out, const std::string& csv_path) {
  out << fmt::format(
      "# gnuplot -p <this file>\n"
      "set datafile separator ','\n"
      "set key autotitle columnhead\n"
      "set multiplot layout 2,1\n"
      "set xlabel 't [s]'\n"
      "set title 'A: Lyapunov function'\n"
      "set ylabel 'L(t)'\n"
      "plot '{0}' using 1:2 with lines title 'L(t)'\n"
      "set title 'B: tracking errors'\n"
      "set ylabel 'error magnitude'\n"
      "plot '{0}' using 1:3 with lines title '||R_E - I||', \\\n"
      "     '{0}' using 1:4 with lines title '||p_E||'\n"
      "unset multiplot\n",
      csv_path);
}

}  // namespace eqtrack
