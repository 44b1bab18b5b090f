#pragma once

// Closed-loop SO(3) tracking simulation, CSV output and gnuplot script.

#include "eqtrack/scenario.hpp"

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqtrack {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimRecord {
  double t = 0.0;
  double lyapunov = 0.0;
  double config_err = 0.0;    // ||R_E - I||_F
  double momentum_err = 0.0;  // ||p_E||
  Eigen::Matrix3d R_E = Eigen::Matrix3d::Identity();
  Eigen::Vector3d p_E = Eigen::Vector3d::Zero();
  Eigen::Vector3d tau = Eigen::Vector3d::Zero();
};

/// Plant and reference integrated together with the controller evaluated at
/// every integrator stage. States are generic SO(3) phase states; index 0 is
/// the plant, index 1 the reference.
class ClosedLoop {
 public:
  explicit ClosedLoop(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }

  struct Evaluation {
    so3::AttitudeError error;
    Eigen::Vector3d Omega;
    Eigen::Vector3d Omega_d;
    Eigen::Vector3d tau;    // physical torque on the plant
    Eigen::Vector3d tau_d;  // reference torque
    Eigen::Vector3d tau_tilde;
  };

  /// Controller output for a plant/reference pair at time t. Velocities are
  /// recovered from momenta (Omega = I^{-1} p).
  Evaluation evaluate(double t, const PhaseState& plant,
                      const PhaseState& reference) const;

  std::vector<InputPair> inputs(double t, std::span<const PhaseState> xs) const;

  /// Initial plant and reference states.
  std::vector<PhaseState> initial_states() const;

  /// Advance both states by h from time t.
  std::vector<PhaseState> advance(std::span<const PhaseState> xs, double t,
                                  double h) const;

  SimRecord record(double t, const PhaseState& plant,
                   const PhaseState& reference) const;

  /// Run the full scenario, calling visit(step, t, states) for every step
  /// index from 0 to num_steps() inclusive. Throws SimulationError on a
  /// non-finite state or a failed retraction.
  void run(const std::function<void(int, double, std::span<const PhaseState>)>&
               visit) const;

 private:
  Scenario scenario_;
  Eigen::Matrix3d inertia_inv_;
};

/// Records every output_decimation steps, starting at t = 0.
std::vector<SimRecord> run_simulation(const Scenario& scenario);

void write_csv(std::ostream& out, const std::vector<SimRecord>& records);

/// Two-panel gnuplot script: Lyapunov function, then ||R_E - I|| and ||p_E||.
void write_plot_script(std::ostream& out, const std::string& csv_path);

}  // namespace eqtrack
