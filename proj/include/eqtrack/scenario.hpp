#pragma once

// Closed-loop attitude-tracking scenario and its JSON loader.
//
// Schema (all angles in radians, times in seconds):
//
//   inertia            3x3 symmetric positive-definite matrix   (required)
//   R0                 rotation                                 (required)
//   Omega0             [x, y, z] body angular velocity          (required)
//   Rd0                rotation                                 (default identity)
//   Omegad0            [x, y, z]                                (default zero)
//   tau_d              torque waveform                          (default zero)
//   k_p, k_v           positive gains of the reduced law        (required)
//   dt                 integration step                         (required)
//   duration           simulated time, >= dt                    (required)
//   output_decimation  record every N-th step                   (default 1)
//
// A rotation is either {"axis": [x, y, z], "angle": a} (axis normalised
// internally, rotation exp(a * hat(axis))) or {"matrix": [[...], [...], [...]]}.
//
// A torque waveform is {"type": "constant", "value": [x, y, z]} or
// {"type": "harmonic", "amplitude": A, "frequency": w}, the latter giving
// A * (cos(w t), sin(w t), sin(w t) cos(w t)); A and w default to 1.
//
// Unknown keys are rejected at every level.

#include "eqtrack/so3.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace eqtrack {

/// Scenario parse or validation failure. field() names the offending key
/// (dotted path) and is empty for JSON syntax errors.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct TorqueWaveform {
  enum class Kind { Constant, Harmonic };
  Kind kind = Kind::Constant;
  Eigen::Vector3d value = Eigen::Vector3d::Zero();
  double amplitude = 0.0;
  double frequency = 0.0;

  Eigen::Vector3d operator()(double t) const;
};

struct Scenario {
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d R0 = Eigen::Matrix3d::Identity();
  Eigen::Vector3d Omega0 = Eigen::Vector3d::Zero();
  Eigen::Matrix3d Rd0 = Eigen::Matrix3d::Identity();
  Eigen::Vector3d Omegad0 = Eigen::Vector3d::Zero();
  TorqueWaveform tau_d;
  Gains gains;
  double dt = 0.01;
  double duration = 1.0;
  int output_decimation = 1;

  /// The reference tracking example: I = diag(0.4, 0.6, 0.8), R_d0 = I, Omega_d0 = 0,
  /// tau_d = (cos t, sin t, sin t cos t), R0 = exp((pi - 0.1) hat(0.8, 0.6, 0)),
  /// Omega0 = (4, -3, 2), k_p = 1, k_v = 0.5, dt = 0.01, 30 s.
  static Scenario reference_example();

  /// Throws ScenarioError naming the first invalid field.
  void validate() const;

  int num_steps() const;
};

Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& json_text);

}  // namespace eqtrack
