#include "eqtrack/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

namespace eqtrack {

using json = nlohmann::json;

Eigen::Vector3d TorqueWaveform::operator()(double t) const {
  if (kind == Kind::Constant) return value;
  const double c = std::cos(frequency * t);
  const double s = std::sin(frequency * t);
  return amplitude * Eigen::Vector3d(c, s, s * c);
}

Scenario Scenario::reference_example() {
  Scenario s;
  s.inertia = Eigen::Vector3d(0.4, 0.6, 0.8).asDiagonal();
  s.R0 = rodrigues((std::numbers::pi - 0.1) * Eigen::Vector3d(0.8, 0.6, 0.0));
  s.Omega0 = {4.0, -3.0, 2.0};
  s.Rd0 = Eigen::Matrix3d::Identity();
  s.Omegad0 = Eigen::Vector3d::Zero();
  s.tau_d.kind = TorqueWaveform::Kind::Harmonic;
  s.tau_d.amplitude = 1.0;
  s.tau_d.frequency = 1.0;
  s.gains = {1.0, 0.5};
  s.dt = 0.01;
  s.duration = 30.0;
  s.output_decimation = 1;
  return s;
}

int Scenario::num_steps() const {
  return static_cast<int>(std::llround(duration / dt));
}

void Scenario::validate() const {
  if (!inertia.allFinite() ||
      (inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ScenarioError("inertia", "must be a finite symmetric matrix");
  }
  if (Eigen::LLT<Eigen::Matrix3d>(inertia).info() != Eigen::Success) {
    throw ScenarioError("inertia", "must be positive definite");
  }
  const auto& G = GroupDescription::so3();
  if (!G.contains(R0)) throw ScenarioError("R0", "not a rotation matrix");
  if (!G.contains(Rd0)) throw ScenarioError("Rd0", "not a rotation matrix");
  if (!Omega0.allFinite()) throw ScenarioError("Omega0", "must be finite");
  if (!Omegad0.allFinite()) throw ScenarioError("Omegad0", "must be finite");
  if (!(gains.k_p > 0.0) || !std::isfinite(gains.k_p)) {
    throw ScenarioError("k_p", "must be a positive number");
  }
  if (!(gains.k_v > 0.0) || !std::isfinite(gains.k_v)) {
    throw ScenarioError("k_v", "must be a positive number");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ScenarioError("dt", "must be a positive number");
  }
  if (!(duration >= dt) || !std::isfinite(duration)) {
    throw ScenarioError("duration", "must be at least dt");
  }
  if (output_decimation < 1) {
    throw ScenarioError("output_decimation", "must be a positive integer");
  }
  if (tau_d.kind == TorqueWaveform::Kind::Constant && !tau_d.value.allFinite()) {
    throw ScenarioError("tau_d.value", "must be finite");
  }
  if (tau_d.kind == TorqueWaveform::Kind::Harmonic &&
      (!std::isfinite(tau_d.amplitude) || !std::isfinite(tau_d.frequency))) {
    throw ScenarioError("tau_d", "amplitude and frequency must be finite");
  }
}

namespace {

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) {
      throw ScenarioError(where.empty() ? item.key() : where + "." + item.key(),
                          "unknown key");
    }
  }
}

const json& require(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ScenarioError(key, "missing required field");
  return obj.at(key);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ScenarioError(field, "expected a number");
  return v.get<double>();
}

Eigen::Vector3d vec3(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 3) {
    throw ScenarioError(field, "expected an array of 3 numbers");
  }
  Eigen::Vector3d out;
  for (int i = 0; i < 3; ++i) out(i) = number(v[i], field);
  return out;
}

Eigen::Matrix3d mat3(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 3) {
    throw ScenarioError(field, "expected a 3x3 nested array");
  }
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i) out.row(i) = vec3(v[i], field).transpose();
  return out;
}

Eigen::Matrix3d rotation(const json& v, const std::string& field) {
  if (!v.is_object()) {
    throw ScenarioError(field, "expected {axis, angle} or {matrix}");
  }
  if (v.contains("matrix")) {
    reject_unknown(v, field, {"matrix"});
    const Eigen::Matrix3d R = mat3(v.at("matrix"), field + ".matrix");
    if (!GroupDescription::so3().contains(R)) {
      throw ScenarioError(field + ".matrix", "not a rotation matrix");
    }
    return R;
  }
  reject_unknown(v, field, {"axis", "angle"});
  if (!v.contains("axis") || !v.contains("angle")) {
    throw ScenarioError(field, "expected {axis, angle} or {matrix}");
  }
  const Eigen::Vector3d axis = vec3(v.at("axis"), field + ".axis");
  const double angle = number(v.at("angle"), field + ".angle");
  if (!(axis.norm() > 0.0)) throw ScenarioError(field + ".axis", "zero axis");
  return rodrigues(angle * axis.normalized());
}

TorqueWaveform waveform(const json& v) {
  if (!v.is_object() || !v.contains("type") || !v.at("type").is_string()) {
    throw ScenarioError("tau_d", "expected an object with a string 'type'");
  }
  TorqueWaveform w;
  const std::string type = v.at("type").get<std::string>();
  if (type == "constant") {
    reject_unknown(v, "tau_d", {"type", "value"});
    w.kind = TorqueWaveform::Kind::Constant;
    if (!v.contains("value")) throw ScenarioError("tau_d.value", "missing");
    w.value = vec3(v.at("value"), "tau_d.value");
  } else if (type == "harmonic") {
    reject_unknown(v, "tau_d", {"type", "amplitude", "frequency"});
    w.kind = TorqueWaveform::Kind::Harmonic;
    w.amplitude = v.contains("amplitude")
                      ? number(v.at("amplitude"), "tau_d.amplitude")
                      : 1.0;
    w.frequency = v.contains("frequency")
                      ? number(v.at("frequency"), "tau_d.frequency")
                      : 1.0;
  } else {
    throw ScenarioError("tau_d.type", "unknown waveform '" + type + "'");
  }
  return w;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ScenarioError("", "scenario must be a JSON object");
  reject_unknown(doc, "",
                 {"inertia", "R0", "Omega0", "Rd0", "Omegad0", "tau_d", "k_p",
                  "k_v", "dt", "duration", "output_decimation"});

  Scenario s;
  s.inertia = mat3(require(doc, "inertia"), "inertia");
  s.R0 = rotation(require(doc, "R0"), "R0");
  s.Omega0 = vec3(require(doc, "Omega0"), "Omega0");
  if (doc.contains("Rd0")) s.Rd0 = rotation(doc.at("Rd0"), "Rd0");
  if (doc.contains("Omegad0")) s.Omegad0 = vec3(doc.at("Omegad0"), "Omegad0");
  if (doc.contains("tau_d")) s.tau_d = waveform(doc.at("tau_d"));
  s.gains.k_p = number(require(doc, "k_p"), "k_p");
  s.gains.k_v = number(require(doc, "k_v"), "k_v");
  s.dt = number(require(doc, "dt"), "dt");
  s.duration = number(require(doc, "duration"), "duration");
  if (doc.contains("output_decimation")) {
    const json& d = doc.at("output_decimation");
    if (!d.is_number_integer()) {
      throw ScenarioError("output_decimation", "expected an integer");
    }
    s.output_decimation = d.get<int>();
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

}  // namespace eqtrack
