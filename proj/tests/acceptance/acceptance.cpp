// Acceptance criteria: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "eqtrack/verification.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace eqtrack;
using Eigen::Matrix3d;
using Eigen::Vector3d;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Line {
  bool ok = true;
  std::vector<std::string> parts;

  void require(bool cond, const std::string& what) {
    ok = ok && cond;
    parts.push_back(what);
  }
  void checks(const std::vector<CheckResult>& results) {
    for (const auto& c : results) {
      require(c.passed(), fmt::format("{} {:.2e}<{:.0e}", c.name, c.residual, c.threshold));
    }
  }
  void check(const std::vector<CheckResult>& results, const std::string& name) {
    for (const auto& c : results) {
      if (c.name == name) {
        require(c.passed(), fmt::format("{} {:.2e}<{:.0e}", c.name, c.residual, c.threshold));
        return;
      }
    }
    require(false, "missing check '" + name + "'");
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Line&)>& body) {
  Line line;
  try {
    body(line);
  } catch (const std::exception& e) {
    line.require(false, std::string("exception: ") + e.what());
  }
  if (!line.ok) ++failures;
  std::string detail;
  for (const auto& p : line.parts) detail += (detail.empty() ? "" : "; ") + p;
  fmt::print("{} {:>2}. {}: {}\n", line.ok ? "PASS" : "FAIL", id, title, detail);
}

const std::uint64_t seed = kDefaultSeed;

}  // namespace

int main() {
  criterion(1, "group axioms on the semidirect product", [](Line& l) {
    const auto start = Clock::now();
    const auto results = checks::group_axioms(seed, 1000);
    const double t = seconds_since(start);
    l.checks(results);
    l.require(results.front().samples == 1000, fmt::format("{} samples", results.front().samples));
    l.require(t < 5.0, fmt::format("runtime {:.3f}s<5s", t));
  });

  criterion(2, "state and input action laws", [](Line& l) {
    const auto results = checks::action_laws(seed, 1000);
    for (const char* name : {"phi identity", "phi compatibility", "psi identity",
                             "psi compatibility"}) {
      l.check(results, name);
    }
  });

  criterion(3, "equivariance of the vector field", [](Line& l) {
    const auto results = checks::equivariance(seed, 200);
    l.check(results, "equivariance (closed-form differential)");
    l.check(results, "equivariance (finite differences, h=1e-4)");
  });

  criterion(4, "error dynamics under mismatched inputs", [](Line& l) {
    const auto results = checks::error_dynamics(seed, 100);
    l.check(results, "error dynamics, mismatched inputs (h=1e-4)");
  });

  criterion(5, "error energy derivative", [](Line& l) {
    l.checks(checks::energy(seed, 100));
  });

  criterion(6, "inertia error inverse derivative", [](Line& l) {
    l.check(checks::inertia(seed, 200),
            "d/dt Ibar^{-1} closed form vs finite difference (h=1e-4)");
  });

  criterion(7, "closed-loop dissipation", [](Line& l) {
    const auto results = checks::dissipation(seed, 50);
    l.check(results, "dL/dt = -k_v |U~|^2 along reference example (relative)");
  });

  criterion(8, "reference tracking example", [](Line& l) {
    const auto start = Clock::now();
    const Scenario s = load_scenario(EQTRACK_SOURCE_DIR "/scenarios/paper_sim.json");
    const auto records = run_simulation(s);
    const double t = seconds_since(start);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < records.size(); ++k) {
      worst = std::max(worst, records[k].lyapunov - records[k - 1].lyapunov);
    }
    const double ratio = records.back().lyapunov / records.front().lyapunov;
    const auto cls = so3::classify_equilibrium({records.back().R_E, records.back().p_E});
    l.require(worst <= 1e-8, fmt::format("max per-step increase {:.2e}<=1e-8", worst));
    l.require(ratio < 1e-3, fmt::format("L(30)/L(0) {:.2e}<1e-3", ratio));
    l.require(cls == so3::Equilibrium::Identity,
              fmt::format("final state {}", so3::to_string(cls)));
    l.require(t < 2.0, fmt::format("runtime {:.3f}s<2s", t));
  });

  criterion(9, "antipodal equilibria", [](Line& l) {
    const Vector3d a = Vector3d(0.8, 0.6, 0.0);
    const GroupElement flip{rodrigues(std::numbers::pi * a)};
    const double value = configuration_error(flip);
    l.require(std::abs(value - 8.0) < 1e-12,
              fmt::format("tr={:.15f}, value {:.15f} (|v-8| {:.1e}<1e-12)",
                          flip.mat.trace(), value, std::abs(value - 8.0)));
    for (double s : {0.01, 0.02, 0.05}) {
      const double v = configuration_error(GroupElement{rodrigues((std::numbers::pi - s) * a)});
      const double dev = std::abs(v - (8.0 - 2.0 * s * s));
      l.require(dev <= s * s * s, fmt::format("s={}: |v-(8-2s^2)| {:.1e}<=s^3", s, dev));
    }
    Scenario sc = Scenario::reference_example();
    sc.tau_d.kind = TorqueWaveform::Kind::Constant;
    sc.tau_d.value.setZero();
    sc.R0 = rodrigues((std::numbers::pi - 0.05) * a);
    sc.Omega0.setZero();
    const auto records = run_simulation(sc);
    const auto first = so3::classify_equilibrium({records.front().R_E, records.front().p_E});
    const auto last = so3::classify_equilibrium({records.back().R_E, records.back().p_E});
    l.require(first != so3::Equilibrium::Identity && last == so3::Equilibrium::Identity,
              fmt::format("closed loop from s=0.05: {} -> {} in {}s", so3::to_string(first),
                          so3::to_string(last), sc.duration));
  });

  criterion(10, "reduced formulas vs generic layer", [](Line& l) {
    const auto results = checks::reduced_vs_generic(seed, 1000);
    l.checks(results);
    l.require(results.front().samples == 1000, fmt::format("{} samples", results.front().samples));
  });

  criterion(11, "free rigid body", [](Line& l) {
    const auto& G = GroupDescription::so3();
    const Scenario ref = Scenario::reference_example();
    const Matrix3d I = ref.inertia;
    const Matrix3d I_inv = I.inverse();
    const InputProvider free_body = [&](double, const PhaseState& x) {
      return InputPair{so3::to_algebra(I_inv * so3::from_coalgebra(x.P)), G.zero_coalgebra()};
    };
    auto energy = [&](const PhaseState& x) {
      const Vector3d p = so3::from_coalgebra(x.P);
      return 0.5 * p.dot(I_inv * p);
    };
    PhaseState x = so3::to_phase({ref.R0, I * ref.Omega0});
    const double E0 = energy(x);
    const double h = 0.01;
    double energy_drift = 0.0, group_drift = 0.0;
    for (int k = 0; k < 6000; ++k) {
      x = step(G, x, free_body, k * h, h);
      if (k < 1000) energy_drift = std::max(energy_drift, std::abs(energy(x) - E0));
      const Matrix& Q = x.Q.mat;
      group_drift = std::max(group_drift, (Q.transpose() * Q - Matrix::Identity(3, 3)).norm());
    }
    l.require(energy_drift < 1e-8,
              fmt::format("energy drift over 10s {:.2e}<1e-8 (E0={})", energy_drift, E0));
    l.require(group_drift < 1e-9, fmt::format("group drift over 60s {:.2e}<1e-9", group_drift));
  });

  fmt::print("{}\n", failures == 0 ? "ALL ACCEPTANCE CRITERIA PASSED"
                                   : fmt::format("{} CRITERIA FAILED", failures));
  return failures == 0 ? 0 : 1;
}
