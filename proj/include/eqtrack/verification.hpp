#pragma once

// Seeded numerical property suites for the identities the tracking
// construction relies on. Each check records its worst residual and the
// threshold it must stay under.

#include "eqtrack/simulation.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace eqtrack {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Random group data: elements are exp of N(0, scale^2) algebra coordinates,
/// momenta and inputs are N(0, 1) coordinate vectors.
class RandomSampler {
 public:
  RandomSampler(const GroupDescription& G, std::uint64_t seed);

  double normal(double stddev = 1.0);
  double uniform(double lo, double hi);
  Vector gaussian(int n, double stddev = 1.0);

  AlgebraVec algebra(double stddev = 1.0);
  CoalgebraVec coalgebra(double stddev = 1.0);
  GroupElement element(double stddev = 1.0);
  PhaseState state();
  InputPair input();
  /// Random symmetric positive-definite n x n matrix with eigenvalues in
  /// [lo, hi].
  Matrix spd(int n, double lo = 0.5, double hi = 3.0);

  const GroupDescription& group() const { return G_; }

 private:
  const GroupDescription& G_;
  std::mt19937_64 rng_;
};

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  std::size_t samples = 0;
  bool passed() const { return residual < threshold; }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  bool passed() const;
};

/// Names accepted by run_suite, excluding "all".
const std::vector<std::string>& suite_names();

bool is_suite_name(std::string_view name);

/// Throws PreconditionError for an unknown suite name.
SuiteReport run_suite(std::string_view name, std::uint64_t seed = kDefaultSeed);

/// "all" runs every suite concurrently; reports come back in suite order.
std::vector<SuiteReport> run_suites(std::string_view name,
                                    std::uint64_t seed = kDefaultSeed);

void print_report(std::ostream& out, const SuiteReport& report);

// Individual property checks, shared by the suites and the acceptance tests.
namespace checks {

std::vector<CheckResult> group_axioms(std::uint64_t seed, int samples = 1000);
std::vector<CheckResult> action_laws(std::uint64_t seed, int samples = 1000);
std::vector<CheckResult> equivariance(std::uint64_t seed, int samples = 200);
std::vector<CheckResult> error_dynamics(std::uint64_t seed, int samples = 100);
std::vector<CheckResult> energy(std::uint64_t seed, int samples = 100);
std::vector<CheckResult> dissipation(std::uint64_t seed, int samples = 50);
std::vector<CheckResult> inertia(std::uint64_t seed, int samples = 200);
std::vector<CheckResult> reduced_vs_generic(std::uint64_t seed,
                                            int samples = 1000);

}  // namespace checks

}  // namespace eqtrack
