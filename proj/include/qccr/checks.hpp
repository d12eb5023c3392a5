#pragma once

// Named numerical checks, grouped into suites. Each check records what was
// measured against which bound, so reports stay diffable.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qccr/boundary.hpp"
#include "qccr/wick.hpp"

namespace qccr::checks {

enum class Relation { AtMost, AtLeast };

struct Measurement {
  std::string label;
  double measured = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::AtMost;
  bool passed = false;
};

Measurement at_most(std::string label, double measured, double bound, double tolerance = 0.0);
Measurement at_least(std::string label, double measured, double bound, double tolerance = 0.0);

struct CheckResult {
  std::string id;
  std::string description;
  std::vector<Measurement> measurements;
  bool passed() const;
};

enum class Suite { Wick, Fock, SingleMode, Boundary, Acceptance };

std::optional<Suite> parse_suite(const std::string& name);
std::string suite_name(Suite s);

struct SuiteConfig {
  std::vector<double> q_values{0.5};
  std::size_t d = 2;
  int N = 6;
  int L = 4;
  std::optional<wick::ModeVector<Complex>> phi;
  std::optional<boundary::BilinearForm> theta;
  double tol = 1e-12;
  std::size_t budget = 200'000;
  std::uint64_t seed = 20240611;
};

/// Appends results as they complete, so a thrown BudgetExceeded leaves a partial report.
void run_suite(Suite suite, const SuiteConfig& config, std::vector<CheckResult>& out);

/// The twelve acceptance criteria, in order.
void run_acceptance(std::vector<CheckResult>& out);
std::size_t acceptance_count();
/// Zero-based; appends the single result for that criterion.
void run_criterion(std::size_t index, std::vector<CheckResult>& out);

// Random test data shared by suites and tests.
using Rng = std::mt19937_64;
double uniform(Rng& rng, double lo, double hi);
Complex random_complex(Rng& rng);
/// Random vector scaled to the given norm.
wick::ModeVector<Complex> random_mode_vector(Rng& rng, std::size_t d, double norm);
/// Up to `terms` words of length <= max_degree with complex coefficients.
wick::FloatPolynomial random_float_polynomial(Rng& rng, std::size_t d, int max_degree, int terms);
/// Same shape with small Gaussian-rational coefficients.
wick::ExactPolynomial random_exact_polynomial(Rng& rng, std::size_t d, int max_degree, int terms);

}  // namespace qccr::checks
