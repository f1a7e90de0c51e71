#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace muskat::constants {

struct SeriesSum {
  double value;
  /// Rigorous bound on the neglected tail.
  double tail_bound;
  std::size_t n_terms;
};

/// 2 sum_{n>=1} (2n+1)^p c^{2n}, truncated once the geometric tail bound
/// drops below tol. Throws std::invalid_argument unless 0 <= c < 1.
SeriesSum power_series(double p, double c, double tol = 1e-16);

/// The series with exponent p = 2 + delta.
double series_sum(double delta, double c, double tol = 1e-16);

/// Largest c in [0, 1) with series_sum(delta, c) <= 1, by bisection to tol.
double solve_c0(double delta, double tol = 1e-15);

/// 2 x^2 (3 - x^2) / (1 - x^2)^2 for 0 <= x < 1.
double g_function(double x);

/// sqrt((4 - sqrt 13) / 6); g_function stays below 1 on [0, threshold_sqrt()].
double threshold_sqrt();

/// sqrt((4 - sqrt 13) / 3), the point where g_function equals 1.
double g_unit_root();

/// (1/3) sqrt(7 - 14 5^{2/3} / cbrt(9 sqrt 39 - 38) + 2 cbrt(5 (9 sqrt 39 - 38))).
double c0_delta0_radical();

struct Claim {
  std::string name;
  double value;
  double expected;
  double tolerance;
  bool passed;
};

struct ConstantsReport {
  double delta;
  double c0;
  double series_value_at_c0;
  double tail_bound;
  std::size_t n_terms_used;
  double closed_form_threshold_sqrt;
  double closed_form_c0_delta0;
  double g_unit_root;
  std::vector<Claim> claims;

  bool all_passed() const;
};

/// Solves c0 for the given delta and checks the published constants.
ConstantsReport verify_claims(double delta = 0.0, double tol = 1e-15);

}  // namespace muskat::constants
