#include "muskat/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace muskat::constants {

SeriesSum power_series(double p, double c, double tol) {
  if (!(c >= 0.0 && c < 1.0)) throw std::invalid_argument("series: c must lie in [0, 1)");
  if (!(tol > 0.0)) throw std::invalid_argument("series: tol must be positive");
  if (c == 0.0) return {0.0, 0.0, 0};
  const double c2 = c * c;
  double sum = 0.0;
  for (std::size_t n = 1;; ++n) {
    // Terms n' >= n are bounded by a geometric series started at term n.
    const double odd = 2.0 * static_cast<double>(n) + 1.0;
    const double term = 2.0 * std::pow(odd, p) * std::pow(c2, static_cast<double>(n));
    const double ratio = c2 * std::pow(1.0 + 2.0 / odd, p);
    if (ratio < 1.0) {
      const double tail = term / (1.0 - ratio);
      if (tail < tol) return {sum, tail, n - 1};
    }
    sum += term;
    if (n > 100000000) throw std::runtime_error("series: no convergence");
  }
}

double series_sum(double delta, double c, double tol) {
  if (!(delta >= 0.0)) throw std::invalid_argument("series_sum: delta must be non-negative");
  return power_series(2.0 + delta, c, tol).value;
}

double solve_c0(double delta, double tol) {
  if (!(delta >= 0.0)) throw std::invalid_argument("solve_c0: delta must be non-negative");
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (series_sum(delta, mid, 1e-17) <= 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double g_function(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("g_function: x must lie in [0, 1)");
  const double y = x * x;
  return 2.0 * y * (3.0 - y) / ((1.0 - y) * (1.0 - y));
}

double threshold_sqrt() { return std::sqrt((4.0 - std::sqrt(13.0)) / 6.0); }

double g_unit_root() { return std::sqrt((4.0 - std::sqrt(13.0)) / 3.0); }

double c0_delta0_radical() {
  const double w = 9.0 * std::sqrt(39.0) - 38.0;
  return std::sqrt(7.0 - 14.0 * std::cbrt(25.0) / std::cbrt(w) + 2.0 * std::cbrt(5.0 * w)) / 3.0;
}

bool ConstantsReport::all_passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.passed; });
}

ConstantsReport verify_claims(double delta, double tol) {
  ConstantsReport r{};
  r.delta = delta;
  r.c0 = solve_c0(delta, tol);
  const auto s = power_series(2.0 + delta, r.c0);
  r.series_value_at_c0 = s.value;
  r.tail_bound = s.tail_bound;
  r.n_terms_used = s.n_terms;
  r.closed_form_threshold_sqrt = threshold_sqrt();
  r.closed_form_c0_delta0 = c0_delta0_radical();
  r.g_unit_root = g_unit_root();

  auto add = [&](std::string name, double value, double expected, double tolerance, bool passed) {
    r.claims.push_back({std::move(name), value, expected, tolerance, passed});
  };
  auto near = [&](std::string name, double value, double expected, double tolerance) {
    add(std::move(name), value, expected, tolerance, std::abs(value - expected) <= tolerance);
  };

  add("series at c0 <= 1", r.series_value_at_c0, 1.0, 1e-12, r.series_value_at_c0 <= 1.0 + 1e-12);
  const double c00 = delta == 0.0 ? r.c0 : solve_c0(0.0, tol);
  near("c0(0)", c00, 0.2199617648835399, 1e-10);
  near("c0(0) equals the radical", c00, r.closed_form_c0_delta0, 1e-10);
  near("threshold sqrt((4 - sqrt 13)/6)", r.closed_form_threshold_sqrt, 0.256400963510933628, 1e-9);
  const double g_at = g_function(r.closed_form_threshold_sqrt);
  add("g < 1 at the threshold", g_at, 1.0, 0.0, g_at < 1.0);
  near("g at its unit root", g_function(r.g_unit_root), 1.0, 1e-12);
  const double at_fifth = series_sum(0.1, 0.2);
  add("series(delta = 0.1, c = 1/5) < 1", at_fifth, 1.0, 0.0, at_fifth < 1.0);
  const double c01 = delta == 0.1 ? r.c0 : solve_c0(0.1, tol);
  add("c0(0.1) >= 1/5", c01, 0.2, 0.0, c01 >= 0.2);
  return r;
}

}  // namespace muskat::constants
