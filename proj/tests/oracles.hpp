#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "muskat/grid.hpp"

namespace oracle {

// Coefficients of f(x) = sum_k c_k exp(i pi k x / L) by the O(N^2) definition.
inline std::complex<double> dft_coefficient(const muskat::GridFunction& f, std::ptrdiff_t k) {
  const auto& s = f.spec();
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j)
    acc += f[j] * std::exp(std::complex<double>(0.0, -std::numbers::pi * static_cast<double>(k) * s.x(j) /
                                                         s.half_period()));
  return acc / static_cast<double>(f.size());
}

// Trigonometric interpolant built from the direct DFT, Nyquist mode split
// evenly between +N/2 and -N/2 so that it stays real off the grid.
class TrigPoly {
 public:
  explicit TrigPoly(const muskat::GridFunction& f) : L_(f.spec().half_period()) {
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    for (std::ptrdiff_t k = -n / 2; k <= n / 2; ++k) {
      std::complex<double> c = dft_coefficient(f, k == n / 2 ? -k : k);
      if (std::abs(k) == n / 2) c *= 0.5;
      k_.push_back(static_cast<double>(k));
      c_.push_back(c);
    }
  }
  double operator()(double x, int order = 0) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const double xi = std::numbers::pi * k_[i] / L_;
      acc += std::real(c_[i] * std::pow(std::complex<double>(0.0, xi), order) *
                       std::exp(std::complex<double>(0.0, xi * x)));
    }
    return acc;
  }

 private:
  double L_;
  std::vector<double> k_;
  std::vector<std::complex<double>> c_;
};

// Gauss-Legendre nodes and weights on [-1, 1] (8 points).
inline const double gl8_x[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                                0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline const double gl8_w[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                                0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// Composite 8-point Gauss-Legendre over [a, b] split into m panels.
template <class F>
double gauss(const F& f, double a, double b, int m) {
  const double h = (b - a) / m;
  double acc = 0.0;
  for (int p = 0; p < m; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < 8; ++i) acc += gl8_w[i] * f(mid + 0.5 * h * gl8_x[i]);
  }
  return 0.5 * h * acc;
}

}  // namespace oracle
