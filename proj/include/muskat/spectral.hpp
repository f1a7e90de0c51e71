#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "muskat/grid.hpp"

namespace muskat {

/// Fourier coefficients of a grid function, normalised so that
///   f(x) = sum_k coeffs[k] exp(i pi k x / L),   k in [-N/2, N/2).
class Spectrum {
 public:
  Spectrum(GridSpec spec, std::vector<std::complex<double>> fft_ordered);

  static Spectrum zeros(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  std::complex<double> operator[](std::ptrdiff_t k) const { return coeffs_[index(k)]; }
  std::complex<double>& at(std::ptrdiff_t k) { return coeffs_[index(k)]; }

  /// Coefficients in FFT order: k = 0, 1, ..., N/2-1, -N/2, ..., -1.
  const std::vector<std::complex<double>>& fft_ordered() const { return coeffs_; }

  /// Largest |c[-k] - conj(c[k])| over all k.
  double hermitian_defect() const;

 private:
  std::size_t index(std::ptrdiff_t k) const;

  GridSpec spec_;
  std::vector<std::complex<double>> coeffs_;
};

Spectrum forward_transform(const GridFunction& g);

/// Throws std::invalid_argument when the spectrum is not Hermitian to
/// within 1e-10 of its largest coefficient.
GridFunction inverse_transform(const Spectrum& s);

/// Symbol of a Fourier multiplier as a function of the integer wavenumber.
using Symbol = std::function<std::complex<double>(std::ptrdiff_t k)>;

/// Applies a Hermitian symbol (symbol(-k) == conj(symbol(k))). The Nyquist
/// mode is multiplied by Re symbol(N/2), the even part, which keeps the
/// result real.
GridFunction apply_multiplier(const GridFunction& g, const Symbol& symbol);

/// Lambda^s = (-d^2/dx^2)^{s/2} with symbol |xi_k|^s; s in [0, 2].
GridFunction lambda_pow(const GridFunction& g, double s);

/// Lambda^s through its singular-integral form
///   c(s) PV int (g(x) - g(x - a)) / |a|^{1+s} da,   s in [0.05, 0.95],
/// on the node lattice a = j dx. With tail_cut >= L the full far field of the
/// periodic function is summed through periodized lattice weights; a
/// shorter tail_cut keeps only the local part g(x) beyond the cut, which is
/// the right far field for data that decay within the torus.
GridFunction kernel_lambda_pow(const GridFunction& g, double s, double tail_cut);

/// Normalisation c(s) making the kernel form agree with the symbol |xi|^s.
double kernel_lambda_constant(double s);

/// Spectral derivative of order 1, 2 or 3, symbol (i xi_k)^order.
GridFunction derivative(const GridFunction& g, int order);

/// Wiener norm ||g||_s = sum_k |xi_k|^s |c_k|.
double wiener_norm(const GridFunction& g, double s);

/// Periodic trapezoid integrals over one period.
double l2_norm_sq(const GridFunction& g);
double l1_norm(const GridFunction& g);
double mean(const GridFunction& g);

/// Band-limited resampling onto a grid with the same L (zero padding or
/// truncation of the spectrum).
GridFunction resample(const GridFunction& g, const GridSpec& target);

/// Trigonometric interpolant of a grid function, evaluable off the grid.
class Interpolant {
 public:
  explicit Interpolant(const GridFunction& g);

  double value(double x) const { return evaluate(x, 0); }
  /// d^order/dx^order of the interpolant, order in [0, 3].
  double evaluate(double x, int order) const;

  /// Maximum of the interpolant over the torus: the grid maxima are refined
  /// by safeguarded Newton iteration on the derivative.
  double max() const;
  double min() const;

 private:
  double refine_max(std::size_t j, double sign) const;

  GridFunction samples_;
  Spectrum spectrum_;
};

/// sup |g| of the interpolant.
double interpolant_sup_abs(const GridFunction& g);

}  // namespace muskat
