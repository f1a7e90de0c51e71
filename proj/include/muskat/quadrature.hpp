#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace muskat::quadrature {

/// K(a) = |a|^{-p}, multiplied by sign(a) when odd. Decays fast enough for
/// lattice sums whenever p > 1.
struct PowerKernel {
  double p;
  bool odd;

  double operator()(double a) const;
  /// Integral of K over [a, inf) for a > 0.
  double tail_integral(double a) const;
};

/// Lattice far field folded onto one period.
///
/// Returns weights W[r], r in [0, period), with
///   sum_{j in Z, |j| > cut} h K(j h) u_{j mod period} = sum_r W[r] u_r
/// for any period-periodic sequence u. With `half_at_cut` the two nodes
/// j = +-cut contribute an additional h K(+-cut h) / 2 each, which completes a
/// trapezoid rule that stopped at |j| = cut.
std::vector<double> periodized_tail_weights(std::size_t period, double h, std::size_t cut,
                                            const PowerKernel& kernel, bool half_at_cut);

/// Double-exponential (exp-sinh) quadrature on (0, inf). Integrable endpoint
/// singularities at 0 and algebraic decay at infinity are both handled.
double integrate_half_line(const std::function<double(double)>& f, double rel_tol = 1e-13);

/// Double-exponential (tanh-sinh) quadrature on the finite interval (a, b).
double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-13);

}  // namespace muskat::quadrature
