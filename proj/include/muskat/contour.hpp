#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "muskat/grid.hpp"

namespace muskat {

/// Densities of the upper (rho1) and lower (rho2) fluid. Only the stable
/// configuration rho2 > rho1 is accepted.
class PhysParams {
 public:
  PhysParams(double rho1, double rho2);

  /// rho1 = 0, rho2 = 2 pi, so that (rho2 - rho1) / (2 pi) = 1 and rho = pi.
  static PhysParams normalized() { return PhysParams(0.0, 2.0 * 3.14159265358979323846); }

  double rho1() const { return rho1_; }
  double rho2() const { return rho2_; }
  /// rho = (rho2 - rho1) / 2.
  double rho() const { return 0.5 * (rho2_ - rho1_); }

 private:
  double rho1_;
  double rho2_;
};

enum class QuadratureRule { midpoint, trapezoid };

/// Lattice rule for the alpha integrals.
///
/// The nodes are alpha_j = j h with h = dx / m and |j| <= cut = J m, where
/// J = round(tail_cut / dx). alpha_points counts the nonzero nodes, 2 J m, and
/// must be a positive multiple of 2 J; 0 selects m = 1 (nodes on the grid).
/// tail_cut = 0 means L.
struct QuadratureConfig {
  std::size_t alpha_points = 0;
  double tail_cut = 0.0;
  QuadratureRule rule = QuadratureRule::midpoint;
  /// Adds the leading far field beyond the cut through periodized lattice
  /// weights. The linear part is always exact.
  bool tail_correction = true;
};

struct RegularizationParams {
  double eps;
  double bigC;

  /// Throws std::invalid_argument unless 0 < eps <= 1/4 and bigC > 0.
  void validate() const;

  /// bigC = 2 rho / (pi min(c1, c2)), the smallest constant for which the
  /// a priori bounds hold.
  static RegularizationParams with_default_constant(double eps, const PhysParams& p);
};

/// Kernel constants of the two singular-integral forms of Lambda^{1-eps} d/dx:
/// c1 for (f_x(x) - f_x(x-a)) / |a|^{2-eps}, c2 for (f_x(x) - Delta_a f) / |a|^{2-eps}.
double kernel_constant_c1(double eps);
double kernel_constant_c2(double eps);

/// (g(x_i) - g(x_i - alpha)) / alpha with off-grid values from the
/// trigonometric interpolant; |alpha| < dx/100 returns g_x(x_i).
double delta_quotient(const GridFunction& g, std::size_t x_index, double alpha);

class QuadratureNotConverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precomputed lattice, far-field weights and symbols for one grid, rule and
/// kernel exponent eps (eps = 0 is the unregularized Muskat kernel).
class ContourEvaluator {
 public:
  ContourEvaluator(const GridSpec& spec, const QuadratureConfig& quad, double eps = 0.0);

  const GridSpec& spec() const { return spec_; }
  const QuadratureConfig& quadrature() const { return quad_; }
  double eps() const { return eps_; }
  /// Sub-cell refinement m and node spacing h = dx / m.
  std::size_t refinement() const { return m_; }
  double node_spacing() const { return h_; }
  /// Largest node index; the lattice covers |alpha| <= cut * h.
  std::size_t cut() const { return cut_; }
  std::size_t alpha_points() const { return 2 * cut_; }

  /// T(f) of the operator split (eps = 0 only).
  GridFunction T(const GridFunction& g) const;
  /// Term-by-term Taylor expansion of T in powers of the difference quotient.
  GridFunction T_series(const GridFunction& g, int n_terms) const;

  /// A(x) = PV int arctan(Delta_a f) da.
  GridFunction arctan_integral(const GridFunction& g) const;
  /// A minus its linear part.
  GridFunction arctan_nonlinear(const GridFunction& g) const;
  /// Linear part of A, exact in Fourier space.
  GridFunction arctan_linear(const GridFunction& g) const;
  /// Symbol of arctan_linear at wavenumber k.
  std::complex<double> linear_symbol(std::ptrdiff_t k) const;

  /// int int ln(1 + Delta^2) over one period in x and all alpha. The lattice
  /// part uses every stride-th node on both axes (eps = 0 only).
  double dissipation(const GridFunction& g, std::size_t stride = 1) const;

  /// Bound on sup |T| contributed by the alpha range beyond the cut that the
  /// evaluation neglects.
  double tail_bound(const GridFunction& g) const;

 private:
  struct Copies;
  Copies make_copies(const GridFunction& g, bool with_derivative) const;
  std::vector<double> tail_convolve(const std::vector<std::complex<double>>& weights_hat,
                                    const std::vector<std::vector<double>>& values) const;
  std::vector<double> cusp_correction(const std::vector<double>& fx) const;
  std::vector<double> cubic_tail_T(const Copies& c) const;

  GridSpec spec_;
  QuadratureConfig quad_;
  double eps_;
  std::size_t m_;
  std::size_t cut_;
  double h_;
  std::vector<double> node_weight_;  // index j = 0..cut
  std::vector<double> node_kernel_;  // |alpha_j|^eps / alpha_j for alpha_j = j h > 0
  // Sub-lattice spectra of the folded far-field weights, m blocks of N/2+1.
  std::vector<std::complex<double>> cubic_hat_;
  std::vector<std::complex<double>> quartic_hat_;
  double cubic_total_ = 0.0;
  double quartic_total_ = 0.0;
};

/// Result of eval_T_checked.
struct CheckedT {
  GridFunction value;
  /// sup |T_m - T_{m/2}| of the last doubling.
  double change;
  std::size_t alpha_points;
};

GridFunction eval_T(const GridFunction& g, const QuadratureConfig& quad);

/// eval_T with alpha-lattice doubling until successive results agree to
/// rel_tol of sup |T|; throws QuadratureNotConverged otherwise.
CheckedT eval_T_checked(const GridFunction& g, const QuadratureConfig& quad, double rel_tol = 1e-10,
                        int max_doublings = 4);

/// Throws std::invalid_argument when sup |g_x| >= 1.
GridFunction eval_T_series(const GridFunction& g, int n_terms, const QuadratureConfig& quad = {});

/// -rho (Lambda f + T(f)).
GridFunction eval_rhs_muskat(const GridFunction& g, const PhysParams& p, const QuadratureConfig& quad);
/// (rho / pi) d/dx A.
GridFunction eval_rhs_arctan(const GridFunction& g, const PhysParams& p, const QuadratureConfig& quad);
/// -eps C Lambda^{1-eps} f + eps f_xx + (rho / pi) d/dx A_eps, the last term
/// only when `transport` is set.
GridFunction eval_rhs_regularized(const GridFunction& g, const PhysParams& p, const RegularizationParams& r,
                                  const QuadratureConfig& quad, bool transport = true);

/// A(x) for the weak formulation.
GridFunction arctan_integral(const GridFunction& g, const QuadratureConfig& quad);

/// Neglected far field of T for this quadrature.
double tail_bound(const GridFunction& g, const QuadratureConfig& quad);

}  // namespace muskat
