#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "muskat/contour.hpp"
#include "muskat/grid.hpp"
#include "muskat/trajectory.hpp"

namespace muskat {

struct DiagnosticsRecord {
  double t = 0.0;
  std::size_t step = 0;
  double sup_f = 0.0;
  double inf_f = 0.0;
  /// sup |f_x|.
  double sup_slope = 0.0;
  double l2_sq = 0.0;
  double l1 = 0.0;
  double wiener1 = 0.0;
  /// Wiener norm of order 2 + delta.
  double wiener2d = 0.0;
  double dissipation = 0.0;
  double dissipation_error = 0.0;
  double mean = 0.0;
  /// Neglected far field of T.
  double tail_bound = 0.0;
};

struct MeasureOptions {
  double wiener_delta = 0.1;
  bool dissipation = true;
  std::size_t dissipation_stride = 1;
};

/// All per-snapshot quantities. Extrema are those of the trigonometric
/// interpolant. The evaluator must use eps = 0 when dissipation is requested.
DiagnosticsRecord measure(const GridFunction& g, double t, std::size_t step, const ContourEvaluator& ev,
                          const MeasureOptions& opts = {});

struct DissipationEstimate {
  /// Richardson value D_s + (D_s - D_2s) / 3 (just D_1 for stride 1).
  /// When 2s does not divide N and the lattice cut, value = D_s and the
  /// coarse value and error bar are NaN.
  double value;
  double error_bar;
  double fine;
  double coarse;
};

DissipationEstimate dissipation_estimate(const GridFunction& g, const ContourEvaluator& ev, std::size_t decimate = 1);

/// D(g) = int int ln(1 + ((f(x) - f(a)) / (x - a))^2) dx da.
double dissipation_integral(const GridFunction& g, std::size_t decimate = 1, const QuadratureConfig& quad = {});

struct BalanceReport {
  double t;
  /// ||f||^2(t) + (rho2 - rho1) / (2 pi) int_0^t D ds.
  double lhs;
  /// ||f_0||^2.
  double rhs;
  double residual;
  double relative_residual;
};

/// Trapezoid rule in time over the recorded dissipation values.
std::vector<BalanceReport> energy_balance(const std::vector<DiagnosticsRecord>& records, const PhysParams& p);
std::vector<BalanceReport> energy_balance(const Trajectory& traj, const PhysParams& p,
                                          const QuadratureConfig& quad = {});

struct DissipationBound {
  double dissipation;
  /// 4 pi sqrt(2) ||g||_{L^1}.
  double bound;
  double tolerance;
  bool ok;
  double ratio;
};

DissipationBound dissipation_bound_check(const GridFunction& g, const QuadratureConfig& quad = {});

struct OracleCheck {
  double value;
  double exact;
  double error;
};

/// int_R ln(1 + 1/a^2) da = 2 pi by double-exponential quadrature.
OracleCheck log_integral_oracle();

struct MonotonicityReport {
  bool sup_nonincreasing = true;
  bool inf_nondecreasing = true;
  /// Checked only when sup_slope(0) < 1.
  bool slope_checked = false;
  bool slope_nonincreasing = true;
  bool slope_below_one = true;
  double worst_sup_increase = 0.0;
  double worst_inf_decrease = 0.0;
  double worst_slope_increase = 0.0;
  std::optional<double> first_violation_time;
  /// Least-squares rate r in max|f| ~ exp(-r t), for the record.
  double observed_decay_rate = 0.0;

  bool ok() const { return sup_nonincreasing && inf_nondecreasing && slope_nonincreasing && slope_below_one; }
};

/// Successive records may differ in the wrong direction by at most
/// slack_per_step times the number of steps between them.
MonotonicityReport maximum_principle_monitor(const std::vector<DiagnosticsRecord>& records,
                                             double slack_per_step = 1e-8);
MonotonicityReport maximum_principle_monitor(const Trajectory& traj, double slack_per_step = 1e-8);

struct WienerDecayReport {
  /// ||f_0||_1 < threshold.
  bool applicable = false;
  bool wiener1_nonincreasing = true;
  /// ||f_0||_1 < high_order_threshold, the condition for the 2 + delta norm.
  bool high_order_applicable = false;
  bool wiener2d_nonincreasing = true;
  double worst_wiener1_increase = 0.0;
  double worst_wiener2d_increase = 0.0;

  bool ok() const { return wiener1_nonincreasing && wiener2d_nonincreasing; }
};

WienerDecayReport wiener_decay_monitor(const std::vector<DiagnosticsRecord>& records, double threshold,
                                       double high_order_threshold, double slack_per_step = 1e-8);

/// Separable test function eta(x, t) = b((t - t_c) / t_w) b((x - x_c) / x_w)
/// with the bump b(s) = exp(-1 / (1 - s^2)) on |s| < 1; x - x_c is taken
/// periodically.
struct TestFunction {
  double t_center;
  double t_halfwidth;
  double x_center;
  double x_halfwidth;

  double value(double x, double t, double half_period) const;
  double dt(double x, double t, double half_period) const;
  double dx(double x, double t, double half_period) const;
};

struct WeakFormReport {
  /// int int eta_t f dx dt + int eta(x, 0) f_0 dx.
  double lhs;
  /// int int eta_x (rho2 - rho1) / (2 pi) A dx dt.
  double rhs;
  double residual;
  double relative;
};

WeakFormReport weak_form_residual(const Trajectory& traj, const TestFunction& eta, const PhysParams& p,
                                  const QuadratureConfig& quad = {});

/// G(x) = x arctan x - ln sqrt(1 + x^2).
double G_function(double x);

}  // namespace muskat
