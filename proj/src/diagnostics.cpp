#include "muskat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "muskat/quadrature.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

namespace {

constexpr double pi = std::numbers::pi;

double bump(double s) { return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; }

double bump_prime(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double d = 1.0 - s * s;
  return bump(s) * (-2.0 * s / (d * d));
}

double wrap(double d, double half_period) {
  const double period = 2.0 * half_period;
  return d - period * std::round(d / period);
}

}  // namespace

DiagnosticsRecord measure(const GridFunction& g, double t, std::size_t step, const ContourEvaluator& ev,
                          const MeasureOptions& opts) {
  DiagnosticsRecord r;
  r.t = t;
  r.step = step;
  const Interpolant p(g);
  r.sup_f = p.max();
  r.inf_f = p.min();
  r.sup_slope = interpolant_sup_abs(derivative(g, 1));
  r.l2_sq = l2_norm_sq(g);
  r.l1 = l1_norm(g);
  r.wiener1 = wiener_norm(g, 1.0);
  r.wiener2d = wiener_norm(g, 2.0 + opts.wiener_delta);
  r.mean = mean(g);
  if (opts.dissipation) {
    const auto d = dissipation_estimate(g, ev, opts.dissipation_stride);
    r.dissipation = d.value;
    r.dissipation_error = d.error_bar;
  }
  r.tail_bound = ev.tail_bound(g);
  return r;
}

DissipationEstimate dissipation_estimate(const GridFunction& g, const ContourEvaluator& ev, std::size_t decimate) {
  if (decimate == 0) throw std::invalid_argument("dissipation_estimate: decimate must be positive");
  DissipationEstimate e{};
  e.fine = ev.dissipation(g, decimate);
  const std::size_t twice = 2 * decimate;
  if (g.size() % twice != 0 || ev.cut() % twice != 0) {
    // The stride cannot be doubled on this lattice: no error estimate.
    e.coarse = std::numeric_limits<double>::quiet_NaN();
    e.value = e.fine;
    e.error_bar = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  e.coarse = ev.dissipation(g, twice);
  e.value = decimate == 1 ? e.fine : e.fine + (e.fine - e.coarse) / 3.0;
  e.error_bar = std::abs(e.fine - e.coarse);
  return e;
}

double dissipation_integral(const GridFunction& g, std::size_t decimate, const QuadratureConfig& quad) {
  const ContourEvaluator ev(g.spec(), quad);
  return dissipation_estimate(g, ev, decimate).value;
}

std::vector<BalanceReport> energy_balance(const std::vector<DiagnosticsRecord>& records, const PhysParams& p) {
  std::vector<BalanceReport> out;
  if (records.empty()) return out;
  const double factor = (p.rho2() - p.rho1()) / (2.0 * pi);
  const double e0 = records.front().l2_sq;
  double integral = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i > 0) {
      const auto& a = records[i - 1];
      const auto& b = records[i];
      integral += 0.5 * (b.t - a.t) * (a.dissipation + b.dissipation);
    }
    BalanceReport r{};
    r.t = records[i].t;
    r.lhs = records[i].l2_sq + factor * integral;
    r.rhs = e0;
    r.residual = r.lhs - r.rhs;
    r.relative_residual = r.residual / std::max(r.rhs, 1e-300);
    out.push_back(r);
  }
  return out;
}

std::vector<BalanceReport> energy_balance(const Trajectory& traj, const PhysParams& p, const QuadratureConfig& quad) {
  std::vector<DiagnosticsRecord> records;
  if (traj.empty()) return {};
  const ContourEvaluator ev(traj.states.front().spec(), quad);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    DiagnosticsRecord r;
    r.t = traj.times[i];
    r.step = traj.steps[i];
    r.l2_sq = l2_norm_sq(traj.states[i]);
    r.dissipation = ev.dissipation(traj.states[i]);
    records.push_back(r);
  }
  return energy_balance(records, p);
}

DissipationBound dissipation_bound_check(const GridFunction& g, const QuadratureConfig& quad) {
  const ContourEvaluator ev(g.spec(), quad);
  const auto d = dissipation_estimate(g, ev, 1);
  DissipationBound b{};
  b.dissipation = d.value;
  b.bound = 4.0 * pi * std::sqrt(2.0) * l1_norm(g);
  b.tolerance = std::isfinite(d.error_bar) ? d.error_bar : 0.0;
  b.ok = b.dissipation <= b.bound + b.tolerance;
  b.ratio = b.bound > 0.0 ? b.dissipation / b.bound : 0.0;
  return b;
}

OracleCheck log_integral_oracle() {
  const double half = quadrature::integrate_half_line([](double a) { return std::log1p(1.0 / (a * a)); });
  OracleCheck c{};
  c.value = 2.0 * half;
  c.exact = 2.0 * pi;
  c.error = std::abs(c.value - c.exact);
  return c;
}

MonotonicityReport maximum_principle_monitor(const std::vector<DiagnosticsRecord>& records, double slack_per_step) {
  MonotonicityReport rep;
  if (records.empty()) return rep;
  rep.slope_checked = records.front().sup_slope < 1.0;
  auto flag = [&](double t) {
    if (!rep.first_violation_time) rep.first_violation_time = t;
  };
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& b = records[i];
    if (b.sup_slope >= 1.0 && rep.slope_checked) {
      rep.slope_below_one = false;
      flag(b.t);
    }
    if (i == 0) continue;
    const auto& a = records[i - 1];
    const double steps = static_cast<double>(std::max<std::size_t>(1, b.step - a.step));
    const double allowed = slack_per_step * steps;
    const double up = b.sup_f - a.sup_f;
    const double down = a.inf_f - b.inf_f;
    const double grow = b.sup_slope - a.sup_slope;
    rep.worst_sup_increase = std::max(rep.worst_sup_increase, up);
    rep.worst_inf_decrease = std::max(rep.worst_inf_decrease, down);
    if (up > allowed) {
      rep.sup_nonincreasing = false;
      flag(b.t);
    }
    if (down > allowed) {
      rep.inf_nondecreasing = false;
      flag(b.t);
    }
    if (rep.slope_checked) {
      rep.worst_slope_increase = std::max(rep.worst_slope_increase, grow);
      if (grow > allowed) {
        rep.slope_nonincreasing = false;
        flag(b.t);
      }
    }
  }
  double st = 0, sy = 0, stt = 0, sty = 0, count = 0;
  for (const auto& r : records) {
    const double amp = std::max(std::abs(r.sup_f), std::abs(r.inf_f));
    if (!(amp > 0.0)) continue;
    const double y = std::log(amp);
    st += r.t;
    sy += y;
    stt += r.t * r.t;
    sty += r.t * y;
    count += 1.0;
  }
  const double den = count * stt - st * st;
  if (count >= 2.0 && den > 0.0) rep.observed_decay_rate = -(count * sty - st * sy) / den;
  return rep;
}

MonotonicityReport maximum_principle_monitor(const Trajectory& traj, double slack_per_step) {
  std::vector<DiagnosticsRecord> records;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    DiagnosticsRecord r;
    const Interpolant p(traj.states[i]);
    r.t = traj.times[i];
    r.step = traj.steps[i];
    r.sup_f = p.max();
    r.inf_f = p.min();
    r.sup_slope = interpolant_sup_abs(derivative(traj.states[i], 1));
    records.push_back(r);
  }
  return maximum_principle_monitor(records, slack_per_step);
}

WienerDecayReport wiener_decay_monitor(const std::vector<DiagnosticsRecord>& records, double threshold,
                                       double high_order_threshold, double slack_per_step) {
  WienerDecayReport rep;
  if (records.empty()) return rep;
  rep.applicable = records.front().wiener1 < threshold;
  rep.high_order_applicable = records.front().wiener1 < high_order_threshold;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& b = records[i];
    const double allowed = slack_per_step * static_cast<double>(std::max<std::size_t>(1, b.step - a.step));
    const double d1 = b.wiener1 - a.wiener1;
    const double d2 = b.wiener2d - a.wiener2d;
    rep.worst_wiener1_increase = std::max(rep.worst_wiener1_increase, d1);
    rep.worst_wiener2d_increase = std::max(rep.worst_wiener2d_increase, d2);
    if (rep.applicable && d1 > allowed) rep.wiener1_nonincreasing = false;
    if (rep.high_order_applicable && d2 > allowed) rep.wiener2d_nonincreasing = false;
  }
  return rep;
}

double TestFunction::value(double x, double t, double half_period) const {
  return bump((t - t_center) / t_halfwidth) * bump(wrap(x - x_center, half_period) / x_halfwidth);
}

double TestFunction::dt(double x, double t, double half_period) const {
  return bump_prime((t - t_center) / t_halfwidth) / t_halfwidth *
         bump(wrap(x - x_center, half_period) / x_halfwidth);
}

double TestFunction::dx(double x, double t, double half_period) const {
  return bump((t - t_center) / t_halfwidth) * bump_prime(wrap(x - x_center, half_period) / x_halfwidth) /
         x_halfwidth;
}

WeakFormReport weak_form_residual(const Trajectory& traj, const TestFunction& eta, const PhysParams& p,
                                  const QuadratureConfig& quad) {
  WeakFormReport rep{};
  if (traj.empty()) return rep;
  const GridSpec& spec = traj.states.front().spec();
  const ContourEvaluator ev(spec, quad);
  const double L = spec.half_period();
  const double dx = spec.dx();
  const double factor = (p.rho2() - p.rho1()) / (2.0 * pi);

  std::vector<double> lhs_t(traj.size()), rhs_t(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const auto& f = traj.states[i];
    double a = 0.0, b = 0.0;
    bool active = false;
    for (std::size_t j = 0; j < spec.size(); ++j) {
      const double x = spec.x(j);
      a += eta.dt(x, t, L) * f[j];
      active = active || eta.value(x, t, L) != 0.0 || eta.dx(x, t, L) != 0.0;
    }
    if (active) {
      const GridFunction A = ev.arctan_integral(f);
      for (std::size_t j = 0; j < spec.size(); ++j) b += eta.dx(spec.x(j), t, L) * A[j];
    }
    lhs_t[i] = a * dx;
    rhs_t[i] = factor * b * dx;
  }
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double h = traj.times[i] - traj.times[i - 1];
    rep.lhs += 0.5 * h * (lhs_t[i] + lhs_t[i - 1]);
    rep.rhs += 0.5 * h * (rhs_t[i] + rhs_t[i - 1]);
  }
  const auto& f0 = traj.states.front();
  double initial = 0.0;
  for (std::size_t j = 0; j < spec.size(); ++j) initial += eta.value(spec.x(j), 0.0, L) * f0[j];
  rep.lhs += initial * dx;
  rep.residual = rep.lhs - rep.rhs;
  const double scale = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  rep.relative = scale > 0.0 ? std::abs(rep.residual) / scale : 0.0;
  return rep;
}

double G_function(double x) { return x * std::atan(x) - 0.5 * std::log1p(x * x); }

}  // namespace muskat
