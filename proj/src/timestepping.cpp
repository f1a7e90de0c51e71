#include "muskat/timestepping.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "muskat/spectral.hpp"

namespace muskat {

namespace {

constexpr double pi = std::numbers::pi;

double transport_factor(double eps) {
  if (eps == 0.0) return 1.0;
  return (2.0 / pi) * std::tgamma(eps) * std::sin(0.5 * pi * eps);
}

std::string to_string_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

GridFunction checked(GridFunction g) {
  for (double v : g.values())
    if (!std::isfinite(v)) throw NonFiniteError("step: non-finite value in the new state");
  return g;
}

}  // namespace

void StepperConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("StepperConfig: cfl must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw std::invalid_argument("StepperConfig: dt_max must be positive");
  if (!(t_final > 0.0)) throw std::invalid_argument("StepperConfig: t_final must be positive");
  if (dt_fixed && !(*dt_fixed > 0.0)) throw std::invalid_argument("StepperConfig: dt must be positive");
}

double linear_symbol(std::ptrdiff_t k, const PhysParams& p, const std::optional<RegularizationParams>& r,
                     const GridSpec& spec, bool transport) {
  const double xi = std::abs(spec.wavenumber(k));
  if (!r || r->eps == 0.0) {
    return -p.rho() * xi;
  }
  const double e = r->eps;
  const double frac = xi == 0.0 ? 0.0 : std::pow(xi, 1.0 - e);
  double s = -e * r->bigC * frac - e * xi * xi;
  if (transport) s -= p.rho() * transport_factor(e) * frac;
  return s;
}

Dynamics::Dynamics(const GridSpec& spec, const PhysParams& p, const QuadratureConfig& quad, RhsForm form,
                   std::optional<RegularizationParams> r, bool transport)
    : phys_(p),
      reg_(r),
      form_(form),
      transport_(transport),
      evaluator_(spec, quad, form == RhsForm::regularized && r ? r->eps : 0.0) {
  if (form == RhsForm::regularized) {
    if (!r) throw std::invalid_argument("Dynamics: the regularized form needs RegularizationParams");
    r->validate();
  } else if (r) {
    throw std::invalid_argument("Dynamics: RegularizationParams given for an unregularized form");
  }
}

double Dynamics::symbol(std::ptrdiff_t k) const { return linear_symbol(k, phys_, reg_, spec(), transport_); }

GridFunction Dynamics::linear(const GridFunction& g) const {
  return apply_multiplier(g, [this](std::ptrdiff_t k) { return std::complex<double>(symbol(k), 0.0); });
}

GridFunction Dynamics::propagate(const GridFunction& g, double tau) const {
  return apply_multiplier(g, [this, tau](std::ptrdiff_t k) { return std::complex<double>(std::exp(tau * symbol(k)), 0.0); });
}

GridFunction Dynamics::nonlinear(const GridFunction& g) const {
  switch (form_) {
    case RhsForm::split:
      return -phys_.rho() * evaluator_.T(g);
    case RhsForm::arctan:
      return (phys_.rho() / pi) * derivative(evaluator_.arctan_nonlinear(g), 1);
    case RhsForm::regularized:
      if (!transport_) return GridFunction::zeros(spec());
      return (phys_.rho() / pi) * derivative(evaluator_.arctan_nonlinear(g), 1);
  }
  throw std::logic_error("Dynamics: unknown form");
}

GridFunction Dynamics::rhs(const GridFunction& g) const { return linear(g) + nonlinear(g); }

GridFunction step(const GridFunction& g, double dt, const Dynamics& dyn, Scheme scheme) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  if (scheme == Scheme::explicit_rk4) {
    const GridFunction k1 = dyn.rhs(g);
    const GridFunction k2 = dyn.rhs(g + (0.5 * dt) * k1);
    const GridFunction k3 = dyn.rhs(g + (0.5 * dt) * k2);
    const GridFunction k4 = dyn.rhs(g + dt * k3);
    return checked(g + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4));
  }
  // Lawson RK4 in the variable exp(-t L) u.
  const double half = 0.5 * dt;
  const GridFunction k1 = dyn.nonlinear(g);
  const GridFunction e2g = dyn.propagate(g, half);
  const GridFunction k2 = dyn.nonlinear(dyn.propagate(g + half * k1, half));
  const GridFunction k3 = dyn.nonlinear(e2g + half * k2);
  const GridFunction k4 = dyn.nonlinear(dyn.propagate(g, dt) + dt * dyn.propagate(k3, half));
  const GridFunction stages = dyn.propagate(k1, dt) + 2.0 * dyn.propagate(k2 + k3, half) + k4;
  return checked(dyn.propagate(g, dt) + (dt / 6.0) * stages);
}

double choose_dt(const GridFunction& g, const Dynamics& dyn, const StepperConfig& cfg) {
  if (cfg.dt_fixed) return *cfg.dt_fixed;
  const double dx = g.spec().dx();
  const double rho = dyn.phys().rho();
  const double s = derivative(g, 1).max_abs();
  double dt = cfg.dt_max;
  if (cfg.scheme == Scheme::explicit_rk4) {
    dt = std::min(dt, cfg.cfl * dx / (rho * (1.0 + s * s)));
    if (const auto& r = dyn.regularization()) dt = std::min(dt, cfg.cfl * dx * dx / (2.0 * r->eps));
  } else if (s > 0.0) {
    dt = std::min(dt, cfg.cfl * dx / (rho * s * s));
  }
  return dt;
}

SimulationResult simulate(const GridFunction& f0, const Dynamics& dyn, const StepperConfig& cfg,
                          const SimulationOptions& opts) {
  cfg.validate();
  if (opts.cadence == 0) throw std::invalid_argument("simulate: cadence must be positive");
  if (!(f0.spec() == dyn.spec())) throw std::invalid_argument("simulate: initial data on a different grid");

  MeasureOptions mopts = opts.measure;
  if (dyn.evaluator().eps() != 0.0) mopts.dissipation = false;

  SimulationResult res;
  auto record = [&](const GridFunction& u, double t, std::size_t n) {
    res.trajectory.append(t, n, u);
    res.diagnostics.push_back(measure(u, t, n, dyn.evaluator(), mopts));
  };

  GridFunction u = f0;
  double t = 0.0;
  std::size_t n = 0;
  record(u, t, n);
  if (const double s0 = res.diagnostics.back().sup_slope; opts.slope_subcritical && s0 >= 1.0)
    throw SimulationAborted("simulate: initial sup |f_x| = " + to_string_g(s0) + " in a run declared slope-subcritical",
                            u, t, n, std::move(res));
  const double t_end = cfg.t_final;
  while (t < t_end * (1.0 - 1e-14)) {
    double dt = choose_dt(u, dyn, cfg);
    bool last = false;
    if (t + dt >= t_end * (1.0 - 1e-12)) {
      dt = t_end - t;
      last = true;
    }
    try {
      GridFunction next = step(u, dt, dyn, cfg.scheme);
      u = std::move(next);
    } catch (const NonFiniteError&) {
      throw SimulationAborted("simulate: non-finite state in the step from t = " + to_string_g(t) +
                                  " (dt = " + to_string_g(dt) + ")",
                              u, t, n, std::move(res));
    }
    t = last ? t_end : t + dt;
    ++n;
    if (opts.slope_subcritical) {
      const double s = interpolant_sup_abs(derivative(u, 1));
      if (s >= 1.0)
        throw SimulationAborted("simulate: sup |f_x| reached " + to_string_g(s) + " at t = " + to_string_g(t) +
                                    " in a run declared slope-subcritical",
                                u, t, n, std::move(res));
    }
    if (last || n % opts.cadence == 0) record(u, t, n);
  }
  return res;
}

}  // namespace muskat
