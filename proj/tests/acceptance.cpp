// Acceptance battery: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "muskat/cli.hpp"
#include "muskat/constants.hpp"
#include "muskat/contour.hpp"
#include "muskat/diagnostics.hpp"
#include "muskat/initdata.hpp"
#include "muskat/spectral.hpp"
#include "muskat/timestepping.hpp"

using namespace muskat;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s criterion %2d  %-28s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const PhysParams phys = PhysParams::normalized();

GridFunction gaussian(const GridSpec& g, double slope) {
  ProfileSpec ps;
  ps.width = 4.0;
  ps.target_slope = slope;
  return build_profile(ps, g).f;
}

// The criterion-2 run: Gaussian of slope 0.5 on L = 16 pi up to T = 1,
// recorded at every step.
SimulationResult balance_run(std::size_t n, double dt) {
  const GridSpec g(n, 16.0 * pi);
  const Dynamics dyn(g, phys, {}, RhsForm::split);
  StepperConfig sc;
  sc.dt_max = dt;
  sc.t_final = 1.0;
  SimulationOptions so;
  so.cadence = 1;
  return simulate(gaussian(g, 0.5), dyn, sc, so);
}

double worst_balance(const SimulationResult& r) {
  double w = 0.0;
  for (const auto& b : energy_balance(r.diagnostics, phys)) w = std::max(w, std::abs(b.relative_residual));
  return w;
}

const TestFunction eta{0.5, 0.4, 0.0, 8.0};

}  // namespace

int main() {
  std::printf("acceptance battery\n");

  report(1, "constants reproduction", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream out0, out1;
    const int rc0 = cli::cmd_constants(0.0, 1e-15, out0);
    const int rc1 = cli::cmd_constants(0.1, 1e-15, out1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double c0 = constants::solve_c0(0.0);
    const double radical = constants::c0_delta0_radical();
    const double thr = constants::threshold_sqrt();
    const double s = constants::series_sum(0.1, 0.2);
    const bool ok = rc0 == 0 && rc1 == 0 && out0.str().find("0.21996176488353") != std::string::npos &&
                    std::abs(c0 - 0.2199617648835399) <= 1e-10 && std::abs(c0 - radical) <= 1e-10 &&
                    std::abs(c0 - radical) <= 1e-12 && s < 1.0 && std::abs(thr - 0.256400964) <= 1e-9 &&
                    secs < 1.0;
    return Outcome{ok, "c0 = " + fmt("%.16f", c0) + ", |c0 - radical| = " + fmt("%.1e", std::abs(c0 - radical)) +
                           ", S(0.1, 1/5) = " + fmt("%.6f", s) + ", threshold = " + fmt("%.9f", thr) +
                           ", both commands " + fmt("%.3f", secs) + " s"};
  });

  SimulationResult coarse = balance_run(512, 1.0 / 64.0);
  report(2, "log conservation law", [&] {
    const double r1 = worst_balance(coarse);
    const SimulationResult fine = balance_run(1024, 1.0 / 128.0);
    const double r2 = worst_balance(fine);
    return Outcome{r1 < 1e-3 && r2 <= r1 / 2.0, "max |relative residual| " + fmt("%.3e", r1) + " at N = 512, " +
                                                     fmt("%.3e", r2) + " at N = 1024, ratio " + fmt("%.2f", r1 / r2) +
                                                     " >= 2"};
  });

  report(3, "dissipation bound", [&] {
    double worst_ratio = 0.0, min_margin = INFINITY;
    bool ok = true;
    for (const auto& r : coarse.diagnostics) {
      const double bound = 4.0 * pi * std::sqrt(2.0) * r.l1;
      ok = ok && r.dissipation <= bound;
      worst_ratio = std::max(worst_ratio, r.dissipation / bound);
      min_margin = std::min(min_margin, bound - r.dissipation);
    }
    const auto o = log_integral_oracle();
    ok = ok && o.error <= 1e-6;
    return Outcome{ok, "max D / bound " + fmt("%.4f", worst_ratio) + ", min margin " + fmt("%.3e", min_margin) +
                           " over " + std::to_string(coarse.diagnostics.size()) + " samples, oracle error " +
                           fmt("%.1e", o.error)};
  });

  report(4, "maximum principles", [] {
    const GridSpec g(512, 16.0 * pi);
    const Dynamics dyn(g, phys, {}, RhsForm::split);
    std::string detail;
    bool ok = true;
    for (double s : {0.3, 0.5, 0.9}) {
      StepperConfig sc;
      sc.dt_max = 1.0 / 64.0;
      sc.t_final = 1.0;
      SimulationOptions so;
      so.cadence = 1;
      so.measure.dissipation = false;
      so.slope_subcritical = true;
      const auto res = simulate(gaussian(g, s), dyn, sc, so);
      const auto mp = maximum_principle_monitor(res.diagnostics, 1e-8);
      ok = ok && mp.ok() && mp.slope_checked;
      detail += fmt("slope %.1f: ", s) + (mp.ok() ? "ok" : "violated") + fmt(" (final slope %.3f, ", res.diagnostics.back().sup_slope) +
                fmt("decay rate %.3f); ", mp.observed_decay_rate);
    }
    return Outcome{ok, detail};
  });

  report(5, "Wiener-norm decay", [] {
    const GridSpec g(512, 16.0 * pi);
    ProfileSpec ps;
    ps.width = 4.0;
    ps.target_wiener1 = 0.2;
    const Dynamics dyn(g, phys, {}, RhsForm::split);
    StepperConfig sc;
    sc.dt_max = 1.0 / 64.0;
    sc.t_final = 1.0;
    SimulationOptions so;
    so.cadence = 1;
    so.measure.dissipation = false;
    so.measure.wiener_delta = 0.1;
    const auto res = simulate(build_profile(ps, g).f, dyn, sc, so);
    const auto w = wiener_decay_monitor(res.diagnostics, constants::threshold_sqrt(), constants::solve_c0(0.1), 1e-8);
    const auto& a = res.diagnostics.front();
    const auto& b = res.diagnostics.back();
    return Outcome{w.applicable && w.high_order_applicable && w.ok(),
                   fmt("||f||_1 %.4f -> ", a.wiener1) + fmt("%.4f, ", b.wiener1) + fmt("||f||_2.1 %.4f -> ", a.wiener2d) +
                       fmt("%.4f", b.wiener2d)};
  });

  report(6, "linearization consistency", [] {
    const GridSpec g(64, pi);
    const Dynamics dyn(g, phys, {}, RhsForm::split);
    std::vector<double> ratio;
    std::string detail;
    for (double a : {0.01, 0.05, 0.1}) {
      ProfileSpec ps;
      ps.kind = ProfileKind::single_mode;
      ps.amplitude = a;  // slope a for sin(x)
      StepperConfig sc;
      sc.dt_fixed = 1e-3;
      sc.t_final = 0.01;
      SimulationOptions so;
      so.cadence = 1000;
      so.measure.dissipation = false;
      const auto res = simulate(build_profile(ps, g).f, dyn, sc, so);
      const double c0 = std::abs(forward_transform(res.trajectory.states.front())[1]);
      const double c1 = std::abs(forward_transform(res.trajectory.states.back())[1]);
      const double rate = -std::log(c1 / c0) / 0.01;
      const double dev = rate - phys.rho() * g.wavenumber(1);
      ratio.push_back(dev / (a * a));
      detail += fmt("slope %.2f: ", a) + fmt("dev/slope^2 = %.4f; ", dev / (a * a));
    }
    const double hi = std::max({std::abs(ratio[0]), std::abs(ratio[1]), std::abs(ratio[2])});
    const double lo = std::min({std::abs(ratio[0]), std::abs(ratio[1]), std::abs(ratio[2])});
    const bool same_sign = (ratio[0] > 0) == (ratio[1] > 0) && (ratio[1] > 0) == (ratio[2] > 0);
    return Outcome{same_sign && lo > 0.0 && hi / lo <= 3.0, detail + fmt("spread %.3f <= 3", hi / lo)};
  });

  report(7, "oracle equivalences", [] {
    const GridSpec g(512, 16.0 * pi);
    const QuadratureConfig q;
    const GridFunction f = gaussian(g, 0.5);
    const auto a = eval_rhs_muskat(f, phys, q);
    const auto b = eval_rhs_arctan(f, phys, q);
    const double d_form = (a - b).max_abs() / a.max_abs();
    const GridFunction f3 = gaussian(g, 0.3);
    const auto t = eval_T(f3, q);
    const double d_series = (t - eval_T_series(f3, 6, q)).max_abs() / t.max_abs();
    std::vector<double> err;
    for (std::size_t n : {64, 128, 256, 512, 1024}) {
      const GridSpec gs(n, pi);
      const auto u = GridFunction::sample(gs, [](double x) { return std::sin(x) + 0.5 * std::cos(2.0 * x); });
      err.push_back((kernel_lambda_pow(u, 0.5, pi) - lambda_pow(u, 0.5)).max_abs());
    }
    double min_order = INFINITY;
    for (std::size_t i = 1; i < err.size(); ++i) min_order = std::min(min_order, std::log2(err[i - 1] / err[i]));
    return Outcome{d_form < 1e-6 && d_series < 1e-6 && min_order >= 1.0,
                   "forms " + fmt("%.1e", d_form) + ", series " + fmt("%.1e", d_series) + ", kernel order >= " +
                       fmt("%.2f", min_order)};
  });

  report(8, "mollification", [] {
    const GridSpec g(512, 16.0 * pi);
    ProfileSpec ps;
    ps.width = 4.0;
    ps.center = 12.0;
    ps.keep_mean = true;
    ps.target_slope = 0.8;
    const auto p = build_profile(ps, g);
    bool ok = true;
    std::string detail = fmt("sup %.6f, ", p.sup_abs) + fmt("slope %.6f; ", p.sup_slope);
    for (double e : {1e-2, 1e-3, 1e-4}) {
      const auto m = mollify_approx(p.f, e);
      const double s = interpolant_sup_abs(m), sl = interpolant_sup_abs(derivative(m, 1));
      ok = ok && s <= p.sup_abs && sl <= p.sup_slope;
      detail += fmt("eps %.0e: ", e) + fmt("%.6f, ", s) + fmt("%.6f; ", sl);
    }
    return Outcome{ok, detail};
  });

  report(9, "weak-form residual", [&] {
    const auto w1 = weak_form_residual(coarse.trajectory, eta, phys);
    const auto fine = balance_run(1024, 1.0 / 128.0);
    const auto w2 = weak_form_residual(fine.trajectory, eta, phys);
    return Outcome{w1.relative < 1e-3 && w2.relative < w1.relative,
                   "relative residual " + fmt("%.3e", w1.relative) + " at N = 512, " + fmt("%.3e", w2.relative) +
                       " at N = 1024 (sides " + fmt("%.4e", w1.lhs) + ", " + fmt("%.4e)", w1.rhs)};
  });

  report(10, "temporal order", [] {
    const GridSpec g(256, 16.0 * pi);
    const Dynamics dyn(g, phys, {}, RhsForm::split);
    const GridFunction f0 = gaussian(g, 0.5);
    const auto run = [&](double dt) {
      StepperConfig sc;
      sc.dt_fixed = dt;
      sc.t_final = 1.0;
      SimulationOptions so;
      so.cadence = 100000;
      so.measure.dissipation = false;
      return simulate(f0, dyn, sc, so).trajectory.states.back();
    };
    const auto ref = run(1.0 / 256.0);
    std::vector<double> err;
    for (double dt : {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32}) err.push_back((run(dt) - ref).max_abs());
    double min_order = INFINITY;
    std::string detail = "orders";
    for (std::size_t i = 1; i < err.size(); ++i) {
      const double o = std::log2(err[i - 1] / err[i]);
      min_order = std::min(min_order, o);
      detail += fmt(" %.3f", o);
    }
    return Outcome{min_order >= 3.7, detail + " >= 3.7"};
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
