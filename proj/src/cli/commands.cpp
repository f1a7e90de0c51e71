#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "muskat/cli.hpp"
#include "muskat/constants.hpp"
#include "muskat/diagnostics.hpp"
#include "muskat/spectral.hpp"

namespace muskat::cli {

namespace {

using json = nlohmann::ordered_json;

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

struct Column {
  const char* name;
  const char* unit;
  const char* meaning;
};

// Units: lengths [L] and times [T] of the nondimensional problem.
constexpr Column diagnostic_columns[] = {
    {"t", "T", "time"},
    {"step", "1", "time-step index"},
    {"sup_f", "L", "maximum of the interface height (trigonometric interpolant)"},
    {"inf_f", "L", "minimum of the interface height (trigonometric interpolant)"},
    {"sup_slope", "1", "sup |f_x|"},
    {"l2_sq", "L^3", "squared L2 norm over one period"},
    {"l1", "L^2", "L1 norm over one period"},
    {"wiener1", "1", "Wiener norm sum |xi| |c_k|"},
    {"wiener2d", "L^-(1+delta)", "Wiener norm sum |xi|^(2+delta) |c_k|"},
    {"dissipation", "L^2", "D = int int ln(1 + ((f(x)-f(x-a))/a)^2) dx da (0 when not measured)"},
    {"dissipation_error", "L^2", "error bar of dissipation from stride doubling"},
    {"mean", "L", "mean height over one period"},
    {"tail_bound", "1", "bound on the neglected far field of T(f), same units as Lambda f"},
    {"balance_lhs", "L^3", "||f||^2(t) + (rho2-rho1)/(2 pi) int_0^t D ds"},
    {"balance_rhs", "L^3", "||f_0||^2"},
    {"balance_residual", "L^3", "balance_lhs - balance_rhs"},
    {"balance_relative_residual", "1", "balance_residual / max(balance_rhs, tiny)"},
};

void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& rec,
                           const std::vector<BalanceReport>& bal) {
  std::ofstream out(path);
  out << "# muskat diagnostics series\n";
  out << "# L = length unit of x and f, T = time unit\n";
  for (const auto& c : diagnostic_columns) out << "# " << c.name << " [" << c.unit << "]: " << c.meaning << "\n";
  bool first = true;
  for (const auto& c : diagnostic_columns) {
    out << (first ? "" : ",") << c.name;
    first = false;
  }
  out << "\n";
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const auto& r = rec[i];
    const auto& b = bal[i];
    out << sci(r.t) << "," << r.step << "," << sci(r.sup_f) << "," << sci(r.inf_f) << "," << sci(r.sup_slope) << ","
        << sci(r.l2_sq) << "," << sci(r.l1) << "," << sci(r.wiener1) << "," << sci(r.wiener2d) << ","
        << sci(r.dissipation) << "," << sci(r.dissipation_error) << "," << sci(r.mean) << "," << sci(r.tail_bound)
        << "," << sci(b.lhs) << "," << sci(b.rhs) << "," << sci(b.residual) << "," << sci(b.relative_residual)
        << "\n";
  }
}

void write_state_csv(const std::filesystem::path& path, const GridFunction& f, double t, std::size_t step) {
  std::ofstream out(path);
  out << "# t = " << sci(t) << " [T], step = " << step << "\n";
  out << "# x [L]: node coordinate, f [L]: interface height\n";
  out << "x,f\n";
  for (std::size_t j = 0; j < f.size(); ++j) out << sci(f.spec().x(j)) << "," << sci(f[j]) << "\n";
}

std::string form_name(RhsForm f) {
  switch (f) {
    case RhsForm::split: return "split";
    case RhsForm::arctan: return "arctan";
    case RhsForm::regularized: return "regularized";
  }
  return "?";
}

json config_json(const RunConfig& cfg) {
  json j;
  j["grid"] = {{"n", cfg.grid.size()}, {"L", cfg.grid.half_period()}};
  j["physics"] = {{"rho1", cfg.phys.rho1()}, {"rho2", cfg.phys.rho2()}};
  j["rhs"] = {{"form", form_name(cfg.form)}, {"transport", cfg.transport}};
  if (cfg.regularization) j["regularization"] = {{"eps", cfg.regularization->eps}, {"C", cfg.regularization->bigC}};
  j["stepper"] = {{"scheme", cfg.stepper.scheme == Scheme::explicit_rk4 ? "explicit_rk4" : "integrating_factor_rk4"},
                  {"cfl", cfg.stepper.cfl},
                  {"dt_max", cfg.stepper.dt_max},
                  {"t_final", cfg.stepper.t_final}};
  if (cfg.stepper.dt_fixed) j["stepper"]["dt"] = *cfg.stepper.dt_fixed;
  j["quadrature"] = {{"alpha_points", cfg.quadrature.alpha_points},
                     {"tail_cut", cfg.quadrature.tail_cut},
                     {"rule", cfg.quadrature.rule == QuadratureRule::trapezoid ? "trapezoid" : "midpoint"},
                     {"tail_correction", cfg.quadrature.tail_correction}};
  j["diagnostics"] = {{"cadence", cfg.simulation.cadence},
                      {"wiener_delta", cfg.simulation.measure.wiener_delta},
                      {"dissipation", cfg.simulation.measure.dissipation},
                      {"dissipation_stride", cfg.simulation.measure.dissipation_stride},
                      {"slope_subcritical", cfg.simulation.slope_subcritical}};
  return j;
}

json record_json(const DiagnosticsRecord& r) {
  return {{"t", r.t},           {"step", r.step},         {"sup_f", r.sup_f},
          {"inf_f", r.inf_f},   {"sup_slope", r.sup_slope}, {"l2_sq", r.l2_sq},
          {"l1", r.l1},         {"wiener1", r.wiener1},   {"wiener2d", r.wiener2d},
          {"dissipation", r.dissipation}, {"mean", r.mean}};
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

GridFunction initial_state(const RunConfig& cfg, std::vector<std::string>& warnings) {
  Profile p = build_profile(cfg.profile, cfg.grid);
  warnings = p.warnings;
  if (cfg.mollify_eps > 0.0) return mollify_approx(p.f, cfg.mollify_eps);
  return p.f;
}

Dynamics make_dynamics(const RunConfig& cfg, const GridSpec& grid) {
  return Dynamics(grid, cfg.phys, cfg.quadrature, cfg.form, cfg.regularization, cfg.transport);
}

void write_outputs(const std::filesystem::path& dir, const RunConfig& cfg, const SimulationResult& res,
                   const std::vector<std::string>& warnings, const std::string& status, const std::string& message) {
  const auto bal = energy_balance(res.diagnostics, cfg.phys);
  write_diagnostics_csv(dir / "diagnostics.csv", res.diagnostics, bal);

  const auto snap_dir = dir / "snapshots";
  std::filesystem::create_directories(snap_dir);
  const auto& tr = res.trajectory;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const bool keep = i == 0 || i + 1 == tr.size() || (cfg.snapshot_every > 0 && i % cfg.snapshot_every == 0);
    if (!keep) continue;
    std::ostringstream name;
    name << "snapshot_" << std::setw(6) << std::setfill('0') << i << ".csv";
    write_state_csv(snap_dir / name.str(), tr.states[i], tr.times[i], tr.steps[i]);
  }

  json s;
  s["status"] = status;
  if (!message.empty()) s["message"] = message;
  s["records"] = res.diagnostics.size();
  if (!res.diagnostics.empty()) {
    s["initial"] = record_json(res.diagnostics.front());
    s["final"] = record_json(res.diagnostics.back());
    double worst = 0.0;
    for (const auto& b : bal) worst = std::max(worst, std::abs(b.relative_residual));
    s["balance"] = {{"final_relative_residual", bal.back().relative_residual},
                    {"max_abs_relative_residual", worst},
                    {"meaningful", cfg.form != RhsForm::regularized && cfg.simulation.measure.dissipation}};
    const auto mp = maximum_principle_monitor(res.diagnostics);
    s["maximum_principle"] = {{"sup_nonincreasing", mp.sup_nonincreasing},
                              {"inf_nondecreasing", mp.inf_nondecreasing},
                              {"slope_checked", mp.slope_checked},
                              {"slope_nonincreasing", mp.slope_nonincreasing},
                              {"worst_sup_increase", mp.worst_sup_increase},
                              {"worst_inf_decrease", mp.worst_inf_decrease},
                              {"observed_decay_rate", mp.observed_decay_rate}};
    const auto wd = wiener_decay_monitor(res.diagnostics, constants::threshold_sqrt(), constants::solve_c0(cfg.simulation.measure.wiener_delta));
    s["wiener"] = {{"applicable", wd.applicable},
                   {"wiener1_nonincreasing", wd.wiener1_nonincreasing},
                   {"high_order_applicable", wd.high_order_applicable},
                   {"wiener2d_nonincreasing", wd.wiener2d_nonincreasing}};
  }
  s["warnings"] = warnings;
  s["config"] = config_json(cfg);
  std::ofstream(dir / "summary.json") << s.dump(2) << "\n";
}

}  // namespace

int cmd_simulate(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_config(config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  const auto dir = resolve_run_dir(cfg);
  std::vector<std::string> warnings;
  GridFunction f0 = GridFunction::zeros(cfg.grid);
  try {
    f0 = initial_state(cfg, warnings);
  } catch (const std::exception& e) {
    err << "error: " << config.string() << ": initial data: " << e.what() << "\n";
    return 1;
  }
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  std::filesystem::create_directories(dir);
  {
    json meta;
    meta["created_utc"] = utc_now();
    meta["config_path"] = std::filesystem::absolute(config).string();
    meta["run_dir"] = dir.string();
    std::ofstream(dir / "metadata.json") << meta.dump(2) << "\n";
  }
  try {
    const Dynamics dyn = make_dynamics(cfg, cfg.grid);
    const SimulationResult res = simulate(f0, dyn, cfg.stepper, cfg.simulation);
    write_outputs(dir, cfg, res, warnings, "completed", "");
    const auto& last = res.diagnostics.back();
    out << "run completed: t = " << last.t << ", steps = " << last.step << ", records = " << res.diagnostics.size()
        << "\n"
        << "sup_f " << res.diagnostics.front().sup_f << " -> " << last.sup_f << ", sup_slope "
        << res.diagnostics.front().sup_slope << " -> " << last.sup_slope << "\n"
        << "output: " << dir.string() << "\n";
    return 0;
  } catch (const SimulationAborted& e) {
    write_outputs(dir, cfg, e.partial, warnings, "aborted", e.what());
    write_state_csv(dir / "state_dump.csv", e.state, e.t, e.step);
    err << "aborted: " << e.what() << "\n"
        << "state dump: " << (dir / "state_dump.csv").string() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_constants(double delta, double tol, std::ostream& out) {
  if (!(delta >= 0.0) || !(tol > 0.0)) {
    out << "error: delta must be >= 0 and tol > 0\n";
    return 1;
  }
  const auto r = constants::verify_claims(delta, tol);
  const auto old = out.flags();
  out << std::setprecision(16);
  out << "delta                        = " << r.delta << "\n"
      << "c0                           = " << r.c0 << "\n"
      << "series at c0                 = " << r.series_value_at_c0 << "\n"
      << "series tail bound            = " << r.tail_bound << "\n"
      << "series terms                 = " << r.n_terms_used << "\n"
      << "sqrt((4 - sqrt 13)/6)        = " << r.closed_form_threshold_sqrt << "\n"
      << "c0(0) radical                = " << r.closed_form_c0_delta0 << "\n"
      << "g = 1 at sqrt((4-sqrt 13)/3) = " << r.g_unit_root << "\n"
      << "claims:\n";
  for (const auto& c : r.claims)
    out << "  " << (c.passed ? "PASS" : "FAIL") << "  " << c.name << ": value " << c.value << ", reference "
        << c.expected << ", tolerance " << c.tolerance << "\n";
  out.flags(old);
  return r.all_passed() ? 0 : 2;
}

namespace {

struct Row {
  std::string name;
  bool passed;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double rel(double num, double den) { return den > 0.0 ? num / den : (num > 0.0 ? INFINITY : 0.0); }

}  // namespace

int run_verify(const RunConfig& cfg, std::ostream& out) {
  constexpr std::size_t desk_n = 512;
  const GridSpec grid = cfg.grid.size() > desk_n ? GridSpec(desk_n, cfg.grid.half_period()) : cfg.grid;
  std::vector<std::string> warnings;
  const GridFunction f = resample(initial_state(cfg, warnings), grid);
  const QuadratureConfig& quad = cfg.quadrature;
  std::vector<Row> rows;
  const auto guarded = [&rows](const std::string& name, const auto& body) {
    try {
      body();
    } catch (const std::exception& e) {
      rows.push_back({name, false, std::string("error: ") + e.what()});
    }
  };

  guarded("split and arctan forms agree", [&] {
    const auto a = eval_rhs_muskat(f, cfg.phys, quad);
    const auto b = eval_rhs_arctan(f, cfg.phys, quad);
    const double d = rel((a - b).max_abs(), a.max_abs());
    rows.push_back({"split and arctan forms agree", d <= 1e-6, "relative difference " + fmt(d) + " <= 1e-6"});
  });
  guarded("T against its series at slope 0.3", [&] {
    const double s = interpolant_sup_abs(derivative(f, 1));
    const GridFunction g = s > 0.0 ? f * (0.3 / s) : f;
    const auto t = eval_T(g, quad);
    const auto ts = eval_T_series(g, 6, quad);
    const double d = rel((t - ts).max_abs(), t.max_abs());
    rows.push_back({"T against its 6-term series at slope 0.3", d <= 1e-6, "relative difference " + fmt(d) + " <= 1e-6"});
  });
  guarded("kernel Lambda^1/2 against the spectral symbol", [&] {
    // Lambda^{1/2} of sin(x) on a 2 pi torus, singular integral against symbol.
    double err[3];
    for (int i = 0; i < 3; ++i) {
      const GridSpec g(std::size_t{64} << (2 * i), std::numbers::pi);
      const auto u = GridFunction::sample(g, [](double x) { return std::sin(x); });
      err[i] = (kernel_lambda_pow(u, 0.5, g.half_period()) - lambda_pow(u, 0.5)).max_abs();
    }
    const double order = std::log2(err[0] / err[2]) / 4.0;
    rows.push_back({"kernel Lambda^1/2 against the spectral symbol", order >= 1.0 && err[2] < 1e-3,
                    "observed order " + fmt(order) + " >= 1, finest error " + fmt(err[2])});
  });
  guarded("far-field tail control", [&] {
    const double R = quad.tail_cut > 0.0 ? quad.tail_cut : grid.half_period();
    QuadratureConfig full = quad, half = quad;
    full.alpha_points = half.alpha_points = 0;
    full.tail_cut = R;
    half.tail_cut = 0.5 * R;
    const auto t_full = eval_T(f, full);
    const double b_full = tail_bound(f, full);
    const double scale = t_full.max_abs();
    bool ok = b_full <= 1e-3 * scale || (scale == 0.0 && b_full == 0.0);
    std::string detail = "bound(R) " + fmt(b_full) + " <= 1e-3 sup|T| = " + fmt(1e-3 * scale);
    if (std::round(half.tail_cut / grid.dx()) >= 1.0) {
      const double change = (t_full - eval_T(f, half)).max_abs();
      const double b_half = tail_bound(f, half);
      ok = ok && change <= b_half + 1e-13 * std::max(scale, 1.0);
      detail += ", change(R/2 -> R) " + fmt(change) + " <= bound(R/2) " + fmt(b_half);
    }
    rows.push_back({"far-field tail control", ok, detail});
  });
  guarded("energy balance on a short run", [&] {
    RunConfig shortcfg = cfg;
    shortcfg.stepper.t_final = std::min(cfg.stepper.t_final, 0.25);
    shortcfg.stepper.dt_max = std::min(cfg.stepper.dt_max, 1.0 / 64.0);
    shortcfg.simulation.cadence = 1;
    shortcfg.simulation.measure.dissipation = true;
    shortcfg.simulation.measure.dissipation_stride = 1;
    if (cfg.form == RhsForm::regularized) {
      shortcfg.form = RhsForm::split;
      shortcfg.regularization.reset();
    }
    try {
      const auto res = simulate(f, make_dynamics(shortcfg, grid), shortcfg.stepper, shortcfg.simulation);
      double worst = 0.0;
      for (const auto& b : energy_balance(res.diagnostics, cfg.phys)) worst = std::max(worst, std::abs(b.relative_residual));
      rows.push_back({"energy balance on a short run", worst <= 1e-3,
                      "max relative residual " + fmt(worst) + " <= 1e-3 up to t = " + fmt(shortcfg.stepper.t_final)});
    } catch (const std::exception& e) {
      rows.push_back({"energy balance on a short run", false, e.what()});
    }
  });
  guarded("dissipation below 4 pi sqrt 2 ||f||_L1", [&] {
    const auto d = dissipation_bound_check(f, quad);
    rows.push_back({"dissipation below 4 pi sqrt 2 ||f||_L1", d.ok,
                    "D = " + fmt(d.dissipation) + ", bound " + fmt(d.bound)});
  });
  guarded("int ln(1 + 1/a^2) da = 2 pi", [&] {
    const auto o = log_integral_oracle();
    rows.push_back({"int ln(1 + 1/a^2) da = 2 pi", o.error <= 1e-10, "error " + fmt(o.error) + " <= 1e-10"});
  });
  guarded("published constants", [&] {
    const auto c = constants::verify_claims(0.0);
    rows.push_back({"published constants", c.all_passed(), "c0(0) = " + fmt(c.c0)});
  });

  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  out << "verify at N = " << grid.size() << ", L = " << grid.half_period() << "\n";
  bool all = true;
  for (const auto& r : rows) {
    out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << r.name << "  "
        << r.detail << "\n";
    all = all && r.passed;
  }
  out << (all ? "all checks passed\n" : "some checks FAILED\n");
  return all ? 0 : 2;
}

int cmd_verify(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  try {
    return run_verify(parse_config(config), out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace muskat::cli
