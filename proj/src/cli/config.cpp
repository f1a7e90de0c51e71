#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "muskat/cli.hpp"

namespace muskat::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

struct Entry {
  std::string value;
  int line;
};

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"grid", {"n", "l"}},
      {"physics", {"rho1", "rho2"}},
      {"rhs", {"form", "transport"}},
      {"regularization", {"eps", "c"}},
      {"stepper", {"scheme", "cfl", "dt_max", "t_final", "dt"}},
      {"quadrature", {"alpha_points", "tail_cut", "rule", "tail_correction"}},
      {"profile",
       {"kind", "amplitude", "width", "mode", "seed", "center", "keep_mean", "target_slope", "target_wiener1",
        "samples_file", "slope_limit", "mollify_eps"}},
      {"diagnostics", {"cadence", "wiener_delta", "dissipation", "dissipation_stride", "slope_subcritical"}},
      {"output", {"dir", "snapshot_every"}},
  };
  return s;
}

class Reader {
 public:
  Reader(std::string origin, std::map<std::string, Entry> entries)
      : origin_(std::move(origin)), entries_(std::move(entries)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    const auto it = entries_.find(key);
    if (it != entries_.end())
      throw ConfigError(origin_ + ":" + std::to_string(it->second.line) + ": " + key + ": " + msg);
    throw ConfigError(origin_ + ": " + key + ": " + msg);
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<double> number(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    const auto v = parse_number(it->second.value);
    if (!v) fail(key, "expected a number (products and quotients with pi allowed), got '" + it->second.value + "'");
    return v;
  }

  std::optional<long long> integer(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    const std::string& s = it->second.value;
    long long v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) fail(key, "expected an integer, got '" + s + "'");
    return v;
  }

  std::optional<bool> boolean(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    const std::string v = lower(it->second.value);
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    fail(key, "expected true or false, got '" + it->second.value + "'");
  }

  std::optional<std::string> text(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.value;
  }

  static std::optional<double> parse_number(const std::string& s) {
    // factor (('*' | '/') factor)*, factor = [-]number | [-]pi
    double result = 1.0;
    char op = '*';
    std::size_t pos = 0;
    if (s.empty()) return std::nullopt;
    while (pos <= s.size()) {
      std::size_t next = s.find_first_of("*/", pos);
      if (next == std::string::npos) next = s.size();
      std::string f = trim(s.substr(pos, next - pos));
      if (f.empty()) return std::nullopt;
      double sign = 1.0;
      if (f[0] == '-' && f.size() > 1 && std::isalpha(static_cast<unsigned char>(f[1]))) {
        sign = -1.0;
        f = f.substr(1);
      }
      double v = 0.0;
      if (lower(f) == "pi") {
        v = std::numbers::pi;
      } else {
        const char* b = f.data();
        if (*b == '+') ++b;
        const auto r = std::from_chars(b, f.data() + f.size(), v);
        if (r.ec != std::errc() || r.ptr != f.data() + f.size()) return std::nullopt;
      }
      v *= sign;
      result = op == '*' ? result * v : result / v;
      if (next == s.size()) break;
      op = s[next];
      pos = next + 1;
    }
    if (!std::isfinite(result)) return std::nullopt;
    return result;
  }

 private:
  std::string origin_;
  std::map<std::string, Entry> entries_;
};

std::vector<double> read_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open samples file " + path.string());
  std::vector<double> v;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.rfind(',');
    const std::string field = trim(comma == std::string::npos ? line : line.substr(comma + 1));
    const auto x = Reader::parse_number(field);
    if (!x) {
      if (v.empty()) continue;  // header row
      throw ConfigError(path.string() + ":" + std::to_string(n) + ": expected a number");
    }
    v.push_back(*x);
  }
  return v;
}

}  // namespace

RunConfig parse_config_string(const std::string& text, const std::string& origin,
                              const std::filesystem::path& base_dir) {
  std::map<std::string, Entry> entries;
  std::set<std::string> sections_seen;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header '" + line + "'");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (!schema().count(section)) throw ConfigError(where + "unknown section [" + section + "]");
      if (!sections_seen.insert(section).second) throw ConfigError(where + "duplicate section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value', got '" + line + "'");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(where + "key '" + key + "' outside any section");
    if (key.empty()) throw ConfigError(where + "empty key");
    if (value.empty()) throw ConfigError(where + "empty value for '" + key + "'");
    if (!schema().at(section).count(key))
      throw ConfigError(where + "unknown key '" + key + "' in section [" + section + "]");
    const std::string full = section + "." + key;
    if (entries.count(full)) throw ConfigError(where + "duplicate key '" + key + "'");
    entries[full] = {value, line_no};
  }

  const Reader r(origin, entries);
  RunConfig cfg;
  cfg.base_dir = base_dir;

  // grid
  {
    const auto n = r.integer("grid.n").value_or(512);
    const double L = r.number("grid.l").value_or(16.0 * std::numbers::pi);
    if (n <= 0) r.fail("grid.n", "must be positive");
    try {
      cfg.grid = GridSpec(static_cast<std::size_t>(n), L);
    } catch (const std::invalid_argument& e) {
      r.fail(r.has("grid.n") ? "grid.n" : "grid.l", e.what());
    }
  }
  // physics
  {
    const double rho1 = r.number("physics.rho1").value_or(0.0);
    const double rho2 = r.number("physics.rho2").value_or(2.0 * std::numbers::pi);
    try {
      cfg.phys = PhysParams(rho1, rho2);
    } catch (const std::invalid_argument& e) {
      r.fail(r.has("physics.rho2") ? "physics.rho2" : "physics.rho1", e.what());
    }
  }
  // rhs and regularization
  {
    const std::string form = lower(r.text("rhs.form").value_or("split"));
    if (form == "split")
      cfg.form = RhsForm::split;
    else if (form == "arctan")
      cfg.form = RhsForm::arctan;
    else if (form == "regularized")
      cfg.form = RhsForm::regularized;
    else
      r.fail("rhs.form", "expected split, arctan or regularized, got '" + form + "'");
    cfg.transport = r.boolean("rhs.transport").value_or(true);
    if (cfg.form == RhsForm::regularized) {
      const auto eps = r.number("regularization.eps");
      if (!eps) r.fail("regularization.eps", "required when rhs.form = regularized");
      try {
        auto reg = RegularizationParams::with_default_constant(*eps, cfg.phys);
        if (const auto c = r.number("regularization.c")) reg.bigC = *c;
        reg.validate();
        cfg.regularization = reg;
      } catch (const std::invalid_argument& e) {
        r.fail(r.has("regularization.c") && *eps > 0.0 && *eps <= 0.25 ? "regularization.c" : "regularization.eps",
               e.what());
      }
    } else if (r.has("regularization.eps") || r.has("regularization.c")) {
      r.fail(r.has("regularization.eps") ? "regularization.eps" : "regularization.c",
             "the [regularization] section needs rhs.form = regularized");
    }
  }
  // stepper
  {
    if (const auto s = r.text("stepper.scheme")) {
      const std::string v = lower(*s);
      if (v == "integrating_factor_rk4")
        cfg.stepper.scheme = Scheme::integrating_factor_rk4;
      else if (v == "explicit_rk4")
        cfg.stepper.scheme = Scheme::explicit_rk4;
      else
        r.fail("stepper.scheme", "expected integrating_factor_rk4 or explicit_rk4, got '" + *s + "'");
    }
    cfg.stepper.cfl = r.number("stepper.cfl").value_or(cfg.stepper.cfl);
    cfg.stepper.dt_max = r.number("stepper.dt_max").value_or(cfg.stepper.dt_max);
    cfg.stepper.t_final = r.number("stepper.t_final").value_or(cfg.stepper.t_final);
    if (const auto dt = r.number("stepper.dt")) cfg.stepper.dt_fixed = *dt;
    if (!(cfg.stepper.cfl > 0.0 && cfg.stepper.cfl <= 1.0)) r.fail("stepper.cfl", "must lie in (0, 1]");
    if (!(cfg.stepper.dt_max > 0.0)) r.fail("stepper.dt_max", "must be positive");
    if (!(cfg.stepper.t_final > 0.0)) r.fail("stepper.t_final", "must be positive");
    if (cfg.stepper.dt_fixed && !(*cfg.stepper.dt_fixed > 0.0)) r.fail("stepper.dt", "must be positive");
  }
  // quadrature
  {
    if (const auto a = r.integer("quadrature.alpha_points")) {
      if (*a < 0 || *a % 2 != 0) r.fail("quadrature.alpha_points", "must be a non-negative even integer");
      cfg.quadrature.alpha_points = static_cast<std::size_t>(*a);
    }
    cfg.quadrature.tail_cut = r.number("quadrature.tail_cut").value_or(0.0);
    if (const auto rule = r.text("quadrature.rule")) {
      const std::string v = lower(*rule);
      if (v == "midpoint")
        cfg.quadrature.rule = QuadratureRule::midpoint;
      else if (v == "trapezoid")
        cfg.quadrature.rule = QuadratureRule::trapezoid;
      else
        r.fail("quadrature.rule", "expected midpoint or trapezoid, got '" + *rule + "'");
    }
    cfg.quadrature.tail_correction = r.boolean("quadrature.tail_correction").value_or(true);
    try {
      ContourEvaluator probe(cfg.grid, cfg.quadrature);
    } catch (const std::invalid_argument& e) {
      r.fail(r.has("quadrature.alpha_points") ? "quadrature.alpha_points" : "quadrature.tail_cut", e.what());
    }
  }
  // profile
  {
    ProfileSpec& p = cfg.profile;
    if (const auto k = r.text("profile.kind")) {
      const std::string v = lower(*k);
      if (v == "gaussian_bump")
        p.kind = ProfileKind::gaussian_bump;
      else if (v == "compact_bump")
        p.kind = ProfileKind::compact_bump;
      else if (v == "single_mode")
        p.kind = ProfileKind::single_mode;
      else if (v == "multi_mode")
        p.kind = ProfileKind::multi_mode;
      else if (v == "custom_samples")
        p.kind = ProfileKind::custom_samples;
      else
        r.fail("profile.kind", "unknown profile kind '" + *k + "'");
    }
    p.amplitude = r.number("profile.amplitude").value_or(p.amplitude);
    p.width = r.number("profile.width").value_or(p.width);
    if (const auto m = r.integer("profile.mode")) p.mode = static_cast<int>(*m);
    if (const auto s = r.integer("profile.seed")) {
      if (*s < 0) r.fail("profile.seed", "must be non-negative");
      p.seed = static_cast<std::uint64_t>(*s);
    }
    p.center = r.number("profile.center").value_or(p.center);
    p.keep_mean = r.boolean("profile.keep_mean").value_or(false);
    if (const auto v = r.number("profile.target_slope")) p.target_slope = *v;
    if (const auto v = r.number("profile.target_wiener1")) p.target_wiener1 = *v;
    if (const auto v = r.number("profile.slope_limit")) p.slope_limit = *v;
    cfg.mollify_eps = r.number("profile.mollify_eps").value_or(0.0);
    if (cfg.mollify_eps < 0.0) r.fail("profile.mollify_eps", "must be non-negative");
    if (p.kind == ProfileKind::custom_samples) {
      const auto file = r.text("profile.samples_file");
      if (!file) r.fail("profile.samples_file", "required for kind = custom_samples");
      std::filesystem::path path(*file);
      if (path.is_relative()) path = base_dir / path;
      try {
        p.samples = read_samples(path);
      } catch (const ConfigError& e) {
        r.fail("profile.samples_file", e.what());
      }
      if (p.samples.size() != cfg.grid.size())
        r.fail("profile.samples_file", "holds " + std::to_string(p.samples.size()) + " values, grid.n is " +
                                           std::to_string(cfg.grid.size()));
    } else if (r.has("profile.samples_file")) {
      r.fail("profile.samples_file", "only used with kind = custom_samples");
    }
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      std::string key = "profile.kind";
      for (const char* k : {"profile.width", "profile.mode", "profile.target_slope", "profile.target_wiener1",
                            "profile.amplitude"})
        if (r.has(k)) {
          key = k;
          if (std::string(e.what()).find(std::string(k).substr(8)) != std::string::npos) break;
        }
      r.fail(key, e.what());
    }
  }
  // diagnostics
  {
    if (const auto c = r.integer("diagnostics.cadence")) {
      if (*c <= 0) r.fail("diagnostics.cadence", "must be positive");
      cfg.simulation.cadence = static_cast<std::size_t>(*c);
    }
    cfg.simulation.measure.wiener_delta = r.number("diagnostics.wiener_delta").value_or(0.1);
    if (!(cfg.simulation.measure.wiener_delta >= 0.0)) r.fail("diagnostics.wiener_delta", "must be non-negative");
    cfg.simulation.measure.dissipation = r.boolean("diagnostics.dissipation").value_or(true);
    if (const auto s = r.integer("diagnostics.dissipation_stride")) {
      if (*s <= 0) r.fail("diagnostics.dissipation_stride", "must be positive");
      cfg.simulation.measure.dissipation_stride = static_cast<std::size_t>(*s);
      try {
        ContourEvaluator probe(cfg.grid, cfg.quadrature);
        probe.dissipation(GridFunction::zeros(cfg.grid), 2 * cfg.simulation.measure.dissipation_stride);
      } catch (const std::invalid_argument& e) {
        r.fail("diagnostics.dissipation_stride", e.what());
      }
    }
    cfg.simulation.slope_subcritical = r.boolean("diagnostics.slope_subcritical").value_or(false);
  }
  // output
  {
    if (const auto d = r.text("output.dir")) cfg.output_dir = *d;
    if (const auto s = r.integer("output.snapshot_every")) {
      if (*s < 0) r.fail("output.snapshot_every", "must be non-negative");
      cfg.snapshot_every = static_cast<std::size_t>(*s);
    }
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = parse_config_string(ss.str(), path.string(), path.parent_path().empty() ? "." : path.parent_path());
  if (ss.str().find("[output]") == std::string::npos || cfg.output_dir == "runs/default")
    cfg.output_dir = std::filesystem::path("runs") / path.stem();
  return cfg;
}

std::filesystem::path resolve_run_dir(const RunConfig& cfg) {
  const char* env = std::getenv(output_root_env);
  if (env && *env) {
    const std::filesystem::path root(env);
    return root / (cfg.output_dir.is_absolute() ? cfg.output_dir.relative_path() : cfg.output_dir);
  }
  return cfg.output_dir.is_absolute() ? cfg.output_dir : std::filesystem::current_path() / cfg.output_dir;
}

}  // namespace muskat::cli
