#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "muskat/contour.hpp"
#include "muskat/grid.hpp"
#include "muskat/initdata.hpp"
#include "muskat/timestepping.hpp"

namespace muskat::cli {

/// Name of the environment variable that replaces the output root.
inline constexpr const char* output_root_env = "MUSKAT_OUTPUT_ROOT";

/// Malformed or invalid configuration; the message names the file and line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  GridSpec grid{512, 16.0 * 3.14159265358979323846};
  PhysParams phys = PhysParams::normalized();
  RhsForm form = RhsForm::split;
  std::optional<RegularizationParams> regularization;
  bool transport = true;
  StepperConfig stepper;
  QuadratureConfig quadrature;
  ProfileSpec profile;
  /// Mollification scale applied to the profile (0 = none).
  double mollify_eps = 0.0;
  SimulationOptions simulation;
  /// Write a snapshot every this many records (0 = first and last only).
  std::size_t snapshot_every = 1;
  /// Run directory, relative to the output root.
  std::filesystem::path output_dir = "runs/default";
  /// Directory of the config file, for relative paths inside it.
  std::filesystem::path base_dir = ".";
};

/// INI-style `key = value` lines under `[section]` headers; `#` and `;`
/// start comments. Numbers accept products and quotients with `pi`, e.g.
/// `16*pi` or `pi/4`. Unknown sections or keys are errors.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_string(const std::string& text, const std::string& origin = "<string>",
                              const std::filesystem::path& base_dir = ".");

/// Run directory: the output root (the environment variable, else the
/// current directory) joined with output_dir.
std::filesystem::path resolve_run_dir(const RunConfig& cfg);

/// Exit codes: 0 success, 1 usage or configuration error, 2 aborted run or
/// failed check.
int cmd_simulate(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int cmd_constants(double delta, double tol, std::ostream& out);
int cmd_verify(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int cmd_plot(const std::filesystem::path& run_dir, std::ostream& out, std::ostream& err);

/// The verify battery on an already parsed config.
int run_verify(const RunConfig& cfg, std::ostream& out);

}  // namespace muskat::cli
