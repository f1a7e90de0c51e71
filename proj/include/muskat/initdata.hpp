#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "muskat/grid.hpp"

namespace muskat {

enum class ProfileKind { gaussian_bump, compact_bump, single_mode, multi_mode, custom_samples };

struct ProfileSpec {
  ProfileKind kind = ProfileKind::gaussian_bump;
  double amplitude = 1.0;
  double width = 1.0;
  /// Wavenumber for single_mode, highest wavenumber for multi_mode.
  int mode = 1;
  std::uint64_t seed = 0;
  /// Bump centre.
  double center = 0.0;
  /// Keep the mean instead of subtracting it.
  bool keep_mean = false;
  /// Rescale the amplitude so that sup |f_x| (or the Wiener norm of order 1)
  /// takes this value.
  std::optional<double> target_slope;
  std::optional<double> target_wiener1;
  /// Grid values for custom_samples.
  std::vector<double> samples;
  /// Required sup |f_x| < limit when set.
  std::optional<double> slope_limit;

  void validate() const;
};

struct Profile {
  GridFunction f;
  double sup_abs;
  double sup_slope;
  double wiener1;
  std::vector<std::string> warnings;
};

/// Samples the profile; an unresolved spectrum (upper-half coefficients above
/// 1e-10 of the largest) is reported as a warning.
Profile build_profile(const ProfileSpec& spec, const GridSpec& grid);

/// zeta_eps(x) = zeta(x / eps) / eps with the even bump
/// zeta(s) = exp(-1 / (1 - s^2)) / Z on |s| < 1, Z chosen for unit mass.
class Mollifier {
 public:
  explicit Mollifier(double eps);

  double eps() const { return eps_; }
  double support_radius() const { return eps_; }
  double operator()(double x) const;

  /// Weights on the offsets -K..K (K = number of nodes strictly inside the
  /// support), renormalized to sum to exactly 1.
  std::vector<double> grid_weights(double dx) const;

 private:
  double eps_;
};

/// (zeta_eps * f0)(x) / (1 + eps x^2) with the convolution summed directly
/// over the support and x measured from the centre of the torus.
GridFunction mollify_approx(const GridFunction& f0, double eps);

}  // namespace muskat
