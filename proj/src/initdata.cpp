#include "muskat/initdata.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "muskat/spectral.hpp"

namespace muskat {

namespace {

constexpr double pi = std::numbers::pi;
// int_{-1}^{1} exp(-1 / (1 - s^2)) ds
constexpr double bump_mass = 0.443993816168079437823;

double bump(double s) { return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; }

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double spectral_tail(const GridFunction& f) {
  const Spectrum s = forward_transform(f);
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  double peak = 0.0, tail = 0.0;
  for (std::ptrdiff_t k = -n / 2; k < n / 2; ++k) {
    const double a = std::abs(s[k]);
    peak = std::max(peak, a);
    if (std::abs(k) > n / 4) tail = std::max(tail, a);
  }
  return peak > 0.0 ? tail / peak : 0.0;
}

}  // namespace

void ProfileSpec::validate() const {
  if (!std::isfinite(amplitude)) throw std::invalid_argument("profile: amplitude must be finite");
  if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("profile: width must be positive");
  if ((kind == ProfileKind::single_mode || kind == ProfileKind::multi_mode) && mode < 1)
    throw std::invalid_argument("profile: mode must be at least 1");
  if (target_slope && !(*target_slope >= 0.0)) throw std::invalid_argument("profile: target_slope must be >= 0");
  if (target_wiener1 && !(*target_wiener1 >= 0.0))
    throw std::invalid_argument("profile: target_wiener1 must be >= 0");
  if (target_slope && target_wiener1)
    throw std::invalid_argument("profile: target_slope and target_wiener1 are mutually exclusive");
}

Profile build_profile(const ProfileSpec& spec, const GridSpec& grid) {
  spec.validate();
  const double L = grid.half_period();
  const double a = spec.amplitude;
  const double w = spec.width;
  const double c = spec.center;
  std::vector<double> v(grid.size());
  switch (spec.kind) {
    case ProfileKind::gaussian_bump:
      for (std::size_t j = 0; j < v.size(); ++j) {
        const double s = (grid.x(j) - c) / w;
        v[j] = a * std::exp(-s * s);
      }
      break;
    case ProfileKind::compact_bump:
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = a * bump((grid.x(j) - c) / w);
      break;
    case ProfileKind::single_mode:
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = a * std::sin(pi * spec.mode * grid.x(j) / L);
      break;
    case ProfileKind::multi_mode: {
      std::mt19937_64 rng(spec.seed);
      for (int k = 1; k <= spec.mode; ++k) {
        const double amp = (2.0 * unit_uniform(rng) - 1.0) / (static_cast<double>(k) * k);
        const double phase = 2.0 * pi * unit_uniform(rng);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += a * amp * std::cos(pi * k * grid.x(j) / L + phase);
      }
      break;
    }
    case ProfileKind::custom_samples:
      if (spec.samples.size() != grid.size())
        throw std::invalid_argument("profile: custom_samples needs exactly N values");
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = a * spec.samples[j];
      break;
  }
  GridFunction f(grid, std::move(v));
  if (!spec.keep_mean) f -= GridFunction::constant(grid, mean(f));

  if (spec.target_slope) {
    const double s = interpolant_sup_abs(derivative(f, 1));
    if (s > 0.0) f *= *spec.target_slope / s;
  } else if (spec.target_wiener1) {
    const double s = wiener_norm(f, 1.0);
    if (s > 0.0) f *= *spec.target_wiener1 / s;
  }

  Profile p{f, interpolant_sup_abs(f), interpolant_sup_abs(derivative(f, 1)), wiener_norm(f, 1.0), {}};
  const double tail = spectral_tail(f);
  if (tail > 1e-10) p.warnings.push_back("profile is not resolved on this grid: relative spectral tail " +
                                         std::to_string(tail) + " exceeds 1e-10");
  if (spec.slope_limit && !(p.sup_slope < *spec.slope_limit))
    throw std::invalid_argument("profile: sup |f_x| = " + std::to_string(p.sup_slope) +
                                " violates the declared slope limit " + std::to_string(*spec.slope_limit));
  return p;
}

Mollifier::Mollifier(double eps) : eps_(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("Mollifier: eps must be positive");
}

double Mollifier::operator()(double x) const { return bump(x / eps_) / (bump_mass * eps_); }

std::vector<double> Mollifier::grid_weights(double dx) const {
  if (!(dx > 0.0)) throw std::invalid_argument("Mollifier: dx must be positive");
  auto k = static_cast<long long>(std::floor(eps_ / dx));
  if (static_cast<double>(k) * dx >= eps_) --k;
  k = std::max(0LL, k);
  std::vector<double> w(static_cast<std::size_t>(2 * k + 1));
  double total = 0.0;
  for (long long j = -k; j <= k; ++j) {
    const double v = (*this)(static_cast<double>(std::abs(j)) * dx);
    w[static_cast<std::size_t>(j + k)] = v;
    total += v;
  }
  if (!(total > 0.0)) return {1.0};
  for (double& v : w) v /= total;
  return w;
}

GridFunction mollify_approx(const GridFunction& f0, double eps) {
  const Mollifier z(eps);
  const GridSpec& spec = f0.spec();
  const auto w = z.grid_weights(spec.dx());
  const auto k = static_cast<long long>(w.size() / 2);
  const auto n = static_cast<long long>(f0.size());
  std::vector<double> out(f0.size());
  for (long long i = 0; i < n; ++i) {
    double acc = 0.0;
    for (long long j = -k; j <= k; ++j) acc += w[static_cast<std::size_t>(j + k)] * f0[static_cast<std::size_t>(((i - j) % n + n) % n)];
    const double x = spec.x(static_cast<std::size_t>(i));
    out[static_cast<std::size_t>(i)] = acc / (1.0 + eps * x * x);
  }
  return GridFunction(spec, std::move(out));
}

}  // namespace muskat
