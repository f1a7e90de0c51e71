#include "muskat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "muskat/detail/fft.hpp"
#include "muskat/quadrature.hpp"

namespace muskat {

namespace {

using cplx = std::complex<double>;

double parity(std::ptrdiff_t k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

Spectrum::Spectrum(GridSpec spec, std::vector<cplx> fft_ordered)
    : spec_(spec), coeffs_(std::move(fft_ordered)) {
  if (coeffs_.size() != spec_.size())
    throw std::invalid_argument("Spectrum: expected " + std::to_string(spec_.size()) + " coefficients");
}

Spectrum Spectrum::zeros(const GridSpec& spec) { return Spectrum(spec, std::vector<cplx>(spec.size())); }

std::size_t Spectrum::index(std::ptrdiff_t k) const {
  const auto n = static_cast<std::ptrdiff_t>(spec_.size());
  if (k < -n / 2 || k >= n / 2) throw std::out_of_range("Spectrum: wavenumber out of range");
  return static_cast<std::size_t>(k >= 0 ? k : k + n);
}

double Spectrum::hermitian_defect() const {
  const auto n = static_cast<std::ptrdiff_t>(spec_.size());
  double d = std::abs((*this)[0].imag());
  d = std::max(d, std::abs((*this)[-n / 2].imag()));
  for (std::ptrdiff_t k = 1; k < n / 2; ++k) d = std::max(d, std::abs((*this)[-k] - std::conj((*this)[k])));
  return d;
}

Spectrum forward_transform(const GridFunction& g) {
  const std::size_t n = g.size();
  const auto half = detail::rfft(g.values());
  std::vector<cplx> c(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  // x_j = -L + j dx contributes the phase exp(i pi k) = (-1)^k.
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const cplx v = half[k] * (parity(static_cast<std::ptrdiff_t>(k)) * inv_n);
    if (k < n / 2) c[k] = v;
    if (k > 0) c[n - k] = std::conj(v);
  }
  c[n / 2] = cplx(c[n / 2].real(), 0.0);
  return Spectrum(g.spec(), std::move(c));
}

GridFunction inverse_transform(const Spectrum& s) {
  const std::size_t n = s.spec().size();
  double scale = 0.0;
  for (const auto& v : s.fft_ordered()) scale = std::max(scale, std::abs(v));
  if (s.hermitian_defect() > 1e-10 * scale + 1e-300)
    throw std::invalid_argument("inverse_transform: spectrum is not Hermitian (defect " +
                                std::to_string(s.hermitian_defect()) + ")");
  std::vector<cplx> half(n / 2 + 1);
  for (std::size_t k = 0; k < n / 2; ++k) half[k] = s[static_cast<std::ptrdiff_t>(k)] * parity(static_cast<std::ptrdiff_t>(k));
  const auto nyq = static_cast<std::ptrdiff_t>(n / 2);
  half[n / 2] = cplx(s[-nyq].real() * parity(nyq), 0.0);
  return GridFunction(s.spec(), detail::irfft(half, n));
}

GridFunction apply_multiplier(const GridFunction& g, const Symbol& symbol) {
  const std::size_t n = g.size();
  auto half = detail::rfft(g.values());
  for (std::size_t k = 0; k < n / 2; ++k) half[k] *= symbol(static_cast<std::ptrdiff_t>(k));
  half[n / 2] *= symbol(-static_cast<std::ptrdiff_t>(n / 2)).real();
  auto out = detail::irfft(half, n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= inv_n;
  return GridFunction(g.spec(), std::move(out));
}

GridFunction lambda_pow(const GridFunction& g, double s) {
  if (!(s >= 0.0 && s <= 2.0)) throw std::invalid_argument("lambda_pow: s must lie in [0, 2]");
  const GridSpec& spec = g.spec();
  return apply_multiplier(g, [&](std::ptrdiff_t k) -> cplx {
    if (k == 0) return 0.0;
    return std::pow(std::abs(spec.wavenumber(k)), s);
  });
}

double kernel_lambda_constant(double s) {
  // int_0^inf (1 - cos u) u^{-1-s} du = -Gamma(-s) cos(pi s / 2) for 0 < s < 2.
  const double half_integral = -std::tgamma(-s) * std::cos(0.5 * std::numbers::pi * s);
  return 1.0 / (2.0 * half_integral);
}

GridFunction kernel_lambda_pow(const GridFunction& g, double s, double tail_cut) {
  if (!(s >= 0.05 && s <= 0.95))
    throw std::invalid_argument("kernel_lambda_pow: s must lie in [0.05, 0.95]");
  if (!(tail_cut > 0.0)) throw std::invalid_argument("kernel_lambda_pow: tail_cut must be positive");
  const GridSpec& spec = g.spec();
  const std::size_t n = spec.size();
  const double dx = spec.dx();
  const auto v = g.values();
  const quadrature::PowerKernel kernel{1.0 + s, false};

  std::vector<double> out(n, 0.0);
  if (tail_cut >= spec.half_period()) {
    // Every nonzero lattice offset, folded onto one period; the r = 0 class
    // multiplies g(x) - g(x) and drops out.
    const auto w = quadrature::periodized_tail_weights(n, dx, 0, kernel, false);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t i = 0; i < n; ++i) out[i] += w[r] * (v[i] - v[(i + n - r) % n]);
  } else {
    const auto cut = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(tail_cut / dx)));
    for (std::size_t j = 1; j <= cut; ++j) {
      const double wj = dx * kernel(static_cast<double>(j) * dx);
      for (std::size_t i = 0; i < n; ++i)
        out[i] += wj * (2.0 * v[i] - v[(i + n - j % n) % n] - v[(i + j) % n]);
    }
    const double far = 2.0 * kernel.tail_integral((static_cast<double>(cut) + 0.5) * dx);
    for (std::size_t i = 0; i < n; ++i) out[i] += far * v[i];
  }
  const double c = kernel_lambda_constant(s);
  for (double& x : out) x *= c;
  return GridFunction(spec, std::move(out));
}

GridFunction derivative(const GridFunction& g, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("derivative: order must be 1, 2 or 3");
  const GridSpec& spec = g.spec();
  return apply_multiplier(g, [&](std::ptrdiff_t k) {
    const cplx ik(0.0, spec.wavenumber(k));
    cplx r = ik;
    for (int m = 1; m < order; ++m) r *= ik;
    return r;
  });
}

double wiener_norm(const GridFunction& g, double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("wiener_norm: s must be non-negative");
  const GridSpec& spec = g.spec();
  const auto half = detail::rfft(g.values());
  const std::size_t n = g.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  double total = (s == 0.0) ? std::abs(half[0]) * inv_n : 0.0;
  for (std::size_t k = 1; k < n / 2; ++k)
    total += 2.0 * std::pow(spec.wavenumber(static_cast<std::ptrdiff_t>(k)), s) * std::abs(half[k]) * inv_n;
  total += std::pow(spec.max_wavenumber(), s) * std::abs(half[n / 2].real()) * inv_n;
  return total;
}

double l2_norm_sq(const GridFunction& g) {
  double sum = 0.0;
  for (double v : g.values()) sum += v * v;
  return sum * g.spec().dx();
}

double l1_norm(const GridFunction& g) {
  double sum = 0.0;
  for (double v : g.values()) sum += std::abs(v);
  return sum * g.spec().dx();
}

double mean(const GridFunction& g) {
  double sum = 0.0;
  for (double v : g.values()) sum += v;
  return sum / static_cast<double>(g.size());
}

GridFunction resample(const GridFunction& g, const GridSpec& target) {
  if (target.half_period() != g.spec().half_period())
    throw std::invalid_argument("resample: grids must share the half-period");
  const Spectrum src = forward_transform(g);
  Spectrum dst = Spectrum::zeros(target);
  const auto n_src = static_cast<std::ptrdiff_t>(g.size());
  const auto n_dst = static_cast<std::ptrdiff_t>(target.size());
  if (n_dst >= n_src) {
    for (std::ptrdiff_t k = -n_src / 2 + 1; k < n_src / 2; ++k) dst.at(k) = src[k];
    // The source Nyquist cosine splits evenly onto +-N/2 of the finer grid.
    if (n_dst > n_src) {
      const double c = 0.5 * src[-n_src / 2].real();
      dst.at(-n_src / 2) = c;
      dst.at(n_src / 2) = c;
    } else {
      dst.at(-n_src / 2) = src[-n_src / 2];
    }
  } else {
    for (std::ptrdiff_t k = -n_dst / 2 + 1; k < n_dst / 2; ++k) dst.at(k) = src[k];
    dst.at(-n_dst / 2) = 2.0 * src[n_dst / 2].real();
  }
  return inverse_transform(dst);
}

Interpolant::Interpolant(const GridFunction& g) : samples_(g), spectrum_(forward_transform(g)) {}

double Interpolant::evaluate(double x, int order) const {
  if (order < 0 || order > 3) throw std::invalid_argument("Interpolant: order must be in [0, 3]");
  const GridSpec& spec = spectrum_.spec();
  const auto n = static_cast<std::ptrdiff_t>(spec.size());
  double total = (order == 0) ? spectrum_[0].real() : 0.0;
  for (std::ptrdiff_t k = 1; k < n / 2; ++k) {
    const double xi = spec.wavenumber(k);
    cplx d(1.0, 0.0);
    for (int m = 0; m < order; ++m) d *= cplx(0.0, xi);
    total += 2.0 * (spectrum_[k] * d * std::polar(1.0, xi * x)).real();
  }
  const double nyq = spectrum_[-n / 2].real();
  const double kn = spec.max_wavenumber();
  switch (order) {
    case 0: total += nyq * std::cos(kn * x); break;
    case 1: total -= nyq * kn * std::sin(kn * x); break;
    case 2: total -= nyq * kn * kn * std::cos(kn * x); break;
    default: total += nyq * kn * kn * kn * std::sin(kn * x); break;
  }
  return total;
}

double Interpolant::refine_max(std::size_t j, double sign) const {
  const GridSpec& spec = spectrum_.spec();
  const double x0 = spec.x(j);
  const double dx = spec.dx();
  double x = x0;
  double best = sign * samples_[j];
  for (int it = 0; it < 60; ++it) {
    const double d1 = sign * evaluate(x, 1);
    const double d2 = sign * evaluate(x, 2);
    double step = (d2 < 0.0) ? -d1 / d2 : std::copysign(0.25 * dx, d1);
    const double lo = x0 - dx, hi = x0 + dx;
    double next = std::clamp(x + step, lo, hi);
    if (std::abs(next - x) < 1e-15 * spec.half_period()) break;
    x = next;
  }
  return std::max(best, sign * value(x)) * sign;
}

double Interpolant::max() const {
  const std::size_t n = samples_.size();
  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < n; ++j) {
    const double v = samples_[j];
    if (v >= samples_[(j + n - 1) % n] && v >= samples_[(j + 1) % n]) peaks.push_back(j);
  }
  std::sort(peaks.begin(), peaks.end(), [&](auto a, auto b) { return samples_[a] > samples_[b]; });
  if (peaks.size() > 8) peaks.resize(8);
  double best = samples_.max();
  for (auto j : peaks) best = std::max(best, refine_max(j, 1.0));
  return best;
}

double Interpolant::min() const {
  const std::size_t n = samples_.size();
  std::vector<std::size_t> troughs;
  for (std::size_t j = 0; j < n; ++j) {
    const double v = samples_[j];
    if (v <= samples_[(j + n - 1) % n] && v <= samples_[(j + 1) % n]) troughs.push_back(j);
  }
  std::sort(troughs.begin(), troughs.end(), [&](auto a, auto b) { return samples_[a] < samples_[b]; });
  if (troughs.size() > 8) troughs.resize(8);
  double best = samples_.min();
  for (auto j : troughs) best = std::min(best, refine_max(j, -1.0));
  return best;
}

double interpolant_sup_abs(const GridFunction& g) {
  const Interpolant p(g);
  return std::max(p.max(), -p.min());
}

}  // namespace muskat
