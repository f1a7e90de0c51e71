#include "muskat/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "muskat/detail/fft.hpp"
#include "muskat/quadrature.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// out[i] = src[(i - q) mod N]
void roll(const std::vector<double>& src, long long q, std::vector<double>& out) {
  const auto n = static_cast<long long>(src.size());
  const long long q0 = ((q % n) + n) % n;
  std::rotate_copy(src.begin(), src.begin() + (n - q0) % n, src.end(), out.begin());
}

std::vector<double> pointwise_pow(const std::vector<double>& v, int p) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = std::pow(v[i], p);
  return r;
}

}  // namespace

PhysParams::PhysParams(double rho1, double rho2) : rho1_(rho1), rho2_(rho2) {
  if (!std::isfinite(rho1) || !std::isfinite(rho2))
    throw std::invalid_argument("PhysParams: densities must be finite");
  if (!(rho2 > rho1))
    throw std::invalid_argument(
        "PhysParams: stability requires rho2 > rho1 (denser fluid below); the unstable case is ill-posed");
}

double kernel_constant_c1(double eps) { return kernel_lambda_constant(1.0 - eps); }

double kernel_constant_c2(double eps) {
  if (eps == 0.0) return 2.0 / pi;
  const double s = 2.0 - eps;
  return 1.0 / (2.0 * std::tgamma(-s) * std::sin(0.5 * pi * s));
}

void RegularizationParams::validate() const {
  if (!(eps > 0.0 && eps <= 0.25))
    throw std::invalid_argument("RegularizationParams: eps must lie in (0, 1/4], got " + std::to_string(eps));
  if (!(bigC > 0.0) || !std::isfinite(bigC))
    throw std::invalid_argument("RegularizationParams: C must be positive and finite");
}

RegularizationParams RegularizationParams::with_default_constant(double eps, const PhysParams& p) {
  const double cm = std::min(kernel_constant_c1(eps), kernel_constant_c2(eps));
  RegularizationParams r{eps, 2.0 * p.rho() / (pi * cm)};
  r.validate();
  return r;
}

double delta_quotient(const GridFunction& g, std::size_t x_index, double alpha) {
  if (x_index >= g.size()) throw std::out_of_range("delta_quotient: x_index out of range");
  const Interpolant p(g);
  const double x = g.spec().x(x_index);
  if (std::abs(alpha) < g.spec().dx() / 100.0) return p.evaluate(x, 1);
  return (g[x_index] - p.value(x - alpha)) / alpha;
}

struct ContourEvaluator::Copies {
  // f[s][i] = g(x_i - s h), and the same for g_x.
  std::vector<std::vector<double>> f;
  std::vector<std::vector<double>> fx;
};

ContourEvaluator::ContourEvaluator(const GridSpec& spec, const QuadratureConfig& quad, double eps)
    : spec_(spec), quad_(quad), eps_(eps), m_(1), cut_(0), h_(spec.dx()) {
  if (!(eps >= 0.0 && eps <= 0.25)) throw std::invalid_argument("ContourEvaluator: eps must lie in [0, 1/4]");
  const double L = spec.half_period();
  const double tail_cut = quad.tail_cut == 0.0 ? L : quad.tail_cut;
  if (!(tail_cut > 0.0) || tail_cut > L * (1.0 + 1e-12))
    throw std::invalid_argument("QuadratureConfig: tail_cut must lie in (0, L]");
  const auto J = static_cast<std::size_t>(std::lround(tail_cut / spec.dx()));
  if (J == 0) throw std::invalid_argument("QuadratureConfig: tail_cut is below one grid cell");
  if (quad.alpha_points != 0) {
    if (quad.alpha_points % (2 * J) != 0)
      throw std::invalid_argument("QuadratureConfig: alpha_points must be a positive multiple of " +
                                  std::to_string(2 * J) + " for this tail_cut");
    m_ = quad.alpha_points / (2 * J);
  }
  h_ = spec.dx() / static_cast<double>(m_);
  cut_ = J * m_;

  node_weight_.assign(cut_ + 1, h_);
  if (quad.rule == QuadratureRule::trapezoid) node_weight_[cut_] = 0.5 * h_;
  node_kernel_.assign(cut_ + 1, 0.0);
  for (std::size_t j = 1; j <= cut_; ++j) {
    const double a = static_cast<double>(j) * h_;
    node_kernel_[j] = std::pow(a, eps_) / a;
  }

  if (quad.tail_correction) {
    const std::size_t n = spec.size();
    const std::size_t period = n * m_;
    const bool half = quad.rule == QuadratureRule::trapezoid;
    auto fold = [&](const std::vector<double>& w, std::vector<cplx>& hat, double& total) {
      hat.clear();
      total = 0.0;
      std::vector<double> block(n);
      for (std::size_t s = 0; s < m_; ++s) {
        for (std::size_t q = 0; q < n; ++q) block[q] = w[q * m_ + s];
        const auto b = detail::rfft(block);
        hat.insert(hat.end(), b.begin(), b.end());
      }
      for (double v : w) total += v;
    };
    fold(quadrature::periodized_tail_weights(period, h_, cut_, {3.0 - 3.0 * eps_, true}, half), cubic_hat_,
         cubic_total_);
    if (eps_ == 0.0)
      fold(quadrature::periodized_tail_weights(period, h_, cut_, {4.0, false}, half), quartic_hat_,
           quartic_total_);
  }
}

ContourEvaluator::Copies ContourEvaluator::make_copies(const GridFunction& g, bool with_derivative) const {
  Copies c;
  const GridFunction gx = derivative(g, 1);
  for (std::size_t s = 0; s < m_; ++s) {
    if (s == 0) {
      c.f.emplace_back(g.values().begin(), g.values().end());
      if (with_derivative) c.fx.emplace_back(gx.values().begin(), gx.values().end());
      continue;
    }
    const double shift = static_cast<double>(s) * h_;
    const Symbol sym = [&](std::ptrdiff_t k) { return std::polar(1.0, -spec_.wavenumber(k) * shift); };
    const auto fs = apply_multiplier(g, sym);
    c.f.emplace_back(fs.values().begin(), fs.values().end());
    if (with_derivative) {
      const auto fxs = apply_multiplier(gx, sym);
      c.fx.emplace_back(fxs.values().begin(), fxs.values().end());
    }
  }
  if (!with_derivative) c.fx.emplace_back(gx.values().begin(), gx.values().end());
  return c;
}

std::vector<double> ContourEvaluator::tail_convolve(const std::vector<cplx>& weights_hat,
                                                    const std::vector<std::vector<double>>& values) const {
  const std::size_t n = spec_.size();
  const std::size_t nh = n / 2 + 1;
  std::vector<cplx> acc(nh, 0.0);
  for (std::size_t s = 0; s < m_; ++s) {
    const auto u = detail::rfft(values[s]);
    for (std::size_t k = 0; k < nh; ++k) acc[k] += weights_hat[s * nh + k] * u[k];
  }
  auto out = detail::irfft(acc, n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= inv_n;
  return out;
}

std::complex<double> ContourEvaluator::linear_symbol(std::ptrdiff_t k) const {
  if (k == 0) return 0.0;
  const double xi = spec_.wavenumber(k);
  const double sgn = xi > 0.0 ? 1.0 : -1.0;
  if (eps_ == 0.0) return {0.0, pi * sgn};
  const double mag = 2.0 * std::pow(std::abs(xi), -eps_) * std::tgamma(eps_) * std::sin(0.5 * pi * eps_);
  return {0.0, sgn * mag};
}

GridFunction ContourEvaluator::arctan_linear(const GridFunction& g) const {
  return apply_multiplier(g, [this](std::ptrdiff_t k) { return linear_symbol(k); });
}

std::vector<double> ContourEvaluator::cusp_correction(const std::vector<double>& fx) const {
  // Near alpha = 0 the residual arctan(y) - y expands in |alpha|^{(2n+1) eps};
  // each cusp shifts the lattice sum by 2 zeta(-p) h^{1+p} times its coefficient.
  std::vector<double> out(fx.size(), 0.0);
  for (int n = 1; n < 100000; ++n) {
    const double p = (2.0 * n + 1.0) * eps_;
    if (p > 2.0) break;
    const double c = 2.0 * std::riemann_zeta(-p) * std::pow(h_, 1.0 + p) / (2.0 * n + 1.0);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    double largest = 0.0;
    for (std::size_t i = 0; i < fx.size(); ++i) {
      const double term = sign * c * std::pow(fx[i], 2 * n + 1);
      out[i] -= term;
      largest = std::max(largest, std::abs(term));
    }
    if (largest < 1e-18) break;
  }
  return out;
}

GridFunction ContourEvaluator::arctan_nonlinear(const GridFunction& g) const {
  const std::size_t n = spec_.size();
  const Copies c = make_copies(g, false);
  const auto& f = c.f[0];
  const auto& fx = c.fx[0];
  std::vector<double> acc(n, 0.0);
  if (eps_ == 0.0) {
    for (std::size_t i = 0; i < n; ++i) acc[i] = node_weight_[0] * (std::atan(fx[i]) - fx[i]);
  } else {
    acc = cusp_correction(fx);
  }
  std::vector<double> fs(n);
  const auto m = static_cast<long long>(m_);
  for (std::size_t j = 1; j <= cut_; ++j) {
    const double w = node_weight_[j];
    for (int sg : {1, -1}) {
      const long long jj = sg * static_cast<long long>(j);
      const long long q = floor_div(jj, m);
      roll(c.f[static_cast<std::size_t>(jj - q * m)], q, fs);
      const double kf = sg * node_kernel_[j];
      for (std::size_t i = 0; i < n; ++i) {
        const double y = (f[i] - fs[i]) * kf;
        acc[i] += w * (std::atan(y) - y);
      }
    }
  }
  if (quad_.tail_correction) {
    std::vector<std::vector<double>> p2, p3;
    for (const auto& v : c.f) {
      p2.push_back(pointwise_pow(v, 2));
      p3.push_back(pointwise_pow(v, 3));
    }
    const auto c1 = tail_convolve(cubic_hat_, c.f);
    const auto c2 = tail_convolve(cubic_hat_, p2);
    const auto c3 = tail_convolve(cubic_hat_, p3);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = f[i];
      const double cube = u * u * u * cubic_total_ - 3.0 * u * u * c1[i] + 3.0 * u * c2[i] - c3[i];
      acc[i] -= cube / 3.0;
    }
  }
  return GridFunction(spec_, std::move(acc));
}

GridFunction ContourEvaluator::arctan_integral(const GridFunction& g) const {
  return arctan_linear(g) + arctan_nonlinear(g);
}

std::vector<double> ContourEvaluator::cubic_tail_T(const Copies& c) const {
  // sum_r W[r] (f - f_r)^2 (f_x - f_x,r), expanded into convolutions.
  const std::size_t n = spec_.size();
  const auto& f = c.f[0];
  const auto& fx = c.fx[0];
  std::vector<std::vector<double>> ffx, f2, f2fx;
  for (std::size_t s = 0; s < m_; ++s) {
    std::vector<double> a(n), b(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = c.f[s][i] * c.fx[s][i];
      b[i] = c.f[s][i] * c.f[s][i];
      d[i] = b[i] * c.fx[s][i];
    }
    ffx.push_back(std::move(a));
    f2.push_back(std::move(b));
    f2fx.push_back(std::move(d));
  }
  const auto cf = tail_convolve(cubic_hat_, c.f);
  const auto cfx = tail_convolve(cubic_hat_, c.fx);
  const auto cffx = tail_convolve(cubic_hat_, ffx);
  const auto cf2 = tail_convolve(cubic_hat_, f2);
  const auto cf2fx = tail_convolve(cubic_hat_, f2fx);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = f[i], ux = fx[i];
    out[i] = u * u * ux * cubic_total_ - u * u * cfx[i] - 2.0 * u * ux * cf[i] + 2.0 * u * cffx[i] +
             ux * cf2[i] - cf2fx[i];
  }
  return out;
}

GridFunction ContourEvaluator::T(const GridFunction& g) const {
  if (eps_ != 0.0) throw std::logic_error("ContourEvaluator::T: defined for the unregularized kernel only");
  const std::size_t n = spec_.size();
  const Copies c = make_copies(g, true);
  const auto& f = c.f[0];
  const auto& fx = c.fx[0];
  const GridFunction fxx = derivative(g, 2);
  std::vector<double> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s2 = fx[i] * fx[i];
    acc[i] = node_weight_[0] * fxx[i] * s2 / (1.0 + s2);
  }
  std::vector<double> fs(n), fxs(n);
  const auto m = static_cast<long long>(m_);
  for (std::size_t j = 1; j <= cut_; ++j) {
    const double w = node_weight_[j];
    for (int sg : {1, -1}) {
      const long long jj = sg * static_cast<long long>(j);
      const long long q = floor_div(jj, m);
      const auto s = static_cast<std::size_t>(jj - q * m);
      roll(c.f[s], q, fs);
      roll(c.fx[s], q, fxs);
      const double inv_a = sg * node_kernel_[j];
      for (std::size_t i = 0; i < n; ++i) {
        const double d = (f[i] - fs[i]) * inv_a;
        const double dd = (fx[i] - fxs[i]) * inv_a;
        const double d2 = d * d;
        acc[i] += w * dd * d2 / (1.0 + d2);
      }
    }
  }
  if (quad_.tail_correction) {
    const auto tail = cubic_tail_T(c);
    for (std::size_t i = 0; i < n; ++i) acc[i] += tail[i];
  }
  for (double& v : acc) v /= pi;
  return GridFunction(spec_, std::move(acc));
}

GridFunction ContourEvaluator::T_series(const GridFunction& g, int n_terms) const {
  if (eps_ != 0.0) throw std::logic_error("ContourEvaluator::T_series: defined for the unregularized kernel only");
  if (n_terms < 1) throw std::invalid_argument("T_series: n_terms must be positive");
  const double slope = interpolant_sup_abs(derivative(g, 1));
  if (slope >= 1.0)
    throw std::invalid_argument("T_series: the expansion diverges for sup |f_x| >= 1 (got " +
                                std::to_string(slope) + ")");
  const std::size_t n = spec_.size();
  const Copies c = make_copies(g, true);
  const auto& f = c.f[0];
  const auto& fx = c.fx[0];
  const GridFunction fxx = derivative(g, 2);

  // sum_{k=1}^{n_terms} (-1)^{k+1} D^{2k}
  auto partial = [n_terms](double d) {
    const double d2 = d * d;
    double pw = d2, sum = 0.0, sign = 1.0;
    for (int k = 1; k <= n_terms; ++k) {
      sum += sign * pw;
      pw *= d2;
      sign = -sign;
    }
    return sum;
  };

  std::vector<double> acc(n);
  for (std::size_t i = 0; i < n; ++i) acc[i] = node_weight_[0] * fxx[i] * partial(fx[i]);
  std::vector<double> fs(n), fxs(n);
  const auto m = static_cast<long long>(m_);
  for (std::size_t j = 1; j <= cut_; ++j) {
    const double w = node_weight_[j];
    for (int sg : {1, -1}) {
      const long long jj = sg * static_cast<long long>(j);
      const long long q = floor_div(jj, m);
      const auto s = static_cast<std::size_t>(jj - q * m);
      roll(c.f[s], q, fs);
      roll(c.fx[s], q, fxs);
      const double inv_a = sg * node_kernel_[j];
      for (std::size_t i = 0; i < n; ++i) {
        const double d = (f[i] - fs[i]) * inv_a;
        acc[i] += w * (fx[i] - fxs[i]) * inv_a * partial(d);
      }
    }
  }
  if (quad_.tail_correction) {
    // Only the leading term has a cubic far field.
    const auto tail = cubic_tail_T(c);
    for (std::size_t i = 0; i < n; ++i) acc[i] += tail[i];
  }
  for (double& v : acc) v /= pi;
  return GridFunction(spec_, std::move(acc));
}

double ContourEvaluator::dissipation(const GridFunction& g, std::size_t stride) const {
  if (eps_ != 0.0) throw std::logic_error("ContourEvaluator::dissipation: defined for the unregularized kernel only");
  const std::size_t n = spec_.size();
  if (stride == 0 || n % stride != 0 || cut_ % stride != 0)
    throw std::invalid_argument("dissipation: stride must divide both N and the lattice cut");

  const Spectrum sp = forward_transform(g);
  const auto nn = static_cast<std::ptrdiff_t>(n);
  double quadratic = 0.0;
  for (std::ptrdiff_t k = -nn / 2; k < nn / 2; ++k)
    quadratic += std::norm(sp[k]) * 2.0 * pi * std::abs(spec_.wavenumber(k));
  quadratic *= spec_.length();

  const Copies c = make_copies(g, false);
  const auto& f = c.f[0];
  const auto& fx = c.fx[0];
  const double sx = static_cast<double>(stride) * spec_.dx();
  const double sa = static_cast<double>(stride);

  double residual = 0.0;
  for (std::size_t i = 0; i < n; i += stride) {
    const double s2 = fx[i] * fx[i];
    residual += node_weight_[0] * sa * (std::log1p(s2) - s2);
  }
  std::vector<double> fs(n);
  const auto m = static_cast<long long>(m_);
  for (std::size_t j = stride; j <= cut_; j += stride) {
    // The last node meets the stride-one far field halfway between lattice points.
    double w = h_ * sa;
    if (j == cut_) w = quad_.rule == QuadratureRule::trapezoid ? 0.5 * sa * h_ : 0.5 * (sa + 1.0) * h_;
    for (int sg : {1, -1}) {
      const long long jj = sg * static_cast<long long>(j);
      const long long q = floor_div(jj, m);
      roll(c.f[static_cast<std::size_t>(jj - q * m)], q, fs);
      const double inv_a = node_kernel_[j];
      double line = 0.0;
      for (std::size_t i = 0; i < n; i += stride) {
        const double d = (f[i] - fs[i]) * inv_a;
        const double d2 = d * d;
        line += std::log1p(d2) - d2;
      }
      residual += w * line;
    }
  }
  residual *= sx;

  double tail = 0.0;
  if (quad_.tail_correction) {
    std::vector<std::vector<double>> p2, p3, p4;
    for (const auto& v : c.f) {
      p2.push_back(pointwise_pow(v, 2));
      p3.push_back(pointwise_pow(v, 3));
      p4.push_back(pointwise_pow(v, 4));
    }
    const auto c1 = tail_convolve(quartic_hat_, c.f);
    const auto c2 = tail_convolve(quartic_hat_, p2);
    const auto c3 = tail_convolve(quartic_hat_, p3);
    const auto c4 = tail_convolve(quartic_hat_, p4);
    double quartic = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = f[i];
      quartic += u * u * u * u * quartic_total_ - 4.0 * u * u * u * c1[i] + 6.0 * u * u * c2[i] -
                 4.0 * u * c3[i] + c4[i];
    }
    tail = -0.5 * spec_.dx() * quartic;
  }
  return quadratic + residual + tail;
}

double ContourEvaluator::tail_bound(const GridFunction& g) const {
  const Interpolant p(g);
  const double osc = p.max() - p.min();
  const double slope = interpolant_sup_abs(derivative(g, 1));
  const double r = static_cast<double>(cut_) * h_ - 0.5 * h_;
  if (quad_.tail_correction)
    return 4.0 * slope * std::pow(osc, 4) * std::pow(r, 5.0 * eps_ - 4.0) / ((4.0 - 5.0 * eps_) * pi);
  return 4.0 * slope * osc * osc * std::pow(r, 3.0 * eps_ - 2.0) / ((2.0 - 3.0 * eps_) * pi);
}

GridFunction eval_T(const GridFunction& g, const QuadratureConfig& quad) {
  return ContourEvaluator(g.spec(), quad).T(g);
}

CheckedT eval_T_checked(const GridFunction& g, const QuadratureConfig& quad, double rel_tol, int max_doublings) {
  ContourEvaluator base(g.spec(), quad);
  GridFunction prev = base.T(g);
  std::size_t points = base.alpha_points();
  double change = 0.0;
  for (int level = 1; level <= max_doublings; ++level) {
    QuadratureConfig q = quad;
    points *= 2;
    q.alpha_points = points;
    GridFunction next = ContourEvaluator(g.spec(), q).T(g);
    change = (next - prev).max_abs();
    const double scale = next.max_abs();
    if (change <= rel_tol * scale || scale == 0.0) return {std::move(next), change, points};
    prev = std::move(next);
  }
  throw QuadratureNotConverged("eval_T: alpha quadrature did not converge under " +
                               std::to_string(max_doublings) + " doublings (last change " +
                               std::to_string(change) + ")");
}

GridFunction eval_T_series(const GridFunction& g, int n_terms, const QuadratureConfig& quad) {
  return ContourEvaluator(g.spec(), quad).T_series(g, n_terms);
}

GridFunction eval_rhs_muskat(const GridFunction& g, const PhysParams& p, const QuadratureConfig& quad) {
  return -p.rho() * (lambda_pow(g, 1.0) + eval_T(g, quad));
}

GridFunction eval_rhs_arctan(const GridFunction& g, const PhysParams& p, const QuadratureConfig& quad) {
  return (p.rho() / pi) * derivative(ContourEvaluator(g.spec(), quad).arctan_integral(g), 1);
}

GridFunction eval_rhs_regularized(const GridFunction& g, const PhysParams& p, const RegularizationParams& r,
                                  const QuadratureConfig& quad, bool transport) {
  r.validate();
  GridFunction out = (-r.eps * r.bigC) * lambda_pow(g, 1.0 - r.eps) + r.eps * derivative(g, 2);
  if (transport)
    out += (p.rho() / pi) * derivative(ContourEvaluator(g.spec(), quad, r.eps).arctan_integral(g), 1);
  return out;
}

GridFunction arctan_integral(const GridFunction& g, const QuadratureConfig& quad) {
  return ContourEvaluator(g.spec(), quad).arctan_integral(g);
}

double tail_bound(const GridFunction& g, const QuadratureConfig& quad) {
  return ContourEvaluator(g.spec(), quad).tail_bound(g);
}

}  // namespace muskat
