#include "muskat/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace muskat::quadrature {

double PowerKernel::operator()(double a) const {
  const double v = std::pow(std::abs(a), -p);
  return (odd && a < 0.0) ? -v : v;
}

double PowerKernel::tail_integral(double a) const { return std::pow(a, 1.0 - p) / (p - 1.0); }

std::vector<double> periodized_tail_weights(std::size_t period, double h, std::size_t cut,
                                            const PowerKernel& kernel, bool half_at_cut) {
  if (period == 0 || !(h > 0.0)) throw std::invalid_argument("periodized_tail_weights: bad lattice");
  if (!(kernel.p > 1.0)) throw std::invalid_argument("periodized_tail_weights: kernel must decay faster than 1/|a|");

  const auto P = static_cast<long long>(period);
  const auto c = static_cast<long long>(cut);
  constexpr long long explicit_periods = 64;
  const long long j_max = c + explicit_periods * P;

  std::vector<double> w(period, 0.0);
  auto residue = [P](long long j) { return static_cast<std::size_t>(((j % P) + P) % P); };

  for (long long j = c + 1; j <= j_max; ++j) {
    const double a = static_cast<double>(j) * h;
    w[residue(j)] += h * kernel(a);
    w[residue(-j)] += h * kernel(-a);
  }
  // Remainder of each residue class j = j0 + l P, l >= 1, by the midpoint
  // integral approximation starting half a period beyond the last explicit term.
  for (long long j0 = j_max - P + 1; j0 <= j_max; ++j0) {
    const double start = (static_cast<double>(j0) + 0.5 * static_cast<double>(P)) * h;
    const double rest = kernel.tail_integral(start) / static_cast<double>(P);
    w[residue(j0)] += rest;
    w[residue(-j0)] += kernel.odd ? -rest : rest;
  }
  if (half_at_cut && cut > 0) {
    const double a = static_cast<double>(c) * h;
    w[residue(c)] += 0.5 * h * kernel(a);
    w[residue(-c)] += 0.5 * h * kernel(-a);
  }
  return w;
}

namespace {

constexpr double half_pi = 0.5 * std::numbers::pi;

template <class Node>
double de_trapezoid(Node&& node, double t_max, double rel_tol) {
  // Level 0 uses spacing 1; each refinement halves it and adds the odd nodes.
  double h = 1.0;
  double sum = 0.0;
  for (double t = -t_max; t <= t_max + 1e-12; t += h) sum += node(t);
  double estimate = sum * h;
  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    double added = 0.0;
    for (double t = -t_max + h; t < t_max; t += 2.0 * h) added += node(t);
    sum += added;
    const double next = sum * h;
    if (level >= 3 && std::abs(next - estimate) <= rel_tol * std::abs(next)) return next;
    estimate = next;
  }
  return estimate;
}

}  // namespace

double integrate_half_line(const std::function<double(double)>& f, double rel_tol) {
  auto node = [&f](double t) {
    const double s = half_pi * std::sinh(t);
    const double x = std::exp(s);
    const double w = half_pi * std::cosh(t) * x;
    if (!(x > 0.0) || !std::isfinite(x)) return 0.0;
    const double v = f(x) * w;
    return std::isfinite(v) ? v : 0.0;
  };
  return de_trapezoid(node, 6.5, rel_tol);
}

double integrate_interval(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  const double half = 0.5 * (b - a);
  auto node = [&](double t) {
    const double u = half_pi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(u));
    // Distance from the nearer endpoint, in units of half, without cancellation.
    const double gap = 2.0 * e / (1.0 + e);
    const double x = u >= 0.0 ? b - half * gap : a + half * gap;
    const double ch = std::cosh(u);
    const double w = half * half_pi * std::cosh(t) / (ch * ch);
    if (!(w > 0.0) || x <= a || x >= b) return 0.0;
    const double v = f(x) * w;
    return std::isfinite(v) ? v : 0.0;
  };
  return de_trapezoid(node, 3.2, rel_tol);
}

}  // namespace muskat::quadrature
