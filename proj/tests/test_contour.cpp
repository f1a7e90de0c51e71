#include <doctest.h>

#include <cmath>
#include <numbers>

#include "muskat/contour.hpp"
#include "muskat/quadrature.hpp"
#include "muskat/spectral.hpp"
#include "oracles.hpp"

using namespace muskat;
using std::numbers::pi;

namespace {

GridFunction bump(const GridSpec& g, double a, double w, double c = 0.0) {
  auto f = GridFunction::sample(g, [&](double x) { return a * std::exp(-(x - c) * (x - c) / (w * w)); });
  return f - GridFunction::constant(g, mean(f));
}

double rel_diff(const GridFunction& a, const GridFunction& b) { return (a - b).max_abs() / b.max_abs(); }

// (1/pi) int_R (f_x(x) - f_x(x - a)) / a * D^2 / (1 + D^2) da with D the
// difference quotient, by composite Gauss-Legendre on [-M, M].
double brute_T(const oracle::TrigPoly& p, double x, double M) {
  const double fx = p(x), fxx = p(x, 1);
  const auto integrand = [&](double a) {
    const double d = (fx - p(x - a)) / a;
    return (fxx - p(x - a, 1)) / a * d * d / (1.0 + d * d);
  };
  const int panels = static_cast<int>(M / 0.25);
  return (oracle::gauss(integrand, -M, 0.0, panels) + oracle::gauss(integrand, 0.0, M, panels)) / pi;
}

}  // namespace

TEST_CASE("physical parameters enforce the stable case") {
  CHECK_NOTHROW(PhysParams(0.0, 1.0));
  CHECK_THROWS_WITH_AS(PhysParams(2.0, 1.0), doctest::Contains("stability"), std::invalid_argument);
  CHECK_THROWS_AS(PhysParams(1.0, 1.0), std::invalid_argument);
  CHECK(PhysParams::normalized().rho() == doctest::Approx(pi));
}

TEST_CASE("T against a brute-force integral of the trigonometric interpolant") {
  const GridSpec g(64, 4.0 * pi);
  const auto f = bump(g, 0.6, 2.0);
  const auto T = eval_T(f, {});
  const oracle::TrigPoly p(f);
  for (std::size_t j : {32u, 37u, 41u, 50u}) {
    const double ref = brute_T(p, g.x(j), 2000.0);
    CHECK(T[j] == doctest::Approx(ref).epsilon(1e-6).scale(T.max_abs()));
  }
}

TEST_CASE("split and arctan right-hand sides agree") {
  const PhysParams p(1.0, 4.0);
  for (double slope : {0.2, 0.6, 1.5}) {
    const GridSpec g(256, 8.0 * pi);
    auto f = bump(g, 1.0, 2.0);
    f *= slope / interpolant_sup_abs(derivative(f, 1));
    CHECK(rel_diff(eval_rhs_arctan(f, p, {}), eval_rhs_muskat(f, p, {})) < 1e-10);
  }
}

TEST_CASE("discrete energy identity") {
  const PhysParams p(1.0, 3.0);
  const GridSpec g(256, 8.0 * pi);
  const auto f = bump(g, 1.0, 2.0);
  const auto r = eval_rhs_muskat(f, p, {});
  double dE = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) dE += 2.0 * f[j] * r[j] * g.dx();
  const ContourEvaluator ev(g, {});
  const double D = ev.dissipation(f);
  CHECK(dE == doctest::Approx(-(p.rho2() - p.rho1()) / (2.0 * pi) * D).epsilon(1e-7));
}

TEST_CASE("series expansion of T") {
  const GridSpec g(256, 8.0 * pi);
  auto f = bump(g, 1.0, 2.0);
  f *= 0.3 / interpolant_sup_abs(derivative(f, 1));
  const auto T = eval_T(f, {});
  double prev = INFINITY;
  for (int n : {1, 2, 4, 6}) {
    const double d = rel_diff(eval_T_series(f, n), T);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-6);
  CHECK_THROWS_AS(eval_T_series(f * 4.0, 6), std::invalid_argument);
}

TEST_CASE("symmetries of the right-hand side") {
  const PhysParams p = PhysParams::normalized();
  const GridSpec g(128, 4.0 * pi);
  const auto f = bump(g, 0.8, 1.5, 1.0) + bump(g, -0.3, 1.0, -2.0);
  const auto r = eval_rhs_muskat(f, p, {});
  SUBCASE("translation") { CHECK((eval_rhs_muskat(f.shifted(11), p, {}) - r.shifted(11)).max_abs() < 1e-13); }
  SUBCASE("reflection") { CHECK((eval_rhs_muskat(f.reflected(), p, {}) - r.reflected()).max_abs() < 1e-13); }
  SUBCASE("odd in f") { CHECK((eval_rhs_muskat(f * -1.0, p, {}) + r).max_abs() < 1e-13); }
  SUBCASE("constants are invisible") {
    CHECK((eval_rhs_muskat(f + GridFunction::constant(g, 3.0), p, {}) - r).max_abs() < 1e-12);
    CHECK(eval_rhs_muskat(GridFunction::constant(g, 2.0), p, {}).max_abs() < 1e-13);
  }
  SUBCASE("T is cubic at small amplitude") {
    const double a = eval_T(f * 1e-3, {}).max_abs(), b = eval_T(f * 2e-3, {}).max_abs();
    CHECK(b / a == doctest::Approx(8.0).epsilon(1e-4));
  }
}

TEST_CASE("linear and nonlinear parts of the arctan integral") {
  const GridSpec g(128, 4.0 * pi);
  const auto f = bump(g, 0.7, 1.5);
  const ContourEvaluator ev(g, {});
  CHECK((ev.arctan_linear(f) + ev.arctan_nonlinear(f) - ev.arctan_integral(f)).max_abs() < 1e-13);
  CHECK(std::abs(ev.linear_symbol(3) - std::complex<double>(0.0, pi)) < 1e-15);
  CHECK(std::abs(ev.linear_symbol(-3) - std::complex<double>(0.0, -pi)) < 1e-15);
  // d/dx of the linear part is -pi Lambda f.
  CHECK((derivative(ev.arctan_linear(f), 1) + pi * lambda_pow(f, 1.0)).max_abs() < 1e-12);
}

TEST_CASE("quadrature refinement, rules and convergence check") {
  const GridSpec g(128, 4.0 * pi);
  const auto f = bump(g, 0.8, 1.5);
  const auto base = eval_T(f, {});
  const ContourEvaluator ev(g, {});
  QuadratureConfig fine;
  fine.alpha_points = 2 * ev.alpha_points();
  CHECK(ContourEvaluator(g, fine).refinement() == 2);
  CHECK((eval_T(f, fine) - base).max_abs() < 1e-6 * base.max_abs());
  QuadratureConfig trap;
  trap.rule = QuadratureRule::trapezoid;
  CHECK((eval_T(f, trap) - base).max_abs() < 1e-9 * base.max_abs());
  const auto checked = eval_T_checked(f, {}, 1e-8);
  CHECK(checked.change <= 1e-8 * checked.value.max_abs());
  CHECK((checked.value - base).max_abs() < 1e-6 * base.max_abs());
  QuadratureConfig bad;
  bad.alpha_points = 3;
  CHECK_THROWS_AS(ContourEvaluator(g, bad), std::invalid_argument);
  bad = {};
  bad.tail_cut = 0.3 * g.dx();
  CHECK_THROWS_AS(ContourEvaluator(g, bad), std::invalid_argument);
}

TEST_CASE("tail bound controls truncation") {
  const GridSpec g(256, 8.0 * pi);
  const auto f = bump(g, 1.0, 2.0);
  QuadratureConfig full, half, quarter;
  half.tail_cut = 0.5 * g.half_period();
  quarter.tail_cut = 0.25 * g.half_period();
  const auto t_full = eval_T(f, full);
  const double b_half = tail_bound(f, half), b_quarter = tail_bound(f, quarter);
  CHECK(b_quarter > b_half);
  CHECK(b_half > tail_bound(f, full));
  CHECK((eval_T(f, half) - t_full).max_abs() <= b_half);
  CHECK((eval_T(f, quarter) - t_full).max_abs() <= b_quarter);
  QuadratureConfig uncorrected = half;
  uncorrected.tail_correction = false;
  CHECK(tail_bound(f, uncorrected) > b_half);
  CHECK((eval_T(f, uncorrected) - t_full).max_abs() <= tail_bound(f, uncorrected));
  CHECK(tail_bound(GridFunction::zeros(g), half) == 0.0);
}

TEST_CASE("delta quotient") {
  const GridSpec g(64, pi);
  const auto f = GridFunction::sample(g, [](double x) { return std::sin(2 * x); });
  const double x = g.x(10);
  for (double a : {0.3, -1.7, 2.5})
    CHECK(delta_quotient(f, 10, a) == doctest::Approx((std::sin(2 * x) - std::sin(2 * (x - a))) / a).epsilon(1e-12));
  CHECK(delta_quotient(f, 10, 1e-5) == doctest::Approx(2 * std::cos(2 * x)).epsilon(1e-9));
  CHECK_THROWS_AS(delta_quotient(f, 64, 0.1), std::out_of_range);
}

TEST_CASE("regularized kernel constants") {
  for (double eps : {0.05, 0.1, 0.25}) {
    CHECK(kernel_constant_c1(eps) == doctest::Approx(kernel_lambda_constant(1.0 - eps)));
    // c2 * 2 int_0^inf (1 - sin a / a) / a^{2-eps} da = 1.
    const double I = quadrature::integrate_half_line([eps](double a) {
      const double num = a < 1e-3 ? a * a / 6.0 - a * a * a * a / 120.0 : 1.0 - std::sin(a) / a;
      return num / std::pow(a, 2.0 - eps);
    }, 1e-12);
    CHECK(kernel_constant_c2(eps) * 2.0 * I == doctest::Approx(1.0).epsilon(1e-7));
  }
  const PhysParams p = PhysParams::normalized();
  const auto r = RegularizationParams::with_default_constant(0.1, p);
  CHECK(r.bigC == doctest::Approx(2.0 * p.rho() / (pi * std::min(kernel_constant_c1(0.1), kernel_constant_c2(0.1)))));
  CHECK_THROWS_AS((RegularizationParams{0.3, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RegularizationParams{0.1, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("regularized right-hand side") {
  const PhysParams p = PhysParams::normalized();
  const GridSpec g(256, 8.0 * pi);
  auto f = bump(g, 1.0, 2.0);
  f *= 0.3 / interpolant_sup_abs(derivative(f, 1));
  SUBCASE("without transport it is the linear regularization") {
    const RegularizationParams r{0.1, 2.0};
    const auto lin = -0.1 * 2.0 * lambda_pow(f, 0.9) + 0.1 * derivative(f, 2);
    CHECK((eval_rhs_regularized(f, p, r, {}, false) - lin).max_abs() < 1e-13);
  }
  SUBCASE("first-order approach to the unregularized model") {
    const auto ref = eval_rhs_arctan(f, p, {});
    double prev = 0.0;
    for (double eps : {0.04, 0.02, 0.01}) {
      const auto r = RegularizationParams::with_default_constant(eps, p);
      const double d = rel_diff(eval_rhs_regularized(f, p, r, {}), ref);
      if (prev > 0.0) CHECK(prev / d == doctest::Approx(2.0).epsilon(0.15));
      prev = d;
    }
  }
}
