#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "muskat/quadrature.hpp"
#include "muskat/spectral.hpp"
#include "oracles.hpp"

using namespace muskat;
using std::numbers::pi;

namespace {

GridFunction random_smooth(const GridSpec& g, unsigned seed, int modes = 6) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(modes), b(modes);
  for (int k = 0; k < modes; ++k) {
    a[k] = u(rng) / (k + 1);
    b[k] = u(rng) / (k + 1);
  }
  return GridFunction::sample(g, [&](double x) {
    double s = 0.0;
    for (int k = 1; k <= modes; ++k) s += a[k - 1] * std::cos(k * pi * x / g.half_period()) + b[k - 1] * std::sin(k * pi * x / g.half_period());
    return s;
  });
}

}  // namespace

TEST_CASE("grid construction and validation") {
  const GridSpec g(16, 2.0);
  CHECK(g.dx() == doctest::Approx(0.25));
  CHECK(g.x(0) == -2.0);
  CHECK(g.x(8) == doctest::Approx(0.0));
  CHECK(g.max_wavenumber() == doctest::Approx(8.0 * pi / 2.0));
  CHECK_THROWS_AS(GridSpec(12, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(16, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction(g, std::vector<double>(15, 0.0)), std::invalid_argument);
  std::vector<double> v(16, 0.0);
  v[3] = std::nan("");
  CHECK_THROWS_AS(GridFunction(g, v), NonFiniteError);
}

TEST_CASE("shift and reflection act on indices") {
  const GridSpec g(8, 1.0);
  const GridFunction f(g, {0, 1, 2, 3, 4, 5, 6, 7});
  const auto s = f.shifted(2);
  CHECK(s[2] == 0.0);
  CHECK(s[0] == 6.0);
  const auto r = f.reflected();
  // x_j -> -x_j maps index j to N - j (mod N).
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 7.0);
  CHECK(r[4] == 4.0);
}

TEST_CASE("forward transform matches the direct DFT") {
  const GridSpec g(32, 3.0);
  const auto f = random_smooth(g, 1, 15);
  const auto s = forward_transform(f);
  for (std::ptrdiff_t k = -16; k < 16; ++k) CHECK(std::abs(s[k] - oracle::dft_coefficient(f, k)) < 1e-14);
  CHECK(s.hermitian_defect() < 1e-15);
}

TEST_CASE("inverse transform round trip and Hermitian guard") {
  const GridSpec g(64, pi);
  const auto f = random_smooth(g, 2);
  const auto back = inverse_transform(forward_transform(f));
  CHECK((back - f).max_abs() < 1e-14);
  auto bad = Spectrum::zeros(g);
  bad.at(3) = {0.0, 1.0};
  CHECK_THROWS_AS(inverse_transform(bad), std::invalid_argument);
}

TEST_CASE("Parseval identity") {
  const GridSpec g(128, 5.0);
  const auto f = random_smooth(g, 3);
  const auto s = forward_transform(f);
  double sum = 0.0;
  for (std::ptrdiff_t k = -64; k < 64; ++k) sum += std::norm(s[k]);
  CHECK(l2_norm_sq(f) == doctest::Approx(g.length() * sum).epsilon(1e-13));
}

TEST_CASE("spectral derivatives of trigonometric polynomials") {
  const GridSpec g(64, 2.0);
  const double w = pi / 2.0;
  const auto f = GridFunction::sample(g, [&](double x) { return std::sin(3 * w * x); });
  const auto d1 = derivative(f, 1), d2 = derivative(f, 2), d3 = derivative(f, 3);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.x(j);
    CHECK(d1[j] == doctest::Approx(3 * w * std::cos(3 * w * x)).epsilon(1e-12).scale(1.0));
    CHECK(d2[j] == doctest::Approx(-9 * w * w * std::sin(3 * w * x)).scale(10.0));
    CHECK(d3[j] == doctest::Approx(-27 * w * w * w * std::cos(3 * w * x)).scale(100.0));
  }
  CHECK_THROWS_AS(derivative(f, 4), std::invalid_argument);
}

TEST_CASE("lambda_pow symbol and linearity") {
  const GridSpec g(64, pi);
  const auto f = GridFunction::sample(g, [](double x) { return std::cos(4 * x); });
  CHECK((lambda_pow(f, 1.0) - 4.0 * f).max_abs() < 1e-12);
  CHECK((lambda_pow(f, 0.5) - 2.0 * f).max_abs() < 1e-12);
  CHECK((lambda_pow(f, 2.0) + derivative(f, 2)).max_abs() < 1e-11);
  const auto a = random_smooth(g, 4), b = random_smooth(g, 5);
  CHECK((lambda_pow(2.0 * a + b, 0.7) - (2.0 * lambda_pow(a, 0.7) + lambda_pow(b, 0.7))).max_abs() < 1e-13);
  CHECK(std::abs(mean(lambda_pow(a, 0.3))) < 1e-15);
  CHECK_THROWS_AS(lambda_pow(f, 2.5), std::invalid_argument);
}

TEST_CASE("apply_multiplier uses the real part at Nyquist") {
  const GridSpec g(8, pi);
  const auto f = GridFunction::sample(g, [](double x) { return std::cos(4 * x); });
  const auto h = apply_multiplier(f, [](std::ptrdiff_t k) { return std::complex<double>(2.0, k > 0 ? 1.0 : -1.0); });
  CHECK((h - 2.0 * f).max_abs() < 1e-14);
}

TEST_CASE("kernel constant calibrated against the symbol by quadrature") {
  // c(s) int_R (1 - cos a) / |a|^{1+s} da = 1 is the normalization of |xi|^s at xi = 1.
  // Taylor series on (0, a0), Gauss panels on (a0, B = 600 pi), then
  // int_B^inf a^{-q} (1 - cos a) da with the cosine part from its asymptotic
  // expansion (cos B = 1, sin B = 0).
  for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double q = 1.0 + s;
    const double a0 = 0.1, B = 600.0 * pi;
    const double near = std::pow(a0, 3.0 - q) / (2.0 * (3.0 - q)) - std::pow(a0, 5.0 - q) / (24.0 * (5.0 - q)) +
                        std::pow(a0, 7.0 - q) / (720.0 * (7.0 - q));
    const double head = near + oracle::gauss([q](double a) { return (1.0 - std::cos(a)) / std::pow(a, q); }, a0, B, 4800);
    const double cos_tail = q * std::pow(B, -q - 1.0) - q * (q + 1.0) * (q + 2.0) * std::pow(B, -q - 3.0);
    const double half = head + std::pow(B, -s) / s - cos_tail;
    CHECK(kernel_lambda_constant(s) * 2.0 * half == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("kernel form of Lambda^s converges to the spectral one") {
  double prev = 0.0;
  for (std::size_t n : {64, 128, 256, 512}) {
    const GridSpec g(n, pi);
    const auto u = GridFunction::sample(g, [](double x) { return std::sin(x) + 0.3 * std::cos(3 * x); });
    const double e = (kernel_lambda_pow(u, 0.5, pi) - lambda_pow(u, 0.5)).max_abs();
    if (prev > 0.0) CHECK(std::log2(prev / e) > 1.0);
    prev = e;
  }
  CHECK(prev < 5e-4);
  const GridSpec g(64, pi);
  CHECK_THROWS_AS(kernel_lambda_pow(GridFunction::zeros(g), 0.01, pi), std::invalid_argument);
}

TEST_CASE("Wiener norms") {
  const GridSpec g(64, pi);
  const auto f = GridFunction::sample(g, [](double x) { return 0.3 * std::sin(2 * x) + 0.1 * std::cos(5 * x); });
  // |c_{+-2}| = 0.15, |c_{+-5}| = 0.05.
  CHECK(wiener_norm(f, 1.0) == doctest::Approx(2 * (0.15 * 2 + 0.05 * 5)).epsilon(1e-13));
  CHECK(wiener_norm(f, 2.1) == doctest::Approx(2 * (0.15 * std::pow(2, 2.1) + 0.05 * std::pow(5, 2.1))).epsilon(1e-13));
  CHECK(wiener_norm(f, 0.0) == doctest::Approx(0.4).epsilon(1e-13));
  // Translation invariance.
  CHECK(wiener_norm(f.shifted(7), 1.0) == doctest::Approx(wiener_norm(f, 1.0)).epsilon(1e-13));
}

TEST_CASE("periodic integrals") {
  const GridSpec g(64, pi);
  const auto f = GridFunction::sample(g, [](double x) { return 1.0 + std::sin(x); });
  CHECK(mean(f) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(l2_norm_sq(f) == doctest::Approx(2 * pi + pi).epsilon(1e-13));
  const auto s = GridFunction::sample(g, [](double x) { return std::sin(x); });
  CHECK(l1_norm(s) == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("band-limited resampling") {
  const GridSpec a(32, 2.0), b(128, 2.0);
  const auto f = random_smooth(a, 6, 10);
  const auto up = resample(f, b);
  const oracle::TrigPoly p(f);
  for (std::size_t j = 0; j < b.size(); j += 5) CHECK(up[j] == doctest::Approx(p(b.x(j))).epsilon(1e-12).scale(1.0));
  CHECK((resample(up, a) - f).max_abs() < 1e-14);
  CHECK_THROWS_AS(resample(f, GridSpec(64, 3.0)), std::invalid_argument);
}

TEST_CASE("interpolant evaluation and extrema") {
  const GridSpec g(32, 3.0);
  const auto f = random_smooth(g, 7, 12);
  const Interpolant ip(f);
  const oracle::TrigPoly p(f);
  for (double x : {-2.9, -1.234, 0.1, 2.71})
    for (int o = 0; o <= 3; ++o) CHECK(ip.evaluate(x, o) == doctest::Approx(p(x, o)).epsilon(1e-11).scale(1.0));
  // Dense scan of the oracle interpolant.
  double hi = -INFINITY, lo = INFINITY;
  for (int i = 0; i < 60000; ++i) {
    const double x = -3.0 + 6.0 * i / 60000.0;
    hi = std::max(hi, p(x));
    lo = std::min(lo, p(x));
  }
  CHECK(ip.max() >= hi - 1e-12);
  CHECK(ip.max() <= hi + 1e-7);
  CHECK(ip.min() <= lo + 1e-12);
  CHECK(ip.min() >= lo - 1e-7);
  CHECK(ip.max() >= f.max());
  CHECK(interpolant_sup_abs(f) == doctest::Approx(std::max(ip.max(), -ip.min())));
}
