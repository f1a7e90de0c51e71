#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace muskat {

/// Uniform periodic grid on the torus [-L, L) with N points.
class GridSpec {
 public:
  GridSpec(std::size_t n, double half_period);

  std::size_t size() const { return n_; }
  double half_period() const { return half_period_; }
  double dx() const { return 2.0 * half_period_ / static_cast<double>(n_); }
  double length() const { return 2.0 * half_period_; }

  /// Node coordinate x_j = -L + j*dx.
  double x(std::size_t j) const { return -half_period_ + static_cast<double>(j) * dx(); }

  /// Continuous frequency of the integer wavenumber k, xi_k = pi*k/L.
  double wavenumber(std::ptrdiff_t k) const {
    return std::numbers::pi * static_cast<double>(k) / half_period_;
  }

  /// Largest resolved |xi| (the Nyquist frequency).
  double max_wavenumber() const { return wavenumber(static_cast<std::ptrdiff_t>(n_ / 2)); }

  bool operator==(const GridSpec& other) const = default;

 private:
  std::size_t n_;
  double half_period_;
};

/// Raised when a GridFunction would hold NaN or Inf samples.
class NonFiniteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Real samples of a periodic function on a GridSpec.
class GridFunction {
 public:
  GridFunction(GridSpec spec, std::vector<double> values);

  static GridFunction zeros(const GridSpec& spec);
  static GridFunction constant(const GridSpec& spec, double value);
  static GridFunction sample(const GridSpec& spec, const std::function<double(double)>& f);

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

  /// Periodic cyclic shift: result[j] = this[j - shift mod N].
  GridFunction shifted(std::ptrdiff_t shift) const;

  /// Mirror image x -> -x about the torus centre.
  GridFunction reflected() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double s);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, double s) { return a *= s; }
  friend GridFunction operator*(double s, GridFunction a) { return a *= s; }

  double max_abs() const;
  double max() const;
  double min() const;

 private:
  void require_same_grid(const GridFunction& other) const;

  GridSpec spec_;
  std::vector<double> values_;
};

}  // namespace muskat
