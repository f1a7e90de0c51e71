#include "muskat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace muskat {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

GridSpec::GridSpec(std::size_t n, double half_period) : n_(n), half_period_(half_period) {
  if (n < 8 || !is_power_of_two(n))
    throw std::invalid_argument("GridSpec: N must be a power of two >= 8, got " + std::to_string(n));
  if (!(half_period > 0.0) || !std::isfinite(half_period))
    throw std::invalid_argument("GridSpec: half-period L must be positive and finite");
}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.size())
    throw std::invalid_argument("GridFunction: expected " + std::to_string(spec_.size()) +
                                " samples, got " + std::to_string(values_.size()));
  for (std::size_t j = 0; j < values_.size(); ++j)
    if (!std::isfinite(values_[j]))
      throw NonFiniteError("GridFunction: non-finite sample at index " + std::to_string(j));
}

GridFunction GridFunction::zeros(const GridSpec& spec) { return constant(spec, 0.0); }

GridFunction GridFunction::constant(const GridSpec& spec, double value) {
  return GridFunction(spec, std::vector<double>(spec.size(), value));
}

GridFunction GridFunction::sample(const GridSpec& spec, const std::function<double(double)>& f) {
  std::vector<double> v(spec.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(spec.x(j));
  return GridFunction(spec, std::move(v));
}

GridFunction GridFunction::shifted(std::ptrdiff_t shift) const {
  const auto n = static_cast<std::ptrdiff_t>(values_.size());
  std::vector<double> v(values_.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) v[j] = values_[((j - shift) % n + n) % n];
  return GridFunction(spec_, std::move(v));
}

GridFunction GridFunction::reflected() const {
  // x_j = -L + j dx maps to -x_j = x_{N-j}; node 0 (x = -L) is its own image.
  const std::size_t n = values_.size();
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = values_[(n - j) % n];
  return GridFunction(spec_, std::move(v));
}

void GridFunction::require_same_grid(const GridFunction& other) const {
  if (!(spec_ == other.spec_)) throw std::invalid_argument("GridFunction: grid mismatch");
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }

}  // namespace muskat
