#pragma once

#include <complex>
#include <span>
#include <vector>

namespace muskat::detail {

/// Unnormalised real-to-complex DFT, X_k = sum_j x_j exp(-2 pi i j k / N),
/// k = 0..N/2.
std::vector<std::complex<double>> rfft(std::span<const double> x);

/// Unnormalised inverse of rfft: returns sum_k X_k exp(2 pi i j k / N) over
/// the Hermitian extension, so irfft(rfft(x), N) == N * x.
std::vector<double> irfft(std::span<const std::complex<double>> half, std::size_t n);

}  // namespace muskat::detail
