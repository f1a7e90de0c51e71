#include "muskat/detail/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace muskat::detail {

namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Planning is not thread-safe in FFTW; execution through the new-array
// interface is. Plans live for the lifetime of the process.
Plans& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, Plans> cache;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace(n);
  if (inserted) {
    std::vector<double> real(n);
    std::vector<std::complex<double>> cplx(n / 2 + 1);
    auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
    const int len = static_cast<int>(n);
    it->second.forward = fftw_plan_dft_r2c_1d(len, real.data(), c, FFTW_ESTIMATE | FFTW_UNALIGNED);
    it->second.backward = fftw_plan_dft_c2r_1d(len, c, real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!it->second.forward || !it->second.backward) throw std::runtime_error("FFTW planning failed");
  }
  return it->second;
}

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> x) {
  const std::size_t n = x.size();
  const Plans& p = plans_for(n);
  std::vector<double> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(p.forward, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> half, std::size_t n) {
  if (half.size() != n / 2 + 1) throw std::invalid_argument("irfft: half-spectrum size mismatch");
  const Plans& p = plans_for(n);
  // c2r overwrites its input.
  std::vector<std::complex<double>> in(half.begin(), half.end());
  std::vector<double> out(n);
  fftw_execute_dft_c2r(p.backward, reinterpret_cast<fftw_complex*>(in.data()), out.data());
  return out;
}

}  // namespace muskat::detail
