#include "biphoton/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"

namespace biphoton {
namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const noexcept { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct BufferDeleter {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], BufferDeleter>;

Buffer allocate(std::size_t count) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count));
  if (p == nullptr) throw std::bad_alloc();
  return Buffer(p);
}

// Centered index j holds x_j = (j - n/2) dx; the standard DFT wants that
// sample at (j - n/2) mod n. For even n this is a half swap, which is its own
// inverse, so the same map takes DFT output back to centered order.
// FFTW_ESTIMATE keeps plan choice (and therefore rounding) reproducible.

}  // namespace

void centered_transform(std::span<std::complex<double>> values, const SpatialGrid& grid) {
  const std::size_t n = grid.size();
  if (values.size() != n) throw InvalidParameter("sequence length does not match grid");
  Buffer buf = allocate(n);
  auto* cbuf = reinterpret_cast<std::complex<double>*>(buf.get());
  for (std::size_t j = 0; j < n; ++j) cbuf[grid.to_fft_order(j)] = values[j];
  Plan plan(fftw_plan_dft_1d(static_cast<int>(n), buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE));
  fftw_execute(plan.get());
  for (std::size_t q = 0; q < n; ++q) values[grid.from_fft_order(q)] = cbuf[q];
  simd::scale(values, grid.dx() / std::sqrt(2.0 * std::numbers::pi));
}

void centered_transform(ComplexMatrix& values, const SpatialGrid& grid) {
  const std::size_t n = grid.size();
  if (values.size() != n) throw InvalidParameter("matrix size does not match grid");
  Buffer buf = allocate(n * n);
  auto* cbuf = reinterpret_cast<std::complex<double>*>(buf.get());
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t fr = grid.to_fft_order(r);
    for (std::size_t c = 0; c < n; ++c) cbuf[fr * n + grid.to_fft_order(c)] = values(r, c);
  }
  Plan plan(fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), buf.get(), buf.get(),
                             FFTW_FORWARD, FFTW_ESTIMATE));
  fftw_execute(plan.get());
  for (std::size_t qr = 0; qr < n; ++qr) {
    const std::size_t r = grid.from_fft_order(qr);
    for (std::size_t qc = 0; qc < n; ++qc) values(r, grid.from_fft_order(qc)) = cbuf[qr * n + qc];
  }
  const double s = grid.dx() / std::sqrt(2.0 * std::numbers::pi);
  simd::scale(values.flat(), s * s);
}

}  // namespace biphoton
