#include "biphoton/kernels.hpp"

namespace biphoton::simd::detail {
namespace {

void norm_sq(const cplx* z, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = z[i].real();
    const double im = z[i].imag();
    out[i] = re * re + im * im;
  }
}

// Written out instead of std::complex operator* so the arithmetic matches the
// vector variants operation for operation.
void scaled_product(cplx a, const cplx* b, const double* w, cplx* out, std::size_t n) {
  const double ar = a.real();
  const double ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double br = b[i].real();
    const double bi = b[i].imag();
    const double re = ar * br - ai * bi;
    const double im = ar * bi + ai * br;
    out[i] = {re * w[i], im * w[i]};
  }
}

void scale(cplx* z, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = {z[i].real() * s, z[i].imag() * s};
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sum_norm_sq(const cplx* z, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = z[i].real();
    const double im = z[i].imag();
    acc += re * re + im * im;
  }
  return acc;
}

constexpr KernelTable kTable{Isa::scalar, norm_sq, scaled_product, scale, axpy, sum, sum_norm_sq};

}  // namespace

const KernelTable& scalar_table() noexcept { return kTable; }

}  // namespace biphoton::simd::detail
