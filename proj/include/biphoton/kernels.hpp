#pragma once

// Data-parallel inner loops shared by the forward model. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant; the active
// table is chosen once at startup from CPU capabilities. Setting the
// environment variable BIPHOTON_SIMD=scalar forces the reference kernels.
//
// Element-wise kernels produce bitwise-identical results across variants.
// Reductions differ only in summation order.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace biphoton::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // out[i] = |z[i]|^2
  void (*norm_sq)(const cplx* z, double* out, std::size_t n);
  // out[i] = (a * b[i]) * w[i]
  void (*scaled_product)(cplx a, const cplx* b, const double* w, cplx* out, std::size_t n);
  // z[i] *= s
  void (*scale)(cplx* z, double s, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*sum_norm_sq)(const cplx* z, std::size_t n);
};

std::string_view isa_name(Isa isa) noexcept;

/// True when the running CPU can execute the given variant.
bool isa_supported(Isa isa) noexcept;

/// Table for a specific variant; throws InvalidParameter if unsupported.
const KernelTable& kernels_for(Isa isa);

/// The table selected at startup (best supported, unless overridden).
const KernelTable& active() noexcept;

/// Overrides the active variant for the rest of the process.
void set_active(Isa isa);

// Span conveniences over the active table.
void norm_sq(std::span<const cplx> z, std::span<double> out);
void scaled_product(cplx a, std::span<const cplx> b, std::span<const double> w, std::span<cplx> out);
void scale(std::span<cplx> z, double s);
void axpy(double a, std::span<const double> x, std::span<double> y);
double sum(std::span<const double> x);
double sum_norm_sq(std::span<const cplx> z);

namespace detail {
const KernelTable& scalar_table() noexcept;
#if defined(BIPHOTON_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
}  // namespace detail

}  // namespace biphoton::simd
