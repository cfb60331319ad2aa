// AVX2 variants. This file is compiled with -mavx2 -mfma -ffp-contract=off;
// FMA contraction stays off so element-wise results match the scalar kernels.

#include <immintrin.h>

#include "biphoton/kernels.hpp"

namespace biphoton::simd::detail {
namespace {

inline const double* as_doubles(const cplx* z) { return reinterpret_cast<const double*>(z); }
inline double* as_doubles(cplx* z) { return reinterpret_cast<double*>(z); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void norm_sq(const cplx* z, double* out, std::size_t n) {
  const double* p = as_doubles(z);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(p + 2 * i);      // z0 z1
    const __m256d b = _mm256_loadu_pd(p + 2 * i + 4);  // z2 z3
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    // h = |z0|^2 |z2|^2 |z1|^2 |z3|^2
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; i < n; ++i) {
    const double re = z[i].real();
    const double im = z[i].imag();
    out[i] = re * re + im * im;
  }
}

void scaled_product(cplx a, const cplx* b, const double* w, cplx* out, std::size_t n) {
  const double* pb = as_doubles(b);
  double* po = as_doubles(out);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(pb + 2 * i);  // br0 bi0 br1 bi1
    const __m256d swapped = _mm256_permute_pd(v, 0x5);
    const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(ar, v), _mm256_mul_pd(ai, swapped));
    const __m256d ww =
        _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w + i)), 0x50);
    _mm256_storeu_pd(po + 2 * i, _mm256_mul_pd(prod, ww));
  }
  for (; i < n; ++i) {
    const double br = b[i].real();
    const double bi = b[i].imag();
    const double re = a.real() * br - a.imag() * bi;
    const double im = a.real() * bi + a.imag() * br;
    out[i] = {re * w[i], im * w[i]};
  }
}

void scale(cplx* z, double s, std::size_t n) {
  double* p = as_doubles(z);
  const std::size_t m = 2 * n;
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_loadu_pd(p + i), vs));
  for (; i < m; ++i) p[i] *= s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double sum(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += x[i];
  return total;
}

double sum_norm_sq(const cplx* z, std::size_t n) {
  const double* p = as_doubles(z);
  const std::size_t m = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d v = _mm256_loadu_pd(p + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double total = hsum(acc);
  for (; i < m; ++i) total += p[i] * p[i];
  return total;
}

constexpr KernelTable kTable{Isa::avx2, norm_sq, scaled_product, scale, axpy, sum, sum_norm_sq};

}  // namespace

const KernelTable& avx2_table() noexcept { return kTable; }

}  // namespace biphoton::simd::detail
