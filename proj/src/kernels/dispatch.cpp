#include <cassert>
#include <cstdlib>
#include <string_view>

#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"

namespace biphoton::simd {
namespace {

Isa best_supported() noexcept {
  if (const char* env = std::getenv("BIPHOTON_SIMD"); env && std::string_view(env) == "scalar") {
    return Isa::scalar;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

const KernelTable*& active_slot() noexcept {
  static const KernelTable* table = &kernels_for(best_supported());
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(BIPHOTON_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw InvalidParameter("kernel variant '" + std::string(isa_name(isa)) +
                           "' is not supported on this CPU");
  }
#if defined(BIPHOTON_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

const KernelTable& active() noexcept { return *active_slot(); }

void set_active(Isa isa) { active_slot() = &kernels_for(isa); }

void norm_sq(std::span<const cplx> z, std::span<double> out) {
  assert(out.size() == z.size());
  active().norm_sq(z.data(), out.data(), z.size());
}

void scaled_product(cplx a, std::span<const cplx> b, std::span<const double> w, std::span<cplx> out) {
  assert(w.size() == b.size() && out.size() == b.size());
  active().scaled_product(a, b.data(), w.data(), out.data(), b.size());
}

void scale(std::span<cplx> z, double s) { active().scale(z.data(), s, z.size()); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(a, x.data(), y.data(), x.size());
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

double sum_norm_sq(std::span<const cplx> z) { return active().sum_norm_sq(z.data(), z.size()); }

}  // namespace biphoton::simd
