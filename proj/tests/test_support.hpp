#pragma once

// Test-only helpers: independent oracles and small utilities. Nothing here
// calls into the transform or kernel code it is used to check.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "biphoton/diagnostics.hpp"
#include "biphoton/lattice.hpp"
#include "biphoton/matrix.hpp"

namespace testing {

using cplx = std::complex<double>;

// Direct double sum, f~(k_a) = dx/sqrt(2 pi) sum_j f(x_j) exp(-i k_a x_j).
inline std::vector<cplx> brute_force_dft(const std::vector<cplx>& f, const biphoton::SpatialGrid& g) {
  const auto x = g.x();
  const auto k = g.k();
  const double s = g.dx() / std::sqrt(2.0 * std::numbers::pi);
  std::vector<cplx> out(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * std::polar(1.0, -k[a] * x[j]);
    out[a] = acc * s;
  }
  return out;
}

// O(n^4) two-index version.
inline biphoton::ComplexMatrix brute_force_dft_2d(const biphoton::ComplexMatrix& f,
                                                  const biphoton::SpatialGrid& g) {
  const std::size_t n = f.size();
  const auto x = g.x();
  const auto k = g.k();
  const double s = g.dx() * g.dx() / (2.0 * std::numbers::pi);
  // phase[a][j] = exp(-i k_a x_j)
  std::vector<cplx> phase(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t j = 0; j < n; ++j) phase[a * n + j] = std::polar(1.0, -k[a] * x[j]);
  biphoton::ComplexMatrix out(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const cplx pa = phase[a * n + j];
        for (std::size_t l = 0; l < n; ++l) acc += f(j, l) * pa * phase[b * n + l];
      }
      out(a, b) = acc * s;
    }
  }
  return out;
}

inline std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = {u(rng), u(rng)};
  return v;
}

inline std::vector<double> random_real(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// max|a - b| / max|b| after normalizing both to unit sum over [lo, hi).
inline double matched_relative_error(std::vector<double> a, std::vector<double> b, std::size_t lo,
                                     std::size_t hi) {
  double sa = 0, sb = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    sa += a[i];
    sb += b[i];
  }
  double diff = 0, peak = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    diff = std::max(diff, std::abs(a[i] / sa - b[i] / sb));
    peak = std::max(peak, std::abs(b[i] / sb));
  }
  return diff / peak;
}

inline std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

// Collects warnings for the lifetime of the object.
class WarningCapture {
 public:
  WarningCapture()
      : previous_(biphoton::set_warning_sink([this](std::string_view m) { messages.emplace_back(m); })) {}
  ~WarningCapture() { biphoton::set_warning_sink(std::move(previous_)); }
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  std::vector<std::string> messages;

 private:
  biphoton::WarningSink previous_;
};

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("biphoton_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
