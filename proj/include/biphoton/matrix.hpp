#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace biphoton {

/// Dense square matrix, row-major.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t r, std::size_t c) noexcept {
    assert(r < n_ && c < n_);
    return data_[r * n_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const noexcept {
    assert(r < n_ && c < n_);
    return data_[r * n_ + c];
  }

  std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * n_, n_}; }
  std::span<const T> row(std::size_t r) const noexcept { return {data_.data() + r * n_, n_}; }

  std::span<T> flat() noexcept { return data_; }
  std::span<const T> flat() const noexcept { return data_; }

  /// Replaces the matrix by (M + M^T)/2; afterwards M(r,c) == M(c,r) bitwise.
  void symmetrize() noexcept {
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = r + 1; c < n_; ++c) {
        const T avg = ((*this)(r, c) + (*this)(c, r)) * 0.5;
        (*this)(r, c) = avg;
        (*this)(c, r) = avg;
      }
    }
  }

  void transpose_in_place() noexcept {
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = r + 1; c < n_; ++c) {
        std::swap((*this)(r, c), (*this)(c, r));
      }
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = SquareMatrix<std::complex<double>>;
using RealMatrix = SquareMatrix<double>;

}  // namespace biphoton
