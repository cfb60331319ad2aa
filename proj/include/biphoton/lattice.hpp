#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace biphoton {

// Lengths are in micrometres, wavevectors in rad/um, angles in rad.

/// One-dimensional transverse sampling lattice and its conjugate wavevector
/// lattice, both in centered (zero-in-the-middle) order:
///   x_j = (j - n/2) * dx,   k_j = 2*pi * (j - n/2) / window.
class SpatialGrid {
 public:
  std::size_t size() const noexcept { return x_.size(); }
  double window() const noexcept { return window_; }
  double dx() const noexcept { return dx_; }
  double dk() const noexcept { return dk_; }
  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> k() const noexcept { return k_; }

  /// Index of the zero sample (n/2).
  std::size_t center() const noexcept { return size() / 2; }

  /// Centered index -> index in standard DFT ordering (zero frequency first).
  std::size_t to_fft_order(std::size_t centered) const noexcept {
    return (centered + center()) % size();
  }
  std::size_t from_fft_order(std::size_t fft_index) const noexcept {
    return (fft_index + center()) % size();
  }

  /// True when the lattice samples a grating of the given period at least
  /// four times per period (dx <= period/4).
  bool resolves_period(double period_um) const noexcept { return dx_ <= period_um / 4.0; }

 private:
  friend SpatialGrid make_grid(std::size_t n, double window_um);
  SpatialGrid() = default;

  double window_ = 0.0;
  double dx_ = 0.0;
  double dk_ = 0.0;
  std::vector<double> x_;
  std::vector<double> k_;
};

/// Throws InvalidParameter unless n >= 4, n even and window > 0.
SpatialGrid make_grid(std::size_t n, double window_um);

/// Paraxial detection angles theta_j = k_j * wavelength / (2*pi).
std::vector<double> angles_of(const SpatialGrid& grid, double wavelength_um);

/// Angular spacing of the conjugate lattice, wavelength / window.
double angular_bin(const SpatialGrid& grid, double wavelength_um);

}  // namespace biphoton
