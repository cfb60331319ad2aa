#include "biphoton/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "biphoton/errors.hpp"

namespace biphoton {

SpatialGrid make_grid(std::size_t n, double window_um) {
  if (n < 4 || n % 2 != 0) {
    throw InvalidParameter("grid size must be even and at least 4, got " + std::to_string(n));
  }
  if (!(window_um > 0.0) || !std::isfinite(window_um)) {
    throw InvalidParameter("grid window must be positive, got " + std::to_string(window_um));
  }
  SpatialGrid grid;
  grid.window_ = window_um;
  grid.dx_ = window_um / static_cast<double>(n);
  grid.dk_ = 2.0 * std::numbers::pi / window_um;
  grid.x_.resize(n);
  grid.k_.resize(n);
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t j = 0; j < n; ++j) {
    const auto offset = static_cast<double>(static_cast<std::ptrdiff_t>(j) - half);
    grid.x_[j] = offset * grid.dx_;
    grid.k_[j] = offset * grid.dk_;
  }
  return grid;
}

std::vector<double> angles_of(const SpatialGrid& grid, double wavelength_um) {
  if (!(wavelength_um > 0.0)) throw InvalidParameter("wavelength must be positive");
  const double factor = wavelength_um / (2.0 * std::numbers::pi);
  std::vector<double> theta(grid.size());
  const auto k = grid.k();
  for (std::size_t j = 0; j < theta.size(); ++j) theta[j] = k[j] * factor;
  return theta;
}

double angular_bin(const SpatialGrid& grid, double wavelength_um) {
  if (!(wavelength_um > 0.0)) throw InvalidParameter("wavelength must be positive");
  return wavelength_um / grid.window();
}

}  // namespace biphoton
