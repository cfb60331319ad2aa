#pragma once

#include <complex>
#include <span>

#include "biphoton/lattice.hpp"
#include "biphoton/matrix.hpp"

namespace biphoton {

// Unitary centered transforms between the x and k lattices of a grid:
//   f~(k_a) = dx / sqrt(2*pi) * sum_j f(x_j) exp(-i k_a x_j)
// so that sum |f~|^2 dk = sum |f|^2 dx holds exactly in exact arithmetic.

/// In-place 1D transform of a centered-order sequence of length grid.size().
void centered_transform(std::span<std::complex<double>> values, const SpatialGrid& grid);

/// In-place 2D transform (both indices) of an n x n centered-order matrix.
void centered_transform(ComplexMatrix& values, const SpatialGrid& grid);

}  // namespace biphoton
