#include "biphoton/limits.hpp"

#include <cmath>

#include "biphoton/errors.hpp"
#include "biphoton/fourier.hpp"
#include "biphoton/kernels.hpp"

namespace biphoton {
namespace {

std::vector<std::complex<double>> transformed(std::vector<std::complex<double>> values,
                                              const SpatialGrid& grid) {
  centered_transform(values, grid);
  return values;
}

// Sample of a centered-order spectrum at twice the wavevector of index j:
// 2 k_j = k_{2j - n/2}. Outside the lattice the spectrum is taken as zero.
std::complex<double> at_doubled(const std::vector<std::complex<double>>& spectrum, std::size_t j) {
  const auto n = static_cast<std::ptrdiff_t>(spectrum.size());
  const std::ptrdiff_t idx = 2 * static_cast<std::ptrdiff_t>(j) - n / 2;
  if (idx < 0 || idx >= n) return {0.0, 0.0};
  return spectrum[static_cast<std::size_t>(idx)];
}

}  // namespace

void normalize_mass(std::vector<double>& values, double bin) {
  const double mass = simd::sum(values) * bin;
  if (!(mass > 0.0)) throw DegenerateInput("profile has zero mass");
  for (double& v : values) v /= mass;
}

LimitProfiles uncorrelated_profiles(const SinglePhotonAmplitude& amplitude) {
  const SpatialGrid& grid = amplitude.grid;
  const auto spectrum = transformed(amplitude.values, grid);
  const auto angles = angles_of(grid, amplitude.wavelength_um);

  std::vector<double> singles(spectrum.size());
  simd::norm_sq(spectrum, singles);
  std::vector<double> diagonal(singles.size());
  for (std::size_t j = 0; j < singles.size(); ++j) diagonal[j] = singles[j] * singles[j];

  normalize_mass(singles, grid.dk());
  normalize_mass(diagonal, grid.dk());
  return {RateProfile{angles, std::move(diagonal), ProfileKind::coincidence_diagonal},
          RateProfile{angles, std::move(singles), ProfileKind::singles}, LimitCase::uncorrelated};
}

LimitProfiles delta_correlated_profiles(const SinglePhotonAmplitude& amplitude) {
  const SpatialGrid& grid = amplitude.grid;
  const std::size_t n = grid.size();
  std::vector<std::complex<double>> squared(n);
  for (std::size_t j = 0; j < n; ++j) squared[j] = amplitude.values[j] * amplitude.values[j];
  const auto spectrum = transformed(std::move(squared), grid);
  const auto angles = angles_of(grid, amplitude.wavelength_um);

  std::vector<double> diagonal(n);
  for (std::size_t j = 0; j < n; ++j) diagonal[j] = std::norm(at_doubled(spectrum, j));
  std::vector<double> singles(n, 1.0);

  normalize_mass(diagonal, grid.dk());
  normalize_mass(singles, grid.dk());
  return {RateProfile{angles, std::move(diagonal), ProfileKind::coincidence_diagonal},
          RateProfile{angles, std::move(singles), ProfileKind::singles},
          LimitCase::delta_correlated};
}

RateProfile delta_product_form_diagonal(const SinglePhotonAmplitude& amplitude) {
  const SpatialGrid& grid = amplitude.grid;
  const auto spectrum = transformed(amplitude.values, grid);
  std::vector<double> diagonal(grid.size());
  for (std::size_t j = 0; j < diagonal.size(); ++j) {
    const double p = std::norm(at_doubled(spectrum, j));
    diagonal[j] = p * p;
  }
  normalize_mass(diagonal, grid.dk());
  return {angles_of(grid, amplitude.wavelength_um), std::move(diagonal),
          ProfileKind::coincidence_diagonal};
}

}  // namespace biphoton
