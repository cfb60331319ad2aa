#include "biphoton/biphoton.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "biphoton/diagnostics.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"

namespace biphoton {

void CorrelationModel::validate() const {
  if (!(sigma_um > 0.0) || !std::isfinite(sigma_um)) {
    throw InvalidParameter("correlation width must be positive and finite");
  }
}

double correlation_factor(double x1_um, double x2_um, const CorrelationModel& model) {
  const double u = model.mode == IlluminationMode::near_field ? x1_um - x2_um : x1_um + x2_um;
  return std::exp(-(u * u) / (2.0 * model.sigma_um * model.sigma_um));
}

BiphotonAmplitude two_photon_amplitude(const SinglePhotonAmplitude& amplitude,
                                       const CorrelationModel& model) {
  model.validate();
  const SpatialGrid& grid = amplitude.grid;
  const std::size_t n = grid.size();
  if (amplitude.values.size() != n) throw InvalidParameter("amplitude length does not match grid");
  if (!(simd::sum_norm_sq(amplitude.values) > 0.0)) {
    throw DegenerateInput("single-photon amplitude is zero everywhere");
  }
  if (model.sigma_um < 0.5 * grid.dx()) {
    std::ostringstream msg;
    msg << "correlation width " << model.sigma_um << " um is below half the grid spacing ("
        << grid.dx() << " um); the amplitude reduces to its "
        << (model.mode == IlluminationMode::near_field ? "diagonal" : "antidiagonal");
    warn(msg.str());
  }

  // On the lattice x_j -/+ x_l is an integer multiple of dx, so G only takes
  // 2n distinct values: g[n + m] = G(m dx), m in [-n, n).
  const double dx = grid.dx();
  std::vector<double> g(2 * n);
  for (std::size_t t = 0; t < 2 * n; ++t) {
    const double u = (static_cast<double>(t) - static_cast<double>(n)) * dx;
    g[t] = std::exp(-(u * u) / (2.0 * model.sigma_um * model.sigma_um));
  }

  BiphotonAmplitude f{grid, amplitude.wavelength_um, Plane::near_plane, ComplexMatrix(n)};
  const std::span<const std::complex<double>> a = amplitude.values;
  const bool near = model.mode == IlluminationMode::near_field;
  for (std::size_t j = 0; j < n; ++j) {
    // near: x_j - x_l = (j - l) dx, G even -> g[n + l - j]
    // far:  x_j + x_l = (j + l - n) dx      -> g[j + l]
    const double* row_weights = near ? g.data() + (n - j) : g.data() + j;
    simd::scaled_product(a[j], a, std::span<const double>(row_weights, n), f.values.row(j));
  }
  // Mirror the upper triangle so exchange symmetry is exact.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < j; ++l) f.values(j, l) = f.values(l, j);
  }

  const double norm_sq = simd::sum_norm_sq(f.values.flat()) * dx * dx;
  if (!(norm_sq > 0.0)) throw DegenerateInput("two-photon amplitude vanishes for this correlation");
  simd::scale(f.values.flat(), 1.0 / std::sqrt(norm_sq));
  return f;
}

double total_probability(const BiphotonAmplitude& amplitude) {
  const double cell = amplitude.plane == Plane::near_plane ? amplitude.grid.dx() : amplitude.grid.dk();
  return simd::sum_norm_sq(amplitude.values.flat()) * cell * cell;
}

}  // namespace biphoton
