#include "biphoton/optics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"

namespace biphoton {

void GratingSpec::validate() const {
  if (!(period_um > 0.0)) throw InvalidParameter("grating period must be positive");
  if (!(blaze_wavelength_um > 0.0)) throw InvalidParameter("blaze wavelength must be positive");
  if (!std::isfinite(phase_origin_um)) throw InvalidParameter("phase origin must be finite");
}

void Illumination::validate() const {
  if (!(wavelength_um > 0.0)) throw InvalidParameter("wavelength must be positive");
  if (!(spot_diameter_um > 0.0)) throw InvalidParameter("spot diameter must be positive");
}

double blaze_phase(double x_um, const GratingSpec& spec, double wavelength_um) {
  const double u = (x_um - spec.phase_origin_um) / spec.period_um;
  double frac = u - std::floor(u);
  if (frac >= 1.0) frac = 0.0;  // u just below an integer can round up
  return 2.0 * std::numbers::pi * (spec.blaze_wavelength_um / wavelength_um) * frac;
}

double spot_envelope(double x_um, double spot_diameter_um) {
  const double w0 = 0.5 * spot_diameter_um;
  return std::exp(-(x_um * x_um) / (w0 * w0));
}

SinglePhotonAmplitude transmission(const SpatialGrid& grid, const GratingSpec& spec,
                                   const Illumination& illum) {
  spec.validate();
  illum.validate();
  if (!grid.resolves_period(spec.period_um)) {
    std::ostringstream msg;
    msg << "grid spacing " << grid.dx() << " um does not resolve the grating period "
        << spec.period_um << " um (need dx <= period/4)";
    throw ResolutionError(msg.str());
  }

  SinglePhotonAmplitude a{grid, illum.wavelength_um, std::vector<std::complex<double>>(grid.size())};
  const auto x = grid.x();
  for (std::size_t j = 0; j < x.size(); ++j) {
    a.values[j] = std::polar(spot_envelope(x[j], illum.spot_diameter_um),
                             blaze_phase(x[j], spec, illum.wavelength_um));
  }
  const double norm_sq = simd::sum_norm_sq(a.values) * grid.dx();
  if (!(norm_sq > 0.0)) throw DegenerateInput("illumination spot does not overlap the grid");
  simd::scale(a.values, 1.0 / std::sqrt(norm_sq));
  return a;
}

double order_efficiency(int order, double wavelength_um, double blaze_wavelength_um) {
  if (!(wavelength_um > 0.0) || !(blaze_wavelength_um > 0.0)) {
    throw InvalidParameter("wavelengths must be positive");
  }
  const double u = blaze_wavelength_um / wavelength_um - static_cast<double>(order);
  if (u == 0.0) return 1.0;
  const double s = std::sin(std::numbers::pi * u) / (std::numbers::pi * u);
  return s * s;
}

}  // namespace biphoton
