#pragma once

#include <complex>
#include <vector>

#include "biphoton/lattice.hpp"

namespace biphoton {

/// Ideal thin blazed (sawtooth phase) grating.
struct GratingSpec {
  double period_um = 25.0;
  double blaze_wavelength_um = 0.5;
  /// Lateral registration: the sawtooth phase is zero at x = phase_origin_um.
  double phase_origin_um = 0.0;

  void validate() const;
};

/// Which plane of the pair source is imaged onto the grating. Near-field
/// illumination yields position-correlated pairs, far-field illumination
/// position-anticorrelated pairs.
enum class IlluminationMode { near_field, far_field };

/// Gaussian illumination spot. The diameter is the 1/e^2 intensity full
/// width, so the amplitude envelope is exp(-x^2 / w0^2) with w0 = diameter/2.
struct Illumination {
  double wavelength_um = 0.78;
  double spot_diameter_um = 29.0;
  IlluminationMode mode = IlluminationMode::near_field;

  void validate() const;
};

/// Single-photon amplitude A(x) sampled on a grid.
struct SinglePhotonAmplitude {
  SpatialGrid grid;
  double wavelength_um;
  std::vector<std::complex<double>> values;
};

/// Sawtooth phase 2*pi * (lambda_B/lambda) * frac((x - x0)/d), frac in [0,1).
double blaze_phase(double x_um, const GratingSpec& spec, double wavelength_um);

/// Unnormalized amplitude envelope exp(-x^2 / w0^2).
double spot_envelope(double x_um, double spot_diameter_um);

/// A(x_j) = envelope(x_j) * exp(i * blaze_phase(x_j)), normalized so that
/// sum |A|^2 dx = 1. Throws ResolutionError when dx > period/4.
SinglePhotonAmplitude transmission(const SpatialGrid& grid, const GratingSpec& spec,
                                   const Illumination& illum);

/// Ideal sawtooth efficiency of order m: sinc^2(lambda_B/lambda - m).
double order_efficiency(int order, double wavelength_um, double blaze_wavelength_um);

}  // namespace biphoton
