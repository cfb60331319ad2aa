#pragma once

#include "biphoton/lattice.hpp"
#include "biphoton/matrix.hpp"
#include "biphoton/optics.hpp"

namespace biphoton {

/// Phenomenological Gaussian correlation between the transverse positions of
/// the two photons: exp(-(x1 -/+ x2)^2 / (2 sigma^2)), minus sign for
/// near-field illumination, plus sign for far-field illumination.
struct CorrelationModel {
  double sigma_um = 9.0;
  IlluminationMode mode = IlluminationMode::near_field;

  void validate() const;
};

enum class Plane { near_plane, far_plane };

/// Two-photon amplitude F on an n x n lattice. Entry (j, l) is F(x_j, x_l) in
/// the near plane or F(k_j, k_l) in the far plane. Always exactly symmetric.
struct BiphotonAmplitude {
  SpatialGrid grid;
  double wavelength_um;
  Plane plane;
  ComplexMatrix values;
};

double correlation_factor(double x1_um, double x2_um, const CorrelationModel& model);

/// F(x_j, x_l) = A(x_j) A(x_l) G(x_j, x_l), normalized to sum |F|^2 dx^2 = 1.
///
/// For identical scalar amplitudes the bosonic symmetrization
/// (A(x1)A(x2) + A(x2)A(x1))/2 reduces to the plain product. Perfect
/// correlation is approached with sigma << dx, where the matrix collapses onto
/// its (anti)diagonal; a warning is emitted when sigma < dx/2.
///
/// Throws DegenerateInput if the amplitude (or the correlated product) is
/// identically zero.
BiphotonAmplitude two_photon_amplitude(const SinglePhotonAmplitude& amplitude,
                                       const CorrelationModel& model);

/// sum |F|^2 * (cell area), with cell area dx^2 or dk^2 depending on plane.
double total_probability(const BiphotonAmplitude& amplitude);

}  // namespace biphoton
