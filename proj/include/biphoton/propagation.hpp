#pragma once

#include <vector>

#include "biphoton/biphoton.hpp"
#include "biphoton/lattice.hpp"
#include "biphoton/matrix.hpp"

namespace biphoton {

/// Coincidence rate R2(k1, k2) over the far-field lattice.
struct RateMap {
  SpatialGrid grid;
  double wavelength_um;
  RealMatrix values;
  /// Full width of the detector acceptance already applied, rad.
  double blur_applied_rad = 0.0;

  std::vector<double> angles() const { return angles_of(grid, wavelength_um); }
  double angle_bin() const { return angular_bin(grid, wavelength_um); }
  /// sum R2 dk^2
  double mass() const;
};

enum class ProfileKind { coincidence_diagonal, singles };

/// One-dimensional rate distribution over detection angle.
struct RateProfile {
  std::vector<double> angles_rad;
  std::vector<double> values;
  ProfileKind kind = ProfileKind::coincidence_diagonal;
};

/// Fraunhofer propagation: unitary centered 2D transform of a near-plane
/// amplitude. The result is symmetrized so exchange symmetry holds bitwise.
BiphotonAmplitude to_far_field(const BiphotonAmplitude& near);

/// Entry-wise |F|^2 of a far-plane amplitude.
RateMap coincidence_map(const BiphotonAmplitude& far);

/// Co-scanned detectors with fixed separation: profile_j = R2(j, j + s) with
/// s = round(separation / bin). The profile is indexed by the first detector's
/// angle and has length n - |s|.
RateProfile diagonal_profile(const RateMap& map, double separation_rad = 0.0);

/// Marginal over the undetected photon: profile_j = sum_l R2(j, l) dk.
RateProfile singles_profile(const RateMap& map);

/// Box (slit) acceptance of full width `width_rad`, applied independently to
/// each detector axis. The kernel is the exact overlap of the box with each
/// angular bin and wraps around the periodic angular lattice, so mass is
/// preserved and constants stay constant. A width below one bin is the
/// identity. Throws InvalidParameter for negative widths or widths larger than
/// half the angular window.
RateMap blur(const RateMap& map, double width_rad);
RateProfile blur(const RateProfile& profile, double width_rad);

}  // namespace biphoton
