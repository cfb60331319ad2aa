#pragma once

#include <vector>

#include "biphoton/optics.hpp"
#include "biphoton/propagation.hpp"

namespace biphoton {

// Closed-form rate profiles in the two limits of the correlation width. They
// are computed from the single-photon amplitude alone (1D transforms), so they
// serve as independent checks of the full two-photon pipeline.
//
// Profiles are normalized to unit mass, sum(values) * dk = 1.

enum class LimitCase { uncorrelated, delta_correlated };

struct LimitProfiles {
  RateProfile diagonal;
  RateProfile singles;
  LimitCase limit;
};

/// Constant correlation: diagonal = |F[A](k)|^4, singles = |F[A](k)|^2.
LimitProfiles uncorrelated_profiles(const SinglePhotonAmplitude& amplitude);

/// G = delta(x1 - x2): diagonal = |F[A^2](2k)|^2, singles constant.
/// Doubled wavevectors outside the lattice contribute zero.
LimitProfiles delta_correlated_profiles(const SinglePhotonAmplitude& amplitude);

/// The product-of-transforms shorthand |F[A](2k)|^4 for the delta limit,
/// unit mass. Coincides with the diagonal above only for Gaussian-like A;
/// kept so the two forms can be compared.
RateProfile delta_product_form_diagonal(const SinglePhotonAmplitude& amplitude);

/// Scales `values` so that sum(values) * bin = 1. Throws DegenerateInput on
/// zero mass.
void normalize_mass(std::vector<double>& values, double bin);

}  // namespace biphoton
