#pragma once

#include <cstddef>

#include "biphoton/biphoton.hpp"
#include "biphoton/optics.hpp"
#include "biphoton/propagation.hpp"

namespace biphoton {

/// Everything the forward model needs except the correlation width.
struct Scenario {
  GratingSpec grating;
  Illumination illumination;
  std::size_t grid_n = 512;
  double window_um = 600.0;
  /// Full width of each detector's angular acceptance (0 = ideal detectors).
  double blur_rad = 0.010;
  /// Fixed angular separation of the co-scanned detectors.
  double detector_separation_rad = 0.0;
  /// Added to measured angles before comparing with the model.
  double angle_offset_rad = 0.0;

  /// Throws InvalidParameter / ResolutionError.
  void validate() const;
};

struct ForwardResult {
  RateMap map;  // blurred
  RateProfile diagonal;
  RateProfile singles;
};

/// Builds the grid and single-photon amplitude once; `run` evaluates the
/// full two-photon pipeline for one correlation width:
///   A -> F(x1,x2) -> far field -> |F|^2 -> detector blur -> cut / marginal.
class ForwardModel {
 public:
  explicit ForwardModel(const Scenario& scenario);

  ForwardResult run(double sigma_um) const;

  const Scenario& scenario() const noexcept { return scenario_; }
  const SpatialGrid& grid() const noexcept { return amplitude_.grid; }
  const SinglePhotonAmplitude& amplitude() const noexcept { return amplitude_; }

 private:
  Scenario scenario_;
  SinglePhotonAmplitude amplitude_;
};

inline ForwardResult simulate(const Scenario& scenario, double sigma_um) {
  return ForwardModel(scenario).run(sigma_um);
}

}  // namespace biphoton
