#include "biphoton/scenario.hpp"

#include <cmath>

#include "biphoton/errors.hpp"

namespace biphoton {

void Scenario::validate() const {
  grating.validate();
  illumination.validate();
  if (!(blur_rad >= 0.0)) throw InvalidParameter("detector blur must be non-negative");
  if (!std::isfinite(detector_separation_rad) || !std::isfinite(angle_offset_rad)) {
    throw InvalidParameter("angles must be finite");
  }
  const SpatialGrid grid = make_grid(grid_n, window_um);
  if (!grid.resolves_period(grating.period_um)) {
    throw ResolutionError("grid spacing must not exceed a quarter of the grating period");
  }
}

ForwardModel::ForwardModel(const Scenario& scenario)
    : scenario_(scenario),
      amplitude_([&] {
        scenario.validate();
        return transmission(make_grid(scenario.grid_n, scenario.window_um), scenario.grating,
                            scenario.illumination);
      }()) {}

ForwardResult ForwardModel::run(double sigma_um) const {
  const CorrelationModel model{sigma_um, scenario_.illumination.mode};
  const auto far = to_far_field(two_photon_amplitude(amplitude_, model));
  RateMap map = blur(coincidence_map(far), scenario_.blur_rad);
  RateProfile diagonal = diagonal_profile(map, scenario_.detector_separation_rad);
  RateProfile singles = singles_profile(map);
  return {std::move(map), std::move(diagonal), std::move(singles)};
}

}  // namespace biphoton
