#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biphoton/propagation.hpp"
#include "biphoton/scenario.hpp"

namespace biphoton {

enum class Channel { singles, coincidences };

/// One measured angular scan.
struct Measurement {
  std::vector<double> angles_rad;  // strictly increasing
  std::vector<double> rates;       // counts/s, >= 0
  std::optional<std::vector<double>> rate_errors;
  Channel channel = Channel::coincidences;
  std::map<std::string, std::string> metadata;

  std::size_t size() const noexcept { return angles_rad.size(); }
};

/// Reads the comma-separated scan format:
///
///   # comment lines start with '#'; "# key=value" lines go to metadata
///   angle_mrad,rate[,rate_err]
///   -30.0,1204
///   ...
///
/// Angles are converted from mrad to rad. A "channel" metadata entry of
/// "singles" or "coincidences" sets the channel (default coincidences).
/// Throws ParseError naming the offending line.
Measurement load_measurement(const std::filesystem::path& path);
Measurement parse_measurement(std::istream& in);

struct AngleWindow {
  double lo_rad;
  double hi_rad;
};

/// Interference contrast (max - min)/(max + min) over the samples inside the
/// closed window; 0 when both are 0. Throws InvalidParameter when the window
/// holds fewer than three samples.
double visibility(std::span<const double> angles_rad, std::span<const double> values,
                  AngleWindow window);
double visibility(const RateProfile& profile, AngleWindow window);
double visibility(const Measurement& measurement, AngleWindow window);

/// Height ratio of the lambda/2 first order (at lambda/(2d)) to the lambda
/// first order (at lambda/d), each the maximum sample within +/- halfwidth of
/// its nominal angle. Returns +infinity when the red peak is exactly zero.
double od_ratio(const RateProfile& profile, double wavelength_um, double period_um,
                double peak_halfwidth_rad);

/// A quarter of the spacing between the two nominal peak angles.
inline double default_peak_halfwidth(double wavelength_um, double period_um) {
  return wavelength_um / (8.0 * period_um);
}

struct FitOptions {
  double sigma_min_um = 0.5;
  double sigma_max_um = 200.0;
  std::size_t coarse_points = 25;
  /// Golden-section refinement stops at (hi - lo)/mid <= this.
  double relative_width = 1e-3;
  /// The SSE landscape counts as flat when its spread over the coarse grid is
  /// below this fraction of the weighted data energy sum w r^2.
  double flat_threshold = 1e-9;
};

struct FitResult {
  double sigma_um = 0.0;
  double scale = 0.0;
  double background = 0.0;
  double residual_sse = 0.0;
  std::size_t n_evaluations = 0;
  bool converged = false;
  std::string diagnostics;
};

/// Least-squares fit of the correlation width. For each trial sigma the model
/// is scale * profile_sigma(theta + offset) + background, where scale and
/// background (clamped at 0) solve the linear subproblem in closed form;
/// inverse-variance weights are used when the measurement has rate errors.
/// sigma is located on a logarithmic coarse grid and refined by golden-section
/// search in log(sigma). A minimum on the coarse-grid boundary or a flat SSE
/// landscape yields converged = false with diagnostics.
FitResult fit_sigma(const Measurement& measurement, const Scenario& scenario,
                    const FitOptions& options = {});

/// Model rates (scale * profile + background) at the measurement angles.
std::vector<double> fitted_curve(const Measurement& measurement, const Scenario& scenario,
                                 const FitResult& fit);

/// Forward-model scan at the given angles, rates = scale * profile +
/// background, each multiplied by (1 + noise_fraction * N(0,1)) with a
/// seeded generator and clamped at zero.
Measurement synthesize_scan(const Scenario& scenario, double sigma_um, Channel channel,
                            std::span<const double> angles_rad, double scale,
                            double background, double noise_fraction, std::uint64_t seed);

/// Piecewise-linear interpolation of (xs, ys) at `queries`; xs strictly
/// increasing. Throws InvalidParameter for queries outside [xs.front, xs.back]
/// by more than 1e-9 of the node span.
std::vector<double> interpolate_linear(std::span<const double> xs, std::span<const double> ys,
                                       std::span<const double> queries);

}  // namespace biphoton
