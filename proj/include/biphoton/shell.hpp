#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biphoton/optics.hpp"
#include "biphoton/scenario.hpp"

namespace biphoton {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitIo = 3, kExitNotConverged = 4 };

/// Scenario configuration as read from a key=value file. Defaults describe the
/// grating experiment: 780 nm pairs, 25 um period blazed for 500 nm, 29 um
/// spot, near-field illumination, 10 mrad acceptance, 512 samples over 600 um.
struct ScenarioConfig {
  double wavelength_nm = 780.0;
  double grating_period_um = 25.0;
  double blaze_wavelength_nm = 500.0;
  double spot_diameter_um = 29.0;
  double sigma_corr_um = 9.0;
  IlluminationMode illumination = IlluminationMode::near_field;
  double resolution_mrad = 10.0;
  double detector_separation_mrad = 0.0;
  std::size_t grid_n = 512;
  double window_um = 600.0;
  std::string output_prefix = "biphoton";

  double phase_origin_um = 0.0;
  double angle_offset_mrad = 0.0;
  /// Half width of the od_ratio peak search; defaults to wavelength/(8 d).
  std::optional<double> peak_halfwidth_mrad;
  /// Visibility is evaluated over [-v, +v].
  double visibility_window_mrad = 50.0;

  /// Throws ConfigError naming the violating key.
  void validate() const;
  Scenario scenario() const;
  double peak_halfwidth_rad() const;
};

/// Parses "key = value" lines; '#' starts a comment; blank lines are ignored.
/// Unknown keys, non-numeric values and invariant violations throw
/// ConfigError. A missing file throws ConfigError with key "<file>".
ScenarioConfig parse_config(const std::filesystem::path& path);
ScenarioConfig parse_config(std::istream& in);

/// "0.1,9,100" -> {0.1, 9, 100}; every entry must be a positive number.
std::vector<double> parse_sigma_list(std::string_view text);

struct SweepRow {
  double sigma_um;
  double od_ratio;
  double singles_visibility;
};

std::vector<SweepRow> sweep(const ScenarioConfig& config, std::span<const double> sigmas_um);

// Workflows behind the CLI subcommands. They write files next to
// config.output_prefix and return an ExitCode.
int run_simulate(const ScenarioConfig& config, std::ostream& out, std::ostream& err);
int run_fit(const ScenarioConfig& config, const std::filesystem::path& data_path,
            std::ostream& out, std::ostream& err);
int run_sweep(const ScenarioConfig& config, std::span<const double> sigmas_um,
              std::ostream& out, std::ostream& err);

/// Entry point of the `biphoton` executable.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace biphoton
