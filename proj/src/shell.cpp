#include "biphoton/shell.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "biphoton/diagnostics.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/inference.hpp"
#include "biphoton/scenario.hpp"

namespace biphoton {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, std::string_view text) {
  double value = 0.0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError(key, key + ": not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::size_t parse_count(const std::string& key, std::string_view text) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key, key + ": not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, std::string_view)>;

Setter number(double ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& key, std::string_view v) {
    c.*field = parse_double(key, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"wavelength_nm", number(&ScenarioConfig::wavelength_nm)},
      {"grating_period_um", number(&ScenarioConfig::grating_period_um)},
      {"blaze_wavelength_nm", number(&ScenarioConfig::blaze_wavelength_nm)},
      {"spot_diameter_um", number(&ScenarioConfig::spot_diameter_um)},
      {"sigma_corr_um", number(&ScenarioConfig::sigma_corr_um)},
      {"resolution_mrad", number(&ScenarioConfig::resolution_mrad)},
      {"detector_separation_mrad", number(&ScenarioConfig::detector_separation_mrad)},
      {"window_um", number(&ScenarioConfig::window_um)},
      {"phase_origin_um", number(&ScenarioConfig::phase_origin_um)},
      {"angle_offset_mrad", number(&ScenarioConfig::angle_offset_mrad)},
      {"visibility_window_mrad", number(&ScenarioConfig::visibility_window_mrad)},
      {"grid_n",
       [](ScenarioConfig& c, const std::string& key, std::string_view v) { c.grid_n = parse_count(key, v); }},
      {"peak_halfwidth_mrad",
       [](ScenarioConfig& c, const std::string& key, std::string_view v) {
         c.peak_halfwidth_mrad = parse_double(key, v);
       }},
      {"illumination",
       [](ScenarioConfig& c, const std::string& key, std::string_view v) {
         if (v == "near") {
           c.illumination = IlluminationMode::near_field;
         } else if (v == "far") {
           c.illumination = IlluminationMode::far_field;
         } else {
           throw ConfigError(key, key + ": expected 'near' or 'far', got '" + std::string(v) + "'");
         }
       }},
      {"output_prefix",
       [](ScenarioConfig& c, const std::string&, std::string_view v) { c.output_prefix = std::string(v); }},
  };
  return table;
}

void require_positive(const char* key, double value) {
  if (!(value > 0.0)) throw ConfigError(key, std::string(key) + " must be positive");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << std::setprecision(12);
  return out;
}

void close_output(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw IoError("failed writing " + path);
}

std::vector<double> unit_peak(std::vector<double> values) {
  const double peak = *std::max_element(values.begin(), values.end());
  if (peak > 0.0) {
    for (double& v : values) v /= peak;
  }
  return values;
}

void write_profile(const std::string& path, const RateProfile& profile) {
  auto out = open_output(path);
  const auto rates = unit_peak(profile.values);
  out << "angle_mrad,rate\n";
  for (std::size_t i = 0; i < rates.size(); ++i) out << profile.angles_rad[i] * 1e3 << ',' << rates[i] << '\n';
  close_output(out, path);
}

void write_map(const std::string& path, const RateMap& map) {
  auto out = open_output(path);
  const auto angles = map.angles();
  const auto flat = map.values.flat();
  const double peak = *std::max_element(flat.begin(), flat.end());
  const double inv = peak > 0.0 ? 1.0 / peak : 1.0;
  out << "angle1_mrad,angle2_mrad,rate\n";
  for (std::size_t r = 0; r < map.values.size(); ++r) {
    for (std::size_t c = 0; c < map.values.size(); ++c) {
      out << angles[r] * 1e3 << ',' << angles[c] * 1e3 << ',' << map.values(r, c) * inv << '\n';
    }
  }
  close_output(out, path);
}

// Runs `body`, translating library errors into exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  require_positive("wavelength_nm", wavelength_nm);
  require_positive("grating_period_um", grating_period_um);
  require_positive("blaze_wavelength_nm", blaze_wavelength_nm);
  require_positive("spot_diameter_um", spot_diameter_um);
  require_positive("sigma_corr_um", sigma_corr_um);
  require_positive("window_um", window_um);
  require_positive("visibility_window_mrad", visibility_window_mrad);
  if (!(resolution_mrad >= 0.0)) throw ConfigError("resolution_mrad", "resolution_mrad must be >= 0");
  if (peak_halfwidth_mrad) require_positive("peak_halfwidth_mrad", *peak_halfwidth_mrad);
  if (grid_n < 4 || grid_n % 2 != 0) {
    throw ConfigError("grid_n", "grid_n must be even and at least 4, got " + std::to_string(grid_n));
  }
  if (window_um / static_cast<double>(grid_n) > grating_period_um / 4.0) {
    throw ConfigError("window_um", "window_um/grid_n must not exceed grating_period_um/4");
  }
  if (output_prefix.empty()) throw ConfigError("output_prefix", "output_prefix must not be empty");
  const double half_window_mrad = 0.5 * wavelength_nm * 1e-3 / window_um * static_cast<double>(grid_n) * 1e3;
  if (resolution_mrad > half_window_mrad) {
    throw ConfigError("resolution_mrad", "resolution_mrad exceeds half the angular window");
  }
}

Scenario ScenarioConfig::scenario() const {
  validate();
  Scenario s;
  s.grating = {grating_period_um, blaze_wavelength_nm * 1e-3, phase_origin_um};
  s.illumination = {wavelength_nm * 1e-3, spot_diameter_um, illumination};
  s.grid_n = grid_n;
  s.window_um = window_um;
  s.blur_rad = resolution_mrad * 1e-3;
  s.detector_separation_rad = detector_separation_mrad * 1e-3;
  s.angle_offset_rad = angle_offset_mrad * 1e-3;
  return s;
}

double ScenarioConfig::peak_halfwidth_rad() const {
  if (peak_halfwidth_mrad) return *peak_halfwidth_mrad * 1e-3;
  return default_peak_halfwidth(wavelength_nm * 1e-3, grating_period_um);
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig config;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(line), "line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key, "unknown configuration key '" + key + "'");
    it->second(config, key, value);
  }
  config.validate();
  return config;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open config file " + path.string());
  return parse_config(in);
}

std::vector<double> parse_sigma_list(std::string_view text) {
  std::vector<double> sigmas;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const double s = parse_double("sigma", trim(text.substr(start, comma - start)));
    if (!(s > 0.0)) throw ConfigError("sigma", "correlation widths must be positive");
    sigmas.push_back(s);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return sigmas;
}

std::vector<SweepRow> sweep(const ScenarioConfig& config, std::span<const double> sigmas_um) {
  const ForwardModel model(config.scenario());
  const DistinctWarnings once;
  const double vis_half = config.visibility_window_mrad * 1e-3;
  std::vector<SweepRow> rows;
  rows.reserve(sigmas_um.size());
  for (const double sigma : sigmas_um) {
    if (!(sigma > 0.0)) throw ConfigError("sigma", "correlation widths must be positive");
    const auto result = model.run(sigma);
    rows.push_back({sigma,
                    od_ratio(result.diagonal, config.wavelength_nm * 1e-3, config.grating_period_um,
                             config.peak_halfwidth_rad()),
                    visibility(result.singles, {-vis_half, vis_half})});
  }
  return rows;
}

int run_simulate(const ScenarioConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto result = simulate(config.scenario(), config.sigma_corr_um);
    const std::string& p = config.output_prefix;
    write_profile(p + "_diagonal.csv", result.diagonal);
    write_profile(p + "_singles.csv", result.singles);
    write_map(p + "_map.csv", result.map);
    const double vis_half = config.visibility_window_mrad * 1e-3;
    out << "sigma_corr_um " << config.sigma_corr_um << '\n'
        << "od_ratio " << od_ratio(result.diagonal, config.wavelength_nm * 1e-3, config.grating_period_um,
                                   config.peak_halfwidth_rad())
        << '\n'
        << "singles_visibility " << visibility(result.singles, {-vis_half, vis_half}) << '\n'
        << "wrote " << p << "_diagonal.csv, " << p << "_singles.csv, " << p << "_map.csv\n";
    return static_cast<int>(kExitOk);
  });
}

int run_fit(const ScenarioConfig& config, const std::filesystem::path& data_path, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    const Measurement meas = load_measurement(data_path);
    const Scenario scenario = config.scenario();
    const FitResult fit = fit_sigma(meas, scenario);
    out << std::setprecision(8) << "sigma_corr_um " << fit.sigma_um << '\n'
        << "scale " << fit.scale << '\n'
        << "background " << fit.background << '\n'
        << "residual_sse " << fit.residual_sse << '\n'
        << "evaluations " << fit.n_evaluations << '\n'
        << "converged " << (fit.converged ? "yes" : "no") << '\n'
        << "# " << fit.diagnostics << '\n';
    const std::string path = config.output_prefix + "_fitcurve.csv";
    auto file = open_output(path);
    const auto curve = fitted_curve(meas, scenario, fit);
    file << "angle_mrad,rate\n";
    for (std::size_t i = 0; i < curve.size(); ++i) file << meas.angles_rad[i] * 1e3 << ',' << curve[i] << '\n';
    close_output(file, path);
    return static_cast<int>(fit.converged ? kExitOk : kExitNotConverged);
  });
}

int run_sweep(const ScenarioConfig& config, std::span<const double> sigmas_um, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = sweep(config, sigmas_um);
    const std::string path = config.output_prefix + "_sweep.csv";
    auto file = open_output(path);
    file << "sigma_um,od_ratio,singles_visibility\n";
    for (const auto& r : rows) {
      file << r.sigma_um << ',' << r.od_ratio << ',' << r.singles_visibility << '\n';
      out << "sigma " << r.sigma_um << " um: od_ratio " << r.od_ratio << ", singles visibility "
          << r.singles_visibility << '\n';
    }
    close_output(file, path);
    return static_cast<int>(kExitOk);
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biphoton diffraction at a blazed grating: simulate, fit and sweep"};
  app.require_subcommand(1);

  std::string config_path;
  std::string data_path;
  std::string sigma_text;

  auto* sim = app.add_subcommand("simulate", "Write diagonal, singles and coincidence-map CSVs");
  sim->add_option("config", config_path, "key=value scenario file")->required();

  auto* fit = app.add_subcommand("fit", "Fit the correlation width to a measured scan");
  fit->add_option("config", config_path, "key=value scenario file")->required();
  fit->add_option("data", data_path, "angle_mrad,rate[,rate_err] CSV")->required();

  auto* sw = app.add_subcommand("sweep", "Tabulate od_ratio and singles visibility over widths");
  sw->add_option("config", config_path, "key=value scenario file")->required();
  sw->add_option("sigmas", sigma_text, "comma-separated correlation widths in um")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? static_cast<int>(kExitOk) : static_cast<int>(kExitConfig);
  }

  ScenarioConfig config;
  try {
    config = parse_config(std::filesystem::path(config_path));
  } catch (const ConfigError& e) {
    err << "config error [" << e.key() << "]: " << e.what() << '\n';
    return kExitConfig;
  }

  if (sim->parsed()) return run_simulate(config, out, err);
  if (fit->parsed()) return run_fit(config, data_path, out, err);

  std::vector<double> sigmas;
  try {
    sigmas = parse_sigma_list(sigma_text);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run_sweep(config, sigmas, out, err);
}

}  // namespace biphoton
