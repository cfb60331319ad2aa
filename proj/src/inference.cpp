#include "biphoton/inference.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string_view>

#include "biphoton/diagnostics.hpp"
#include "biphoton/errors.hpp"

namespace biphoton {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_number(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

// Profile normalized to unit peak, interpolated at `queries`.
std::vector<double> unit_peak_model(const RateProfile& profile, std::span<const double> queries) {
  const double peak = *std::max_element(profile.values.begin(), profile.values.end());
  if (!(peak > 0.0)) throw DegenerateInput("forward model profile is identically zero");
  std::vector<double> model = interpolate_linear(profile.angles_rad, profile.values, queries);
  for (double& v : model) v /= peak;
  return model;
}

const RateProfile& profile_for(const ForwardResult& result, Channel channel) {
  return channel == Channel::singles ? result.singles : result.diagonal;
}

struct LinearFit {
  double scale;
  double background;
  double sse;
};

// min sum w (r - s m - b)^2 over s >= 0, b >= 0.
LinearFit solve_scale_background(std::span<const double> model, std::span<const double> rates,
                                 std::span<const double> weights) {
  double s1 = 0, sm = 0, smm = 0, sr = 0, smr = 0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    s1 += w;
    sm += w * model[i];
    smm += w * model[i] * model[i];
    sr += w * rates[i];
    smr += w * model[i] * rates[i];
  }
  double scale = 0.0;
  double background = 0.0;
  const double det = smm * s1 - sm * sm;
  if (det > 1e-14 * smm * s1) {
    scale = (smr * s1 - sm * sr) / det;
    background = (smm * sr - sm * smr) / det;
  }
  if (!(det > 1e-14 * smm * s1) || background < 0.0) {
    background = 0.0;
    scale = smm > 0.0 ? smr / smm : 0.0;
  }
  if (scale < 0.0) {
    scale = 0.0;
    background = std::max(0.0, sr / s1);
  }
  double sse = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    const double r = rates[i] - (scale * model[i] + background);
    sse += w * r * r;
  }
  return {scale, background, sse};
}

void check_measurement(const Measurement& m) {
  if (m.size() < 3) throw InvalidParameter("measurement needs at least three samples");
  if (m.rates.size() != m.size()) throw InvalidParameter("angle and rate counts differ");
  if (m.rate_errors && m.rate_errors->size() != m.size()) {
    throw InvalidParameter("rate error count differs from rate count");
  }
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (!(m.angles_rad[i] > m.angles_rad[i - 1])) {
      throw InvalidParameter("measurement angles must be strictly increasing");
    }
  }
}

std::vector<double> shifted(std::span<const double> angles, double offset) {
  std::vector<double> q(angles.begin(), angles.end());
  for (double& a : q) a += offset;
  return q;
}

}  // namespace

Measurement parse_measurement(std::istream& in) {
  Measurement m;
  std::string raw;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      if (const auto eq = body.find('='); eq != std::string_view::npos) {
        m.metadata.emplace(std::string(trim(body.substr(0, eq))), std::string(trim(body.substr(eq + 1))));
      }
      continue;
    }
    if (columns == 0) {
      if (line == "angle_mrad,rate") {
        columns = 2;
      } else if (line == "angle_mrad,rate,rate_err") {
        columns = 3;
        m.rate_errors.emplace();
      } else {
        throw ParseError(ParseError::Kind::bad_header, line_no,
                         at_line(line_no) + "expected header 'angle_mrad,rate' or "
                                            "'angle_mrad,rate,rate_err', got '" + std::string(line) + "'");
      }
      continue;
    }
    const auto fields = split_commas(line);
    if (fields.size() != columns) {
      throw ParseError(ParseError::Kind::malformed_row, line_no,
                       at_line(line_no) + "expected " + std::to_string(columns) + " columns, got " +
                           std::to_string(fields.size()));
    }
    double values[3] = {0, 0, 0};
    for (std::size_t c = 0; c < columns; ++c) {
      if (!parse_number(fields[c], values[c])) {
        throw ParseError(ParseError::Kind::malformed_row, line_no,
                         at_line(line_no) + "not a finite number: '" + std::string(fields[c]) + "'");
      }
    }
    const double angle = values[0] * 1e-3;
    if (!m.angles_rad.empty() && !(angle > m.angles_rad.back())) {
      throw ParseError(ParseError::Kind::non_monotone, line_no,
                       at_line(line_no) + "angles must be strictly increasing");
    }
    if (values[1] < 0.0) {
      throw ParseError(ParseError::Kind::negative_value, line_no, at_line(line_no) + "negative rate");
    }
    if (columns == 3 && !(values[2] > 0.0)) {
      throw ParseError(ParseError::Kind::negative_value, line_no,
                       at_line(line_no) + "rate_err must be positive");
    }
    m.angles_rad.push_back(angle);
    m.rates.push_back(values[1]);
    if (columns == 3) m.rate_errors->push_back(values[2]);
  }
  if (m.angles_rad.empty()) {
    throw ParseError(ParseError::Kind::empty, 0, "measurement contains no data rows");
  }
  if (const auto it = m.metadata.find("channel"); it != m.metadata.end()) {
    if (it->second == "singles") {
      m.channel = Channel::singles;
    } else if (it->second == "coincidences") {
      m.channel = Channel::coincidences;
    } else {
      throw ParseError(ParseError::Kind::bad_header, 0, "unknown channel '" + it->second + "'");
    }
  }
  return m;
}

Measurement load_measurement(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(ParseError::Kind::missing_file, 0, "cannot open measurement file " + path.string());
  }
  try {
    return parse_measurement(in);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), e.line(), path.string() + ": " + e.what());
  }
}

double visibility(std::span<const double> angles_rad, std::span<const double> values, AngleWindow window) {
  if (angles_rad.size() != values.size()) throw InvalidParameter("angle and value counts differ");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::size_t count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (angles_rad[i] < window.lo_rad || angles_rad[i] > window.hi_rad) continue;
    lo = std::min(lo, values[i]);
    hi = std::max(hi, values[i]);
    ++count;
  }
  if (count < 3) throw InvalidParameter("visibility window holds fewer than three samples");
  if (hi + lo == 0.0) return 0.0;
  return (hi - lo) / (hi + lo);
}

double visibility(const RateProfile& profile, AngleWindow window) {
  return visibility(profile.angles_rad, profile.values, window);
}

double visibility(const Measurement& measurement, AngleWindow window) {
  return visibility(measurement.angles_rad, measurement.rates, window);
}

double od_ratio(const RateProfile& profile, double wavelength_um, double period_um,
                double peak_halfwidth_rad) {
  if (!(wavelength_um > 0.0) || !(period_um > 0.0) || !(peak_halfwidth_rad > 0.0)) {
    throw InvalidParameter("od_ratio needs positive wavelength, period and peak half width");
  }
  if (profile.angles_rad.empty()) throw InvalidParameter("empty profile");
  const double blue = wavelength_um / (2.0 * period_um);
  const double red = wavelength_um / period_um;
  if (blue + peak_halfwidth_rad >= red - peak_halfwidth_rad) {
    throw InvalidParameter("peak search windows overlap");
  }
  const double first = profile.angles_rad.front();
  const double last = profile.angles_rad.back();
  if (blue - peak_halfwidth_rad < first || red + peak_halfwidth_rad > last) {
    throw InvalidParameter("peak search windows fall outside the profile range");
  }
  auto peak_near = [&](double centre) {
    double peak = -1.0;
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
      if (std::abs(profile.angles_rad[i] - centre) <= peak_halfwidth_rad) {
        peak = std::max(peak, profile.values[i]);
      }
    }
    if (peak < 0.0) throw InvalidParameter("peak search window contains no samples");
    return peak;
  };
  const double blue_peak = peak_near(blue);
  const double red_peak = peak_near(red);
  if (red_peak == 0.0) return std::numeric_limits<double>::infinity();
  return blue_peak / red_peak;
}

std::vector<double> interpolate_linear(std::span<const double> xs, std::span<const double> ys,
                                       std::span<const double> queries) {
  if (xs.size() != ys.size() || xs.size() < 2) throw InvalidParameter("need at least two nodes");
  std::vector<double> out(queries.size());
  // Absorbs rounding from text round trips of the end nodes.
  const double slack = 1e-9 * (xs.back() - xs.front());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    double x = queries[q];
    if (x < xs.front() - slack || x > xs.back() + slack) {
      std::ostringstream msg;
      msg << "angle " << x << " rad lies outside the model range [" << xs.front() << ", "
          << xs.back() << "]";
      throw InvalidParameter(msg.str());
    }
    x = std::clamp(x, xs.front(), xs.back());
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    if (hi == xs.size()) hi = xs.size() - 1;
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    out[q] = ys[lo] + t * (ys[hi] - ys[lo]);
  }
  return out;
}

FitResult fit_sigma(const Measurement& measurement, const Scenario& scenario, const FitOptions& options) {
  check_measurement(measurement);
  if (!(options.sigma_min_um > 0.0) || !(options.sigma_max_um > options.sigma_min_um) ||
      options.coarse_points < 3 || !(options.relative_width > 0.0)) {
    throw InvalidParameter("invalid fit options");
  }

  const ForwardModel model(scenario);
  const DistinctWarnings once;
  const auto queries = shifted(measurement.angles_rad, scenario.angle_offset_rad);
  std::vector<double> weights;
  if (measurement.rate_errors) {
    weights.reserve(measurement.size());
    for (double e : *measurement.rate_errors) weights.push_back(1.0 / (e * e));
  }

  FitResult best;
  best.residual_sse = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  auto evaluate = [&](double sigma) {
    const auto forward = model.run(sigma);
    const auto m = unit_peak_model(profile_for(forward, measurement.channel), queries);
    const LinearFit lf = solve_scale_background(m, measurement.rates, weights);
    ++evaluations;
    if (lf.sse < best.residual_sse) {
      best.sigma_um = sigma;
      best.scale = lf.scale;
      best.background = lf.background;
      best.residual_sse = lf.sse;
    }
    return lf.sse;
  };

  const std::size_t npts = options.coarse_points;
  const double log_lo = std::log(options.sigma_min_um);
  const double log_hi = std::log(options.sigma_max_um);
  std::vector<double> log_sigma(npts);
  std::vector<double> sse(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    log_sigma[i] = log_lo + (log_hi - log_lo) * static_cast<double>(i) / static_cast<double>(npts - 1);
    sse[i] = evaluate(std::exp(log_sigma[i]));
  }
  const auto [min_it, max_it] = std::minmax_element(sse.begin(), sse.end());
  const auto imin = static_cast<std::size_t>(min_it - sse.begin());

  double energy = 0.0;
  for (std::size_t i = 0; i < measurement.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    energy += w * measurement.rates[i] * measurement.rates[i];
  }

  std::ostringstream diag;
  if (*max_it - *min_it <= options.flat_threshold * energy) {
    diag << "SSE landscape is flat over the coarse grid (spread " << (*max_it - *min_it)
         << " vs data energy " << energy << "); sigma is not identifiable";
    best.n_evaluations = evaluations;
    best.diagnostics = diag.str();
    return best;
  }
  if (imin == 0 || imin + 1 == npts) {
    diag << "SSE minimum at coarse-grid boundary sigma = " << std::exp(log_sigma[imin])
         << " um; true minimum may lie outside [" << options.sigma_min_um << ", "
         << options.sigma_max_um << "] um";
    best.n_evaluations = evaluations;
    best.diagnostics = diag.str();
    return best;
  }

  // Golden-section search in log(sigma) over the bracketing coarse cells.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = log_sigma[imin - 1];
  double b = log_sigma[imin + 1];
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = evaluate(std::exp(c));
  double fd = evaluate(std::exp(d));
  auto relative_width = [&] {
    const double lo = std::exp(a);
    const double hi = std::exp(b);
    return (hi - lo) / (0.5 * (hi + lo));
  };
  while (relative_width() > options.relative_width) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = evaluate(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = evaluate(std::exp(d));
    }
  }

  best.n_evaluations = evaluations;
  if (!(best.scale > 0.0)) {
    best.diagnostics = "best fit has zero model scale; data carry no interference signal";
    return best;
  }
  best.converged = true;
  diag << "bracket [" << std::exp(a) << ", " << std::exp(b) << "] um after " << evaluations
       << " model evaluations";
  best.diagnostics = diag.str();
  return best;
}

std::vector<double> fitted_curve(const Measurement& measurement, const Scenario& scenario,
                                 const FitResult& fit) {
  const auto forward = simulate(scenario, fit.sigma_um);
  auto curve = unit_peak_model(profile_for(forward, measurement.channel),
                               shifted(measurement.angles_rad, scenario.angle_offset_rad));
  for (double& v : curve) v = fit.scale * v + fit.background;
  return curve;
}

Measurement synthesize_scan(const Scenario& scenario, double sigma_um, Channel channel,
                            std::span<const double> angles_rad, double scale, double background,
                            double noise_fraction, std::uint64_t seed) {
  const auto forward = simulate(scenario, sigma_um);
  const auto model = unit_peak_model(profile_for(forward, channel),
                                     shifted(angles_rad, scenario.angle_offset_rad));
  Measurement m;
  m.channel = channel;
  m.angles_rad.assign(angles_rad.begin(), angles_rad.end());
  m.rates.resize(model.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double clean = scale * model[i] + background;
    const double factor = noise_fraction > 0.0 ? 1.0 + noise_fraction * normal(rng) : 1.0;
    m.rates[i] = std::max(0.0, clean * factor);
  }
  m.metadata["sigma_corr_um"] = std::to_string(sigma_um);
  m.metadata["synthetic_seed"] = std::to_string(seed);
  return m;
}

}  // namespace biphoton
