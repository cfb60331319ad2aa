#include "biphoton/propagation.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "biphoton/diagnostics.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/fourier.hpp"
#include "biphoton/kernels.hpp"

namespace biphoton {
namespace {

// Weights of a unit-area box of full width `width_bins` (in bins) sampled by
// unit bins: weight[t] = |[t - 1/2, t + 1/2] n [-w/2, w/2]| / w, for
// t = -reach..reach.
std::vector<double> box_weights(double width_bins, std::size_t& reach) {
  const double half = 0.5 * width_bins;
  reach = static_cast<std::size_t>(std::ceil(half - 0.5));
  std::vector<double> w(2 * reach + 1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = static_cast<double>(i) - static_cast<double>(reach);
    const double lo = std::max(t - 0.5, -half);
    const double hi = std::min(t + 0.5, half);
    w[i] = std::max(0.0, hi - lo) / width_bins;
  }
  return w;
}

void check_blur_width(double width_rad, double bin, std::size_t n) {
  if (!(width_rad >= 0.0) || !std::isfinite(width_rad)) {
    throw InvalidParameter("blur width must be non-negative");
  }
  if (width_rad > 0.5 * bin * static_cast<double>(n)) {
    std::ostringstream msg;
    msg << "blur width " << width_rad << " rad exceeds half the angular window ("
        << 0.5 * bin * static_cast<double>(n) << " rad)";
    throw InvalidParameter(msg.str());
  }
}

// Circular convolution along the first index: out.row(i) = sum_t w_t in.row(i + t).
RealMatrix convolve_rows(const RealMatrix& in, const std::vector<double>& w, std::size_t reach) {
  const std::size_t n = in.size();
  RealMatrix out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (w[t] == 0.0) continue;
      const std::size_t src = (i + n * (reach + 1) + t - reach) % n;
      simd::axpy(w[t], in.row(src), out.row(i));
    }
  }
  return out;
}

}  // namespace

double RateMap::mass() const {
  double total = 0.0;
  for (std::size_t r = 0; r < values.size(); ++r) total += simd::sum(values.row(r));
  return total * grid.dk() * grid.dk();
}

BiphotonAmplitude to_far_field(const BiphotonAmplitude& near) {
  if (near.plane != Plane::near_plane) throw InvalidParameter("amplitude is already in the far plane");
  BiphotonAmplitude far{near.grid, near.wavelength_um, Plane::far_plane, near.values};
  centered_transform(far.values, far.grid);
  far.values.symmetrize();
  return far;
}

RateMap coincidence_map(const BiphotonAmplitude& far) {
  if (far.plane != Plane::far_plane) throw InvalidParameter("coincidence map needs a far-plane amplitude");
  const std::size_t n = far.grid.size();
  RateMap map{far.grid, far.wavelength_um, RealMatrix(n), 0.0};
  simd::norm_sq(far.values.flat(), map.values.flat());
  return map;
}

RateProfile diagonal_profile(const RateMap& map, double separation_rad) {
  const std::size_t n = map.grid.size();
  const double bin = map.angle_bin();
  if (!std::isfinite(separation_rad)) throw InvalidParameter("detector separation must be finite");
  const double steps = separation_rad / bin;
  const double rounded = std::round(steps);
  if (std::abs(rounded) >= static_cast<double>(n)) {
    throw InvalidParameter("detector separation exceeds the angular window");
  }
  if (std::abs(steps - rounded) > 1e-9) {
    std::ostringstream msg;
    msg << "detector separation " << separation_rad << " rad rounded to " << rounded * bin
        << " rad (" << rounded << " angular bins)";
    warn(msg.str());
  }
  const auto s = static_cast<std::ptrdiff_t>(rounded);
  const auto angles = map.angles();
  RateProfile p;
  p.kind = ProfileKind::coincidence_diagonal;
  const std::size_t len = n - static_cast<std::size_t>(std::abs(s));
  p.angles_rad.reserve(len);
  p.values.reserve(len);
  for (std::size_t j = 0; j < n; ++j) {
    const std::ptrdiff_t l = static_cast<std::ptrdiff_t>(j) + s;
    if (l < 0 || l >= static_cast<std::ptrdiff_t>(n)) continue;
    p.angles_rad.push_back(angles[j]);
    p.values.push_back(map.values(j, static_cast<std::size_t>(l)));
  }
  return p;
}

RateProfile singles_profile(const RateMap& map) {
  const std::size_t n = map.grid.size();
  RateProfile p{map.angles(), std::vector<double>(n), ProfileKind::singles};
  const double dk = map.grid.dk();
  for (std::size_t j = 0; j < n; ++j) p.values[j] = simd::sum(map.values.row(j)) * dk;
  return p;
}

RateMap blur(const RateMap& map, double width_rad) {
  const std::size_t n = map.grid.size();
  const double bin = map.angle_bin();
  check_blur_width(width_rad, bin, n);
  RateMap out = map;
  out.blur_applied_rad = width_rad;
  if (width_rad <= bin) return out;  // box narrower than one bin: identity

  std::size_t reach = 0;
  const auto w = box_weights(width_rad / bin, reach);
  out.values = convolve_rows(map.values, w, reach);
  out.values.transpose_in_place();
  out.values = convolve_rows(out.values, w, reach);
  out.values.transpose_in_place();
  out.values.symmetrize();
  return out;
}

RateProfile blur(const RateProfile& profile, double width_rad) {
  const std::size_t n = profile.values.size();
  if (n < 2) throw InvalidParameter("profile too short to blur");
  const double bin = profile.angles_rad[1] - profile.angles_rad[0];
  for (std::size_t j = 1; j < n; ++j) {
    const double step = profile.angles_rad[j] - profile.angles_rad[j - 1];
    if (std::abs(step - bin) > 1e-9 * std::abs(bin)) {
      throw InvalidParameter("profile angles are not uniformly spaced");
    }
  }
  check_blur_width(width_rad, bin, n);
  RateProfile out = profile;
  if (width_rad <= bin) return out;

  std::size_t reach = 0;
  const auto w = box_weights(width_rad / bin, reach);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t t = 0; t < w.size(); ++t) {
      acc += w[t] * profile.values[(i + n * (reach + 1) + t - reach) % n];
    }
    out.values[i] = acc;
  }
  return out;
}

}  // namespace biphoton
