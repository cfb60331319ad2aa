#include <doctest.h>

#include <numbers>

#include "biphoton/errors.hpp"
#include "biphoton/fourier.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/optics.hpp"
#include "test_support.hpp"

using namespace biphoton;

namespace {

const GratingSpec kGrating{25.0, 0.5, 0.0};

// Fraction of |F[A]|^2 mass within half an order spacing of order m.
double order_power(const SinglePhotonAmplitude& a, const GratingSpec& spec, int m) {
  auto spectrum = a.values;
  centered_transform(spectrum, a.grid);
  const double order_k = 2 * std::numbers::pi * m / spec.period_um;
  const double half_spacing = std::numbers::pi / spec.period_um;
  double power = 0;
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    if (std::abs(a.grid.k()[j] - order_k) < half_spacing) power += std::norm(spectrum[j]) * a.grid.dk();
  }
  return power;
}

}  // namespace

TEST_CASE("blaze_phase examples") {
  CHECK(blaze_phase(0.0, kGrating, 0.78) == 0.0);
  CHECK(blaze_phase(12.5, kGrating, 0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(blaze_phase(12.5, kGrating, 0.78) == doctest::Approx(2.0138414446088415).epsilon(1e-13));
  const GratingSpec shifted{25.0, 0.5, 3.0};
  CHECK(blaze_phase(3.0, shifted, 0.78) == 0.0);
  CHECK(blaze_phase(-10.0, kGrating, 0.5) == doctest::Approx(2 * std::numbers::pi * 0.6).epsilon(1e-13));
}

TEST_CASE("blaze_phase is periodic in the grating period") {
  // Compare on the unit circle: the sawtooth jump makes raw values near a
  // discontinuity differ by a full phase depth under rounding.
  const auto xs = testing::random_real(2000, 3, -500.0, 500.0);
  const double depth = 2 * std::numbers::pi * 0.5 / 0.78;
  for (double x : xs) {
    const double a = blaze_phase(x, kGrating, 0.78) / depth;
    const double b = blaze_phase(x + 25.0, kGrating, 0.78) / depth;
    const double d = std::abs(a - b);
    CHECK(std::min(d, 1.0 - d) < 1e-12);
    CHECK(a >= 0.0);
    CHECK(a < 1.0);
  }
}

TEST_CASE("transmission is a normalized pure phase grating under the envelope") {
  const auto grid = make_grid(512, 600.0);
  const Illumination illum{0.78, 100.0, IlluminationMode::near_field};
  const auto a = transmission(grid, kGrating, illum);
  CHECK(simd::sum_norm_sq(a.values) * grid.dx() == doctest::Approx(1.0).epsilon(1e-14));
  const double norm = std::abs(a.values[grid.center()]) / spot_envelope(0.0, 100.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    CHECK(std::abs(a.values[j]) == doctest::Approx(spot_envelope(grid.x()[j], 100.0) * norm).epsilon(1e-13));
  }
}

TEST_CASE("spot envelope convention") {
  CHECK(spot_envelope(0.0, 29.0) == 1.0);
  CHECK(spot_envelope(14.5, 29.0) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  CHECK(spot_envelope(-14.5, 29.0) == spot_envelope(14.5, 29.0));
}

TEST_CASE("transmission resolution guard") {
  const Illumination illum{0.78, 100.0, IlluminationMode::near_field};
  CHECK_NOTHROW(transmission(make_grid(96, 600.0), kGrating, illum));  // dx = d/4
  CHECK_THROWS_AS(transmission(make_grid(94, 600.0), kGrating, illum), ResolutionError);
  CHECK_THROWS_AS(transmission(make_grid(512, 600.0), GratingSpec{0.0, 0.5, 0.0}, illum), InvalidParameter);
  CHECK_THROWS_AS(transmission(make_grid(512, 600.0), kGrating, Illumination{0.78, -1.0}), InvalidParameter);
}

TEST_CASE("order_efficiency examples") {
  CHECK(order_efficiency(1, 0.5, 0.5) == 1.0);
  CHECK(order_efficiency(0, 0.5, 0.5) == doctest::Approx(0.0).epsilon(1e-30));
  CHECK(order_efficiency(0, 0.5, 0.5) < 1e-30);
  CHECK(order_efficiency(1, 0.78, 0.5) == doctest::Approx(0.642).epsilon(0.001 / 0.642));
  CHECK(order_efficiency(1, 0.78, 0.5) == doctest::Approx(0.6417739127081603).epsilon(1e-13));
  CHECK(order_efficiency(0, 0.78, 0.5) == doctest::Approx(0.20126029902527925).epsilon(1e-13));
  CHECK_THROWS_AS(order_efficiency(1, 0.0, 0.5), InvalidParameter);
}

TEST_CASE("order efficiencies sum to one") {
  // The full sum is 1; truncating to |m| <= 8 leaves a tail of up to ~2.4 %
  // at half-integer lambda_B/lambda (lambda = 1.0 um).
  for (double lambda = 0.4; lambda <= 1.0 + 1e-12; lambda += 0.05) {
    CAPTURE(lambda);
    double total = 0, truncated = 0;
    for (int m = -4000; m <= 4000; ++m) {
      const double e = order_efficiency(m, lambda, 0.5);
      total += e;
      if (std::abs(m) <= 8) truncated += e;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(truncated >= 0.976);
    CHECK(truncated <= 1.0 + 1e-12);
  }
}

TEST_CASE("numerical first-order power matches the analytic efficiency for wide spots") {
  const auto grid = make_grid(1024, 1200.0);
  for (double lambda : {0.5, 0.65, 0.78}) {
    for (double spot : {200.0, 300.0}) {
      CAPTURE(lambda);
      CAPTURE(spot);
      const auto a = transmission(grid, kGrating, Illumination{lambda, spot, IlluminationMode::near_field});
      const double analytic = order_efficiency(1, lambda, 0.5);
      CHECK(std::abs(order_power(a, kGrating, 1) / analytic - 1.0) < 0.02);
    }
  }
}

TEST_CASE("lateral registration leaves far-field magnitudes unchanged") {
  const auto grid = make_grid(1024, 1200.0);
  const Illumination illum{0.78, 300.0, IlluminationMode::near_field};
  auto a = transmission(grid, GratingSpec{25.0, 0.5, 0.0}, illum).values;
  auto b = transmission(grid, GratingSpec{25.0, 0.5, 7.3}, illum).values;
  centered_transform(a, grid);
  centered_transform(b, grid);
  double peak = 0, worst = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    peak = std::max(peak, std::norm(a[j]));
    worst = std::max(worst, std::abs(std::norm(a[j]) - std::norm(b[j])));
  }
  CHECK(worst < 0.02 * peak);
  // Peaks of each order are unchanged to high accuracy.
  for (int m = -1; m <= 2; ++m) {
    const std::size_t idx = grid.center() + static_cast<std::size_t>(48 * m);
    CHECK(std::norm(b[idx]) == doctest::Approx(std::norm(a[idx])).epsilon(1e-6));
  }
}
