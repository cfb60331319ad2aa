#include <doctest.h>

#include "biphoton/biphoton.hpp"
#include "biphoton/errors.hpp"
#include "test_support.hpp"

using namespace biphoton;

namespace {

SinglePhotonAmplitude grating_amplitude(std::size_t n = 256, double window = 300.0, double spot = 29.0) {
  return transmission(make_grid(n, window), GratingSpec{25.0, 0.5, 0.0},
                      Illumination{0.78, spot, IlluminationMode::near_field});
}

double max_abs(const ComplexMatrix& m) {
  double v = 0;
  for (const auto& z : m.flat()) v = std::max(v, std::abs(z));
  return v;
}

}  // namespace

TEST_CASE("correlation_factor examples") {
  const CorrelationModel near{3.0, IlluminationMode::near_field};
  const CorrelationModel far{3.0, IlluminationMode::far_field};
  CHECK(correlation_factor(7.3, 7.3, near) == 1.0);
  CHECK(correlation_factor(5.0, -5.0, far) == 1.0);
  CHECK(correlation_factor(1.0, 4.0, near) == doctest::Approx(0.6065306597126334).epsilon(1e-15));
  CHECK(correlation_factor(1.0, 2.0, far) == doctest::Approx(0.6065306597126334).epsilon(1e-15));
  CHECK(correlation_factor(1.0, 2.0, near) < 1.0);
}

TEST_CASE("two-photon amplitude is exactly symmetric and normalized") {
  const auto base = grating_amplitude();
  for (auto mode : {IlluminationMode::near_field, IlluminationMode::far_field}) {
    for (double sigma : {0.3, 2.0, 9.0, 100.0}) {
      CAPTURE(sigma);
      testing::WarningCapture quiet;
      const auto f = two_photon_amplitude(base, {sigma, mode});
      CHECK(f.plane == Plane::near_plane);
      CHECK(total_probability(f) == doctest::Approx(1.0).epsilon(1e-12));
      const std::size_t n = f.grid.size();
      bool symmetric = true;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < j; ++l) symmetric &= f.values(j, l) == f.values(l, j);
      CHECK(symmetric);
    }
  }
}

TEST_CASE("entries equal A(x1) A(x2) G(x1, x2) up to normalization") {
  const auto a = grating_amplitude(64, 64.0, 20.0);
  const CorrelationModel model{4.0, IlluminationMode::near_field};
  const auto f = two_photon_amplitude(a, model);
  const auto x = a.grid.x();
  const double c = std::abs(f.values(32, 32)) / std::abs(a.values[32] * a.values[32]);
  for (std::size_t j = 0; j < 64; j += 3) {
    for (std::size_t l = 0; l < 64; l += 5) {
      const auto expected = a.values[j] * a.values[l] * correlation_factor(x[j], x[l], model) * c;
      CHECK(std::abs(f.values(j, l) - expected) <= 1e-14 * max_abs(f.values));
    }
  }
}

TEST_CASE("random complex amplitudes stay symmetric") {
  const auto grid = make_grid(48, 48.0);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SinglePhotonAmplitude a{grid, 0.78, testing::random_complex(48, seed)};
    const auto f = two_photon_amplitude(a, {5.0, seed % 2 ? IlluminationMode::near_field : IlluminationMode::far_field});
    for (std::size_t j = 0; j < 48; ++j)
      for (std::size_t l = 0; l < 48; ++l) REQUIRE(f.values(j, l) == f.values(l, j));
  }
}

TEST_CASE("wide correlation gives a separable amplitude") {
  const auto a = grating_amplitude();
  const double window = a.grid.window();
  for (double sigma : {1e6, 1e9}) {
    CAPTURE(sigma);
    const auto f = two_photon_amplitude(a, {sigma, IlluminationMode::near_field});
    // A is normalized, so the outer product already has unit norm.
    double worst = 0;
    for (std::size_t j = 0; j < a.values.size(); ++j)
      for (std::size_t l = 0; l < a.values.size(); ++l)
        worst = std::max(worst, std::abs(f.values(j, l) - a.values[j] * a.values[l]));
    const double rel = worst / max_abs(f.values);
    // 1 - G is at most window^2 / (2 sigma^2) anywhere on the lattice.
    CHECK(rel <= window * window / (2 * sigma * sigma) + 1e-14);
    if (sigma >= 1e9) CHECK(rel <= 1e-12);
  }
}

TEST_CASE("very narrow correlation collapses onto the diagonal") {
  const auto a = grating_amplitude();
  testing::WarningCapture warnings;
  const auto f = two_photon_amplitude(a, {0.01 * a.grid.dx(), IlluminationMode::near_field});
  REQUIRE(warnings.messages.size() == 1);
  CHECK(warnings.messages[0].find("below half the grid spacing") != std::string::npos);
  double diag = 0;
  bool off_zero = true;
  for (std::size_t j = 0; j < f.grid.size(); ++j) {
    diag = std::max(diag, std::abs(f.values(j, j)));
    for (std::size_t l = 0; l < f.grid.size(); ++l) {
      // exp(-(dx)^2 / (2 (0.01 dx)^2)) = exp(-5000), below the double range
      if (l != j) off_zero &= f.values(j, l) == std::complex<double>(0.0, 0.0);
    }
  }
  CHECK(off_zero);
  CHECK(diag > 0.0);
}

TEST_CASE("no warning when the correlation is resolved") {
  const auto a = grating_amplitude();
  testing::WarningCapture warnings;
  two_photon_amplitude(a, {a.grid.dx(), IlluminationMode::near_field});
  CHECK(warnings.messages.empty());
}

TEST_CASE("degenerate inputs") {
  const auto grid = make_grid(16, 16.0);
  const SinglePhotonAmplitude zero{grid, 0.78, std::vector<std::complex<double>>(16)};
  CHECK_THROWS_AS(two_photon_amplitude(zero, {1.0, IlluminationMode::near_field}), DegenerateInput);
  const auto a = grating_amplitude();
  CHECK_THROWS_AS(two_photon_amplitude(a, {0.0, IlluminationMode::near_field}), InvalidParameter);
  CHECK_THROWS_AS(two_photon_amplitude(a, {-1.0, IlluminationMode::near_field}), InvalidParameter);
}

TEST_CASE("near-mode mass concentrates near the diagonal as sigma shrinks") {
  const auto a = grating_amplitude();
  const auto x = a.grid.x();
  double previous = 0.0;
  for (double sigma : {200.0, 50.0, 20.0, 9.0, 4.0, 2.0, 1.0}) {
    CAPTURE(sigma);
    const auto f = two_photon_amplitude(a, {sigma, IlluminationMode::near_field});
    double inside = 0, total = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      for (std::size_t l = 0; l < x.size(); ++l) {
        const double p = std::norm(f.values(j, l));
        total += p;
        if (std::abs(x[j] - x[l]) <= 10.0) inside += p;
      }
    }
    const double fraction = inside / total;
    CHECK(fraction >= previous - 1e-15);
    previous = fraction;
  }
}

TEST_CASE("far mode is near mode with the second coordinate mirrored") {
  // Real, even amplitude: pure Gaussian spot without grating.
  const auto grid = make_grid(128, 256.0);
  SinglePhotonAmplitude a{grid, 0.78, {}};
  for (double x : grid.x()) a.values.emplace_back(spot_envelope(x, 40.0), 0.0);
  const auto near = two_photon_amplitude(a, {6.0, IlluminationMode::near_field});
  const auto far = two_photon_amplitude(a, {6.0, IlluminationMode::far_field});
  const std::size_t n = grid.size();
  const double scale = max_abs(near.values);
  // x_{n-l} = -x_l for l >= 1; index 0 has no mirror on the lattice.
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 1; l < n; ++l)
      REQUIRE(std::abs(far.values(j, l) - near.values(j, n - l)) <= 1e-13 * scale);
}
