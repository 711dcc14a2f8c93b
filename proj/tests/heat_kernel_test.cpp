#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conewave/geometry.hpp"
#include "conewave/heat_kernel.hpp"
#include "conewave/rng.hpp"
#include "conewave/sampling.hpp"
#include "doctest.h"

using namespace conewave;
using std::numbers::pi;

TEST_SUITE("heat_kernel") {

TEST_CASE("equilibrium and peak values") {
  const Vec a = unit_from_angle(0.3), b = unit_from_angle(-1.1);
  // t -> infinity relaxes to the uniform density
  CHECK(std::abs(heat_kernel_density(100.0, a, b) - 1.0 / (2 * pi)) <= 1e-8);
  // short-time on-diagonal value is the flat Gaussian peak
  CHECK(std::abs(heat_kernel_density(0.1, a, a) - 1.0 / std::sqrt(2 * pi * 0.1)) <= 1e-9);

  const Vec x{0.6, 0.0, 0.8}, y{0.0, 1.0, 0.0};
  CHECK(std::abs(heat_kernel_density(100.0, x, y) - 1.0 / (4 * pi)) <= 1e-8);
}

TEST_CASE("symmetry and rotation invariance") {
  const Vec a = unit_from_angle(0.9), b = unit_from_angle(2.4);
  CHECK(heat_kernel_density(0.2, a, b) == heat_kernel_density(0.2, b, a));
  // density depends on the points only through their inner product
  const Vec c = unit_from_angle(-0.5), d = unit_from_angle(-0.5 + 1.5);
  CHECK(heat_kernel_density(0.2, unit_from_angle(0.0), unit_from_angle(1.5)) ==
        doctest::Approx(heat_kernel_density(0.2, c, d)).epsilon(1e-14));
}

TEST_CASE("circle kernel integrates to one") {
  // periodic trapezoid rule is spectrally accurate here
  const Vec x = unit_from_angle(0.7);
  for (double t : {0.02, 0.25, 4.0}) {
    const int n = 4096;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += heat_kernel_density(t, x, unit_from_angle(2 * pi * i / n));
    acc *= 2 * pi / n;
    CHECK(std::abs(acc - 1.0) <= 1e-10);
  }
}

TEST_CASE("circle kernel satisfies the semigroup law") {
  const double t = 0.05;
  const Vec x = unit_from_angle(0.0), y = unit_from_angle(0.8);
  const int n = 4096;
  double conv = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec z = unit_from_angle(2 * pi * i / n);
    conv += heat_kernel_density(t, x, z) * heat_kernel_density(t, z, y);
  }
  conv *= 2 * pi / n;
  CHECK(conv == doctest::Approx(heat_kernel_density(2 * t, x, y)).epsilon(1e-10));
}

TEST_CASE("sphere kernel integrates to one") {
  // reduce to the inner product c = x.y and integrate 2 pi p(t, c) over [-1, 1]
  const double t = 0.25;
  const int n = 20000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double c = -1.0 + 2.0 * (i + 0.5) / n;
    const Vec y{c, std::sqrt(1.0 - c * c), 0.0};
    acc += heat_kernel_density(t, Vec::basis0(3), y);
  }
  acc *= 2.0 * pi * 2.0 / n;
  CHECK(std::abs(acc - 1.0) <= 1e-6);
}

TEST_CASE("explicit truncation matches the automatic cutoff") {
  const Vec x = Vec::basis0(3);
  const Vec y{0.2, std::sqrt(1.0 - 0.04), 0.0};
  CHECK(heat_kernel_density(0.1, x, y, 60) ==
        doctest::Approx(heat_kernel_density(0.1, x, y)).epsilon(1e-9));
}

TEST_CASE("argument errors") {
  const Vec a = unit_from_angle(0.0);
  CHECK_THROWS_AS(heat_kernel_density(0.0, a, a), std::domain_error);
  CHECK_THROWS_AS(heat_kernel_density(-1.0, a, a), std::domain_error);
  CHECK_THROWS_AS(heat_kernel_density(0.1, Vec{1, 0, 0, 0}, Vec{1, 0, 0, 0}),
                  std::invalid_argument);  // d = 3 series not provided
  CHECK_THROWS_AS(heat_kernel_density(0.1, a, Vec{1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(heat_kernel_density(0.1, a, a, -1), std::invalid_argument);
}

TEST_CASE("reflection product identity, small run") {
  RngStream rng(21, 0);
  CHECK(kernel_reflection_identity_check(0.05, 1, 200, rng) <= 1e-7);
  CHECK(kernel_reflection_identity_check(0.1, 2, 50, rng) <= 1e-6);
}

}  // TEST_SUITE
