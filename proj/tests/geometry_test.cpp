#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "conewave/geometry.hpp"
#include "conewave/rng.hpp"
#include "conewave/sampling.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace conewave;
using conewave::testutil::check_close;
using std::numbers::pi;

TEST_SUITE("geometry") {

TEST_CASE("reflect_across pinned values") {
  check_close(reflect_across({1, 1}, {1, 0}), {0, 1}, 1e-15);
  // zero axis degenerates to the point reflection
  check_close(reflect_across({0, 0}, {0, 1}), {0, -1}, 0.0);
  // the axis direction itself is fixed
  check_close(reflect_across({0.6, 0.8}, {0.6, 0.8}), {0.6, 0.8}, 1e-15);
  CHECK_THROWS_AS(reflect_across({std::numeric_limits<double>::quiet_NaN(), 0}, {1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(reflect_across({1, 0}, {std::numeric_limits<double>::infinity(), 0}),
                  std::invalid_argument);
}

TEST_CASE("wave_step pinned values") {
  const Vec x0 = unit_from_angle(1.234);
  check_close(wave_step(x0, x0, x0), x0, 1e-15);  // constant data is a fixed point

  // circle update is additive in angles: 0.3 + 0.5 - 0.1 = 0.7
  const Vec out = wave_step(unit_from_angle(0.3), unit_from_angle(0.5), unit_from_angle(0.1));
  CHECK(angle_of(out) == doctest::Approx(0.7).epsilon(1e-14));

  // antipodal neighbors collapse the axis; the update negates the diagonal
  check_close(wave_step({1, 0}, {-1, 0}, {0, 1}), {0, -1}, 0.0);

  Vec fixed3 = Vec::basis0(3);
  check_close(wave_step(fixed3, fixed3, fixed3), fixed3, 1e-15);
}

TEST_CASE("invert_in_sphere pinned values") {
  check_close(invert_in_sphere({2, 0}), {0.5, 0}, 1e-16);
  check_close(invert_in_sphere({0, 1}), {0, 1}, 0.0);
  check_close(invert_in_sphere({0.5, 0.5}), {1, 1}, 1e-15);
  CHECK_THROWS_AS(invert_in_sphere({0, 0}), std::domain_error);
  CHECK_THROWS_AS(invert_in_sphere({1e-15, 0}), std::domain_error);
  // |I(q)| = 1/|q|
  const Vec q{0.3, -0.4, 1.2};
  CHECK(invert_in_sphere(q).norm() == doctest::Approx(1.0 / q.norm()).epsilon(1e-14));
}

TEST_CASE("exp_map pinned values") {
  check_close(exp_map({1, 0}, {0, 0}), {1, 0}, 0.0);
  check_close(exp_map({1, 0}, {0, pi / 2}), {0, 1}, 1e-15);
  check_close(exp_map({1, 0, 0}, {0, pi, 0}), {-1, 0, 0}, 1e-15);
  // normal component of v is projected away before use
  const Vec base{1, 0};
  const Vec slightly_off{1e-12, pi / 2};
  check_close(exp_map(base, slightly_off), {0, 1}, 1e-11);
  CHECK(exp_map(base, {0.3, 0.7}).norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("distances pinned values") {
  const Vec e0{1, 0}, e1{0, 1};
  CHECK(distances(e0, e0).chordal == 0.0);
  CHECK(distances(e0, e0).geodesic == 0.0);
  CHECK(distances(e0, -e0).chordal == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(distances(e0, -e0).geodesic == doctest::Approx(pi).epsilon(1e-15));
  CHECK(distances(e0, e1).chordal == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(distances(e0, e1).geodesic == doctest::Approx(pi / 2).epsilon(1e-15));
}

TEST_CASE("chordal never exceeds geodesic") {
  RngStream rng(42, 0);
  for (int i = 0; i < 2000; ++i) {
    const Vec x = uniform_point(rng, 2);
    const Vec y = uniform_point(rng, 2);
    const SphereDistances d = distances(x, y);
    CHECK(d.chordal <= d.geodesic + 1e-15);
    CHECK(d.chordal >= 0.0);
    CHECK(d.geodesic <= pi);
  }
}

TEST_CASE("null coordinates") {
  CHECK(null_coords(1, 0) == std::pair{1.0, 1.0});
  CHECK(null_coords(1, 1) == std::pair{2.0, 0.0});
  CHECK(null_coords(2, -1) == std::pair{1.0, 3.0});
  CHECK_THROWS_AS(null_coords(1.0, 1.5), std::domain_error);
  CHECK(from_null(1.0, 3.0) == std::pair{2.0, -1.0});
  // roundtrip
  const auto [u, v] = null_coords(0.75, 0.25);
  const auto [t, x] = from_null(u, v);
  CHECK(t == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(x == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("angle helpers") {
  CHECK(angle_of({1, 0}) == 0.0);
  CHECK(angle_of({-1, 0}) == doctest::Approx(pi));  // boundary of (-pi, pi]
  CHECK(angle_of(unit_from_angle(0.9)) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(wrap_angle(3 * pi) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(wrap_angle(-0.1) == doctest::Approx(-0.1));
  CHECK_THROWS_AS(angle_of(Vec{1, 0, 0}), std::invalid_argument);
}

// Property runs below use fewer draws than the acceptance gate; their job is
// to catch regressions fast, not to re-certify tolerances.

TEST_CASE("reflection is an involution and an isometry") {
  RngStream rng(7, 1);
  for (int d = 1; d <= 3; ++d) {
    for (int i = 0; i < 2000; ++i) {
      const Vec a = uniform_point(rng, d) * (0.2 + 2.0 * rng.uniform01());
      const Vec p = uniform_point(rng, d);
      const Vec q = uniform_point(rng, d);
      CHECK((reflect_across(a, reflect_across(a, p)) - p).norm() <= 1e-13);
      CHECK(std::abs((reflect_across(a, p) - reflect_across(a, q)).norm() - (p - q).norm()) <=
            1e-13);
    }
    // zero-axis branch is the antipodal involution
    const Vec p = uniform_point(rng, d);
    check_close(reflect_across(Vec(static_cast<std::size_t>(d) + 1), reflect_across(Vec(static_cast<std::size_t>(d) + 1), p)), p, 0.0);
  }
}

TEST_CASE("exchange identity and expanded formula agree") {
  RngStream rng(7, 2);
  for (int d = 1; d <= 3; ++d) {
    for (int i = 0; i < 2000; ++i) {
      Vec p = uniform_point(rng, d);
      Vec q = uniform_point(rng, d);
      while ((p + q).norm() < 1e-2) q = uniform_point(rng, d);  // stay off the antipodal set
      const Vec s = uniform_point(rng, d);
      CHECK((reflect_across(p + q, p) - q).norm() <= 1e-13);
      CHECK((reflect_across(p + q, q) - p).norm() <= 1e-13);
      const Vec w = wave_step(p, q, s);
      CHECK((w - wave_step_expanded(p, q, s)).norm() <= 1e-11);
      CHECK(std::abs(w.norm() - 1.0) <= 1e-13);
    }
  }
}

TEST_CASE("circle update adds angles") {
  RngStream rng(7, 3);
  for (int i = 0; i < 2000; ++i) {
    Vec p = uniform_point(rng, 1);
    Vec q = uniform_point(rng, 1);
    while ((p + q).norm() < 1e-2) q = uniform_point(rng, 1);
    const Vec s = uniform_point(rng, 1);
    const double want = wrap_angle(angle_of(p) + angle_of(q) - angle_of(s));
    const double got = angle_of(wave_step(p, q, s));
    CHECK(std::abs(wrap_angle(got - want)) <= 1e-11);
  }
}

TEST_CASE("wave_step exact distance exchange") {
  // |new - p| = |q - s| and |new - q| = |p - s| hold for every axis, including
  // nearly antipodal ones; this is the conservation law in miniature.
  RngStream rng(7, 4);
  for (int i = 0; i < 2000; ++i) {
    const Vec p = uniform_point(rng, 2);
    const Vec q = uniform_point(rng, 2);
    const Vec s = uniform_point(rng, 2);
    const Vec w = wave_step(p, q, s);
    CHECK(std::abs((w - p).norm() - (q - s).norm()) <= 1e-12);
    CHECK(std::abs((w - q).norm() - (p - s).norm()) <= 1e-12);
  }
}

TEST_CASE("renormalize flag restores unit length") {
  const Vec p = unit_from_angle(0.4), q = unit_from_angle(-0.2), s = unit_from_angle(1.0);
  CHECK(wave_step(p, q, s, true).norm() == doctest::Approx(1.0).epsilon(1e-15));
}

}  // TEST_SUITE
