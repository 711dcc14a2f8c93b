#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "conewave/rng.hpp"
#include "conewave/stats.hpp"
#include "doctest.h"

using namespace conewave;
using std::numbers::pi;

TEST_SUITE("stats") {

TEST_CASE("one-sample KS on hand-checkable data") {
  const auto uniform = [](double x) { return x; };
  // ECDF of {0.25, 0.75} vs identity: every jump contributes 0.25
  CHECK(ks_statistic({0.25, 0.75}, uniform) == doctest::Approx(0.25).epsilon(1e-15));
  // a point mass at the median of the uniform
  CHECK(ks_statistic({0.5}, uniform) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(ks_statistic({}, uniform), std::invalid_argument);
}

TEST_CASE("two-sample KS extremes") {
  CHECK(ks_statistic_two_sample({0.0, 0.1, 0.2}, {1.0, 1.1, 1.2}) == doctest::Approx(1.0));
  CHECK(ks_statistic_two_sample({1, 2, 3}, {1, 2, 3}) == doctest::Approx(0.0));
  // interleaved samples: ECDFs never differ by more than one step of 1/3
  CHECK(ks_statistic_two_sample({1, 3, 5}, {2, 4, 6}) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK_THROWS_AS(ks_statistic_two_sample({}, {1.0}), std::invalid_argument);
}

TEST_CASE("critical value formulas") {
  // sqrt(-ln(alpha/2) / 2) / sqrt(n)
  CHECK(ks_critical(0.01, 10000) ==
        doctest::Approx(std::sqrt(-std::log(0.005) / 2.0) / 100.0).epsilon(1e-12));
  // the two-sample version scales by sqrt((n + m) / (n m))
  CHECK(ks_critical_two_sample(0.01, 100, 400) ==
        doctest::Approx(std::sqrt(-std::log(0.005) / 2.0) * std::sqrt(500.0 / 40000.0))
            .epsilon(1e-12));
  // larger samples, tighter threshold
  CHECK(ks_critical(0.01, 400) < ks_critical(0.01, 100));
}

TEST_CASE("wrapped normal cdf") {
  CHECK(wrapped_normal_cdf(pi, 0.3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(wrapped_normal_cdf(-pi, 0.3)) <= 1e-14);
  CHECK(wrapped_normal_cdf(0.0, 0.3) == doctest::Approx(0.5).epsilon(1e-13));
  // symmetry F(x) + F(-x) = 1
  for (double x : {0.3, 1.0, 2.9})
    CHECK(wrapped_normal_cdf(x, 0.5) + wrapped_normal_cdf(-x, 0.5) ==
          doctest::Approx(1.0).epsilon(1e-13));
  // tiny variance: the wrapping is invisible, matches the plain normal
  const double t = 0.01;
  const double x = 0.15;
  const double plain = 0.5 * (1.0 + std::erf(x / std::sqrt(2.0 * t)));
  CHECK(wrapped_normal_cdf(x, t) == doctest::Approx(plain).epsilon(1e-12));
  // huge variance: indistinguishable from uniform on (-pi, pi]
  CHECK(wrapped_normal_cdf(1.0, 400.0) == doctest::Approx((1.0 + pi) / (2 * pi)).epsilon(1e-9));
  CHECK_THROWS_AS(wrapped_normal_cdf(0.0, 0.0), std::domain_error);
}

TEST_CASE("wrapped normal cdf against direct image summation") {
  // independent route: integrate the periodized Gaussian density numerically
  const double var = 0.8;
  const double x = 0.9;
  const int n = 200000;
  double acc = 0.0;
  const double lo = -pi;
  for (int i = 0; i < n; ++i) {
    const double s = lo + (x - lo) * (i + 0.5) / n;
    double dens = 0.0;
    for (int k = -6; k <= 6; ++k)
      dens += std::exp(-(s + 2 * pi * k) * (s + 2 * pi * k) / (2 * var));
    acc += dens / std::sqrt(2 * pi * var) * (x - lo) / n;
  }
  CHECK(wrapped_normal_cdf(x, var) == doctest::Approx(acc).epsilon(1e-8));
}

TEST_CASE("moments and correlations") {
  CHECK(mean({1, 2, 3, 4}) == doctest::Approx(2.5));
  CHECK(variance({1, 2, 3, 4}) == doctest::Approx(5.0 / 3).epsilon(1e-14));  // unbiased
  CHECK(correlation({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(correlation({1, 2, 3}, {6, 4, 2}) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_THROWS_AS(correlation({1.0}, {1.0, 2.0}), std::invalid_argument);

  // alternating signs: lag-1 autocorrelation is -1
  CHECK(lag1_correlation({1, -1, 1, -1, 1, -1}) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(lag1_correlation({1.0, 2.0}) == 0.0);  // too short by contract

  RngStream rng(55, 0);
  std::vector<double> iid(20000);
  for (double& v : iid) v = rng.normal();
  CHECK(std::abs(lag1_correlation(iid)) < 0.03);
}

TEST_CASE("nearest-rank percentile") {
  std::vector<double> xs;
  for (int i = 1; i <= 100; ++i) xs.push_back(i);
  CHECK(percentile(xs, 99.0) == 99.0);
  CHECK(percentile(xs, 100.0) == 100.0);
  CHECK(percentile(xs, 0.0) == 1.0);
  CHECK(percentile({4, 1, 3, 2}, 50.0) == 2.0);  // rank ceil(0.5 * 4) = 2nd smallest
  CHECK_THROWS_AS(percentile({}, 50.0), std::invalid_argument);
  CHECK_THROWS_AS(percentile({1.0}, 101.0), std::invalid_argument);
}

}  // TEST_SUITE
