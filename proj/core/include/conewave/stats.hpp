#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace conewave {

/// One-sample Kolmogorov-Smirnov statistic sup_x |F_n(x) - F(x)|.
/// cdf must be the hypothesized distribution function; samples need not be sorted.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS statistic between empirical distributions.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic critical values at level alpha: reject when D exceeds them.
double ks_critical(double alpha, std::size_t n);
double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m);

/// CDF of the wrapped normal N(0, variance) on (-pi, pi], evaluated by
/// summing Gaussian images until they vanish at double precision.
double wrapped_normal_cdf(double x, double variance);

/// Lag-1 sample autocorrelation; 0 for fewer than 3 points.
double lag1_correlation(const std::vector<double>& xs);

/// Pearson correlation of paired samples.
double correlation(const std::vector<double>& xs, const std::vector<double>& ys);

double mean(const std::vector<double>& xs);
double variance(const std::vector<double>& xs);  // unbiased

/// Nearest-rank percentile, q in [0, 100]; input copied and sorted.
double percentile(std::vector<double> xs, double q);

}  // namespace conewave
