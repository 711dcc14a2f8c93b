#include "conewave/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conewave {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(double alpha, std::size_t n) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m) {
  const double nm = static_cast<double>(n) * static_cast<double>(m);
  return std::sqrt(-0.5 * std::log(alpha / 2.0) * (static_cast<double>(n + m)) / nm);
}

double wrapped_normal_cdf(double x, double variance) {
  if (!(variance > 0.0)) throw std::domain_error("wrapped_normal_cdf: variance must be positive");
  const double sigma = std::sqrt(variance);
  const double pi = std::numbers::pi;
  auto phi = [sigma](double z) { return 0.5 * std::erfc(-z / (sigma * std::numbers::sqrt2)); };
  // mass on (-pi, x] summed over Gaussian images; images beyond 6 sigma of the
  // window vanish at double precision
  const int kmax = 2 + static_cast<int>((6.0 * sigma + pi) / (2.0 * pi));
  double f = 0.0;
  for (int k = -kmax; k <= kmax; ++k) {
    const double shift = 2.0 * pi * k;
    f += phi(x + shift) - phi(-pi + shift);
  }
  return std::min(1.0, std::max(0.0, f));
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - mu) * (x - mu);
  return s / static_cast<double>(xs.size() - 1);
}

double correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("correlation: size mismatch");
  if (xs.size() < 3) return 0.0;
  const double mx = mean(xs), my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double a = xs[i] - mx, b = ys[i] - my;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double lag1_correlation(const std::vector<double>& xs) {
  if (xs.size() < 3) return 0.0;
  std::vector<double> a(xs.begin(), xs.end() - 1);
  std::vector<double> b(xs.begin() + 1, xs.end());
  return correlation(a, b);
}

double percentile(std::vector<double> xs, double q) {
  if (xs.empty()) throw std::invalid_argument("percentile: empty sample");
  if (q < 0.0 || q > 100.0) throw std::invalid_argument("percentile: q out of range");
  std::sort(xs.begin(), xs.end());
  const double rank = q / 100.0 * static_cast<double>(xs.size());
  std::size_t idx = rank <= 1.0 ? 0 : static_cast<std::size_t>(std::ceil(rank)) - 1;
  if (idx >= xs.size()) idx = xs.size() - 1;
  return xs[idx];
}

}  // namespace conewave
