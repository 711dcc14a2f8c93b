#include "conewave/heat_kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conewave/geometry.hpp"
#include "conewave/sampling.hpp"

// The d=2 Legendre series cancels catastrophically near the antipode: the
// kernel value there (~1e-21 at t=0.1) sits far below the double-precision
// noise of its O(1) terms. The series is therefore accumulated in quad
// precision where the compiler provides __float128, long double otherwise.
#if defined(__SIZEOF_FLOAT128__) && !defined(CONEWAVE_NO_FLOAT128)
#include <quadmath.h>
namespace {
using wide_t = __float128;
inline wide_t wide_exp(wide_t x) { return expq(x); }
}  // namespace
#else
namespace {
using wide_t = long double;
inline wide_t wide_exp(wide_t x) { return expl(x); }
}  // namespace
#endif

namespace conewave {
namespace {

// two-double representation of pi, accurate to ~1e-33 in wide_t
const wide_t kWidePi = static_cast<wide_t>(3.141592653589793) +
                       static_cast<wide_t>(1.2246467991473532e-16);

// d = 1: wrapped Gaussian with variance t at angle difference delta in (-pi, pi].
// Small t: periodized-Gaussian images (all terms positive, no cancellation).
// Large t: cosine series (1 + 2 sum e^{-l^2 t/2} cos l delta) / 2pi.
double circle_density(double t, double delta, int truncation) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (t < 1.0) {
    const double inv = 1.0 / std::sqrt(two_pi * t);
    double sum = std::exp(-delta * delta / (2.0 * t));
    for (int k = 1;; ++k) {
      if (truncation > 0 && k > truncation) break;
      const double a = delta + two_pi * k;
      const double b = delta - two_pi * k;
      const double add = std::exp(-a * a / (2.0 * t)) + std::exp(-b * b / (2.0 * t));
      sum += add;
      if (truncation == 0 && k >= 2 && add < sum * 1e-20) break;
      if (k > 64) break;  // unreachable for t < 1; safety stop
    }
    return inv * sum;
  }
  double sum = 1.0;
  for (int l = 1;; ++l) {
    if (truncation > 0 && l > truncation) break;
    const double damp = std::exp(-0.5 * static_cast<double>(l) * l * t);
    sum += 2.0 * damp * std::cos(l * delta);
    if (truncation == 0 && damp < 1e-20) break;
    if (l > 4096) break;
  }
  return sum / two_pi;
}

// d = 2: sum_l (2l+1)/(4pi) e^{-l(l+1)t/2} P_l(c), wide accumulation.
// e^{-l(l+1)t/2} is carried as an exact integer power of q = e^{-t/2}.
double sphere2_density(double t, double c, int truncation) {
  const wide_t wc = static_cast<wide_t>(c);
  const wide_t q2 = wide_exp(static_cast<wide_t>(-t));  // q^2
  const wide_t inv4pi = 1 / (4 * kWidePi);

  wide_t coef = 1;      // e^{-l(l+1)t/2} at l = 0
  wide_t step = q2;     // q^{2(l+1)}: multiplier from l to l+1
  wide_t p_prev = 0;    // P_{-1} (unused at l=0)
  wide_t p_cur = 1;     // P_0
  wide_t sum = inv4pi;  // l = 0 term

  const int hard_cap = 200000;
  for (int l = 1; l <= hard_cap; ++l) {
    coef *= step;
    step *= q2;
    const wide_t p_next =
        ((2 * l - 1) * wc * p_cur - (l - 1) * p_prev) / static_cast<wide_t>(l);
    p_prev = p_cur;
    p_cur = p_next;
    sum += (2 * l + 1) * inv4pi * coef * p_cur;
    if (truncation > 0) {
      if (l >= truncation) break;
    } else if (l >= 12 && (2 * l + 1) * coef < static_cast<wide_t>(1e-40)) {
      break;  // |P_l| <= 1: dropped tail is far below the 1e-10 contract
    }
  }
  return static_cast<double>(sum);
}

}  // namespace

double heat_kernel_density(double t, const Vec& x, const Vec& y, int truncation) {
  if (!(t > 0.0)) throw std::domain_error("heat_kernel_density: t must be positive");
  if (truncation < 0) throw std::invalid_argument("heat_kernel_density: negative truncation");
  if (x.size() != y.size()) throw std::invalid_argument("heat_kernel_density: dimension mismatch");
  const std::size_t d = x.size() - 1;
  if (d == 1) return circle_density(t, wrap_angle(angle_of(x) - angle_of(y)), truncation);
  if (d == 2) {
    double c = dot(x, y);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return sphere2_density(t, c, truncation);
  }
  throw std::invalid_argument("heat_kernel_density: unsupported dimension");
}

double kernel_reflection_identity_check(double t, int sphere_dim, std::size_t trials,
                                        RngStream& rng, int truncation) {
  if (!(t > 0.0)) throw std::domain_error("kernel_reflection_identity_check: t must be positive");
  double max_rel = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const Vec p = uniform_point(rng, sphere_dim);
    const Vec q = uniform_point(rng, sphere_dim);
    const Vec s = uniform_point(rng, sphere_dim);
    const Vec r = wave_step(p, q, s);
    const double lhs =
        heat_kernel_density(t, p, r, truncation) * heat_kernel_density(t, r, q, truncation);
    const double rhs =
        heat_kernel_density(t, p, s, truncation) * heat_kernel_density(t, s, q, truncation);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale > 0.0) max_rel = std::max(max_rel, std::abs(lhs - rhs) / scale);
  }
  return max_rel;
}

}  // namespace conewave
