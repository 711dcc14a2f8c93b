#include "conewave/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conewave {

Vec reflect_across(const Vec& axis, const Vec& p) {
  if (!axis.all_finite() || !p.all_finite())
    throw std::invalid_argument("reflect_across: non-finite input");
  const double q2 = axis.norm_sq();
  if (std::sqrt(q2) <= kAxisZeroTol) return -p;
  const double c = 2.0 * dot(axis, p) / q2;
  Vec r = p;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = c * axis[i] - p[i];
  return r;
}

Vec wave_step(const Vec& p, const Vec& q, const Vec& s, bool renormalize) {
  Vec out = reflect_across(p + q, s);
  if (renormalize) {
    const double n = out.norm();
    if (n > 0.0) out *= 1.0 / n;
  }
  return out;
}

Vec invert_in_sphere(const Vec& q) {
  const double n2 = q.norm_sq();
  if (std::sqrt(n2) <= kAxisZeroTol)
    throw std::domain_error("invert_in_sphere: degenerate axis");
  Vec r = q;
  r *= 1.0 / n2;
  return r;
}

Vec wave_step_expanded(const Vec& p, const Vec& q, const Vec& s) {
  const Vec axis = p + q;
  const double coef = 2.0 * dot(s - p, s - q);
  return p + q - s - coef * invert_in_sphere(axis);
}

Vec exp_map(const Vec& x, const Vec& v) {
  // project onto the tangent space at x; guards against drift in callers
  Vec w = v - dot(v, x) * x;
  const double r = w.norm();
  if (r < 1e-15) return x;
  return std::cos(r) * x + (std::sin(r) / r) * w;
}

SphereDistances distances(const Vec& x, const Vec& y) {
  double c = dot(x, y);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return SphereDistances{(x - y).norm(), std::acos(c)};
}

std::pair<double, double> null_coords(double t, double x) {
  if (std::abs(x) > t) throw std::domain_error("null_coords: point outside the cone");
  return {t + x, t - x};
}

std::pair<double, double> from_null(double u, double v) {
  return {0.5 * (u + v), 0.5 * (u - v)};
}

double angle_of(const Vec& p) {
  if (p.size() != 2) throw std::invalid_argument("angle_of: expects R^2");
  return std::atan2(p[1], p[0]);
}

Vec unit_from_angle(double theta) { return Vec{std::cos(theta), std::sin(theta)}; }

double wrap_angle(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(theta, two_pi);  // (-pi, pi], up to sign of pi
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

}  // namespace conewave
