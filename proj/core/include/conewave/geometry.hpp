#pragma once

#include <utility>

#include "conewave/vec.hpp"

namespace conewave {

/// Axis shorter than this is treated as exactly zero: the reflection
/// degenerates to the antipodal map s -> -s.
inline constexpr double kAxisZeroTol = 1e-14;

/// Reflection of p across the line through the origin spanned by axis:
///   R_q p = 2 (q.p / |q|^2) q - p,   R_0 p = -p.
/// Throws std::invalid_argument on non-finite input.
Vec reflect_across(const Vec& axis, const Vec& p);

/// One interior update of the discrete wave map,
///   new corner = R_{p+q} s,
/// where p, q are the two neighbors sharing an edge with the new corner and
/// s is the diagonal one. Exact consequences, used as test oracles:
/// |new - p| = |q - s| and |new - q| = |p - s|; unit p, q, s give unit output.
/// With renormalize set the result is scaled back to unit length.
Vec wave_step(const Vec& p, const Vec& q, const Vec& s, bool renormalize = false);

/// Inversion in the unit sphere, I(q) = q / |q|^2.
/// Throws std::domain_error when |q| <= kAxisZeroTol (degenerate axis).
Vec invert_in_sphere(const Vec& q);

/// Expanded form of the same update,
///   R_{p+q} s = p + q - s - 2 [(s-p).(s-q)] I(p+q),
/// valid away from antipodal p+q ~ 0. Kept as an independent route for
/// cross-checking wave_step; not used by the solver.
Vec wave_step_expanded(const Vec& p, const Vec& q, const Vec& s);

/// Geodesic exponential on S^d at base point x (unit). v is projected onto
/// the tangent space at x first; exp_x(v) = cos|v| x + sin|v| v/|v|.
Vec exp_map(const Vec& x, const Vec& v);

/// Chordal |x-y| and geodesic arccos(x.y) distances between unit vectors.
struct SphereDistances {
  double chordal;
  double geodesic;
};
SphereDistances distances(const Vec& x, const Vec& y);

/// Null coordinates u = t + x, v = t - x on the 1+1 cone, and the inverse.
/// null_coords throws std::domain_error outside the cone |x| > t.
std::pair<double, double> null_coords(double t, double x);
std::pair<double, double> from_null(double u, double v);

// Circle (d = 1) helpers. angle_of returns the argument in (-pi, pi];
// on the circle the wave map is additive in angles, which the d = 1
// oracle and the exact wrapped-Gaussian sampler both rely on.
double angle_of(const Vec& p);
Vec unit_from_angle(double theta);
double wrap_angle(double theta);  // into (-pi, pi]

}  // namespace conewave
