#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "conewave/vec.hpp"

namespace conewave {

/// Characteristic boundary data: y_plus(m) = Y(m, 0), y_minus(n) = Y(0, n).
/// The junction y_plus[0] = y_minus[0] must hold bitwise.
struct BoundaryPair {
  std::vector<Vec> y_plus;
  std::vector<Vec> y_minus;

  std::size_t steps_plus() const { return y_plus.size() - 1; }    // M
  std::size_t steps_minus() const { return y_minus.size() - 1; }  // N
  std::size_t ambient_dim() const { return y_plus.empty() ? 0 : y_plus[0].size(); }

  /// Throws ValidationError on empty sides, mixed dimensions, non-unit
  /// entries (tolerance unit_tol), or a junction mismatch.
  void validate(double unit_tol = 1e-12) const;
};

/// Smooth boundary curve u -> S^d used by presets and convergence studies.
using BoundaryFn = std::function<Vec(double)>;

/// Samples the curves at the dyadic mesh: side length 2^{mesh_exp+window_exp}
/// steps, point j at parameter j * 2^{-mesh_exp}. The two curves must agree
/// at 0; the shared value is stored once and copied bitwise.
BoundaryPair boundary_from_functions(const BoundaryFn& phi_plus, const BoundaryFn& phi_minus,
                                     int mesh_exp, int window_exp);

/// Named smooth presets:
///   "constant"                 any d: both sides pinned at e0
///   "circle-sin"               d=1 angles: theta_plus(u) = sin u, theta_minus(v) = v/2
///   "great-circle-precession"  d=2: precessing great circles sharing base point e0
/// Throws std::invalid_argument for unknown names or unsupported d.
std::pair<BoundaryFn, BoundaryFn> preset_boundary(const std::string& name, int sphere_dim);

}  // namespace conewave
