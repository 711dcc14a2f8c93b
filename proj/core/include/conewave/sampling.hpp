#pragma once

#include <optional>
#include <vector>

#include "conewave/boundary.hpp"
#include "conewave/rng.hpp"
#include "conewave/vec.hpp"

namespace conewave {

enum class SamplerMethod {
  kExactWrap,     // d = 1 only: wrapped Gaussian angle increment, exact
  kGeodesicWalk,  // any d: K tangent-Gaussian substeps, weak bias O(t/K)
};

/// Parameters of one heat-kernel transition with time step t (generator
/// Laplace-Beltrami over 2, so the d=1 kernel is the wrapped N(0, t)).
struct HeatChainParams {
  double t = 0.0;
  int sphere_dim = 1;
  SamplerMethod method = SamplerMethod::kExactWrap;
  int substeps = 64;  // geodesic walk refinement K

  /// Throws std::invalid_argument: t <= 0, d < 1, exact-wrap with d != 1,
  /// or substeps < 1.
  void validate() const;
};

/// Uniform draw on S^d: normalized standard Gaussian in R^{d+1}.
Vec uniform_point(RngStream& rng, int sphere_dim);

/// One transition of the heat Markov chain started at unit x.
Vec heat_step(const Vec& x, const HeatChainParams& params, RngStream& rng);

/// Chain X(0) = x0, X(k+1) = heat_step(X(k)); returns length+1 points.
std::vector<Vec> sample_heat_chain(const Vec& x0, const HeatChainParams& params,
                                   std::size_t length, RngStream& rng);

/// Brownian boundary pair at mesh 2^{-mesh_exp}: one stationary heat chain
/// c(0..2K), K = 2^{mesh_exp+window_exp}, started uniform, folded at the
/// midpoint: y_minus(j) = c(K - j), y_plus(m) = c(K + m). The junction is the
/// same array element, so y_plus[0] == y_minus[0] bitwise.
/// method defaults to exact-wrap at d = 1 and the geodesic walk otherwise.
BoundaryPair sample_brownian_boundary(int mesh_exp, int window_exp, int sphere_dim,
                                      RngStream& rng,
                                      std::optional<SamplerMethod> method = std::nullopt,
                                      int substeps = 64);

}  // namespace conewave
