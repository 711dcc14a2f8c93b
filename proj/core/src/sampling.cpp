#include "conewave/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "conewave/geometry.hpp"

namespace conewave {

void HeatChainParams::validate() const {
  if (!(t > 0.0)) throw std::invalid_argument("HeatChainParams: t must be positive");
  if (sphere_dim < 1) throw std::invalid_argument("HeatChainParams: sphere_dim must be >= 1");
  if (sphere_dim + 1 > static_cast<int>(Vec::kMaxLen))
    throw std::invalid_argument("HeatChainParams: sphere_dim too large");
  if (method == SamplerMethod::kExactWrap && sphere_dim != 1)
    throw std::invalid_argument("HeatChainParams: exact-wrap requires d = 1");
  if (substeps < 1) throw std::invalid_argument("HeatChainParams: substeps must be >= 1");
}

Vec uniform_point(RngStream& rng, int sphere_dim) {
  if (sphere_dim < 1 || sphere_dim + 1 > static_cast<int>(Vec::kMaxLen))
    throw std::invalid_argument("uniform_point: unsupported sphere dimension");
  const std::size_t n = static_cast<std::size_t>(sphere_dim) + 1;
  for (;;) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.normal();
    const double r = v.norm();
    if (r > 1e-8) return v *= 1.0 / r;
  }
}

Vec heat_step(const Vec& x, const HeatChainParams& params, RngStream& rng) {
  params.validate();
  if (x.size() != static_cast<std::size_t>(params.sphere_dim) + 1)
    throw std::invalid_argument("heat_step: point dimension mismatch");

  if (params.method == SamplerMethod::kExactWrap) {
    // wrapped Gaussian with variance t: exactly the 1/2-Laplacian kernel on S^1
    const double theta = angle_of(x) + std::sqrt(params.t) * rng.normal();
    return unit_from_angle(theta);
  }

  const double sub_sd = std::sqrt(params.t / static_cast<double>(params.substeps));
  Vec y = x;
  for (int k = 0; k < params.substeps; ++k) {
    Vec g(y.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = sub_sd * rng.normal();
    // projecting an isotropic ambient Gaussian gives covariance (t/K) I on the tangent plane
    y = exp_map(y, g - dot(g, y) * y);
  }
  return y;
}

std::vector<Vec> sample_heat_chain(const Vec& x0, const HeatChainParams& params,
                                   std::size_t length, RngStream& rng) {
  std::vector<Vec> chain;
  chain.reserve(length + 1);
  chain.push_back(x0);
  for (std::size_t k = 0; k < length; ++k) chain.push_back(heat_step(chain.back(), params, rng));
  return chain;
}

BoundaryPair sample_brownian_boundary(int mesh_exp, int window_exp, int sphere_dim,
                                      RngStream& rng, std::optional<SamplerMethod> method,
                                      int substeps) {
  if (mesh_exp < 0 || window_exp < 0 || mesh_exp + window_exp > 24)
    throw std::invalid_argument("sample_brownian_boundary: exponents out of range");
  HeatChainParams params;
  params.t = std::ldexp(1.0, -mesh_exp);
  params.sphere_dim = sphere_dim;
  params.method = method.value_or(sphere_dim == 1 ? SamplerMethod::kExactWrap
                                                  : SamplerMethod::kGeodesicWalk);
  params.substeps = substeps;
  params.validate();

  const std::size_t half = std::size_t{1} << (mesh_exp + window_exp);
  // one stationary chain through the junction; the midpoint is uniform
  const std::vector<Vec> chain =
      sample_heat_chain(uniform_point(rng, sphere_dim), params, 2 * half, rng);

  BoundaryPair b;
  b.y_minus.reserve(half + 1);
  b.y_plus.reserve(half + 1);
  for (std::size_t j = 0; j <= half; ++j) b.y_minus.push_back(chain[half - j]);
  for (std::size_t m = 0; m <= half; ++m) b.y_plus.push_back(chain[half + m]);
  return b;
}

}  // namespace conewave
