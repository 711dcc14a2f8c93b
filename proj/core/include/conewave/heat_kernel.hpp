#pragma once

#include <cstddef>

#include "conewave/rng.hpp"
#include "conewave/vec.hpp"

namespace conewave {

/// Heat kernel p(t, x, y) on S^d for the generator ½Δ, supported for
/// d ∈ {1, 2}; x, y unit vectors in R^{d+1}.
///
/// d = 1: wrapped Gaussian with variance t in the angle difference, evaluated
/// from the periodized-Gaussian sum for small t and the cosine (spectral)
/// series for large t; the two agree to rounding at the crossover.
/// d = 2: Legendre series sum_{l<=truncation} (2l+1)/(4π) e^{-l(l+1)t/2} P_l(x·y).
///
/// truncation = 0 picks the smallest cutoff whose dropped tail is below 1e-10
/// (well below it for moderate t). Throws std::domain_error for t <= 0 and
/// std::invalid_argument for unsupported dimension or truncation < 0.
double heat_kernel_density(double t, const Vec& x, const Vec& y, int truncation = 0);

/// Max relative discrepancy of the two-sided product identity
///   p(t,P,R)·p(t,R,Q) = p(t,P,S)·p(t,S,Q),  R = wave_step(P,Q,S),
/// over `trials` uniform triples (P,Q,S) on S^d.
double kernel_reflection_identity_check(double t, int sphere_dim, std::size_t trials,
                                        RngStream& rng, int truncation = 0);

}  // namespace conewave
