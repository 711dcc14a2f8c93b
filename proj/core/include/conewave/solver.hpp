#pragma once

#include <memory>

#include "conewave/boundary.hpp"
#include "conewave/grid.hpp"
#include "conewave/parallel.hpp"

namespace conewave {

struct SolveOptions {
  const ForcingGrid* forcing = nullptr;  // null = zero forcing
  bool renormalize = false;              // scale each new cell back to unit length
  ThreadPool* pool = nullptr;            // null = serial
};

/// Fills the (M+1)x(N+1) grid by the reflection recursion
///   Y(m, n) = R_{Y(m,n-1) + Y(m-1,n)} Y(m-1, n-1) + F_e(m-1, n-1),
/// column 0 = y_plus, row 0 = y_minus. Cells on an anti-diagonal are
/// independent, so the wavefront is parallelized; the result does not depend
/// on the schedule. Throws std::invalid_argument on forcing size mismatch.
DiscreteField solve(const BoundaryPair& boundary, const SolveOptions& opts = {});

/// Closed form for the linear lattice problem delta_m delta_n Y = F:
///   Y(m, n) = Y_+(m) + Y_-(n) - Y_+(0) + sum_{j<m, k<n} F(j, k).
/// Boundary values here are arbitrary ambient vectors.
Grid solve_linear(const std::vector<Vec>& y_plus, const std::vector<Vec>& y_minus,
                  const ForcingGrid* forcing = nullptr);

/// Exact step-length identities of the zero-forcing recursion:
///   |Y(m+1,n+1) - Y(m,n+1)| = |Y(m+1,n) - Y(m,n)|   (dm deviation)
///   |Y(m+1,n+1) - Y(m+1,n)| = |Y(m,n+1) - Y(m,n)|   (dn deviation)
/// max_norm_drift is max | |Y(m,n)| - 1 |. All zero in real arithmetic; the
/// report measures rounding accumulation.
struct ConservationReport {
  double max_dm_dev = 0.0;
  double max_dn_dev = 0.0;
  double max_norm_drift = 0.0;
};

ConservationReport conservation_report(const DiscreteField& field);

/// Same numbers without materializing the field: two-row streaming recursion,
/// memory O(N) instead of O(MN).
ConservationReport conservation_scan(const BoundaryPair& boundary, const SolveOptions& opts = {});

/// Piecewise-bilinear extension of a solved field, rescaled to continuum null
/// coordinates: eval(u, v) interpolates lattice position (2^N (u-u0), 2^N (v-v0)).
/// Exact at lattice points; between them the value is a convex combination of
/// the four cell corners. eval throws std::domain_error outside the window.
class InterpolatedField {
 public:
  InterpolatedField(DiscreteField field, int mesh_exp, double u0 = 0.0, double v0 = 0.0);

  Vec eval(double u, double v) const;

  int mesh_exp() const { return mesh_exp_; }
  double mesh() const { return mesh_; }
  double u_min() const { return u0_; }
  double v_min() const { return v0_; }
  double u_max() const { return u0_ + mesh_ * static_cast<double>(field_->rows() - 1); }
  double v_max() const { return v0_ + mesh_ * static_cast<double>(field_->cols() - 1); }
  const DiscreteField& field() const { return *field_; }

 private:
  std::shared_ptr<const DiscreteField> field_;
  int mesh_exp_;
  double mesh_;
  double u0_, v0_;
};

/// Approximation operator at mesh 2^{-N}: sample (or take) boundary data,
/// solve, wrap in the rescaled extension over the window [0, 2^L]^2.
InterpolatedField phi_n(const BoundaryPair& boundary, int mesh_exp, const SolveOptions& opts = {});
InterpolatedField phi_n(const BoundaryFn& phi_plus, const BoundaryFn& phi_minus, int mesh_exp,
                        int window_exp, const SolveOptions& opts = {});

/// Solves with and without the perturbation (forcing eps * shape, and/or a
/// perturbed copy of the boundary) and reports the sup cell-wise chordal
/// difference plus the linear-response ratio sup_diff / eps (0 when eps = 0).
struct PerturbationResult {
  double sup_diff = 0.0;
  double ratio = 0.0;
};

PerturbationResult perturbation_experiment(const BoundaryPair& boundary, double eps,
                                           const ForcingGrid* shape = nullptr,
                                           const BoundaryPair* perturbed_boundary = nullptr,
                                           ThreadPool* pool = nullptr);

}  // namespace conewave
