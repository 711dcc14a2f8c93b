#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "conewave/grid.hpp"
#include "conewave/parallel.hpp"
#include "conewave/rng.hpp"
#include "conewave/sampling.hpp"
#include "conewave/solver.hpp"

namespace conewave {

/// Levy-type modulus h(rho) = sqrt(-rho log rho) for rho in (0, e^{-1}],
/// capped at its maximum e^{-1/2} for rho >= e^{-1}. Throws std::domain_error
/// for rho <= 0.
double h_modulus(double rho);

/// Monotone lattice path from the upper-left corner (0, N) to the lower-right
/// corner (M, 0); each step is (m+1, n) or (m, n-1). Light-like in the
/// original coordinates.
struct StaircasePath {
  std::vector<std::pair<std::size_t, std::size_t>> coords;

  /// Throws std::invalid_argument unless the path is a valid staircase for an
  /// (M+1)x(N+1) field.
  void validate(std::size_t steps_m, std::size_t steps_n) const;

  /// Down the left edge then across the bottom: visits the boundary data.
  static StaircasePath boundary(std::size_t steps_m, std::size_t steps_n);
  /// Alternates right and down starting with right.
  static StaircasePath diagonal(std::size_t steps_m, std::size_t steps_n);
  /// Across the top edge then down the right edge: visits Y(M, N).
  static StaircasePath right_then_down(std::size_t steps_m, std::size_t steps_n);
};

/// Field values along the path, in path order.
std::vector<Vec> extract_path(const DiscreteField& field, const StaircasePath& path);

/// Negative controls for the invariance tests.
enum class Corruption {
  kNone,
  /// Interior update copies its n-predecessor instead of reflecting: puts an
  /// atom at zero into path increments. (Replacing the reflection by the
  /// identity on the diagonal argument is not detectable: it reproduces the
  /// boundary chain along every staircase path.)
  kIdentityStep,
  /// Both boundary sides grow as independent chains out of a junction pinned
  /// at e0 instead of one stationary chain through a uniform junction: probe
  /// marginals spread with lattice distance from the corner.
  kNonstationaryBoundary,
};

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;  // reject when statistic exceeds it
  bool pass = false;
};

/// Outcome of one statistical or deterministic test battery; a deterministic
/// function of (seed, params).
struct StatsReport {
  std::string test;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass = false;

  void add(const std::string& name, double statistic, double threshold, bool ok);
  void finish();  // pass = conjunction of checks
};

/// Staircase-path invariance: for each path, pools increments of consecutive
/// path points over replicas of Brownian-boundary fields. d = 1 (exact
/// sampler): signed angle increments against the wrapped N(0, 2^{-N}) by
/// one-sample KS plus a lag-1 autocorrelation bound |r| <= 4/sqrt(pool).
/// d >= 2: chordal step lengths against an equal-size pool of fresh sampler
/// steps by two-sample KS (the walk kernel is rotation-invariant, so path
/// steps match it exactly in law). alpha = 0.01 Bonferroni over paths.
/// At d = 1 angle additivity makes the pooled increment multiset identical
/// across paths (only the order differs), so the per-path KS statistics
/// coincide; the lag-1 statistic still depends on the path.
StatsReport chain_invariance_test(std::size_t replicas, int mesh_exp, int window_exp,
                                  int sphere_dim, const std::vector<StaircasePath>& paths,
                                  std::uint64_t seed,
                                  Corruption corruption = Corruption::kNone,
                                  ThreadPool* pool = nullptr);

/// Marginal/joint distribution match between a probe tuple and its translate
/// by `offset`: replicas are split into independent halves, the first
/// evaluated at the probes, the second at the offset probes; per-statistic
/// two-sample KS at alpha = 0.01 Bonferroni. Statistics: every pairwise dot
/// product of probe values and every probe's first coordinate.
StatsReport translation_invariance_test(std::size_t replicas, int mesh_exp, int window_exp,
                                        int sphere_dim,
                                        std::pair<std::size_t, std::size_t> offset,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& probes,
                                        std::uint64_t seed,
                                        Corruption corruption = Corruption::kNone,
                                        ThreadPool* pool = nullptr);

/// Modulus-of-continuity diagnostics of one solved field against
/// h(2^{-N} (|dm| + |dn|)).
struct ModulusReport {
  int mesh_exp = 0;
  int window_exp = 0;
  /// per_scale_m[M0] = max_{j,k} |Y((j+1)2^{M0}, k 2^{M0}) - Y(j 2^{M0}, k 2^{M0})| / h(2^{M0-N}),
  /// M0 = 0..N-3; per_scale_n is the transposed quantity.
  std::vector<double> per_scale_m;
  std::vector<double> per_scale_n;
  /// Max ratio over the dyadic scales and a subsampled set of general pairs.
  double sup_ratio = 0.0;
};

/// Field must be square with side 2^{N+L}+1. pair_samples random pairs
/// supplement the exact per-scale maxima; the subsample stream is fixed by
/// pair_seed so reports are reproducible.
ModulusReport modulus_report(const DiscreteField& field, int mesh_exp, int window_exp,
                             std::size_t pair_samples = 1000000,
                             std::uint64_t pair_seed = 0x636f6e65);

/// Empirical tail A -> P(sup_ratio >= 32 A) over an ensemble of reports.
struct TailCurve {
  std::vector<double> a_grid;
  std::vector<double> probability;
};
TailCurve modulus_tail_curve(const std::vector<ModulusReport>& ensemble,
                             const std::vector<double>& a_grid);

/// Sup-norm error of phi_N against a reference on a shared evaluation grid
/// of spacing 2^{-eval_exp} covering the window [0, 2^L]^2. d = 1 compares
/// against the exact additive-angle solution of the sampled boundary; d >= 2
/// against phi_{reference_exp} (self-convergence).
struct ConvergenceRow {
  int mesh_exp = 0;
  double sup_err = 0.0;
};
std::vector<ConvergenceRow> convergence_study(const BoundaryFn& phi_plus,
                                              const BoundaryFn& phi_minus, int sphere_dim,
                                              int mesh_exp_begin, int mesh_exp_end,
                                              int window_exp, int eval_exp,
                                              int reference_exp = 0, ThreadPool* pool = nullptr);

/// Exploratory slice statistics on psi(T, x) = phi(T+x, T-x): backward mesh
/// quotients a = dY/sqrt(t) in m and b in n combine into proxies a+b (time
/// derivative) and a-b (space derivative). Reported per-component variances
/// should sit near 2 and the correlations near 0 if the white-noise heuristic
/// holds. Feeds no acceptance criterion.
struct GibbsSliceReport {
  double var_t_proxy = 0.0;
  double var_x_proxy = 0.0;
  double lag1_x = 0.0;
  double cross_corr = 0.0;
  std::size_t points = 0;
};

/// T and spacing are snapped to the mesh; the slice must keep one mesh step
/// of margin inside the window (throws std::domain_error otherwise).
GibbsSliceReport gibbs_slice_diagnostic(const InterpolatedField& field, double T, double spacing);

/// Pools slice quotients over an ensemble of fields (same statistics as the
/// single-field report).
GibbsSliceReport gibbs_slice_ensemble(const std::vector<InterpolatedField>& fields, double T,
                                      double spacing);

}  // namespace conewave
