#include "conewave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "conewave/geometry.hpp"
#include "conewave/stats.hpp"

namespace conewave {

double h_modulus(double rho) {
  if (!(rho > 0.0)) throw std::domain_error("h_modulus: rho must be positive");
  const double e_inv = std::exp(-1.0);
  if (rho >= e_inv) return std::exp(-0.5);
  return std::sqrt(-rho * std::log(rho));
}

void StaircasePath::validate(std::size_t steps_m, std::size_t steps_n) const {
  if (coords.size() != steps_m + steps_n + 1)
    throw std::invalid_argument("StaircasePath: wrong length");
  if (coords.front() != std::make_pair(std::size_t{0}, steps_n) ||
      coords.back() != std::make_pair(steps_m, std::size_t{0}))
    throw std::invalid_argument("StaircasePath: must run corner to corner");
  for (std::size_t j = 1; j < coords.size(); ++j) {
    const auto [pm, pn] = coords[j - 1];
    const auto [m, n] = coords[j];
    const bool right = (m == pm + 1 && n == pn);
    const bool down = (m == pm && pn == n + 1);
    if (!right && !down) throw std::invalid_argument("StaircasePath: invalid step");
    if (m > steps_m || n > steps_n) throw std::invalid_argument("StaircasePath: out of range");
  }
}

StaircasePath StaircasePath::boundary(std::size_t steps_m, std::size_t steps_n) {
  StaircasePath p;
  p.coords.reserve(steps_m + steps_n + 1);
  for (std::size_t n = steps_n;; --n) {
    p.coords.emplace_back(0, n);
    if (n == 0) break;
  }
  for (std::size_t m = 1; m <= steps_m; ++m) p.coords.emplace_back(m, 0);
  return p;
}

StaircasePath StaircasePath::diagonal(std::size_t steps_m, std::size_t steps_n) {
  StaircasePath p;
  p.coords.reserve(steps_m + steps_n + 1);
  std::size_t m = 0, n = steps_n;
  p.coords.emplace_back(m, n);
  while (m < steps_m || n > 0) {
    if (m < steps_m) p.coords.emplace_back(++m, n);
    if (n > 0) p.coords.emplace_back(m, --n);
  }
  return p;
}

StaircasePath StaircasePath::right_then_down(std::size_t steps_m, std::size_t steps_n) {
  StaircasePath p;
  p.coords.reserve(steps_m + steps_n + 1);
  for (std::size_t m = 0; m <= steps_m; ++m) p.coords.emplace_back(m, steps_n);
  for (std::size_t n = steps_n; n-- > 0;) p.coords.emplace_back(steps_m, n);
  return p;
}

std::vector<Vec> extract_path(const DiscreteField& field, const StaircasePath& path) {
  path.validate(field.rows() - 1, field.cols() - 1);
  std::vector<Vec> out;
  out.reserve(path.coords.size());
  for (const auto& [m, n] : path.coords) out.push_back(field.get(m, n));
  return out;
}

void StatsReport::add(const std::string& name, double statistic, double threshold, bool ok) {
  checks.push_back(CheckResult{name, statistic, threshold, ok});
}

void StatsReport::finish() {
  pass = true;
  for (const CheckResult& c : checks) pass = pass && c.pass;
}

namespace {

// interior update replaced by a copy of the n-predecessor (negative control)
DiscreteField solve_identity_corrupted(const BoundaryPair& b) {
  const std::size_t rows = b.y_plus.size(), cols = b.y_minus.size(), dim = b.ambient_dim();
  DiscreteField f(rows, cols, dim);
  for (std::size_t m = 0; m < rows; ++m) f.set(m, 0, b.y_plus[m]);
  for (std::size_t n = 0; n < cols; ++n) f.set(0, n, b.y_minus[n]);
  for (std::size_t m = 1; m < rows; ++m)
    for (std::size_t n = 1; n < cols; ++n) {
      const double* src = f.at(m, n - 1);
      double* dst = f.at(m, n);
      for (std::size_t i = 0; i < dim; ++i) dst[i] = src[i];
    }
  return f;
}

BoundaryPair sample_boundary_for_test(int mesh_exp, int window_exp, int sphere_dim,
                                      RngStream& rng, Corruption corruption) {
  if (corruption != Corruption::kNonstationaryBoundary)
    return sample_brownian_boundary(mesh_exp, window_exp, sphere_dim, rng);
  HeatChainParams params;
  params.t = std::ldexp(1.0, -mesh_exp);
  params.sphere_dim = sphere_dim;
  params.method =
      sphere_dim == 1 ? SamplerMethod::kExactWrap : SamplerMethod::kGeodesicWalk;
  const std::size_t half = std::size_t{1} << (mesh_exp + window_exp);
  // junction pinned at e0, each side an independent chain from it: probe
  // marginals spread with m+n instead of being stationary. (Pinning a chain
  // END is not enough: from an end-anchored chain the field marginal at (m,n)
  // depends only on m-n, which a diagonal offset preserves.)
  const Vec start = Vec::basis0(static_cast<std::size_t>(sphere_dim) + 1);
  BoundaryPair b;
  b.y_minus = sample_heat_chain(start, params, half, rng);
  b.y_plus = sample_heat_chain(start, params, half, rng);
  return b;
}

DiscreteField solve_for_test(const BoundaryPair& b, Corruption corruption) {
  if (corruption == Corruption::kIdentityStep) return solve_identity_corrupted(b);
  return solve(b);
}

const char* corruption_name(Corruption c) {
  switch (c) {
    case Corruption::kIdentityStep: return "identity-step";
    case Corruption::kNonstationaryBoundary: return "nonstationary-boundary";
    default: return "none";
  }
}

void run_replicas(std::size_t replicas, ThreadPool* pool,
                  const std::function<void(std::size_t)>& body) {
  if (pool && pool->size() > 1) {
    pool->parallel_for(replicas, body);
  } else {
    for (std::size_t r = 0; r < replicas; ++r) body(r);
  }
}

}  // namespace

StatsReport chain_invariance_test(std::size_t replicas, int mesh_exp, int window_exp,
                                  int sphere_dim, const std::vector<StaircasePath>& paths,
                                  std::uint64_t seed, Corruption corruption, ThreadPool* pool) {
  if (replicas == 0 || paths.empty())
    throw std::invalid_argument("chain_invariance_test: empty configuration");
  const std::size_t side = std::size_t{1} << (mesh_exp + window_exp);
  for (const StaircasePath& p : paths) p.validate(side, side);
  const double t = std::ldexp(1.0, -mesh_exp);
  const std::size_t steps = 2 * side;

  // per replica and path, the increment sequence along the path
  std::vector<std::vector<std::vector<double>>> incr(
      replicas, std::vector<std::vector<double>>(paths.size()));
  std::vector<std::vector<double>> ref_steps(sphere_dim > 1 ? replicas : 0);

  run_replicas(replicas, pool, [&](std::size_t r) {
    RngStream rng(seed, r);
    const BoundaryPair b =
        sample_boundary_for_test(mesh_exp, window_exp, sphere_dim, rng, corruption);
    const DiscreteField f = solve_for_test(b, corruption);
    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
      const std::vector<Vec> vals = extract_path(f, paths[pi]);
      std::vector<double>& out = incr[r][pi];
      out.reserve(vals.size() - 1);
      for (std::size_t j = 1; j < vals.size(); ++j) {
        if (sphere_dim == 1)
          out.push_back(wrap_angle(angle_of(vals[j]) - angle_of(vals[j - 1])));
        else
          out.push_back((vals[j] - vals[j - 1]).norm());
      }
    }
    if (sphere_dim > 1) {
      // independent pool of raw sampler steps, same chain length
      RngStream ref_rng(seed, replicas + r);
      HeatChainParams params;
      params.t = t;
      params.sphere_dim = sphere_dim;
      params.method = SamplerMethod::kGeodesicWalk;
      const auto chain = sample_heat_chain(uniform_point(ref_rng, sphere_dim), params,
                                           steps, ref_rng);
      std::vector<double>& out = ref_steps[r];
      out.reserve(steps);
      for (std::size_t j = 1; j < chain.size(); ++j)
        out.push_back((chain[j] - chain[j - 1]).norm());
    }
  });

  StatsReport report;
  report.test = "chain-invariance";
  report.params = {{"replicas", std::to_string(replicas)},
                   {"mesh_exp", std::to_string(mesh_exp)},
                   {"window_exp", std::to_string(window_exp)},
                   {"d", std::to_string(sphere_dim)},
                   {"paths", std::to_string(paths.size())},
                   {"corruption", corruption_name(corruption)}};
  report.seed = seed;

  const double alpha = 0.01 / static_cast<double>(paths.size());
  std::vector<double> reference;
  if (sphere_dim > 1) {
    for (const auto& v : ref_steps) reference.insert(reference.end(), v.begin(), v.end());
  }

  for (std::size_t pi = 0; pi < paths.size(); ++pi) {
    std::vector<double> pooled;
    pooled.reserve(replicas * steps);
    std::vector<double> lag_a, lag_b;  // consecutive pairs within replicas only
    lag_a.reserve(replicas * (steps - 1));
    lag_b.reserve(replicas * (steps - 1));
    for (std::size_t r = 0; r < replicas; ++r) {
      const std::vector<double>& v = incr[r][pi];
      pooled.insert(pooled.end(), v.begin(), v.end());
      for (std::size_t j = 1; j < v.size(); ++j) {
        lag_a.push_back(v[j - 1]);
        lag_b.push_back(v[j]);
      }
    }
    const std::string tag = ":path" + std::to_string(pi);
    double d_stat, d_crit;
    if (sphere_dim == 1) {
      d_stat = ks_statistic(pooled, [t](double x) { return wrapped_normal_cdf(x, t); });
      d_crit = ks_critical(alpha, pooled.size());
    } else {
      d_stat = ks_statistic_two_sample(pooled, reference);
      d_crit = ks_critical_two_sample(alpha, pooled.size(), reference.size());
    }
    report.add("ks" + tag, d_stat, d_crit, d_stat <= d_crit);
    const double r1 = correlation(lag_a, lag_b);
    const double r1_max = 4.0 / std::sqrt(static_cast<double>(pooled.size()));
    report.add("lag1" + tag, std::abs(r1), r1_max, std::abs(r1) <= r1_max);
  }
  report.finish();
  return report;
}

StatsReport translation_invariance_test(std::size_t replicas, int mesh_exp, int window_exp,
                                        int sphere_dim,
                                        std::pair<std::size_t, std::size_t> offset,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& probes,
                                        std::uint64_t seed, Corruption corruption,
                                        ThreadPool* pool) {
  if (probes.empty()) throw std::invalid_argument("translation_invariance_test: no probes");
  if (replicas < 4) throw std::invalid_argument("translation_invariance_test: too few replicas");
  const std::size_t side = std::size_t{1} << (mesh_exp + window_exp);
  for (const auto& [pm, pn] : probes) {
    if (pm + offset.first > side || pn + offset.second > side)
      throw std::invalid_argument("translation_invariance_test: probe/offset outside grid");
  }

  const std::size_t k = probes.size();
  const std::size_t n_stats = k * (k - 1) / 2 + k;  // pairwise dots + first coords
  const std::size_t half = replicas / 2;

  std::vector<std::vector<double>> stats(replicas, std::vector<double>(n_stats));
  run_replicas(replicas, pool, [&](std::size_t r) {
    RngStream rng(seed, r);
    const BoundaryPair b =
        sample_boundary_for_test(mesh_exp, window_exp, sphere_dim, rng, corruption);
    const DiscreteField f = solve_for_test(b, corruption);
    // first half of the replicas reads the probes, second half their translate
    const bool shifted = r >= half;
    std::vector<Vec> vals;
    vals.reserve(k);
    for (const auto& [pm, pn] : probes)
      vals.push_back(f.get(pm + (shifted ? offset.first : 0),
                           pn + (shifted ? offset.second : 0)));
    std::size_t s = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) stats[r][s++] = dot(vals[i], vals[j]);
    for (std::size_t i = 0; i < k; ++i) stats[r][s++] = vals[i][0];
  });

  StatsReport report;
  report.test = "translation-invariance";
  report.params = {{"replicas", std::to_string(replicas)},
                   {"mesh_exp", std::to_string(mesh_exp)},
                   {"window_exp", std::to_string(window_exp)},
                   {"d", std::to_string(sphere_dim)},
                   {"offset", std::to_string(offset.first) + "," + std::to_string(offset.second)},
                   {"corruption", corruption_name(corruption)}};
  report.seed = seed;

  const double alpha = 0.01 / static_cast<double>(n_stats);
  for (std::size_t s = 0; s < n_stats; ++s) {
    std::vector<double> base, shifted;
    base.reserve(half);
    shifted.reserve(replicas - half);
    for (std::size_t r = 0; r < half; ++r) base.push_back(stats[r][s]);
    for (std::size_t r = half; r < replicas; ++r) shifted.push_back(stats[r][s]);
    const double d_stat = ks_statistic_two_sample(base, shifted);
    const double d_crit = ks_critical_two_sample(alpha, base.size(), shifted.size());
    const std::string name =
        s < k * (k - 1) / 2 ? "ks:dot" + std::to_string(s) : "ks:coord" + std::to_string(s);
    report.add(name, d_stat, d_crit, d_stat <= d_crit);
  }
  report.finish();
  return report;
}

ModulusReport modulus_report(const DiscreteField& field, int mesh_exp, int window_exp,
                             std::size_t pair_samples, std::uint64_t pair_seed) {
  const std::size_t side = std::size_t{1} << (mesh_exp + window_exp);
  if (field.rows() != side + 1 || field.cols() != side + 1)
    throw std::invalid_argument("modulus_report: field must be 2^{N+L}+1 square");

  ModulusReport rep;
  rep.mesh_exp = mesh_exp;
  rep.window_exp = window_exp;
  const std::size_t dim = field.dim();

  auto dist = [&](std::size_t m1, std::size_t n1, std::size_t m2, std::size_t n2) {
    const double* a = field.at(m1, n1);
    const double* b = field.at(m2, n2);
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
    return std::sqrt(s);
  };

  // exact maxima on the dyadic scales the chaining argument controls
  for (int m0 = 0; m0 + 3 <= mesh_exp; ++m0) {
    const std::size_t stride = std::size_t{1} << m0;
    const double hval = h_modulus(std::ldexp(1.0, m0 - mesh_exp));
    double max_m = 0.0, max_n = 0.0;
    for (std::size_t j = 0; j + stride <= side; j += stride)
      for (std::size_t kk = 0; kk <= side; kk += stride) {
        max_m = std::max(max_m, dist(j + stride, kk, j, kk));
        max_n = std::max(max_n, dist(kk, j + stride, kk, j));
      }
    rep.per_scale_m.push_back(max_m / hval);
    rep.per_scale_n.push_back(max_n / hval);
  }

  double sup = 0.0;
  for (double v : rep.per_scale_m) sup = std::max(sup, v);
  for (double v : rep.per_scale_n) sup = std::max(sup, v);

  const double mesh = std::ldexp(1.0, -mesh_exp);
  RngStream prng(pair_seed, 0);
  for (std::size_t i = 0; i < pair_samples; ++i) {
    const std::size_t m1 = prng.next_u64() % (side + 1);
    const std::size_t n1 = prng.next_u64() % (side + 1);
    const std::size_t m2 = prng.next_u64() % (side + 1);
    const std::size_t n2 = prng.next_u64() % (side + 1);
    const std::size_t gap = (m1 > m2 ? m1 - m2 : m2 - m1) + (n1 > n2 ? n1 - n2 : n2 - n1);
    if (gap == 0) continue;
    sup = std::max(sup, dist(m1, n1, m2, n2) / h_modulus(mesh * static_cast<double>(gap)));
  }
  rep.sup_ratio = sup;
  return rep;
}

TailCurve modulus_tail_curve(const std::vector<ModulusReport>& ensemble,
                             const std::vector<double>& a_grid) {
  TailCurve curve;
  curve.a_grid = a_grid;
  curve.probability.reserve(a_grid.size());
  for (double a : a_grid) {
    std::size_t count = 0;
    for (const ModulusReport& r : ensemble)
      if (r.sup_ratio >= 32.0 * a) ++count;
    curve.probability.push_back(ensemble.empty()
                                    ? 0.0
                                    : static_cast<double>(count) / static_cast<double>(ensemble.size()));
  }
  return curve;
}

std::vector<ConvergenceRow> convergence_study(const BoundaryFn& phi_plus,
                                              const BoundaryFn& phi_minus, int sphere_dim,
                                              int mesh_exp_begin, int mesh_exp_end,
                                              int window_exp, int eval_exp, int reference_exp,
                                              ThreadPool* pool) {
  if (mesh_exp_begin > mesh_exp_end || mesh_exp_begin < 0)
    throw std::invalid_argument("convergence_study: bad mesh range");
  if (sphere_dim != 1 && reference_exp <= mesh_exp_end)
    throw std::invalid_argument("convergence_study: reference_exp must exceed the range");

  const std::size_t eval_side = (std::size_t{1} << (window_exp + eval_exp));
  const double eval_mesh = std::ldexp(1.0, -eval_exp);

  SolveOptions opts;
  opts.pool = pool;

  std::optional<InterpolatedField> reference;
  if (sphere_dim != 1)
    reference.emplace(phi_n(phi_plus, phi_minus, reference_exp, window_exp, opts));
  const double theta0 = sphere_dim == 1 ? angle_of(phi_plus(0.0)) : 0.0;

  std::vector<ConvergenceRow> rows;
  for (int n_exp = mesh_exp_begin; n_exp <= mesh_exp_end; ++n_exp) {
    const InterpolatedField fld = phi_n(phi_plus, phi_minus, n_exp, window_exp, opts);
    double err = 0.0;
    for (std::size_t i = 0; i <= eval_side; ++i)
      for (std::size_t j = 0; j <= eval_side; ++j) {
        const double u = static_cast<double>(i) * eval_mesh;
        const double v = static_cast<double>(j) * eval_mesh;
        const Vec got = fld.eval(u, v);
        const Vec want =
            sphere_dim == 1
                ? unit_from_angle(angle_of(phi_plus(u)) + angle_of(phi_minus(v)) - theta0)
                : reference->eval(u, v);
        err = std::max(err, (got - want).norm());
      }
    rows.push_back(ConvergenceRow{n_exp, err});
  }
  return rows;
}

namespace {

struct GibbsAccum {
  double sum_t2 = 0.0, sum_x2 = 0.0, sum_tx = 0.0;
  double lag_num = 0.0, lag_a2 = 0.0, lag_b2 = 0.0;
  std::size_t points = 0;

  void add_field(const InterpolatedField& field, double T, double spacing) {
    const DiscreteField& f = field.field();
    const double mesh = field.mesh();
    const std::size_t dim = f.dim();
    const auto k_t = static_cast<long long>(std::llround(T / mesh));
    auto s_steps = static_cast<long long>(std::llround(spacing / mesh));
    if (s_steps < 1) s_steps = 1;
    const long long rows = static_cast<long long>(f.rows());
    const long long cols = static_cast<long long>(f.cols());
    const long long m_lo = std::max(1LL, 2 * k_t - (cols - 1));
    const long long m_hi = std::min(rows - 1, 2 * k_t - 1);
    if (k_t < 1 || m_lo > m_hi)
      throw std::domain_error("gibbs_slice_diagnostic: slice outside window");

    const double inv_sqrt_t = 1.0 / std::sqrt(mesh);
    Vec prev_xp;
    bool have_prev = false;
    for (long long m = m_lo; m <= m_hi; m += s_steps) {
      const long long n = 2 * k_t - m;
      const Vec y = f.get(m, n);
      const Vec a = (y - f.get(m - 1, n)) * inv_sqrt_t;  // backward m-quotient
      const Vec b = (y - f.get(m, n - 1)) * inv_sqrt_t;  // backward n-quotient
      const Vec tp = a + b;
      const Vec xp = a - b;
      sum_t2 += tp.norm_sq();
      sum_x2 += xp.norm_sq();
      sum_tx += dot(tp, xp);
      ++points;
      if (have_prev) {
        lag_num += dot(prev_xp, xp);
        lag_a2 += prev_xp.norm_sq();
        lag_b2 += xp.norm_sq();
      }
      prev_xp = xp;
      have_prev = true;
    }
    (void)dim;
  }

  GibbsSliceReport report(std::size_t dim) const {
    GibbsSliceReport r;
    r.points = points;
    if (points == 0) return r;
    const double d = static_cast<double>(dim - 1);
    r.var_t_proxy = sum_t2 / (d * static_cast<double>(points));
    r.var_x_proxy = sum_x2 / (d * static_cast<double>(points));
    const double denom = std::sqrt(sum_t2 * sum_x2);
    r.cross_corr = denom > 0.0 ? sum_tx / denom : 0.0;
    const double lag_denom = std::sqrt(lag_a2 * lag_b2);
    r.lag1_x = lag_denom > 0.0 ? lag_num / lag_denom : 0.0;
    return r;
  }
};

}  // namespace

GibbsSliceReport gibbs_slice_diagnostic(const InterpolatedField& field, double T,
                                        double spacing) {
  GibbsAccum acc;
  acc.add_field(field, T, spacing);
  return acc.report(field.field().dim());
}

GibbsSliceReport gibbs_slice_ensemble(const std::vector<InterpolatedField>& fields, double T,
                                      double spacing) {
  if (fields.empty()) throw std::invalid_argument("gibbs_slice_ensemble: no fields");
  GibbsAccum acc;
  for (const InterpolatedField& f : fields) acc.add_field(f, T, spacing);
  return acc.report(fields.front().field().dim());
}

}  // namespace conewave
