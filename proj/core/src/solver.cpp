#include "conewave/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "conewave/geometry.hpp"

namespace conewave {
namespace {

// Core cell update on raw storage: out = R_{p+q} s (+ forcing), optionally
// renormalized. p is the n-predecessor, q the m-predecessor, s the diagonal.
inline void reflect_cell(const double* p, const double* q, const double* s, const double* forcing,
                         bool renormalize, double* out, std::size_t dim) {
  double axis[Vec::kMaxLen];
  double a2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    axis[i] = p[i] + q[i];
    a2 += axis[i] * axis[i];
  }
  if (std::sqrt(a2) <= kAxisZeroTol) {
    for (std::size_t i = 0; i < dim; ++i) out[i] = -s[i];
  } else {
    double ds = 0.0;
    for (std::size_t i = 0; i < dim; ++i) ds += axis[i] * s[i];
    const double c = 2.0 * ds / a2;
    for (std::size_t i = 0; i < dim; ++i) out[i] = c * axis[i] - s[i];
  }
  if (forcing)
    for (std::size_t i = 0; i < dim; ++i) out[i] += forcing[i];
  if (renormalize) {
    double n2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) n2 += out[i] * out[i];
    const double n = std::sqrt(n2);
    if (n > 0.0)
      for (std::size_t i = 0; i < dim; ++i) out[i] /= n;
  }
}

void fill_boundary(DiscreteField& f, const BoundaryPair& b) {
  for (std::size_t m = 0; m < f.rows(); ++m) f.set(m, 0, b.y_plus[m]);
  for (std::size_t n = 0; n < f.cols(); ++n) f.set(0, n, b.y_minus[n]);
}

}  // namespace

DiscreteField solve(const BoundaryPair& boundary, const SolveOptions& opts) {
  boundary.validate(1e-9);
  const std::size_t rows = boundary.y_plus.size();
  const std::size_t cols = boundary.y_minus.size();
  const std::size_t dim = boundary.ambient_dim();
  if (opts.forcing &&
      (opts.forcing->rows() != rows - 1 || opts.forcing->cols() != cols - 1 ||
       opts.forcing->dim() != dim))
    throw std::invalid_argument("solve: forcing dimensions mismatch");

  DiscreteField f(rows, cols, dim);
  fill_boundary(f, boundary);

  // anti-diagonal wavefront: cells with m+n = k depend only on diagonals k-1, k-2
  for (std::size_t k = 2; k <= rows - 1 + cols - 1; ++k) {
    const std::size_t m_lo = k >= cols ? k - (cols - 1) : 1;
    const std::size_t m_hi = std::min(rows - 1, k - 1);
    if (m_lo > m_hi) continue;
    auto cell = [&](std::size_t m) {
      const std::size_t n = k - m;
      reflect_cell(f.at(m, n - 1), f.at(m - 1, n), f.at(m - 1, n - 1),
                   opts.forcing ? opts.forcing->at(m - 1, n - 1) : nullptr, opts.renormalize,
                   f.at(m, n), dim);
    };
    const std::size_t count = m_hi - m_lo + 1;
    if (opts.pool && opts.pool->size() > 1 && count >= 512) {
      opts.pool->parallel_for(count, [&](std::size_t i) { cell(m_lo + i); });
    } else {
      for (std::size_t m = m_lo; m <= m_hi; ++m) cell(m);
    }
  }
  return f;
}

Grid solve_linear(const std::vector<Vec>& y_plus, const std::vector<Vec>& y_minus,
                  const ForcingGrid* forcing) {
  if (y_plus.empty() || y_minus.empty()) throw std::invalid_argument("solve_linear: empty boundary");
  const std::size_t rows = y_plus.size();
  const std::size_t cols = y_minus.size();
  const std::size_t dim = y_plus[0].size();
  for (const Vec& v : y_plus)
    if (v.size() != dim) throw std::invalid_argument("solve_linear: mixed dimensions");
  for (const Vec& v : y_minus)
    if (v.size() != dim) throw std::invalid_argument("solve_linear: mixed dimensions");
  if (forcing && (forcing->rows() != rows - 1 || forcing->cols() != cols - 1 ||
                  forcing->dim() != dim))
    throw std::invalid_argument("solve_linear: forcing dimensions mismatch");

  Grid out(rows, cols, dim);
  // prefix(m, n) = sum_{j<m, k<n} F(j, k), built in place
  Grid prefix(rows, cols, dim);
  if (forcing) {
    for (std::size_t m = 1; m < rows; ++m)
      for (std::size_t n = 1; n < cols; ++n) {
        double* dst = prefix.at(m, n);
        const double* up = prefix.at(m - 1, n);
        const double* left = prefix.at(m, n - 1);
        const double* diag = prefix.at(m - 1, n - 1);
        const double* fe = forcing->at(m - 1, n - 1);
        for (std::size_t i = 0; i < dim; ++i) dst[i] = up[i] + left[i] - diag[i] + fe[i];
      }
  }
  for (std::size_t m = 0; m < rows; ++m)
    for (std::size_t n = 0; n < cols; ++n) {
      double* dst = out.at(m, n);
      const double* pre = prefix.at(m, n);
      for (std::size_t i = 0; i < dim; ++i)
        dst[i] = y_plus[m][i] + y_minus[n][i] - y_plus[0][i] + pre[i];
    }
  return out;
}

namespace {

inline double step_len(const double* a, const double* b, std::size_t dim) {
  double s = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline double norm_of(const double* a, std::size_t dim) {
  double s = 0.0;
  for (std::size_t i = 0; i < dim; ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

void scan_rows(const double* prev, const double* cur, std::size_t cols, std::size_t dim,
               ConservationReport& r) {
  // walks one row pair: dm lengths must match across n, dn lengths across m
  double prev_dm = step_len(cur, prev, dim);
  for (std::size_t n = 1; n < cols; ++n) {
    const double* p00 = prev + (n - 1) * dim;
    const double* p01 = prev + n * dim;
    const double* p10 = cur + (n - 1) * dim;
    const double* p11 = cur + n * dim;
    const double dm = step_len(p11, p01, dim);
    r.max_dm_dev = std::max(r.max_dm_dev, std::abs(dm - prev_dm));
    prev_dm = dm;
    r.max_dn_dev = std::max(r.max_dn_dev, std::abs(step_len(p11, p10, dim) - step_len(p01, p00, dim)));
  }
  for (std::size_t n = 0; n < cols; ++n)
    r.max_norm_drift = std::max(r.max_norm_drift, std::abs(norm_of(cur + n * dim, dim) - 1.0));
}

}  // namespace

ConservationReport conservation_report(const DiscreteField& field) {
  ConservationReport r;
  const std::size_t dim = field.dim();
  for (std::size_t n = 0; n < field.cols(); ++n)
    r.max_norm_drift = std::max(r.max_norm_drift, std::abs(norm_of(field.at(0, n), dim) - 1.0));
  for (std::size_t m = 1; m < field.rows(); ++m)
    scan_rows(field.at(m - 1, 0), field.at(m, 0), field.cols(), dim, r);
  return r;
}

ConservationReport conservation_scan(const BoundaryPair& boundary, const SolveOptions& opts) {
  boundary.validate(1e-9);
  const std::size_t rows = boundary.y_plus.size();
  const std::size_t cols = boundary.y_minus.size();
  const std::size_t dim = boundary.ambient_dim();
  if (opts.forcing &&
      (opts.forcing->rows() != rows - 1 || opts.forcing->cols() != cols - 1 ||
       opts.forcing->dim() != dim))
    throw std::invalid_argument("conservation_scan: forcing dimensions mismatch");

  std::vector<double> prev(cols * dim), cur(cols * dim);
  for (std::size_t n = 0; n < cols; ++n)
    for (std::size_t i = 0; i < dim; ++i) prev[n * dim + i] = boundary.y_minus[n][i];

  ConservationReport r;
  for (std::size_t n = 0; n < cols; ++n)
    r.max_norm_drift = std::max(r.max_norm_drift, std::abs(norm_of(&prev[n * dim], dim) - 1.0));

  for (std::size_t m = 1; m < rows; ++m) {
    for (std::size_t i = 0; i < dim; ++i) cur[i] = boundary.y_plus[m][i];
    for (std::size_t n = 1; n < cols; ++n)
      reflect_cell(&cur[(n - 1) * dim], &prev[n * dim], &prev[(n - 1) * dim],
                   opts.forcing ? opts.forcing->at(m - 1, n - 1) : nullptr, opts.renormalize,
                   &cur[n * dim], dim);
    scan_rows(prev.data(), cur.data(), cols, dim, r);
    std::swap(prev, cur);
  }
  return r;
}

InterpolatedField::InterpolatedField(DiscreteField field, int mesh_exp, double u0, double v0)
    : field_(std::make_shared<DiscreteField>(std::move(field))),
      mesh_exp_(mesh_exp),
      mesh_(std::ldexp(1.0, -mesh_exp)),
      u0_(u0),
      v0_(v0) {
  if (field_->empty()) throw std::invalid_argument("InterpolatedField: empty field");
}

Vec InterpolatedField::eval(double u, double v) const {
  const double X = (u - u0_) / mesh_;
  const double Y = (v - v0_) / mesh_;
  const double mx = static_cast<double>(field_->rows() - 1);
  const double my = static_cast<double>(field_->cols() - 1);
  const double slack = 1e-9;
  if (X < -slack || X > mx + slack || Y < -slack || Y > my + slack)
    throw std::domain_error("InterpolatedField::eval: outside window");

  const double Xc = std::min(std::max(X, 0.0), mx);
  const double Yc = std::min(std::max(Y, 0.0), my);
  std::size_t m0 = static_cast<std::size_t>(Xc);
  std::size_t n0 = static_cast<std::size_t>(Yc);
  if (m0 >= field_->rows() - 1) m0 = field_->rows() - 2;
  if (n0 >= field_->cols() - 1) n0 = field_->cols() - 2;
  const double fu = Xc - static_cast<double>(m0);
  const double fv = Yc - static_cast<double>(n0);

  const std::size_t dim = field_->dim();
  const double* c00 = field_->at(m0, n0);
  const double* c01 = field_->at(m0, n0 + 1);
  const double* c10 = field_->at(m0 + 1, n0);
  const double* c11 = field_->at(m0 + 1, n0 + 1);
  const double w00 = (1.0 - fu) * (1.0 - fv);
  const double w01 = (1.0 - fu) * fv;
  const double w10 = fu * (1.0 - fv);
  const double w11 = fu * fv;
  Vec out(dim);
  for (std::size_t i = 0; i < dim; ++i)
    out[i] = w00 * c00[i] + w01 * c01[i] + w10 * c10[i] + w11 * c11[i];
  return out;
}

InterpolatedField phi_n(const BoundaryPair& boundary, int mesh_exp, const SolveOptions& opts) {
  return InterpolatedField(solve(boundary, opts), mesh_exp);
}

InterpolatedField phi_n(const BoundaryFn& phi_plus, const BoundaryFn& phi_minus, int mesh_exp,
                        int window_exp, const SolveOptions& opts) {
  return InterpolatedField(
      solve(boundary_from_functions(phi_plus, phi_minus, mesh_exp, window_exp), opts), mesh_exp);
}

PerturbationResult perturbation_experiment(const BoundaryPair& boundary, double eps,
                                           const ForcingGrid* shape,
                                           const BoundaryPair* perturbed_boundary,
                                           ThreadPool* pool) {
  if (eps < 0.0) throw std::invalid_argument("perturbation_experiment: negative eps");
  SolveOptions base_opts;
  base_opts.pool = pool;
  const DiscreteField base = solve(boundary, base_opts);

  ForcingGrid scaled;
  SolveOptions hat_opts;
  hat_opts.pool = pool;
  if (shape && eps > 0.0) {
    scaled = *shape;
    for (double& x : scaled.raw()) x *= eps;
    hat_opts.forcing = &scaled;
  }
  const BoundaryPair& hat_boundary =
      perturbed_boundary != nullptr ? *perturbed_boundary : boundary;
  const DiscreteField hat = solve(hat_boundary, hat_opts);

  double sup = 0.0;
  const std::size_t dim = base.dim();
  for (std::size_t m = 0; m < base.rows(); ++m)
    for (std::size_t n = 0; n < base.cols(); ++n)
      sup = std::max(sup, step_len(base.at(m, n), hat.at(m, n), dim));

  PerturbationResult r;
  r.sup_diff = sup;
  r.ratio = eps > 0.0 ? sup / eps : 0.0;
  return r;
}

}  // namespace conewave
