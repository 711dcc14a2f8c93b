#include "conewave/boundary.hpp"

#include <cmath>
#include <stdexcept>

#include "conewave/errors.hpp"
#include "conewave/geometry.hpp"

namespace conewave {

void BoundaryPair::validate(double unit_tol) const {
  if (y_plus.empty() || y_minus.empty())
    throw ValidationError("boundary: empty side");
  const std::size_t dim = y_plus[0].size();
  if (dim < 2) throw ValidationError("boundary: ambient dimension must be >= 2");
  auto check_side = [&](const std::vector<Vec>& side, const char* name) {
    for (const Vec& v : side) {
      if (v.size() != dim) throw ValidationError(std::string("boundary: mixed dimensions in ") + name);
      if (!v.all_finite()) throw ValidationError(std::string("boundary: non-finite entry in ") + name);
      if (std::abs(v.norm() - 1.0) > unit_tol)
        throw ValidationError(std::string("boundary: non-unit entry in ") + name);
    }
  };
  check_side(y_plus, "y_plus");
  check_side(y_minus, "y_minus");
  if (!(y_plus[0] == y_minus[0]))
    throw ValidationError("boundary: junction y_plus[0] != y_minus[0]");
}

BoundaryPair boundary_from_functions(const BoundaryFn& phi_plus, const BoundaryFn& phi_minus,
                                     int mesh_exp, int window_exp) {
  if (mesh_exp < 0 || window_exp < 0 || mesh_exp + window_exp > 24)
    throw std::invalid_argument("boundary_from_functions: exponents out of range");
  const std::size_t steps = std::size_t{1} << (mesh_exp + window_exp);
  const double mesh = std::ldexp(1.0, -mesh_exp);

  BoundaryPair b;
  b.y_plus.reserve(steps + 1);
  b.y_minus.reserve(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) {
    const double s = static_cast<double>(j) * mesh;
    b.y_plus.push_back(phi_plus(s));
    b.y_minus.push_back(phi_minus(s));
  }
  if ((b.y_plus[0] - b.y_minus[0]).norm() > 1e-9)
    throw std::invalid_argument("boundary_from_functions: curves disagree at 0");
  b.y_minus[0] = b.y_plus[0];  // junction must be bitwise shared
  return b;
}

std::pair<BoundaryFn, BoundaryFn> preset_boundary(const std::string& name, int sphere_dim) {
  if (sphere_dim < 1 || sphere_dim + 1 > static_cast<int>(Vec::kMaxLen))
    throw std::invalid_argument("preset_boundary: unsupported sphere dimension");
  if (name == "constant") {
    const Vec x0 = Vec::basis0(static_cast<std::size_t>(sphere_dim) + 1);
    BoundaryFn f = [x0](double) { return x0; };
    return {f, f};
  }
  if (name == "circle-sin") {
    if (sphere_dim != 1) throw std::invalid_argument("preset circle-sin requires d = 1");
    return {[](double u) { return unit_from_angle(std::sin(u)); },
            [](double v) { return unit_from_angle(0.5 * v); }};
  }
  if (name == "great-circle-precession") {
    if (sphere_dim != 2)
      throw std::invalid_argument("preset great-circle-precession requires d = 2");
    auto curve = [](double phase) {
      return [phase](double s) {
        const double a = 0.7 * s + phase;
        return Vec{std::cos(s), std::sin(s) * std::cos(a), std::sin(s) * std::sin(a)};
      };
    };
    // both pass through e0 at s = 0; the precession phases differ
    return {curve(0.0), curve(0.9)};
  }
  throw std::invalid_argument("preset_boundary: unknown preset '" + name + "'");
}

}  // namespace conewave
