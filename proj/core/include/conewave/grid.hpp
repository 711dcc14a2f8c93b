#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "conewave/vec.hpp"

namespace conewave {

/// Rectangular lattice of ambient vectors, contiguous row-major storage:
/// entry (m, n) lives at ((m * cols + n) * dim).
class Grid {
 public:
  Grid() = default;

  Grid(std::size_t rows, std::size_t cols, std::size_t dim)
      : rows_(rows), cols_(cols), dim_(dim), data_(rows * cols * dim, 0.0) {
    if (rows == 0 || cols == 0 || dim == 0 || dim > Vec::kMaxLen)
      throw std::invalid_argument("Grid: bad dimensions");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return dim_; }  // ambient dimension d+1
  bool empty() const { return data_.empty(); }

  double* at(std::size_t m, std::size_t n) { return data_.data() + (m * cols_ + n) * dim_; }
  const double* at(std::size_t m, std::size_t n) const {
    return data_.data() + (m * cols_ + n) * dim_;
  }

  Vec get(std::size_t m, std::size_t n) const { return Vec::from(at(m, n), dim_); }

  void set(std::size_t m, std::size_t n, const Vec& v) {
    if (v.size() != dim_) throw std::invalid_argument("Grid::set: dimension mismatch");
    double* p = at(m, n);
    for (std::size_t i = 0; i < dim_; ++i) p[i] = v[i];
  }

  const std::vector<double>& raw() const { return data_; }
  std::vector<double>& raw() { return data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0, dim_ = 0;
  std::vector<double> data_;
};

/// Solved lattice field. rows() = M+1, cols() = N+1; entry (m, n) is Y(m, n):
/// column n = 0 carries y_plus, row m = 0 carries y_minus. Values are unit up
/// to monitored rounding drift (exactly unit in real arithmetic when forcing
/// is zero).
using DiscreteField = Grid;

/// Interior forcing F_e, one value per recursion cell: rows() = M, cols() = N.
using ForcingGrid = Grid;

}  // namespace conewave
