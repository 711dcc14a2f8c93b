#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace conewave {

/// Small dense vector in R^{d+1} with runtime length and inline storage.
/// Length is fixed at construction; arithmetic between mismatched lengths throws.
class Vec {
 public:
  static constexpr std::size_t kMaxLen = 8;  // ambient dimension cap, sphere dim <= 7

  Vec() : len_(0) {}

  explicit Vec(std::size_t len, double fill = 0.0) : len_(len) {
    if (len == 0 || len > kMaxLen) throw std::invalid_argument("Vec: length out of range");
    for (std::size_t i = 0; i < len_; ++i) c_[i] = fill;
  }

  Vec(std::initializer_list<double> xs) : len_(xs.size()) {
    if (len_ == 0 || len_ > kMaxLen) throw std::invalid_argument("Vec: length out of range");
    std::size_t i = 0;
    for (double x : xs) c_[i++] = x;
  }

  static Vec from(const double* p, std::size_t len) {
    Vec v(len);
    for (std::size_t i = 0; i < len; ++i) v.c_[i] = p[i];
    return v;
  }

  std::size_t size() const { return len_; }
  double* data() { return c_.data(); }
  const double* data() const { return c_.data(); }

  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }

  Vec& operator+=(const Vec& o) {
    check_len(o);
    for (std::size_t i = 0; i < len_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    check_len(o);
    for (std::size_t i = 0; i < len_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (std::size_t i = 0; i < len_; ++i) c_[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator-(Vec a) {
    for (std::size_t i = 0; i < a.len_; ++i) a.c_[i] = -a.c_[i];
    return a;
  }

  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.len_ != b.len_) return false;
    for (std::size_t i = 0; i < a.len_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

  friend double dot(const Vec& a, const Vec& b) {
    a.check_len(b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.len_; ++i) s += a.c_[i] * b.c_[i];
    return s;
  }

  double norm_sq() const { return dot(*this, *this); }
  double norm() const { return std::sqrt(norm_sq()); }

  bool all_finite() const {
    for (std::size_t i = 0; i < len_; ++i)
      if (!std::isfinite(c_[i])) return false;
    return true;
  }

  /// First basis vector e0 = (1, 0, ..., 0), the conventional base point of S^d.
  static Vec basis0(std::size_t len) {
    Vec v(len);
    v[0] = 1.0;
    return v;
  }

 private:
  void check_len(const Vec& o) const {
    if (len_ != o.len_) throw std::invalid_argument("Vec: length mismatch");
  }

  std::array<double, kMaxLen> c_{};
  std::size_t len_;
};

}  // namespace conewave
