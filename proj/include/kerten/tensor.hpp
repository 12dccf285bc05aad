#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kerten/common.hpp"

namespace kerten {

/// Dense third-order tensor, mode-1 fastest: entry (i,j,k) lives at i + d1*(j + d2*k).
/// The layout is load-bearing — unfoldings and the descriptor file format depend on it.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int d1, int d2, int d3)
      : d1_(d1), d2_(d2), d3_(d3), v_(static_cast<std::size_t>(d1) * d2 * d3, 0.0) {
    if (d1 <= 0 || d2 <= 0 || d3 <= 0) throw std::invalid_argument("Tensor3: dims must be positive");
  }

  int dim(int mode) const {
    switch (mode) {
      case 1: return d1_;
      case 2: return d2_;
      case 3: return d3_;
      default: throw std::invalid_argument("Tensor3::dim: mode must be 1, 2 or 3");
    }
  }
  int d1() const { return d1_; }
  int d2() const { return d2_; }
  int d3() const { return d3_; }
  std::size_t size() const { return v_.size(); }

  double& operator()(int i, int j, int k) { return v_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v_[index(i, j, k)]; }

  std::span<double> data() { return v_; }
  std::span<const double> data() const { return v_; }

  double frobenius() const {
    double s = 0.0;
    for (double x : v_) s += x * x;
    return std::sqrt(s);
  }

  Tensor3& operator*=(double a) {
    for (double& x : v_) x *= a;
    return *this;
  }
  Tensor3& operator+=(const Tensor3& o) {
    require_same_dims(o);
    for (std::size_t n = 0; n < v_.size(); ++n) v_[n] += o.v_[n];
    return *this;
  }
  Tensor3 operator-(const Tensor3& o) const {
    require_same_dims(o);
    Tensor3 r(*this);
    for (std::size_t n = 0; n < v_.size(); ++n) r.v_[n] -= o.v_[n];
    return r;
  }

  void require_same_dims(const Tensor3& o) const {
    if (d1_ != o.d1_ || d2_ != o.d2_ || d3_ != o.d3_)
      throw std::invalid_argument("Tensor3: dimension mismatch");
  }

 private:
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(d1_) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(d2_) * k);
  }

  int d1_ = 0, d2_ = 0, d3_ = 0;
  std::vector<double> v_;
};

/// Symmetric d x d matrix stored as the packed upper triangle (i <= j), d(d+1)/2 entries.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int side) : side_(side), v_(binom2(static_cast<std::uint64_t>(side) + 1), 0.0) {
    if (side <= 0) throw std::invalid_argument("SymMatrix: side must be positive");
  }

  int side() const { return side_; }

  double& at(int i, int j) { return v_[pack(i, j)]; }
  double at(int i, int j) const { return v_[pack(i, j)]; }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd m(side_, side_);
    for (int j = 0; j < side_; ++j)
      for (int i = 0; i <= j; ++i) m(i, j) = m(j, i) = at(i, j);
    return m;
  }

  /// Symmetrizes roundoff away: stores (m + m^T)/2.
  static SymMatrix from_dense(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("SymMatrix::from_dense: not square");
    SymMatrix s(static_cast<int>(m.rows()));
    for (int j = 0; j < s.side_; ++j)
      for (int i = 0; i <= j; ++i) s.at(i, j) = 0.5 * (m(i, j) + m(j, i));
    return s;
  }

 private:
  std::size_t pack(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(j) * (j + 1) / 2 + i;
  }

  int side_ = 0;
  std::vector<double> v_;
};

/// Super-symmetric third-order tensor over side d, stored as the upper simplex
/// i <= j <= k: binom(d+2, 3) entries at offset C(k+2,3) + C(j+1,2) + i.
class SymTensor3 {
 public:
  SymTensor3() = default;
  explicit SymTensor3(int side) : side_(side), v_(simplex_size(side), 0.0) {
    if (side <= 0) throw std::invalid_argument("SymTensor3: side must be positive");
  }

  static std::size_t simplex_size(int side) { return binom3(static_cast<std::uint64_t>(side) + 2); }

  /// Offset of the sorted triple i <= j <= k.
  static std::size_t simplex_index(int i, int j, int k) {
    return binom3(static_cast<std::uint64_t>(k) + 2) + binom2(static_cast<std::uint64_t>(j) + 1) +
           static_cast<std::uint64_t>(i);
  }

  /// Number of distinct index permutations of the triple: 1, 3 or 6.
  static int multiplicity(int i, int j, int k) {
    if (i == j && j == k) return 1;
    if (i == j || j == k || i == k) return 3;
    return 6;
  }

  int side() const { return side_; }
  std::size_t size() const { return v_.size(); }
  std::span<double> simplex() { return v_; }
  std::span<const double> simplex() const { return v_; }

  double at(int i, int j, int k) const {
    sort3(i, j, k);
    return v_[simplex_index(i, j, k)];
  }
  double& at(int i, int j, int k) {
    sort3(i, j, k);
    return v_[simplex_index(i, j, k)];
  }

  /// Accumulates w * v (x) v (x) v. v.size() must equal side.
  void add_outer3(std::span<const double> v, double w = 1.0) {
    if (static_cast<int>(v.size()) != side_)
      throw std::invalid_argument("SymTensor3::add_outer3: length mismatch");
    std::size_t n = 0;  // walks the simplex in storage order (k outer, j, i inner)
    for (int k = 0; k < side_; ++k) {
      const double wk = w * v[k];
      for (int j = 0; j <= k; ++j) {
        const double wjk = wk * v[j];
        for (int i = 0; i <= j; ++i) v_[n++] += wjk * v[i];
      }
    }
  }

  SymTensor3& operator*=(double a) {
    for (double& x : v_) x *= a;
    return *this;
  }

  Tensor3 dense() const {
    Tensor3 t(side_, side_, side_);
    for (int k = 0; k < side_; ++k)
      for (int j = 0; j <= k; ++j)
        for (int i = 0; i <= j; ++i) {
          const double x = v_[simplex_index(i, j, k)];
          t(i, j, k) = t(i, k, j) = t(j, i, k) = t(j, k, i) = t(k, i, j) = t(k, j, i) = x;
        }
    return t;
  }

  /// Slice (:, :, s) as a symmetric matrix (valid because the tensor is super-symmetric).
  SymMatrix slice(int s) const {
    SymMatrix m(side_);
    for (int j = 0; j < side_; ++j)
      for (int i = 0; i <= j; ++i) m.at(i, j) = at(i, j, s);
    return m;
  }

  /// Simplex entries scaled by sqrt(multiplicity), so that a plain dot product of
  /// two such vectors equals the dense tensor inner product.
  std::vector<double> weighted_vector() const {
    std::vector<double> out(v_.size());
    std::size_t n = 0;
    for (int k = 0; k < side_; ++k)
      for (int j = 0; j <= k; ++j)
        for (int i = 0; i <= j; ++i, ++n) out[n] = v_[n] * std::sqrt(double(multiplicity(i, j, k)));
    return out;
  }

 private:
  static void sort3(int& i, int& j, int& k) {
    if (i > j) std::swap(i, j);
    if (j > k) std::swap(j, k);
    if (i > j) std::swap(i, j);
  }

  int side_ = 0;
  std::vector<double> v_;
};

/// Rank-one super-symmetric tensor v (x) v (x) v.
inline SymTensor3 outer3(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("outer3: empty vector");
  SymTensor3 t(static_cast<int>(v.size()));
  t.add_outer3(v, 1.0);
  return t;
}

/// Tensor with slice p equal to m * v[p].
inline Tensor3 outer_asym(const Eigen::MatrixXd& m, const Eigen::VectorXd& v) {
  Tensor3 t(static_cast<int>(m.rows()), static_cast<int>(m.cols()), static_cast<int>(v.size()));
  for (int k = 0; k < t.d3(); ++k)
    for (int j = 0; j < t.d2(); ++j)
      for (int i = 0; i < t.d1(); ++i) t(i, j, k) = m(i, j) * v(k);
  return t;
}

/// Mode-m unfolding. Row r is the mode-m index; columns enumerate the other two
/// modes with the lower-numbered mode fastest:
///   mode 1: (i; j + d2*k),  mode 2: (j; i + d1*k),  mode 3: (k; i + d1*j).
inline Eigen::MatrixXd unfold(const Tensor3& t, int mode) {
  const int d1 = t.d1(), d2 = t.d2(), d3 = t.d3();
  Eigen::MatrixXd m;
  switch (mode) {
    case 1:
      m.resize(d1, static_cast<Eigen::Index>(d2) * d3);
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) m(i, j + static_cast<Eigen::Index>(d2) * k) = t(i, j, k);
      break;
    case 2:
      m.resize(d2, static_cast<Eigen::Index>(d1) * d3);
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) m(j, i + static_cast<Eigen::Index>(d1) * k) = t(i, j, k);
      break;
    case 3:
      m.resize(d3, static_cast<Eigen::Index>(d1) * d2);
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) m(k, i + static_cast<Eigen::Index>(d1) * j) = t(i, j, k);
      break;
    default:
      throw std::invalid_argument("unfold: mode must be 1, 2 or 3");
  }
  return m;
}

/// Inverse of unfold for the given mode and target dims.
inline Tensor3 fold(const Eigen::MatrixXd& m, int mode, int d1, int d2, int d3) {
  Tensor3 t(d1, d2, d3);
  switch (mode) {
    case 1:
      if (m.rows() != d1 || m.cols() != static_cast<Eigen::Index>(d2) * d3)
        throw std::invalid_argument("fold: shape mismatch");
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) t(i, j, k) = m(i, j + static_cast<Eigen::Index>(d2) * k);
      break;
    case 2:
      if (m.rows() != d2 || m.cols() != static_cast<Eigen::Index>(d1) * d3)
        throw std::invalid_argument("fold: shape mismatch");
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) t(i, j, k) = m(j, i + static_cast<Eigen::Index>(d1) * k);
      break;
    case 3:
      if (m.rows() != d3 || m.cols() != static_cast<Eigen::Index>(d1) * d2)
        throw std::invalid_argument("fold: shape mismatch");
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) t(i, j, k) = m(k, i + static_cast<Eigen::Index>(d1) * j);
      break;
    default:
      throw std::invalid_argument("fold: mode must be 1, 2 or 3");
  }
  return t;
}

/// Mode-m tensor-matrix product: unfold(result, m) = a * unfold(t, m).
inline Tensor3 mode_product(const Tensor3& t, const Eigen::MatrixXd& a, int mode) {
  if (mode < 1 || mode > 3) throw std::invalid_argument("mode_product: mode must be 1, 2 or 3");
  if (a.cols() != t.dim(mode)) throw std::invalid_argument("mode_product: dimension mismatch");
  Eigen::MatrixXd u = a * unfold(t, mode);
  int d1 = t.d1(), d2 = t.d2(), d3 = t.d3();
  (mode == 1 ? d1 : mode == 2 ? d2 : d3) = static_cast<int>(a.rows());
  return fold(u, mode, d1, d2, d3);
}

inline double inner(const Tensor3& a, const Tensor3& b) {
  a.require_same_dims(b);
  double s = 0.0;
  auto av = a.data(), bv = b.data();
  for (std::size_t n = 0; n < av.size(); ++n) s += av[n] * bv[n];
  return s;
}

/// Inner product equal to the dense one: each simplex entry weighted by its multiplicity.
inline double inner(const SymTensor3& a, const SymTensor3& b) {
  if (a.side() != b.side()) throw std::invalid_argument("inner: side mismatch");
  auto av = a.simplex(), bv = b.simplex();
  double s = 0.0;
  std::size_t n = 0;
  for (int k = 0; k < a.side(); ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= j; ++i, ++n) s += SymTensor3::multiplicity(i, j, k) * av[n] * bv[n];
  return s;
}

}  // namespace kerten
