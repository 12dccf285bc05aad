#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "kerten/tensor.hpp"

namespace kerten {

/// Higher-order SVD of a third-order tensor: three orthogonal factors and a core
/// such that ((core x1 A1) x2 A2) x3 A3 reconstructs the input.
struct HosvdFactors {
  Tensor3 core;
  std::array<Eigen::MatrixXd, 3> factors;
};

namespace detail {

/// Fixes each column's sign so its largest-magnitude entry (first on ties) is positive.
/// Keeps singular vectors, and hence descriptors, reproducible across runs.
inline void fix_column_signs(Eigen::MatrixXd& u) {
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    Eigen::Index best = 0;
    double mag = -1.0;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      const double a = std::abs(u(r, c));
      if (a > mag) {
        mag = a;
        best = r;
      }
    }
    if (u(best, c) < 0.0) u.col(c) = -u.col(c);
  }
}

}  // namespace detail

/// Full HOSVD via the SVD of each unfolding. trunc[m] > 0 keeps only that many
/// leading factors in mode m+1 (the core shrinks accordingly); 0 means no truncation.
inline HosvdFactors hosvd(const Tensor3& t, std::array<int, 3> trunc = {0, 0, 0}) {
  HosvdFactors h;
  const double norm = t.frobenius();
  for (int mode = 1; mode <= 3; ++mode) {
    const int d = t.dim(mode);
    int keep = trunc[mode - 1] > 0 ? std::min(trunc[mode - 1], d) : d;
    if (norm == 0.0) {
      h.factors[mode - 1] = Eigen::MatrixXd::Identity(d, keep);
      continue;
    }
    Eigen::MatrixXd unf = unfold(t, mode);
    // full U: the factor must be a complete d x d orthogonal basis even when the
    // unfolding has fewer columns than rows
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(unf, Eigen::ComputeFullU);
    if (svd.info() != Eigen::Success)
      throw numerical_error("hosvd: SVD did not converge", mode);
    Eigen::MatrixXd u = svd.matrixU();
    detail::fix_column_signs(u);
    h.factors[mode - 1] = u.leftCols(keep);
  }
  h.core = t;
  for (int mode = 1; mode <= 3; ++mode)
    h.core = mode_product(h.core, h.factors[mode - 1].transpose(), mode);
  return h;
}

inline Tensor3 reconstruct(const HosvdFactors& h) {
  Tensor3 t = h.core;
  for (int mode = 1; mode <= 3; ++mode) t = mode_product(t, h.factors[mode - 1], mode);
  return t;
}

/// Spectral power of a PSD matrix: eigenvalues below zero (roundoff) are clamped
/// to zero, then raised to gamma in (0, 1].
inline SymMatrix psd_power(const SymMatrix& m, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("psd_power: gamma must be in (0,1]");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.dense());
  if (eig.info() != Eigen::Success) throw numerical_error("psd_power: eigendecomposition failed");
  Eigen::VectorXd lam = eig.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    lam(i) = lam(i) <= 0.0 ? 0.0 : std::pow(lam(i), gamma);
  Eigen::MatrixXd r = eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
  return SymMatrix::from_dense(r);
}

/// Elementwise sign-preserving power sgn(x)|x|^gamma.
inline Tensor3 sgn_power(Tensor3 t, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("sgn_power: gamma must be in (0,1]");
  if (gamma == 1.0) return t;
  for (double& x : t.data()) x = x >= 0.0 ? std::pow(x, gamma) : -std::pow(-x, gamma);
  return t;
}

/// HOSVD-based whitening of a non-symmetric tensor: power-normalize the core by
/// gamma, reconstruct, then apply a final elementwise sign power gamma_star.
inline Tensor3 hosvd_epn(const Tensor3& t, double gamma, double gamma_star) {
  if (!(gamma > 0.0 && gamma <= 1.0) || !(gamma_star > 0.0 && gamma_star <= 1.0))
    throw std::invalid_argument("hosvd_epn: exponents must be in (0,1]");
  HosvdFactors h = hosvd(t);
  h.core = sgn_power(std::move(h.core), gamma);
  return sgn_power(reconstruct(h), gamma_star);
}

}  // namespace kerten
