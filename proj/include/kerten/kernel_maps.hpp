#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <memory>
#include <vector>

#include "kerten/common.hpp"

namespace kerten {

/// Gaussian RBF kernel exp(-delta^2 / (2 sigma^2)).
struct RbfKernel {
  double sigma = 1.0;

  explicit RbfKernel(double s) : sigma(s) {
    if (!(s > 0.0)) throw std::invalid_argument("RbfKernel: sigma must be positive");
  }
  double operator()(double delta) const { return std::exp(-delta * delta / (2.0 * sigma * sigma)); }
};

inline double gauss(const RbfKernel& k, double delta) { return k(delta); }

/// Z uniformly spaced pivots over [lo, hi]; endpoints included for Z >= 2,
/// the midpoint for Z = 1.
inline std::vector<double> uniform_pivots(int z, double lo, double hi) {
  if (z <= 0) throw std::invalid_argument("uniform_pivots: Z must be >= 1");
  if (!(lo < hi)) throw std::invalid_argument("uniform_pivots: lo must be < hi");
  std::vector<double> p(z);
  if (z == 1) {
    p[0] = 0.5 * (lo + hi);
    return p;
  }
  const double step = (hi - lo) / (z - 1);
  for (int i = 0; i < z; ++i) p[i] = lo + step * i;
  p.back() = hi;
  return p;
}

/// Linearization of one 1-D Gaussian kernel G_sigma: a row of half-bandwidth
/// Gaussians at fixed pivots, scaled by sqrt(c), so that
///   G_sigma(u - v) ~ feature_map(u) . feature_map(v).
/// Inputs are expected inside the pivot interval; values outside are legal
/// (the Gaussians decay) but counted in out_of_range_count for diagnostics.
class PivotGrid {
 public:
  PivotGrid(std::vector<double> pivots, double sigma, double c = 1.0)
      : pivots_(std::move(pivots)),
        sigma_(sigma),
        c_(c),
        oor_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
    if (pivots_.empty()) throw std::invalid_argument("PivotGrid: need at least one pivot");
    for (std::size_t i = 1; i < pivots_.size(); ++i)
      if (!(pivots_[i - 1] < pivots_[i]))
        throw std::invalid_argument("PivotGrid: pivots must be strictly increasing");
    if (!(sigma_ > 0.0)) throw std::invalid_argument("PivotGrid: sigma must be positive");
    if (!(c_ > 0.0)) throw std::invalid_argument("PivotGrid: c must be positive");
  }

  int size() const { return static_cast<int>(pivots_.size()); }
  const std::vector<double>& pivots() const { return pivots_; }
  double sigma() const { return sigma_; }
  double c() const { return c_; }
  void set_c(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("PivotGrid: c must be positive");
    c_ = c;
  }
  double lo() const { return pivots_.front(); }
  double hi() const { return pivots_.back(); }

  std::uint64_t out_of_range_count() const { return oor_->load(); }

  /// Writes the Z feature values sqrt(c) * G_{sigma/sqrt(2)}(u - pivot_i) to out.
  void feature_map_into(double u, double* out) const {
    if (u < lo() || u > hi()) oor_->fetch_add(1, std::memory_order_relaxed);
    const double inv = 1.0 / (sigma_ * sigma_);  // (sigma/sqrt2)^2 = sigma^2/2
    const double s = std::sqrt(c_);
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const double d = u - pivots_[i];
      out[i] = s * std::exp(-d * d * inv);
    }
  }

  std::vector<double> feature_map(double u) const {
    std::vector<double> v(pivots_.size());
    feature_map_into(u, v.data());
    return v;
  }

  /// Per-coordinate 3-D map: the three 1-D maps concatenated, length 3Z. Dot
  /// products of two such maps approximate the sum of the three coordinate kernels.
  std::vector<double> feature_map_3d(const std::array<double, 3>& x) const {
    std::vector<double> v(3 * pivots_.size());
    feature_map_3d_into(x, v.data());
    return v;
  }
  void feature_map_3d_into(const std::array<double, 3>& x, double* out) const {
    feature_map_into(x[0], out);
    feature_map_into(x[1], out + size());
    feature_map_into(x[2], out + 2 * size());
  }

  /// Approximated kernel value c * phi(u).phi(v) with the raw (unscaled) maps.
  double approx_kernel(double u, double v) const {
    const double inv = 1.0 / (sigma_ * sigma_);
    double s = 0.0;
    for (double z : pivots_) {
      const double a = u - z, b = v - z;
      s += std::exp(-(a * a + b * b) * inv);
    }
    return c_ * s;
  }

 private:
  std::vector<double> pivots_;
  double sigma_;
  double c_;
  std::shared_ptr<std::atomic<std::uint64_t>> oor_;  // shared across copies
};

/// Least-squares fit of the calibration constant c over a uniform sample_count x
/// sample_count grid of (u, v) pairs in the pivot interval:
///   minimize sum (c * phi(u).phi(v) - G_sigma(u - v))^2.
inline PivotGrid calibrate(PivotGrid grid, int sample_count) {
  if (sample_count < 2) throw std::invalid_argument("calibrate: sample_count must be >= 2");
  const RbfKernel target(grid.sigma());
  const std::vector<double> pts = uniform_pivots(sample_count, grid.lo(), grid.hi());
  const double inv = 1.0 / (grid.sigma() * grid.sigma());
  double num = 0.0, den = 0.0;
  for (double u : pts) {
    for (double v : pts) {
      double dot = 0.0;
      for (double z : grid.pivots()) {
        const double a = u - z, b = v - z;
        dot += std::exp(-(a * a + b * b) * inv);
      }
      num += dot * target(u - v);
      den += dot * dot;
    }
  }
  if (!(den > 0.0)) throw numerical_error("calibrate: degenerate design (all-zero feature dots)");
  grid.set_c(num / den);
  return grid;
}

/// Convenience: uniform pivots + calibration in one step.
inline PivotGrid make_calibrated_grid(int z, double lo, double hi, double sigma,
                                      int sample_count = 64) {
  return calibrate(PivotGrid(uniform_pivots(z, lo, hi), sigma), sample_count);
}

}  // namespace kerten
