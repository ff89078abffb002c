/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "slosh/slicing.hpp"
#include "slosh/types.hpp"

namespace slosh {

/// Empirical quantile function of a 1-D sample of size N.
///
/// Convention used everywhere in this library: the quantile grid is
/// k/N for k = 1..N with F^{-1}(k/N) = sorted[k-1]; between grid points the
/// value is linearly interpolated, and F^{-1}(tau) = sorted[0] for
/// tau <= 1/N. Grid evaluation at rational tau = j/K is done in integer
/// arithmetic so that order statistics are recovered exactly whenever
/// j*N is a multiple of K.
class EmpiricalQuantile {
 public:
  /// Builds from an unsorted sample (stable sorted internally).
  static EmpiricalQuantile from_samples(std::vector<double> values);
  /// Wraps an already nondecreasing sequence (validated).
  static EmpiricalQuantile from_sorted(std::vector<double> sorted);

  /// F^{-1}(tau) for tau in (0, 1].
  double operator()(double tau) const;

  /// F^{-1}(j/k_grid) evaluated exactly on the rational grid, 1 <= j <= k_grid.
  double at_grid(std::int64_t j, std::int64_t k_grid) const;

  const std::vector<double>& sorted_values() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }

 private:
  explicit EmpiricalQuantile(std::vector<double> sorted)
      : sorted_(std::move(sorted)) {}
  std::vector<double> sorted_;
};

inline double quantile(const EmpiricalQuantile& q, double tau) {
  return q(tau);
}

/// Exact 2-Wasserstein distance between two 1-D empirical measures of equal
/// size: sqrt((1/N) sum_k (a_k - b_k)^2) over sorted values. For unequal
/// sizes, both quantile functions are evaluated on the common grid
/// j/max(N, M) and the same average is taken (an interpolation-based
/// approximation; the equal-size path is exact).
double wasserstein_1d(const EmpiricalQuantile& a, const EmpiricalQuantile& b);

/// Per-slice squared 1-D Wasserstein distances between two sets under a
/// slicer bank, in bank order. Accumulation order is fixed, so results are
/// bit-stable.
std::vector<double> sliced_w2_squared(const PointSet& x, const PointSet& y,
                                      const SlicerBank& bank);

/// Monte-Carlo sliced-Wasserstein estimate over a bank of L slices.
struct GswEstimate {
  double value = 0.0;  // >= 0
  int num_slices = 0;
};

GswEstimate gsw_estimate(const PointSet& x, const PointSet& y,
                         const SlicerBank& bank);

}  // namespace slosh
