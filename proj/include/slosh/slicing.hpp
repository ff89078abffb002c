/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "slosh/types.hpp"

namespace slosh {

/// A bank of L linear slicers x -> theta^T x with unit directions theta.
/// Immutable after construction; safe to share across threads.
///
/// The slicer interface is deliberately just "a unit direction per row" so
/// that nonlinear slicers can be layered on later without touching callers
/// that only consume the projection matrix.
class SlicerBank {
 public:
  /// Draws L directions uniformly on the unit sphere S^{d-1}: each row is a
  /// vector of independent standard normals divided by its norm.
  /// Deterministic given seed.
  static SlicerBank sample(int d, int L, std::uint64_t seed);

  /// Wraps an explicit direction matrix (L x d). Rows must have unit norm
  /// within 1e-12. The seed is carried as metadata only.
  static SlicerBank from_directions(Eigen::MatrixXd directions,
                                    std::uint64_t seed = 0);

  /// Axis-aligned bank: directions = I_d (L = d).
  static SlicerBank identity(int d);

  const Eigen::MatrixXd& directions() const { return directions_; }
  int dim() const { return static_cast<int>(directions_.cols()); }
  int num_slices() const { return static_cast<int>(directions_.rows()); }
  std::uint64_t seed() const { return seed_; }

  void save(const std::string& path) const;
  static SlicerBank load(const std::string& path);

 private:
  SlicerBank(Eigen::MatrixXd directions, std::uint64_t seed)
      : directions_(std::move(directions)), seed_(seed) {}

  Eigen::MatrixXd directions_;  // L x d, unit rows
  std::uint64_t seed_ = 0;
};

/// Slices a point matrix: entry (n, l) = theta_l . x_n. Single dense product.
Eigen::MatrixXd project(const SlicerBank& bank, const Eigen::MatrixXd& points);

inline Eigen::MatrixXd project(const SlicerBank& bank, const PointSet& set) {
  return project(bank, set.points);
}

}  // namespace slosh
