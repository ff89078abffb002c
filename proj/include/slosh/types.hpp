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
#include <vector>

namespace slosh {

/// A finite point set in R^d (rows are elements), optionally labeled.
/// Treated throughout as the empirical measure placing mass 1/N on each row.
struct PointSet {
  Eigen::MatrixXd points;   // N x d
  std::int64_t id = 0;
  std::int32_t label = -1;  // -1 = unlabeled

  PointSet() = default;
  PointSet(Eigen::MatrixXd pts, std::int64_t set_id = 0,
           std::int32_t set_label = -1)
      : points(std::move(pts)), id(set_id), label(set_label) {}

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
};

/// A collection of point sets with a common ambient dimension.
struct SetDataset {
  std::vector<PointSet> sets;
  int d = 0;
  std::vector<std::string> class_names;  // optional

  std::size_t size() const { return sets.size(); }
};

}  // namespace slosh
