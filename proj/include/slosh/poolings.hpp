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

#include "slosh/types.hpp"

namespace slosh {

/// Generalized-mean pooling: power means of the absolute feature values for
/// p = 1..p_max, concatenated. Absolute values keep even roots well defined
/// on signed coordinates; the choice is recorded as the method tag "gem-abs"
/// in batch files.
struct GemConfig {
  int p_max = 1;  // >= 1
};

/// Covariance pooling: unbiased covariance plus a trace-scaled ridge,
/// flattened row-major.
struct CovConfig {
  double lambda = 0.0;  // >= 0
};

/// Data-independent FSPool: per-feature sorted values resampled on a fixed
/// quantile grid, so every set maps to the same output length.
struct FsPoolConfig {
  int M_grid = 1;  // >= 1
};

/// Blocks p = 1..p_max; block p entry k = ((1/N) sum_n |x_n[k]|^p)^(1/p).
/// Length p_max * d.
Eigen::VectorXd gem_pool(const PointSet& set, const GemConfig& cfg);

/// flatten(C + lambda * trace(C) * I) with the unbiased (N-1) covariance C.
/// Length d * d. Requires N >= 2.
Eigen::VectorXd cov_pool(const PointSet& set, const CovConfig& cfg);

/// Per feature k: sort the N values ascending and evaluate the quantile
/// interpolant at (m+1)/M_grid for m = 0..M_grid-1; concatenate
/// feature-major. Length M_grid * d. With M_grid = N this returns exactly
/// the sorted features.
Eigen::VectorXd fspool_di(const PointSet& set, const FsPoolConfig& cfg);

}  // namespace slosh
