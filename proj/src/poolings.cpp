/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "slosh/poolings.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "slosh/ot.hpp"
#include "slosh/util.hpp"

namespace slosh {

Eigen::VectorXd gem_pool(const PointSet& set, const GemConfig& cfg) {
  require(cfg.p_max >= 1, "gem_pool: p_max must be >= 1");
  require(set.size() > 0, "gem_pool: input set must be non-empty");
  const int N = set.size();
  const int d = set.dim();

  // Per-feature absolute values are accumulated in sorted order so the
  // result is bit-identical under any permutation of the set elements.
  Eigen::VectorXd out(static_cast<Eigen::Index>(cfg.p_max) * d);
  std::vector<double> col(static_cast<std::size_t>(N));
  for (int k = 0; k < d; ++k) {
    for (int n = 0; n < N; ++n)
      col[static_cast<std::size_t>(n)] = std::abs(set.points(n, k));
    std::sort(col.begin(), col.end());
    for (int p = 1; p <= cfg.p_max; ++p) {
      double acc = 0.0;
      for (const double v : col) acc += std::pow(v, static_cast<double>(p));
      out(static_cast<Eigen::Index>(p - 1) * d + k) =
          std::pow(acc / N, 1.0 / static_cast<double>(p));
    }
  }
  return out;
}

Eigen::VectorXd cov_pool(const PointSet& set, const CovConfig& cfg) {
  require(cfg.lambda >= 0.0, "cov_pool: lambda must be >= 0");
  require(set.size() >= 2,
          "cov_pool: need at least 2 elements for the unbiased covariance");
  const int N = set.size();
  const int d = set.dim();

  // Canonicalize the row order (lexicographic) before any accumulation, so
  // the sums run over the same doubles in the same order for any input
  // permutation and the output is bit-identical. Equal rows contribute
  // identical terms, so their relative order is immaterial.
  std::vector<int> order(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) order[static_cast<std::size_t>(n)] = n;
  std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    for (int k = 0; k < d; ++k) {
      if (set.points(lhs, k) != set.points(rhs, k))
        return set.points(lhs, k) < set.points(rhs, k);
    }
    return false;
  });
  Eigen::MatrixXd sorted(N, d);
  for (int n = 0; n < N; ++n)
    sorted.row(n) = set.points.row(order[static_cast<std::size_t>(n)]);

  const Eigen::RowVectorXd mean = sorted.colwise().mean();
  const Eigen::MatrixXd centered = sorted.rowwise() - mean;
  Eigen::MatrixXd C =
      (centered.transpose() * centered) / static_cast<double>(N - 1);
  const double ridge = cfg.lambda * C.trace();
  C.diagonal().array() += ridge;

  Eigen::VectorXd out(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out(static_cast<Eigen::Index>(i) * d + j) = C(i, j);
  return out;
}

Eigen::VectorXd fspool_di(const PointSet& set, const FsPoolConfig& cfg) {
  require(cfg.M_grid >= 1, "fspool_di: M_grid must be >= 1");
  require(set.size() > 0, "fspool_di: input set must be non-empty");
  const int N = set.size();
  const int d = set.dim();
  const int M = cfg.M_grid;

  Eigen::VectorXd out(static_cast<Eigen::Index>(M) * d);
  std::vector<double> col(static_cast<std::size_t>(N));
  for (int k = 0; k < d; ++k) {
    for (int n = 0; n < N; ++n) col[static_cast<std::size_t>(n)] = set.points(n, k);
    std::sort(col.begin(), col.end());
    const EmpiricalQuantile q = EmpiricalQuantile::from_sorted(col);
    for (int m = 0; m < M; ++m)
      out(static_cast<Eigen::Index>(k) * M + m) = q.at_grid(m + 1, M);
  }
  return out;
}

}  // namespace slosh
