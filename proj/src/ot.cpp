/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "slosh/ot.hpp"

#include <algorithm>
#include <cmath>

#include "slosh/util.hpp"

namespace slosh {

EmpiricalQuantile EmpiricalQuantile::from_samples(std::vector<double> values) {
  require(!values.empty(), "EmpiricalQuantile: sample must be nonempty");
  std::stable_sort(values.begin(), values.end());
  return EmpiricalQuantile(std::move(values));
}

EmpiricalQuantile EmpiricalQuantile::from_sorted(std::vector<double> sorted) {
  require(!sorted.empty(), "EmpiricalQuantile: sample must be nonempty");
  for (std::size_t i = 1; i < sorted.size(); ++i)
    require(sorted[i - 1] <= sorted[i],
            "EmpiricalQuantile: values must be nondecreasing");
  return EmpiricalQuantile(std::move(sorted));
}

double EmpiricalQuantile::operator()(double tau) const {
  require(tau > 0.0 && tau <= 1.0, "quantile: tau must lie in (0, 1]");
  const auto n = static_cast<std::int64_t>(sorted_.size());
  const double pos = tau * static_cast<double>(n);
  if (pos <= 1.0) return sorted_.front();
  if (pos >= static_cast<double>(n)) return sorted_.back();
  const auto k = static_cast<std::int64_t>(pos);  // 1 <= k <= n-1
  const double frac = pos - static_cast<double>(k);
  if (frac == 0.0) return sorted_[static_cast<std::size_t>(k - 1)];
  const double lo = sorted_[static_cast<std::size_t>(k - 1)];
  const double hi = sorted_[static_cast<std::size_t>(k)];
  return lo + frac * (hi - lo);
}

double EmpiricalQuantile::at_grid(std::int64_t j, std::int64_t k_grid) const {
  require(k_grid >= 1 && j >= 1 && j <= k_grid,
          "quantile: grid index out of range");
  const auto n = static_cast<std::int64_t>(sorted_.size());
  const std::int64_t num = j * n;  // pos = num / k_grid
  if (num <= k_grid) return sorted_.front();
  const std::int64_t k = num / k_grid;
  const std::int64_t rem = num % k_grid;
  if (rem == 0) return sorted_[static_cast<std::size_t>(k - 1)];
  // k < n here since j <= k_grid forces num <= n*k_grid and rem > 0.
  const double frac = static_cast<double>(rem) / static_cast<double>(k_grid);
  const double lo = sorted_[static_cast<std::size_t>(k - 1)];
  const double hi = sorted_[static_cast<std::size_t>(k)];
  return lo + frac * (hi - lo);
}

double wasserstein_1d(const EmpiricalQuantile& a, const EmpiricalQuantile& b) {
  const auto n = static_cast<std::int64_t>(a.size());
  const auto m = static_cast<std::int64_t>(b.size());
  double acc = 0.0;
  if (n == m) {
    const auto& av = a.sorted_values();
    const auto& bv = b.sorted_values();
    for (std::int64_t k = 0; k < n; ++k) {
      const double d = av[static_cast<std::size_t>(k)] -
                       bv[static_cast<std::size_t>(k)];
      acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(n));
  }
  const std::int64_t grid = std::max(n, m);
  for (std::int64_t j = 1; j <= grid; ++j) {
    const double d = a.at_grid(j, grid) - b.at_grid(j, grid);
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(grid));
}

namespace {

// W2^2 between two already-sorted slices; equal-size fast path plus the
// common-grid evaluation used for unequal cardinalities.
double w2_squared_sorted(const std::vector<double>& a,
                         const std::vector<double>& b) {
  const auto n = static_cast<std::int64_t>(a.size());
  const auto m = static_cast<std::int64_t>(b.size());
  double acc = 0.0;
  if (n == m) {
    for (std::int64_t k = 0; k < n; ++k) {
      const double d = a[static_cast<std::size_t>(k)] -
                       b[static_cast<std::size_t>(k)];
      acc += d * d;
    }
    return acc / static_cast<double>(n);
  }
  const EmpiricalQuantile qa = EmpiricalQuantile::from_sorted(a);
  const EmpiricalQuantile qb = EmpiricalQuantile::from_sorted(b);
  const std::int64_t grid = std::max(n, m);
  for (std::int64_t j = 1; j <= grid; ++j) {
    const double d = qa.at_grid(j, grid) - qb.at_grid(j, grid);
    acc += d * d;
  }
  return acc / static_cast<double>(grid);
}

}  // namespace

std::vector<double> sliced_w2_squared(const PointSet& x, const PointSet& y,
                                      const SlicerBank& bank) {
  require(x.size() >= 1 && y.size() >= 1,
          "gsw_estimate: sets must be nonempty");
  require(x.dim() == bank.dim() && y.dim() == bank.dim(),
          "gsw_estimate: set dimension does not match slicer bank");
  const Eigen::MatrixXd px = project(bank, x);
  const Eigen::MatrixXd py = project(bank, y);
  const int L = bank.num_slices();
  std::vector<double> out(static_cast<std::size_t>(L));
  std::vector<double> xs(static_cast<std::size_t>(x.size()));
  std::vector<double> ys(static_cast<std::size_t>(y.size()));
  for (int l = 0; l < L; ++l) {
    for (Eigen::Index i = 0; i < px.rows(); ++i)
      xs[static_cast<std::size_t>(i)] = px(i, l);
    for (Eigen::Index i = 0; i < py.rows(); ++i)
      ys[static_cast<std::size_t>(i)] = py(i, l);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    out[static_cast<std::size_t>(l)] = w2_squared_sorted(xs, ys);
  }
  return out;
}

GswEstimate gsw_estimate(const PointSet& x, const PointSet& y,
                         const SlicerBank& bank) {
  const std::vector<double> w2 = sliced_w2_squared(x, y, bank);
  double acc = 0.0;
  for (double v : w2) acc += v;
  GswEstimate est;
  est.num_slices = bank.num_slices();
  est.value = std::sqrt(acc / static_cast<double>(est.num_slices));
  return est;
}

}  // namespace slosh
