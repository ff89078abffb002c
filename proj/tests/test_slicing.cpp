/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "slosh/slicing.hpp"
#include "support/tempdir.hpp"

namespace {

TEST_CASE("sampled directions are unit rows of the requested shape") {
  const slosh::SlicerBank bank = slosh::SlicerBank::sample(3, 5, 7);
  CHECK(bank.num_slices() == 5);
  CHECK(bank.dim() == 3);
  CHECK(bank.seed() == 7);
  for (int l = 0; l < 5; ++l) {
    CHECK(std::abs(bank.directions().row(l).norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("sampling on the 0-sphere yields +1 or -1") {
  for (const std::uint64_t seed : {1ull, 2ull, 99ull}) {
    const slosh::SlicerBank bank = slosh::SlicerBank::sample(1, 2, seed);
    for (int l = 0; l < 2; ++l) {
      const double v = bank.directions()(l, 0);
      CHECK((v == 1.0 || v == -1.0));
    }
  }
}

TEST_CASE("planar direction angles are uniform (chi-square, alpha=0.01)") {
  const int L = 10000;
  const slosh::SlicerBank bank = slosh::SlicerBank::sample(2, L, 0);
  const int bins = 16;
  std::vector<int> counts(bins, 0);
  for (int l = 0; l < L; ++l) {
    double angle =
        std::atan2(bank.directions()(l, 1), bank.directions()(l, 0));
    if (angle < 0) angle += 2.0 * M_PI;
    int b = static_cast<int>(angle / (2.0 * M_PI) * bins);
    if (b == bins) b = bins - 1;
    ++counts[b];
  }
  const double expected = static_cast<double>(L) / bins;
  double chi2 = 0.0;
  for (const int c : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 99th percentile of chi-square with 15 degrees of freedom.
  CHECK(chi2 < 30.578);
}

TEST_CASE("sampling is deterministic in the seed") {
  const slosh::SlicerBank a = slosh::SlicerBank::sample(4, 8, 123);
  const slosh::SlicerBank b = slosh::SlicerBank::sample(4, 8, 123);
  const slosh::SlicerBank c = slosh::SlicerBank::sample(4, 8, 124);
  CHECK(a.directions() == b.directions());
  CHECK(a.directions() != c.directions());
}

TEST_CASE("invalid shapes are rejected") {
  CHECK_THROWS_AS(slosh::SlicerBank::sample(0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(slosh::SlicerBank::sample(3, 0, 1), std::invalid_argument);
}

TEST_CASE("from_directions validates unit rows") {
  Eigen::MatrixXd good(1, 2);
  good << 0.6, 0.8;
  CHECK_NOTHROW(slosh::SlicerBank::from_directions(good));
  Eigen::MatrixXd bad(1, 2);
  bad << 0.6, 0.9;
  CHECK_THROWS_AS(slosh::SlicerBank::from_directions(bad),
                  std::invalid_argument);
}

TEST_CASE("identity bank projects onto the coordinate axes") {
  const slosh::SlicerBank bank = slosh::SlicerBank::identity(3);
  CHECK(bank.num_slices() == 3);
  CHECK(bank.directions() == Eigen::MatrixXd::Identity(3, 3));
}

TEST_CASE("projection onto the standard basis returns coordinates") {
  const slosh::SlicerBank bank = slosh::SlicerBank::identity(2);
  Eigen::MatrixXd pts(1, 2);
  pts << 3.0, 4.0;
  const Eigen::MatrixXd proj = slosh::project(bank, pts);
  CHECK(proj.rows() == 1);
  CHECK(proj.cols() == 2);
  CHECK(proj(0, 0) == 3.0);
  CHECK(proj(0, 1) == 4.0);
}

TEST_CASE("projection of zero vectors is zero") {
  const slosh::SlicerBank bank = slosh::SlicerBank::sample(3, 7, 5);
  const Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(4, 3);
  CHECK(slosh::project(bank, zeros).isZero(0.0));
}

TEST_CASE("projection matches hand-computed dot products") {
  Eigen::MatrixXd dir(1, 2);
  dir << 0.6, 0.8;
  const slosh::SlicerBank bank = slosh::SlicerBank::from_directions(dir);
  Eigen::MatrixXd pts(2, 2);
  pts << 1.0, 1.0, 2.0, 0.0;
  const Eigen::MatrixXd proj = slosh::project(bank, pts);
  CHECK(proj(0, 0) == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(proj(1, 0) == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("projection rejects dimension mismatches") {
  const slosh::SlicerBank bank = slosh::SlicerBank::identity(3);
  const Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS_AS(slosh::project(bank, pts), std::invalid_argument);
}

TEST_CASE("projections are rotation-equivariant and linear") {
  const slosh::SlicerBank bank = slosh::SlicerBank::sample(3, 6, 11);
  Eigen::MatrixXd pts(5, 3);
  pts << 0.1, -0.7, 0.3, 1.2, 0.0, -0.4, -0.9, 0.5, 0.5, 0.2, 0.2, 0.2, -1.0,
      0.8, -0.3;

  // Orthogonal Q from a QR factorization of a fixed matrix.
  Eigen::MatrixXd seed_mat(3, 3);
  seed_mat << 1, 2, 0, -1, 1, 3, 0, 2, 1;
  const Eigen::MatrixXd q_mat =
      Eigen::HouseholderQR<Eigen::MatrixXd>(seed_mat).householderQ();

  // project(bank, X Q^T) == project(bank Q, X): rotating the points is the
  // same as counter-rotating the directions.
  Eigen::MatrixXd rotated_dirs = bank.directions() * q_mat;
  for (int l = 0; l < rotated_dirs.rows(); ++l) {
    rotated_dirs.row(l) /= rotated_dirs.row(l).norm();
  }
  const slosh::SlicerBank rotated_bank =
      slosh::SlicerBank::from_directions(rotated_dirs);
  const Eigen::MatrixXd lhs =
      slosh::project(bank, Eigen::MatrixXd(pts * q_mat.transpose()));
  const Eigen::MatrixXd rhs = slosh::project(rotated_bank, pts);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);

  // Linearity in the points.
  const Eigen::MatrixXd scaled = slosh::project(bank, Eigen::MatrixXd(2.5 * pts));
  CHECK((scaled - 2.5 * slosh::project(bank, pts)).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("bank save/load round-trips bit-identically") {
  const testsupport::TempDir tmp("slicing");
  const slosh::SlicerBank bank = slosh::SlicerBank::sample(5, 9, 777);
  const std::string path = tmp.file("bank.slb");
  bank.save(path);
  const slosh::SlicerBank loaded = slosh::SlicerBank::load(path);
  CHECK(loaded.seed() == bank.seed());
  CHECK(loaded.directions() == bank.directions());
}

}  // namespace
