/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "slosh/slicing.hpp"

#include <fstream>
#include <random>

#include "slosh/util.hpp"

namespace slosh {

SlicerBank SlicerBank::sample(int d, int L, std::uint64_t seed) {
  require(d >= 1, "sample_slicers: d must be >= 1");
  require(L >= 1, "sample_slicers: L must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd dirs(L, d);
  for (int l = 0; l < L; ++l) {
    double norm2 = 0.0;
    do {
      for (int j = 0; j < d; ++j) {
        const double g = gauss(rng);
        dirs(l, j) = g;
        norm2 += g * g;
      }
    } while (norm2 == 0.0);
    dirs.row(l) /= std::sqrt(norm2);
  }
  return SlicerBank(std::move(dirs), seed);
}

SlicerBank SlicerBank::from_directions(Eigen::MatrixXd directions,
                                       std::uint64_t seed) {
  require(directions.rows() >= 1 && directions.cols() >= 1,
          "SlicerBank: direction matrix must be nonempty");
  for (Eigen::Index l = 0; l < directions.rows(); ++l) {
    require(std::abs(directions.row(l).norm() - 1.0) <= 1e-12,
            "SlicerBank: row " + std::to_string(l) + " is not unit norm");
  }
  return SlicerBank(std::move(directions), seed);
}

SlicerBank SlicerBank::identity(int d) {
  require(d >= 1, "SlicerBank::identity: d must be >= 1");
  return SlicerBank(Eigen::MatrixXd::Identity(d, d), 0);
}

Eigen::MatrixXd project(const SlicerBank& bank, const Eigen::MatrixXd& points) {
  require(points.cols() == bank.dim(),
          "project: point dimension does not match slicer bank");
  return points * bank.directions().transpose();
}

void SlicerBank::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  io::write_magic(os, "SLB1");
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(dim()));
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(num_slices()));
  io::write_pod<std::uint64_t>(os, seed_);
  // L*d doubles, row by row
  for (int l = 0; l < num_slices(); ++l)
    for (int j = 0; j < dim(); ++j) io::write_pod<double>(os, directions_(l, j));
  if (!os) throw std::runtime_error("write failed for " + path);
}

SlicerBank SlicerBank::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  const std::string magic = io::read_magic(is);
  if (magic != "SLB1")
    throw std::runtime_error(path + ": not a slicer bank file");
  const auto d = io::read_pod<std::uint32_t>(is);
  const auto L = io::read_pod<std::uint32_t>(is);
  const auto seed = io::read_pod<std::uint64_t>(is);
  if (d == 0 || L == 0) throw std::runtime_error(path + ": corrupt header");
  Eigen::MatrixXd dirs(L, d);
  for (std::uint32_t l = 0; l < L; ++l)
    for (std::uint32_t j = 0; j < d; ++j) dirs(l, j) = io::read_pod<double>(is);
  return SlicerBank(std::move(dirs), seed);
}

}  // namespace slosh
