/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "slosh/swe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "slosh/util.hpp"

namespace slosh {

ReferenceSet::ReferenceSet(Eigen::MatrixXd points, SlicerBank bank,
                           ReferenceProvenance provenance)
    : points_(std::move(points)),
      bank_(std::move(bank)),
      provenance_(std::move(provenance)) {
  require(points_.rows() > 0, "ReferenceSet: reference must be non-empty");
  require(points_.cols() == bank_.dim(),
          "ReferenceSet: reference dimension does not match bank dimension");

  const int M = static_cast<int>(points_.rows());
  const int L = bank_.num_slices();
  proj_ = points_ * bank_.directions().transpose();  // M x L
  perm_.resize(M, L);
  rank_.resize(M, L);
  std::vector<double> col(static_cast<std::size_t>(M));
  for (int l = 0; l < L; ++l) {
    for (int m = 0; m < M; ++m) col[static_cast<std::size_t>(m)] = proj_(m, l);
    const std::vector<int> order = argsort(col.data(), M);
    for (int k = 0; k < M; ++k) {
      perm_(k, l) = order[static_cast<std::size_t>(k)];
      rank_(order[static_cast<std::size_t>(k)], l) = k;
    }
  }
}

std::uint64_t ReferenceSet::digest() const {
  std::uint64_t h = fnv1a64(points_.data(),
                            static_cast<std::size_t>(points_.size()) *
                                sizeof(double));
  h = fnv1a64(bank_.directions().data(),
              static_cast<std::size_t>(bank_.directions().size()) *
                  sizeof(double),
              h);
  const std::uint64_t bank_seed = bank_.seed();
  h = fnv1a64(&bank_seed, sizeof(bank_seed), h);
  h = fnv1a64(provenance_.method.data(), provenance_.method.size(), h);
  h = fnv1a64(&provenance_.seed, sizeof(provenance_.seed), h);
  return h;
}

void ReferenceSet::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  io::write_magic(os, "SREF");
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(size()));
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(dim()));
  io::write_pod<std::uint32_t>(
      os, static_cast<std::uint32_t>(provenance_.method.size()));
  os.write(provenance_.method.data(),
           static_cast<std::streamsize>(provenance_.method.size()));
  io::write_pod<std::uint64_t>(os, provenance_.seed);
  for (int m = 0; m < size(); ++m)
    for (int j = 0; j < dim(); ++j) io::write_pod<double>(os, points_(m, j));
  // The bank rides along so one file restores the full embedding recipe.
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(num_slices()));
  io::write_pod<std::uint64_t>(os, bank_.seed());
  for (int l = 0; l < num_slices(); ++l)
    for (int j = 0; j < dim(); ++j)
      io::write_pod<double>(os, bank_.directions()(l, j));
  if (!os) throw std::runtime_error("write failed for " + path);
}

ReferenceSet ReferenceSet::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  if (io::read_magic(is) != "SREF")
    throw std::runtime_error(path + ": not a reference file");
  const auto M = io::read_pod<std::uint32_t>(is);
  const auto d = io::read_pod<std::uint32_t>(is);
  const auto method_len = io::read_pod<std::uint32_t>(is);
  if (M == 0 || d == 0 || method_len > 64)
    throw std::runtime_error(path + ": corrupt header");
  ReferenceProvenance prov;
  prov.method.resize(method_len);
  is.read(prov.method.data(), method_len);
  prov.seed = io::read_pod<std::uint64_t>(is);
  Eigen::MatrixXd points(M, d);
  for (std::uint32_t m = 0; m < M; ++m)
    for (std::uint32_t j = 0; j < d; ++j)
      points(m, j) = io::read_pod<double>(is);
  const auto L = io::read_pod<std::uint32_t>(is);
  const auto bank_seed = io::read_pod<std::uint64_t>(is);
  if (L == 0) throw std::runtime_error(path + ": corrupt bank header");
  Eigen::MatrixXd dirs(L, d);
  for (std::uint32_t l = 0; l < L; ++l)
    for (std::uint32_t j = 0; j < d; ++j) dirs(l, j) = io::read_pod<double>(is);
  if (!is) throw std::runtime_error(path + ": truncated file");
  return ReferenceSet(std::move(points),
                      SlicerBank::from_directions(std::move(dirs), bank_seed),
                      std::move(prov));
}

Eigen::MatrixXd monge_coupling(const Eigen::MatrixXd& set_projections,
                               const ReferenceSet& ref) {
  const int N = static_cast<int>(set_projections.rows());
  const int L = ref.num_slices();
  const int M = ref.size();
  require(N > 0, "monge_coupling: input set must be non-empty");
  require(static_cast<int>(set_projections.cols()) == L,
          "monge_coupling: projection column count does not match bank");

  Eigen::MatrixXd coupling(M, L);
  std::vector<double> col(static_cast<std::size_t>(N));
  for (int l = 0; l < L; ++l) {
    for (int n = 0; n < N; ++n) col[static_cast<std::size_t>(n)] = set_projections(n, l);
    std::sort(col.begin(), col.end());
    if (N == M) {
      // Equal cardinalities: the map sends the m-th reference point to the
      // input order statistic of the same rank, exactly.
      for (int m = 0; m < M; ++m)
        coupling(m, l) = col[static_cast<std::size_t>(ref.rank()(m, l))];
    } else {
      const EmpiricalQuantile q = EmpiricalQuantile::from_sorted(col);
      for (int m = 0; m < M; ++m)
        coupling(m, l) = q.at_grid(ref.rank()(m, l) + 1, M);
    }
  }
  return coupling;
}

SweEmbedding embed(const PointSet& set, const ReferenceSet& ref) {
  require(set.size() > 0, "embed: input set must be non-empty");
  require(set.dim() == ref.dim(),
          "embed: set dimension does not match reference dimension");
  const int L = ref.num_slices();
  const int M = ref.size();

  const Eigen::MatrixXd proj = project(ref.bank(), set.points);  // N x L
  const Eigen::MatrixXd coupling = monge_coupling(proj, ref);    // M x L

  SweEmbedding e;
  e.L = L;
  e.M = M;
  e.vector.resize(static_cast<Eigen::Index>(L) * M);
  const double scale = 1.0 / std::sqrt(static_cast<double>(L) * M);
  for (int l = 0; l < L; ++l)
    for (int m = 0; m < M; ++m)
      e.vector(static_cast<Eigen::Index>(l) * M + m) =
          (coupling(m, l) - ref.projections()(m, l)) * scale;
  return e;
}

SweEmbedding embed(const PointSet& set, const ReferenceSet& ref,
                   const SlicerBank& bank) {
  require(bank.directions().rows() == ref.bank().directions().rows() &&
              bank.directions().cols() == ref.bank().directions().cols() &&
              bank.directions() == ref.bank().directions(),
          "embed: bank does not match the reference's bound bank");
  return embed(set, ref);
}

double pairwise_distance(const SweEmbedding& a, const SweEmbedding& b) {
  require(a.L == b.L && a.M == b.M,
          "pairwise_distance: embeddings have different shapes");
  return (a.vector - b.vector).norm();
}

}  // namespace slosh
