/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "slosh/lsh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <random>

#include "slosh/util.hpp"

namespace slosh {

FloorHashFamily::FloorHashFamily(int k, int dim, double omega,
                                 std::uint64_t seed)
    : omega_(omega), seed_(seed) {
  require(k >= 1, "FloorHashFamily: k must be >= 1");
  require(dim >= 1, "FloorHashFamily: dim must be >= 1");
  require(omega > 0.0, "FloorHashFamily: omega must be > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  a_.resize(k, dim);
  for (int j = 0; j < k; ++j)
    for (int c = 0; c < dim; ++c) a_(j, c) = gauss(rng);
  std::uniform_real_distribution<double> unif(0.0, omega);
  b_.resize(k);
  for (int j = 0; j < k; ++j) b_(j) = unif(rng);
}

std::vector<std::int64_t> floor_hash(const FloorHashFamily& fam,
                                     const Eigen::VectorXd& u) {
  require(static_cast<int>(u.size()) == fam.dim(),
          "floor_hash: vector dimension does not match family");
  const Eigen::VectorXd z = fam.a() * u + fam.b();
  std::vector<std::int64_t> code(static_cast<std::size_t>(fam.k()));
  for (int j = 0; j < fam.k(); ++j)
    code[static_cast<std::size_t>(j)] =
        static_cast<std::int64_t>(std::floor(z(j) / fam.omega()));
  return code;
}

SignHashFamily::SignHashFamily(int k, int dim, std::uint64_t seed)
    : SignHashFamily(k, dim, seed, Eigen::VectorXd::Zero(k)) {}

SignHashFamily::SignHashFamily(int k, int dim, std::uint64_t seed,
                               Eigen::VectorXd b)
    : b_(std::move(b)), seed_(seed) {
  require(k >= 1, "SignHashFamily: k must be >= 1");
  require(dim >= 1, "SignHashFamily: dim must be >= 1");
  require(static_cast<int>(b_.size()) == k,
          "SignHashFamily: bias length must equal k");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  a_.resize(k, dim);
  for (int j = 0; j < k; ++j)
    for (int c = 0; c < dim; ++c) a_(j, c) = gauss(rng);
}

std::vector<std::uint64_t> sign_hash(const SignHashFamily& fam,
                                     const Eigen::VectorXd& u) {
  require(static_cast<int>(u.size()) == fam.dim(),
          "sign_hash: vector dimension does not match family");
  const Eigen::VectorXd z = fam.a() * u + fam.b();
  std::vector<std::uint64_t> code(static_cast<std::size_t>(fam.words()), 0);
  for (int j = 0; j < fam.k(); ++j)
    if (z(j) >= 0.0)
      code[static_cast<std::size_t>(j / 64)] |= (std::uint64_t{1} << (j % 64));
  return code;
}

int hamming_distance(const std::vector<std::uint64_t>& x,
                     const std::vector<std::uint64_t>& y) {
  require(x.size() == y.size(), "hamming_distance: code lengths differ");
  int dist = 0;
  for (std::size_t w = 0; w < x.size(); ++w)
    dist += std::popcount(x[w] ^ y[w]);
  return dist;
}

// ---------------------------------------------------------------------------
// BucketIndex

std::size_t BucketIndex::TupleHash::operator()(
    const std::vector<std::int64_t>& v) const {
  return static_cast<std::size_t>(
      fnv1a64(v.data(), v.size() * sizeof(std::int64_t)));
}

BucketIndex::BucketIndex(Eigen::MatrixXd records,
                         std::vector<std::int64_t> ids,
                         std::vector<std::int32_t> labels, int k, int T,
                         double omega, std::uint64_t seed)
    : records_(std::move(records)),
      ids_(std::move(ids)),
      labels_(std::move(labels)),
      k_(k),
      omega_(omega),
      seed_(seed) {
  require(k >= 1, "BucketIndex: k must be >= 1");
  require(T >= 1, "BucketIndex: T must be >= 1");
  require(omega > 0.0, "BucketIndex: omega must be > 0");
  require(records_.rows() >= 1, "BucketIndex: records must be nonempty");
  require(records_.cols() >= 1, "BucketIndex: records must have dimension >= 1");
  require(ids_.size() == static_cast<std::size_t>(records_.rows()) &&
              labels_.size() == ids_.size(),
          "BucketIndex: ids/labels size must match record count");
  const int dim = static_cast<int>(records_.cols());
  fams_.reserve(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t)
    fams_.emplace_back(k, dim, omega, mix_seed(seed, static_cast<std::uint64_t>(t)));
  build_tables();
}

void BucketIndex::build_tables() {
  tables_.assign(fams_.size(), Table{});
  const int n = static_cast<int>(records_.rows());
  for (std::size_t t = 0; t < fams_.size(); ++t) {
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd u = records_.row(i).transpose();
      tables_[t][floor_hash(fams_[t], u)].push_back(i);
    }
  }
}

QueryResult BucketIndex::query(const Eigen::VectorXd& u,
                               int k_neighbors) const {
  require(static_cast<int>(u.size()) == dim(),
          "BucketIndex::query: vector dimension does not match index");
  require(k_neighbors >= 1, "BucketIndex::query: k_neighbors must be >= 1");

  std::vector<char> seen(ids_.size(), 0);
  std::vector<int> candidates;
  for (std::size_t t = 0; t < fams_.size(); ++t) {
    const auto it = tables_[t].find(floor_hash(fams_[t], u));
    if (it == tables_[t].end()) continue;
    for (const int i : it->second) {
      if (!seen[static_cast<std::size_t>(i)]) {
        seen[static_cast<std::size_t>(i)] = 1;
        candidates.push_back(i);
      }
    }
  }

  QueryResult res;
  res.neighbors.reserve(candidates.size());
  for (const int i : candidates) {
    Neighbor nb;
    nb.id = ids_[static_cast<std::size_t>(i)];
    nb.label = labels_[static_cast<std::size_t>(i)];
    nb.distance = (records_.row(i).transpose() - u).norm();
    res.neighbors.push_back(nb);
  }
  std::sort(res.neighbors.begin(), res.neighbors.end(),
            [](const Neighbor& x, const Neighbor& y) {
              if (x.distance != y.distance) return x.distance < y.distance;
              return x.id < y.id;
            });
  if (static_cast<int>(res.neighbors.size()) > k_neighbors)
    res.neighbors.resize(static_cast<std::size_t>(k_neighbors));
  res.underfull = static_cast<int>(res.neighbors.size()) < k_neighbors;
  return res;
}

std::uint64_t BucketIndex::digest() const {
  std::uint64_t h = fnv1a64("bucket");
  const std::uint32_t params[2] = {static_cast<std::uint32_t>(k_),
                                   static_cast<std::uint32_t>(tables_.size())};
  h = fnv1a64(params, sizeof(params), h);
  h = fnv1a64(&omega_, sizeof(omega_), h);
  h = fnv1a64(&seed_, sizeof(seed_), h);
  if (!ids_.empty()) {
    h = fnv1a64(ids_.data(), ids_.size() * sizeof(std::int64_t), h);
    h = fnv1a64(labels_.data(), labels_.size() * sizeof(std::int32_t), h);
  }
  for (Eigen::Index i = 0; i < records_.rows(); ++i)
    for (Eigen::Index j = 0; j < records_.cols(); ++j)
      h = fnv1a64(&records_(i, j), sizeof(double), h);
  return h;
}

void BucketIndex::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  io::write_magic(os, "SLSH");
  io::write_pod<std::uint32_t>(os, 1);  // variant: bucket
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(dim()));
  io::write_pod<std::uint64_t>(os, seed_);
  io::write_pod<std::uint64_t>(os, ids_.size());
  for (const std::int64_t id : ids_) io::write_pod<std::int64_t>(os, id);
  for (const std::int32_t lb : labels_) io::write_pod<std::int32_t>(os, lb);
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(k_));
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(tables_.size()));
  io::write_pod<double>(os, omega_);
  for (Eigen::Index i = 0; i < records_.rows(); ++i)
    for (Eigen::Index j = 0; j < records_.cols(); ++j)
      io::write_pod<double>(os, records_(i, j));
  if (!os) throw std::runtime_error("write failed for " + path);
}

BucketIndex BucketIndex::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  if (io::read_magic(is) != "SLSH")
    throw std::runtime_error(path + ": not an index file");
  if (io::read_pod<std::uint32_t>(is) != 1)
    throw std::runtime_error(path + ": not a bucket index");
  const auto dim = io::read_pod<std::uint32_t>(is);
  const auto seed = io::read_pod<std::uint64_t>(is);
  const auto count = io::read_pod<std::uint64_t>(is);
  std::vector<std::int64_t> ids(count);
  for (auto& id : ids) id = io::read_pod<std::int64_t>(is);
  std::vector<std::int32_t> labels(count);
  for (auto& lb : labels) lb = io::read_pod<std::int32_t>(is);
  const auto k = io::read_pod<std::uint32_t>(is);
  const auto T = io::read_pod<std::uint32_t>(is);
  const auto omega = io::read_pod<double>(is);
  Eigen::MatrixXd records(count, dim);
  for (std::uint64_t i = 0; i < count; ++i)
    for (std::uint32_t j = 0; j < dim; ++j)
      records(i, j) = io::read_pod<double>(is);
  // Hash families regenerate bit-identically from the seed, so the tables
  // are rebuilt rather than stored.
  return BucketIndex(std::move(records), std::move(ids), std::move(labels),
                     static_cast<int>(k), static_cast<int>(T), omega, seed);
}

// ---------------------------------------------------------------------------
// BinaryCodeIndex

BinaryCodeIndex::BinaryCodeIndex(const Eigen::MatrixXd& records,
                                 std::vector<std::int64_t> ids,
                                 std::vector<std::int32_t> labels, int k_bits,
                                 std::uint64_t seed)
    : family_(k_bits, static_cast<int>(records.cols()), seed),
      ids_(std::move(ids)),
      labels_(std::move(labels)) {
  require(records.rows() >= 1, "BinaryCodeIndex: records must be nonempty");
  require(records.cols() >= 1,
          "BinaryCodeIndex: records must have dimension >= 1");
  require(ids_.size() == static_cast<std::size_t>(records.rows()) &&
              labels_.size() == ids_.size(),
          "BinaryCodeIndex: ids/labels size must match record count");
  codes_.reserve(ids_.size());
  for (Eigen::Index i = 0; i < records.rows(); ++i)
    codes_.push_back(sign_hash(family_, records.row(i).transpose()));
}

BinaryCodeIndex::BinaryCodeIndex(int k_bits, int dim, std::uint64_t seed)
    : family_(k_bits, dim, seed) {}

QueryResult BinaryCodeIndex::query(const Eigen::VectorXd& u,
                                   int k_neighbors) const {
  require(static_cast<int>(u.size()) == dim(),
          "BinaryCodeIndex::query: vector dimension does not match index");
  require(k_neighbors >= 1, "BinaryCodeIndex::query: k_neighbors must be >= 1");
  const std::vector<std::uint64_t> qcode = sign_hash(family_, u);

  QueryResult res;
  res.neighbors.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    Neighbor nb;
    nb.id = ids_[i];
    nb.label = labels_[i];
    nb.distance = static_cast<double>(hamming_distance(qcode, codes_[i]));
    res.neighbors.push_back(nb);
  }
  std::sort(res.neighbors.begin(), res.neighbors.end(),
            [](const Neighbor& x, const Neighbor& y) {
              if (x.distance != y.distance) return x.distance < y.distance;
              return x.id < y.id;
            });
  if (static_cast<int>(res.neighbors.size()) > k_neighbors)
    res.neighbors.resize(static_cast<std::size_t>(k_neighbors));
  res.underfull = static_cast<int>(res.neighbors.size()) < k_neighbors;
  return res;
}

std::uint64_t BinaryCodeIndex::digest() const {
  std::uint64_t h = fnv1a64("binary");
  const std::uint32_t kb = static_cast<std::uint32_t>(k_bits());
  h = fnv1a64(&kb, sizeof(kb), h);
  const std::uint64_t seed = family_.seed();
  h = fnv1a64(&seed, sizeof(seed), h);
  if (!ids_.empty()) {
    h = fnv1a64(ids_.data(), ids_.size() * sizeof(std::int64_t), h);
    h = fnv1a64(labels_.data(), labels_.size() * sizeof(std::int32_t), h);
  }
  for (const auto& code : codes_)
    h = fnv1a64(code.data(), code.size() * sizeof(std::uint64_t), h);
  return h;
}

void BinaryCodeIndex::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  io::write_magic(os, "SLSH");
  io::write_pod<std::uint32_t>(os, 2);  // variant: binary codes
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(dim()));
  io::write_pod<std::uint64_t>(os, family_.seed());
  io::write_pod<std::uint64_t>(os, ids_.size());
  for (const std::int64_t id : ids_) io::write_pod<std::int64_t>(os, id);
  for (const std::int32_t lb : labels_) io::write_pod<std::int32_t>(os, lb);
  io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(k_bits()));
  for (const auto& code : codes_)
    for (const std::uint64_t w : code) io::write_pod<std::uint64_t>(os, w);
  if (!os) throw std::runtime_error("write failed for " + path);
}

BinaryCodeIndex BinaryCodeIndex::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  if (io::read_magic(is) != "SLSH")
    throw std::runtime_error(path + ": not an index file");
  if (io::read_pod<std::uint32_t>(is) != 2)
    throw std::runtime_error(path + ": not a binary-code index");
  const auto dim = io::read_pod<std::uint32_t>(is);
  const auto seed = io::read_pod<std::uint64_t>(is);
  const auto count = io::read_pod<std::uint64_t>(is);
  std::vector<std::int64_t> ids(count);
  for (auto& id : ids) id = io::read_pod<std::int64_t>(is);
  std::vector<std::int32_t> labels(count);
  for (auto& lb : labels) lb = io::read_pod<std::int32_t>(is);
  const auto k_bits = io::read_pod<std::uint32_t>(is);
  BinaryCodeIndex idx(static_cast<int>(k_bits), static_cast<int>(dim), seed);
  idx.ids_ = std::move(ids);
  idx.labels_ = std::move(labels);
  const std::size_t words = static_cast<std::size_t>((k_bits + 63) / 64);
  idx.codes_.resize(count);
  for (auto& code : idx.codes_) {
    code.resize(words);
    for (auto& w : code) w = io::read_pod<std::uint64_t>(is);
  }
  return idx;
}

// ---------------------------------------------------------------------------
// Free builders

namespace {
std::vector<std::int64_t> default_ids(Eigen::Index n) {
  std::vector<std::int64_t> ids(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    ids[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(i);
  return ids;
}
}  // namespace

BucketIndex build_bucket_index(const Eigen::MatrixXd& records, int k, int T,
                               double omega, std::uint64_t seed) {
  return BucketIndex(records, default_ids(records.rows()),
                     std::vector<std::int32_t>(
                         static_cast<std::size_t>(records.rows()), -1),
                     k, T, omega, seed);
}

QueryResult query_bucket_index(const BucketIndex& idx, const Eigen::VectorXd& u,
                               int k_neighbors) {
  return idx.query(u, k_neighbors);
}

BinaryCodeIndex build_binary_index(const Eigen::MatrixXd& records, int k_bits,
                                   std::uint64_t seed) {
  return BinaryCodeIndex(records, default_ids(records.rows()),
                         std::vector<std::int32_t>(
                             static_cast<std::size_t>(records.rows()), -1),
                         k_bits, seed);
}

QueryResult query_binary_index(const BinaryCodeIndex& idx,
                               const Eigen::VectorXd& u, int k_neighbors) {
  return idx.query(u, k_neighbors);
}

double default_bucket_width(const Eigen::MatrixXd& records,
                            std::uint64_t seed) {
  const Eigen::Index n = records.rows();
  if (n < 2) return 1.0;
  constexpr int kPairs = 1000;
  std::mt19937_64 rng(mix_seed(seed, fnv1a64("bucket-width")));
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  std::vector<double> dists;
  dists.reserve(kPairs);
  for (int p = 0; p < kPairs; ++p) {
    Eigen::Index i = pick(rng);
    Eigen::Index j = pick(rng);
    while (j == i) j = pick(rng);
    dists.push_back((records.row(i) - records.row(j)).norm());
  }
  std::nth_element(dists.begin(), dists.begin() + kPairs / 2, dists.end());
  double med = dists[kPairs / 2];
  if (med <= 0.0) med = 1.0;  // all-duplicate records; any positive width works
  return med;
}

}  // namespace slosh
