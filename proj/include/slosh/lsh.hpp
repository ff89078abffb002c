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
#include <unordered_map>
#include <vector>

namespace slosh {

/// p-stable floor hash family: k functions u -> floor((a_j^T u + b_j) / omega)
/// with standard-normal a and b uniform in [0, omega). Regeneration from the
/// same (k, dim, omega, seed) is bit-identical.
class FloorHashFamily {
 public:
  FloorHashFamily(int k, int dim, double omega, std::uint64_t seed);

  int k() const { return static_cast<int>(a_.rows()); }
  int dim() const { return static_cast<int>(a_.cols()); }
  double omega() const { return omega_; }
  std::uint64_t seed() const { return seed_; }
  const Eigen::MatrixXd& a() const { return a_; }
  const Eigen::VectorXd& b() const { return b_; }

 private:
  Eigen::MatrixXd a_;  // k x dim
  Eigen::VectorXd b_;  // k, in [0, omega)
  double omega_;
  std::uint64_t seed_;
};

/// Component j = floor((a_j^T u + b_j) / omega).
std::vector<std::int64_t> floor_hash(const FloorHashFamily& fam,
                                     const Eigen::VectorXd& u);

/// Sign (hyperplane) hash family: k bits, bit j = [a_j^T u + b_j >= 0].
/// b defaults to zero (unbiased hyperplanes), giving scale-invariant codes.
class SignHashFamily {
 public:
  SignHashFamily(int k, int dim, std::uint64_t seed);
  SignHashFamily(int k, int dim, std::uint64_t seed, Eigen::VectorXd b);

  int k() const { return static_cast<int>(a_.rows()); }
  int dim() const { return static_cast<int>(a_.cols()); }
  std::uint64_t seed() const { return seed_; }
  const Eigen::MatrixXd& a() const { return a_; }
  const Eigen::VectorXd& b() const { return b_; }
  /// ceil(k / 64): number of 64-bit words in a packed code.
  int words() const { return (k() + 63) / 64; }

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  std::uint64_t seed_;
};

/// Packed k-bit code, bit j stored at word j/64, position j%64.
std::vector<std::uint64_t> sign_hash(const SignHashFamily& fam,
                                     const Eigen::VectorXd& u);

/// Hamming distance between two equal-length packed codes.
int hamming_distance(const std::vector<std::uint64_t>& x,
                     const std::vector<std::uint64_t>& y);

struct Neighbor {
  std::int64_t id = 0;
  std::int32_t label = -1;
  double distance = 0.0;  // Euclidean for bucket queries, Hamming for binary
};

struct QueryResult {
  std::vector<Neighbor> neighbors;
  /// True when fewer than the requested number of neighbors were available
  /// (empty buckets or a small index).
  bool underfull = false;
};

/// Multi-table LSH index: T generators of k floor hashes each; a query takes
/// the union of its matching buckets over all tables and reranks candidates
/// by exact embedding distance. Immutable after construction; concurrent
/// queries are safe.
class BucketIndex {
 public:
  BucketIndex(Eigen::MatrixXd records, std::vector<std::int64_t> ids,
              std::vector<std::int32_t> labels, int k, int T, double omega,
              std::uint64_t seed);

  QueryResult query(const Eigen::VectorXd& u, int k_neighbors) const;

  std::size_t size() const { return ids_.size(); }
  int dim() const { return static_cast<int>(records_.cols()); }
  int k() const { return k_; }
  int tables() const { return static_cast<int>(tables_.size()); }
  double omega() const { return omega_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<std::int64_t>& ids() const { return ids_; }
  const std::vector<std::int32_t>& labels() const { return labels_; }

  /// Digest over parameters, ids, labels and record bytes.
  std::uint64_t digest() const;

  void save(const std::string& path) const;
  static BucketIndex load(const std::string& path);

 private:
  struct TupleHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const;
  };
  using Table = std::unordered_map<std::vector<std::int64_t>, std::vector<int>,
                                   TupleHash>;

  void build_tables();

  Eigen::MatrixXd records_;  // count x dim
  std::vector<std::int64_t> ids_;
  std::vector<std::int32_t> labels_;
  int k_;
  double omega_;
  std::uint64_t seed_;
  std::vector<FloorHashFamily> fams_;  // one per table
  std::vector<Table> tables_;
};

/// Binary-code index: one k_bits sign code per record, queries ranked by
/// Hamming distance with ties broken by ascending record id.
class BinaryCodeIndex {
 public:
  BinaryCodeIndex(const Eigen::MatrixXd& records,
                  std::vector<std::int64_t> ids,
                  std::vector<std::int32_t> labels, int k_bits,
                  std::uint64_t seed);

  QueryResult query(const Eigen::VectorXd& u, int k_neighbors) const;

  std::size_t size() const { return ids_.size(); }
  int dim() const { return family_.dim(); }
  int k_bits() const { return family_.k(); }
  std::uint64_t seed() const { return family_.seed(); }
  const std::vector<std::int64_t>& ids() const { return ids_; }
  const std::vector<std::int32_t>& labels() const { return labels_; }
  const std::vector<std::uint64_t>& code(std::size_t i) const {
    return codes_[i];
  }

  std::uint64_t digest() const;

  void save(const std::string& path) const;
  static BinaryCodeIndex load(const std::string& path);

 private:
  BinaryCodeIndex(int k_bits, int dim, std::uint64_t seed);

  SignHashFamily family_;
  std::vector<std::int64_t> ids_;
  std::vector<std::int32_t> labels_;
  std::vector<std::vector<std::uint64_t>> codes_;
};

/// Convenience builders mirroring the index constructors; ids default to
/// 0..n-1 and labels to -1 when omitted.
BucketIndex build_bucket_index(const Eigen::MatrixXd& records, int k, int T,
                               double omega, std::uint64_t seed);
QueryResult query_bucket_index(const BucketIndex& idx, const Eigen::VectorXd& u,
                               int k_neighbors);
BinaryCodeIndex build_binary_index(const Eigen::MatrixXd& records, int k_bits,
                                   std::uint64_t seed);
QueryResult query_binary_index(const BinaryCodeIndex& idx,
                               const Eigen::VectorXd& u, int k_neighbors);

/// Default bucket width: median pairwise distance over a bootstrap of up to
/// 1000 record pairs (1.0 for a single-record input).
double default_bucket_width(const Eigen::MatrixXd& records, std::uint64_t seed);

}  // namespace slosh
