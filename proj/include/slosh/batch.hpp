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

/// A batch of embedded sets, one fixed-length float32 vector per record.
/// Written with magic "SWE1" when method == "swe" (vector length L*M), and
/// with magic "POOL" plus the method tag otherwise (L = 1, M = vector
/// length). The header records the provenance needed to reproduce the batch:
/// bank seed and reference digest for SWE, zeros for poolings.
struct EmbeddingBatch {
  std::uint32_t L = 0;
  std::uint32_t M = 0;
  std::uint32_t d = 0;  // input point dimension
  std::uint64_t bank_seed = 0;
  std::uint64_t ref_digest = 0;
  std::string method = "swe";
  std::vector<std::int64_t> ids;
  std::vector<std::int32_t> labels;
  std::vector<float> data;  // count * (L*M), record-major

  std::size_t count() const { return ids.size(); }
  std::size_t vector_length() const {
    return static_cast<std::size_t>(L) * M;
  }
  /// Record i as a double matrix row, for indexing/queries.
  Eigen::VectorXd record(std::size_t i) const;
  /// All records as a count x (L*M) double matrix.
  Eigen::MatrixXd to_matrix() const;

  void append(std::int64_t id, std::int32_t label, const Eigen::VectorXd& v);

  std::uint64_t digest() const;
};

void save_batch(const EmbeddingBatch& batch, const std::string& path);
EmbeddingBatch load_batch(const std::string& path);

}  // namespace slosh
