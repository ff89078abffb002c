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

#include "slosh/ot.hpp"
#include "slosh/slicing.hpp"
#include "slosh/types.hpp"

namespace slosh {

struct ReferenceProvenance {
  std::string method = "custom";  // kmeans | random-set | uniform | normal | custom
  std::uint64_t seed = 0;
};

/// The shared M-point reference set, bound to a slicer bank. Projections of
/// the reference points along every slice and their sort permutations are
/// computed once here; embedding an input set then costs only its own
/// projection, per-slice sort and interpolation.
///
/// Immutable after construction; safe to share across threads.
class ReferenceSet {
 public:
  ReferenceSet(Eigen::MatrixXd points, SlicerBank bank,
               ReferenceProvenance provenance = {});

  const Eigen::MatrixXd& points() const { return points_; }        // M x d
  const Eigen::MatrixXd& projections() const { return proj_; }     // M x L
  const SlicerBank& bank() const { return bank_; }
  const ReferenceProvenance& provenance() const { return provenance_; }

  /// sort_perm(k, l) = index of the k-th smallest reference projection on
  /// slice l (stable argsort, ties by index).
  const Eigen::MatrixXi& sort_perm() const { return perm_; }
  /// rank(m, l) = position of reference point m in the sorted order of
  /// slice l; inverse of sort_perm per column.
  const Eigen::MatrixXi& rank() const { return rank_; }

  int size() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  int num_slices() const { return bank_.num_slices(); }

  /// Digest over reference points, bank directions and seeds; identifies a
  /// (reference, bank) pair in embedding artifacts.
  std::uint64_t digest() const;

  void save(const std::string& path) const;
  static ReferenceSet load(const std::string& path);

 private:
  Eigen::MatrixXd points_;
  SlicerBank bank_;
  ReferenceProvenance provenance_;
  Eigen::MatrixXd proj_;
  Eigen::MatrixXi perm_;
  Eigen::MatrixXi rank_;
};

/// The L*M-dimensional embedding vector, slice-major: slice l occupies
/// entries [l*M, (l+1)*M). Entries carry the 1/sqrt(L*M) weighting, so the
/// Euclidean distance between two embeddings equals the Monte-Carlo
/// sliced-Wasserstein estimate between the sets (exactly so when both sets
/// have cardinality M).
struct SweEmbedding {
  Eigen::VectorXd vector;  // length L*M
  int L = 0;
  int M = 0;
};

/// Per-slice optimal transport maps from the reference onto an input set,
/// evaluated at the reference positions: entry (m, l) is the input's slice-l
/// quantile at (rank(m, l) + 1) / M. When the input has exactly M elements
/// this is the rank(m, l)-th order statistic, with no interpolation.
Eigen::MatrixXd monge_coupling(const Eigen::MatrixXd& set_projections,
                               const ReferenceSet& ref);

/// Embeds a set against a reference: entry (l, m) =
/// (coupling(m, l) - ref projection(m, l)) / sqrt(L*M).
SweEmbedding embed(const PointSet& set, const ReferenceSet& ref);

/// Same, with the bank passed explicitly; it must be the bank the reference
/// was built against (checked).
SweEmbedding embed(const PointSet& set, const ReferenceSet& ref,
                   const SlicerBank& bank);

/// Euclidean distance between two embeddings of equal shape.
double pairwise_distance(const SweEmbedding& a, const SweEmbedding& b);

}  // namespace slosh
