/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "slosh/lsh.hpp"
#include "slosh/poolings.hpp"
#include "slosh/swe.hpp"
#include "slosh/types.hpp"

namespace slosh {

/// Everything needed to run one embed->hash->retrieve configuration.
/// Sub-seeds for the bank, reference, and index are derived from `seed`, so a
/// single value reproduces the whole pipeline.
struct PipelineConfig {
  std::string embedder = "swe";  // swe | gem | cov | fspool_di

  // swe parameters. M = 0 means "median training-set cardinality".
  int L = 16;
  int M = 0;
  std::string reference = "kmeans";  // kmeans | random-set | uniform | normal

  // pooling parameters. M_grid = 0 means "median training-set cardinality".
  int p_max = 1;         // gem
  double lambda = 0.5;   // cov
  int M_grid = 0;        // fspool_di

  // index parameters. omega = 0 means "median pairwise embedding distance".
  std::string index = "bucket";  // bucket | binary
  int k_hash = 8;
  int T_tables = 16;
  double omega = 0.0;
  int k_bits = 256;

  std::uint64_t seed = 1;
  int threads = 1;

  /// Short human-readable tag, e.g. "swe(L=16,M=64,ref=kmeans)+bucket".
  std::string tag() const;
};

struct EvalReport {
  std::string method;
  std::uint64_t seed = 0;
  int repeats = 1;
  std::size_t num_queries = 0;
  std::vector<int> ks;
  std::map<int, double> precision_mean;
  std::map<int, double> precision_std;
  std::map<int, double> accuracy_mean;
  std::map<int, double> accuracy_std;

  /// Top-k_max neighbors per query from the first repeat.
  struct PerQuery {
    std::int64_t id = 0;
    std::int32_t true_label = -1;
    std::vector<std::int64_t> neighbor_ids;
    std::vector<std::int32_t> neighbor_labels;
  };
  std::vector<PerQuery> per_query;

  double fit_seconds = 0.0;   // summed over repeats
  double eval_seconds = 0.0;  // summed over repeats

  /// Digest over methods, seeds, metrics and per-query records. Timings are
  /// excluded so reruns of the same seeds match exactly.
  std::uint64_t digest() const;
  /// Line-oriented key-value rendering (one record per line).
  std::string to_text() const;
  /// "method,k,precision,accuracy,seconds" table.
  std::string to_csv() const;
};

/// One fitted embed->index configuration over a training dataset.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig cfg);

  /// Builds the reference (SWE), embeds every training set, and indexes the
  /// embeddings. Deterministic given the config seed.
  void fit(const SetDataset& train);

  bool fitted() const { return fitted_; }
  /// Embeds X and returns up to k neighbors ranked by the index's metric.
  QueryResult query(const PointSet& X, int k) const;
  /// Embedding vector for one set under the fitted embedder.
  Eigen::VectorXd embed_set(const PointSet& X) const;

  const PipelineConfig& config() const { return cfg_; }
  /// Resolved values (M, M_grid, omega after defaulting). Valid after fit.
  int resolved_M() const { return resolved_M_; }
  int resolved_M_grid() const { return resolved_M_grid_; }
  double resolved_omega() const { return resolved_omega_; }
  std::size_t index_size() const;
  std::size_t embedding_dim() const { return embedding_dim_; }
  std::uint64_t index_digest() const;
  const SetDataset& train() const;
  const ReferenceSet& reference() const;
  /// Tag with auto-resolved parameters filled in. Valid after fit.
  std::string method_tag() const;

  double fit_seconds() const { return fit_seconds_; }

 private:
  Eigen::VectorXd embed_set_unchecked(const PointSet& X) const;

  PipelineConfig cfg_;
  bool fitted_ = false;
  int resolved_M_ = 0;
  int resolved_M_grid_ = 0;
  double resolved_omega_ = 0.0;
  std::size_t embedding_dim_ = 0;
  double fit_seconds_ = 0.0;
  std::shared_ptr<const SetDataset> train_;
  std::shared_ptr<const ReferenceSet> ref_;  // SWE only
  std::shared_ptr<const BucketIndex> bucket_;
  std::shared_ptr<const BinaryCodeIndex> binary_;
};

/// Convenience wrappers mirroring the pipeline methods.
Pipeline fit(PipelineConfig cfg, const SetDataset& train);
QueryResult query(const Pipeline& p, const PointSet& X, int k);

/// Fraction of the top-k retrieved labels equal to `true_label`. Neighbor
/// lists shorter than k count the absent slots as misses; an empty list
/// returns 0 and warns once per process.
double precision_at_k(const std::vector<std::int32_t>& neighbor_labels,
                      std::int32_t true_label, int k);

/// One query's vote: the modal label among its top-k neighbors, ties broken
/// by the label of the nearest neighbor within the tied set.
std::int32_t majority_vote(const std::vector<std::int32_t>& neighbor_labels,
                           int k);

/// Fraction of queries whose majority vote equals their true label.
double majority_vote_accuracy(
    const std::vector<std::vector<std::int32_t>>& per_query_labels,
    const std::vector<std::int32_t>& true_labels, int k);

/// Runs `repeats` independent fits (sub-seeded from cfg.seed) over `train`,
/// queries every test set at each k (neighbors sharing the query's id are
/// excluded), and aggregates mean/std per k. Per-query records come from the
/// first repeat.
EvalReport evaluate(const PipelineConfig& cfg, const SetDataset& train,
                    const SetDataset& test, const std::vector<int>& ks,
                    int repeats = 1);

/// Single-fit evaluation of an already-fitted pipeline.
EvalReport evaluate(const Pipeline& p, const SetDataset& test,
                    const std::vector<int>& ks);

}  // namespace slosh
