/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "slosh/retrieval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "slosh/dataio.hpp"
#include "slosh/util.hpp"

namespace slosh {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int median_cardinality(const SetDataset& ds) {
  std::vector<int> sizes;
  sizes.reserve(ds.sets.size());
  for (const PointSet& s : ds.sets) sizes.push_back(s.size());
  std::sort(sizes.begin(), sizes.end());
  const std::size_t n = sizes.size();
  if (n % 2 == 1) return sizes[n / 2];
  return static_cast<int>(
      std::lround(0.5 * (sizes[n / 2 - 1] + sizes[n / 2])));
}

std::string format_tag(const std::string& embedder, int L, int M,
                       const std::string& reference, int p_max, double lambda,
                       int M_grid, const std::string& index, int k_hash,
                       int T_tables, int k_bits) {
  std::ostringstream os;
  auto count_or_auto = [](int v) {
    return v > 0 ? std::to_string(v) : std::string("auto");
  };
  if (embedder == "swe") {
    os << "swe[L=" << L << ";M=" << count_or_auto(M) << ";ref=" << reference
       << "]";
  } else if (embedder == "gem") {
    os << "gem[p=" << p_max << "]";
  } else if (embedder == "cov") {
    os << "cov[lambda=" << lambda << "]";
  } else {
    os << "fspool_di[M=" << count_or_auto(M_grid) << "]";
  }
  if (index == "bucket")
    os << "+bucket[k=" << k_hash << ";T=" << T_tables << "]";
  else
    os << "+binary[bits=" << k_bits << "]";
  return os.str();
}

}  // namespace

std::string PipelineConfig::tag() const {
  return format_tag(embedder, L, M, reference, p_max, lambda, M_grid, index,
                    k_hash, T_tables, k_bits);
}

// ---------------------------------------------------------------------------
// Pipeline

Pipeline::Pipeline(PipelineConfig cfg) : cfg_(std::move(cfg)) {
  require(cfg_.embedder == "swe" || cfg_.embedder == "gem" ||
              cfg_.embedder == "cov" || cfg_.embedder == "fspool_di",
          "Pipeline: unknown embedder '" + cfg_.embedder +
              "' (expected swe | gem | cov | fspool_di)");
  require(cfg_.index == "bucket" || cfg_.index == "binary",
          "Pipeline: unknown index '" + cfg_.index +
              "' (expected bucket | binary)");
  require(cfg_.reference == "kmeans" || cfg_.reference == "random-set" ||
              cfg_.reference == "uniform" || cfg_.reference == "normal",
          "Pipeline: unknown reference builder '" + cfg_.reference +
              "' (expected kmeans | random-set | uniform | normal)");
  require(cfg_.L >= 1, "Pipeline: L must be >= 1");
  require(cfg_.M >= 0, "Pipeline: M must be >= 0 (0 = auto)");
  require(cfg_.p_max >= 1, "Pipeline: p_max must be >= 1");
  require(cfg_.lambda >= 0.0, "Pipeline: lambda must be >= 0");
  require(cfg_.M_grid >= 0, "Pipeline: M_grid must be >= 0 (0 = auto)");
  require(cfg_.k_hash >= 1, "Pipeline: k_hash must be >= 1");
  require(cfg_.T_tables >= 1, "Pipeline: T_tables must be >= 1");
  require(cfg_.omega >= 0.0, "Pipeline: omega must be >= 0 (0 = auto)");
  require(cfg_.k_bits >= 1, "Pipeline: k_bits must be >= 1");
}

void Pipeline::fit(const SetDataset& train) {
  require(!train.sets.empty(), "Pipeline::fit: training dataset is empty");
  for (std::size_t i = 0; i < train.sets.size(); ++i)
    require(train.sets[i].dim() == train.d,
            "Pipeline::fit: training record " + std::to_string(i) +
                " has inconsistent dimension");
  const auto t0 = std::chrono::steady_clock::now();

  train_ = std::make_shared<const SetDataset>(train);
  const int median = median_cardinality(train);
  resolved_M_ = cfg_.M > 0 ? cfg_.M : median;
  resolved_M_grid_ = cfg_.M_grid > 0 ? cfg_.M_grid : median;

  if (cfg_.embedder == "swe") {
    SlicerBank bank = SlicerBank::sample(train.d, cfg_.L,
                                         mix_seed(cfg_.seed, fnv1a64("bank")));
    const std::uint64_t ref_seed = mix_seed(cfg_.seed, fnv1a64("reference"));
    Eigen::MatrixXd ref_points =
        build_reference(train, cfg_.reference, resolved_M_, ref_seed);
    ReferenceProvenance prov;
    prov.method = cfg_.reference;
    prov.seed = ref_seed;
    ref_ = std::make_shared<const ReferenceSet>(std::move(ref_points),
                                                std::move(bank), prov);
  }

  // Embed every training set; slot-indexed writes keep the result
  // independent of the thread count.
  const std::size_t n = train.sets.size();
  std::vector<Eigen::VectorXd> embs(n);
  parallel_for(n, cfg_.threads,
               [&](std::size_t i) { embs[i] = embed_set_unchecked(train.sets[i]); });
  embedding_dim_ = static_cast<std::size_t>(embs[0].size());
  Eigen::MatrixXd records(n, embedding_dim_);
  std::vector<std::int64_t> ids(n);
  std::vector<std::int32_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(static_cast<std::size_t>(embs[i].size()) == embedding_dim_,
            "Pipeline::fit: embedding dimension varies across sets");
    records.row(static_cast<Eigen::Index>(i)) = embs[i].transpose();
    ids[i] = train.sets[i].id;
    labels[i] = train.sets[i].label;
  }

  if (cfg_.index == "bucket") {
    resolved_omega_ =
        cfg_.omega > 0.0
            ? cfg_.omega
            : default_bucket_width(records, mix_seed(cfg_.seed, fnv1a64("width")));
    bucket_ = std::make_shared<const BucketIndex>(
        std::move(records), std::move(ids), std::move(labels), cfg_.k_hash,
        cfg_.T_tables, resolved_omega_,
        mix_seed(cfg_.seed, fnv1a64("index")));
    binary_.reset();
  } else {
    binary_ = std::make_shared<const BinaryCodeIndex>(
        records, std::move(ids), std::move(labels), cfg_.k_bits,
        mix_seed(cfg_.seed, fnv1a64("index")));
    bucket_.reset();
  }
  fitted_ = true;
  fit_seconds_ = seconds_since(t0);
}

Eigen::VectorXd Pipeline::embed_set(const PointSet& X) const {
  if (!fitted_)
    throw std::logic_error("Pipeline::embed_set: fit() has not been called");
  return embed_set_unchecked(X);
}

Eigen::VectorXd Pipeline::embed_set_unchecked(const PointSet& X) const {
  if (cfg_.embedder == "swe") return embed(X, *ref_).vector;
  if (cfg_.embedder == "gem") return gem_pool(X, GemConfig{cfg_.p_max});
  if (cfg_.embedder == "cov") return cov_pool(X, CovConfig{cfg_.lambda});
  return fspool_di(X, FsPoolConfig{resolved_M_grid_});
}

QueryResult Pipeline::query(const PointSet& X, int k) const {
  if (!fitted_)
    throw std::logic_error("Pipeline::query: fit() has not been called");
  const Eigen::VectorXd u = embed_set_unchecked(X);
  return bucket_ ? bucket_->query(u, k) : binary_->query(u, k);
}

std::size_t Pipeline::index_size() const {
  if (!fitted_)
    throw std::logic_error("Pipeline::index_size: fit() has not been called");
  return bucket_ ? bucket_->size() : binary_->size();
}

std::uint64_t Pipeline::index_digest() const {
  if (!fitted_)
    throw std::logic_error("Pipeline::index_digest: fit() has not been called");
  return bucket_ ? bucket_->digest() : binary_->digest();
}

const SetDataset& Pipeline::train() const {
  if (!fitted_)
    throw std::logic_error("Pipeline::train: fit() has not been called");
  return *train_;
}

const ReferenceSet& Pipeline::reference() const {
  if (!fitted_ || !ref_)
    throw std::logic_error(
        "Pipeline::reference: no reference (unfitted or non-SWE embedder)");
  return *ref_;
}

std::string Pipeline::method_tag() const {
  if (!fitted_)
    throw std::logic_error("Pipeline::method_tag: fit() has not been called");
  return format_tag(cfg_.embedder, cfg_.L, resolved_M_, cfg_.reference,
                    cfg_.p_max, cfg_.lambda, resolved_M_grid_, cfg_.index,
                    cfg_.k_hash, cfg_.T_tables, cfg_.k_bits);
}

Pipeline fit(PipelineConfig cfg, const SetDataset& train) {
  Pipeline p(std::move(cfg));
  p.fit(train);
  return p;
}

QueryResult query(const Pipeline& p, const PointSet& X, int k) {
  return p.query(X, k);
}

// ---------------------------------------------------------------------------
// Metrics

double precision_at_k(const std::vector<std::int32_t>& neighbor_labels,
                      std::int32_t true_label, int k) {
  require(k >= 1, "precision_at_k: k must be >= 1");
  if (neighbor_labels.empty()) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
      std::fprintf(stderr,
                   "warning: precision_at_k on an empty neighbor list\n");
    return 0.0;
  }
  const std::size_t top = std::min<std::size_t>(neighbor_labels.size(),
                                                static_cast<std::size_t>(k));
  int hits = 0;
  for (std::size_t i = 0; i < top; ++i)
    if (neighbor_labels[i] == true_label) ++hits;
  return static_cast<double>(hits) / static_cast<double>(k);
}

std::int32_t majority_vote(const std::vector<std::int32_t>& neighbor_labels,
                           int k) {
  require(k >= 1, "majority_vote: k must be >= 1");
  if (neighbor_labels.empty()) return std::numeric_limits<std::int32_t>::min();
  const std::size_t top = std::min<std::size_t>(neighbor_labels.size(),
                                                static_cast<std::size_t>(k));
  // Count in rank order; on ties the earliest-ranked (nearest) label wins.
  std::vector<std::int32_t> seen;
  std::vector<int> counts;
  for (std::size_t i = 0; i < top; ++i) {
    const std::int32_t lb = neighbor_labels[i];
    bool found = false;
    for (std::size_t j = 0; j < seen.size(); ++j) {
      if (seen[j] == lb) {
        ++counts[j];
        found = true;
        break;
      }
    }
    if (!found) {
      seen.push_back(lb);
      counts.push_back(1);
    }
  }
  std::size_t best = 0;
  for (std::size_t j = 1; j < seen.size(); ++j)
    if (counts[j] > counts[best]) best = j;  // ties keep the earlier label
  return seen[best];
}

double majority_vote_accuracy(
    const std::vector<std::vector<std::int32_t>>& per_query_labels,
    const std::vector<std::int32_t>& true_labels, int k) {
  require(per_query_labels.size() == true_labels.size(),
          "majority_vote_accuracy: query/label count mismatch");
  require(!per_query_labels.empty(),
          "majority_vote_accuracy: no queries given");
  int correct = 0;
  for (std::size_t q = 0; q < per_query_labels.size(); ++q)
    if (majority_vote(per_query_labels[q], k) == true_labels[q]) ++correct;
  return static_cast<double>(correct) /
         static_cast<double>(per_query_labels.size());
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct SingleRun {
  std::map<int, double> precision;
  std::map<int, double> accuracy;
  std::vector<EvalReport::PerQuery> per_query;
  double fit_seconds = 0.0;
  double eval_seconds = 0.0;
  std::string method;
};

SingleRun run_once(const Pipeline& p, const SetDataset& test,
                   const std::vector<int>& ks) {
  require(!test.sets.empty(), "evaluate: test dataset is empty");
  require(test.d == p.train().d,
          "evaluate: test dimension does not match training dimension");
  require(!ks.empty(), "evaluate: ks must be non-empty");
  for (const int k : ks) require(k >= 1, "evaluate: every k must be >= 1");
  const int max_k = *std::max_element(ks.begin(), ks.end());

  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t nq = test.sets.size();
  std::vector<EvalReport::PerQuery> per_query(nq);
  parallel_for(nq, p.config().threads, [&](std::size_t q) {
    const PointSet& X = test.sets[q];
    // One extra neighbor so dropping the query itself (matched by id) still
    // leaves max_k entries.
    const QueryResult res = p.query(X, max_k + 1);
    EvalReport::PerQuery rec;
    rec.id = X.id;
    rec.true_label = X.label;
    for (const Neighbor& nb : res.neighbors) {
      if (nb.id == X.id) continue;
      if (static_cast<int>(rec.neighbor_ids.size()) >= max_k) break;
      rec.neighbor_ids.push_back(nb.id);
      rec.neighbor_labels.push_back(nb.label);
    }
    per_query[q] = std::move(rec);
  });

  SingleRun out;
  out.method = p.method_tag();
  out.fit_seconds = p.fit_seconds();
  std::vector<std::vector<std::int32_t>> label_lists(nq);
  std::vector<std::int32_t> true_labels(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    label_lists[q] = per_query[q].neighbor_labels;
    true_labels[q] = per_query[q].true_label;
  }
  for (const int k : ks) {
    double prec = 0.0;
    for (std::size_t q = 0; q < nq; ++q)
      prec += precision_at_k(label_lists[q], true_labels[q], k);
    out.precision[k] = prec / static_cast<double>(nq);
    out.accuracy[k] = majority_vote_accuracy(label_lists, true_labels, k);
  }
  out.per_query = std::move(per_query);
  out.eval_seconds = seconds_since(t0);
  return out;
}

EvalReport aggregate(const std::vector<SingleRun>& runs,
                     const std::vector<int>& ks, std::uint64_t seed) {
  EvalReport rep;
  rep.method = runs.front().method;
  rep.seed = seed;
  rep.repeats = static_cast<int>(runs.size());
  rep.num_queries = runs.front().per_query.size();
  rep.ks = ks;
  rep.per_query = runs.front().per_query;
  for (const int k : ks) {
    double pm = 0.0, am = 0.0;
    for (const SingleRun& r : runs) {
      pm += r.precision.at(k);
      am += r.accuracy.at(k);
    }
    pm /= runs.size();
    am /= runs.size();
    double pv = 0.0, av = 0.0;
    if (runs.size() > 1) {
      for (const SingleRun& r : runs) {
        pv += (r.precision.at(k) - pm) * (r.precision.at(k) - pm);
        av += (r.accuracy.at(k) - am) * (r.accuracy.at(k) - am);
      }
      pv /= (runs.size() - 1);
      av /= (runs.size() - 1);
    }
    rep.precision_mean[k] = pm;
    rep.precision_std[k] = std::sqrt(pv);
    rep.accuracy_mean[k] = am;
    rep.accuracy_std[k] = std::sqrt(av);
  }
  for (const SingleRun& r : runs) {
    rep.fit_seconds += r.fit_seconds;
    rep.eval_seconds += r.eval_seconds;
  }
  return rep;
}

}  // namespace

EvalReport evaluate(const Pipeline& p, const SetDataset& test,
                    const std::vector<int>& ks) {
  std::vector<SingleRun> runs;
  runs.push_back(run_once(p, test, ks));
  return aggregate(runs, ks, p.config().seed);
}

EvalReport evaluate(const PipelineConfig& cfg, const SetDataset& train,
                    const SetDataset& test, const std::vector<int>& ks,
                    int repeats) {
  require(repeats >= 1, "evaluate: repeats must be >= 1");
  std::vector<SingleRun> runs;
  runs.reserve(static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) {
    PipelineConfig sub = cfg;
    if (r > 0)
      sub.seed = mix_seed(cfg.seed,
                          fnv1a64("repeat") + static_cast<std::uint64_t>(r));
    Pipeline p(sub);
    p.fit(train);
    runs.push_back(run_once(p, test, ks));
  }
  return aggregate(runs, ks, cfg.seed);
}

// ---------------------------------------------------------------------------
// EvalReport rendering

std::uint64_t EvalReport::digest() const {
  std::uint64_t h = fnv1a64(method);
  h = fnv1a64(&seed, sizeof(seed), h);
  const std::int64_t header[2] = {repeats,
                                  static_cast<std::int64_t>(num_queries)};
  h = fnv1a64(header, sizeof(header), h);
  for (const int k : ks) {
    const double vals[4] = {precision_mean.at(k), precision_std.at(k),
                            accuracy_mean.at(k), accuracy_std.at(k)};
    h = fnv1a64(&k, sizeof(k), h);
    h = fnv1a64(vals, sizeof(vals), h);
  }
  for (const PerQuery& q : per_query) {
    h = fnv1a64(&q.id, sizeof(q.id), h);
    h = fnv1a64(&q.true_label, sizeof(q.true_label), h);
    if (!q.neighbor_ids.empty()) {
      h = fnv1a64(q.neighbor_ids.data(),
                  q.neighbor_ids.size() * sizeof(std::int64_t), h);
      h = fnv1a64(q.neighbor_labels.data(),
                  q.neighbor_labels.size() * sizeof(std::int32_t), h);
    }
  }
  return h;  // fit/eval seconds intentionally excluded
}

std::string EvalReport::to_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "method " << method << "\n";
  os << "seed " << seed << "\n";
  os << "repeats " << repeats << "\n";
  os << "queries " << num_queries << "\n";
  for (const int k : ks) {
    os << "k " << k << " precision_mean " << precision_mean.at(k)
       << " precision_std " << precision_std.at(k) << " accuracy_mean "
       << accuracy_mean.at(k) << " accuracy_std " << accuracy_std.at(k)
       << "\n";
  }
  os << "fit_seconds " << fit_seconds << "\n";
  os << "eval_seconds " << eval_seconds << "\n";
  for (const PerQuery& q : per_query) {
    os << "query " << q.id << " true " << q.true_label << " neighbors ";
    for (std::size_t i = 0; i < q.neighbor_ids.size(); ++i) {
      if (i > 0) os << ",";
      os << q.neighbor_ids[i] << ":" << q.neighbor_labels[i];
    }
    os << "\n";
  }
  return os.str();
}

std::string EvalReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "method,k,precision,accuracy,seconds\n";
  for (const int k : ks) {
    os << method << "," << k << "," << precision_mean.at(k) << ","
       << accuracy_mean.at(k) << "," << (fit_seconds + eval_seconds) << "\n";
  }
  return os.str();
}

}  // namespace slosh
