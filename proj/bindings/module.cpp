/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "slosh/dataio.hpp"
#include "slosh/lsh.hpp"
#include "slosh/ot.hpp"
#include "slosh/poolings.hpp"
#include "slosh/retrieval.hpp"
#include "slosh/slicing.hpp"
#include "slosh/swe.hpp"

namespace py = pybind11;

namespace {

slosh::PointSet make_set(const Eigen::MatrixXd& points) {
  slosh::PointSet s;
  s.points = points;
  return s;
}

slosh::SetDataset make_dataset(const std::vector<Eigen::MatrixXd>& sets,
                               const std::vector<int>& labels) {
  if (sets.empty()) throw std::invalid_argument("dataset must be non-empty");
  if (labels.size() != sets.size())
    throw std::invalid_argument("labels must match sets");
  slosh::SetDataset ds;
  ds.d = static_cast<int>(sets.front().cols());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    slosh::PointSet s;
    s.points = sets[i];
    s.id = static_cast<std::int64_t>(i);
    s.label = labels[i];
    ds.sets.push_back(std::move(s));
  }
  return ds;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sliced-Wasserstein set embeddings and LSH set retrieval";

  m.def(
      "sample_slicers",
      [](int d, int L, std::uint64_t seed) {
        return slosh::SlicerBank::sample(d, L, seed).directions();
      },
      py::arg("d"), py::arg("L"), py::arg("seed") = 0,
      "Sample L unit directions in R^d (rows of the returned matrix).");

  m.def(
      "wasserstein_1d",
      [](std::vector<double> a, std::vector<double> b) {
        return slosh::wasserstein_1d(
            slosh::EmpiricalQuantile::from_samples(std::move(a)),
            slosh::EmpiricalQuantile::from_samples(std::move(b)));
      },
      py::arg("a"), py::arg("b"),
      "Exact 2-Wasserstein distance between two 1-D samples of equal size "
      "(quantile-grid approximation otherwise).");

  m.def(
      "gsw_estimate",
      [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
         const Eigen::MatrixXd& directions) {
        const auto bank = slosh::SlicerBank::from_directions(directions);
        return slosh::gsw_estimate(make_set(x), make_set(y), bank).value;
      },
      py::arg("x"), py::arg("y"), py::arg("slicers"),
      "Monte-Carlo sliced-Wasserstein estimate over the given directions.");

  m.def(
      "swe_embed",
      [](const Eigen::MatrixXd& points, const Eigen::MatrixXd& ref_points,
         const Eigen::MatrixXd& directions) {
        const slosh::ReferenceSet ref(
            ref_points, slosh::SlicerBank::from_directions(directions));
        return slosh::embed(make_set(points), ref).vector;
      },
      py::arg("points"), py::arg("ref_points"), py::arg("slicers"),
      "Embed one set against a reference; the Euclidean distance between two "
      "embeddings equals the sliced-Wasserstein estimate between the sets "
      "when both match the reference cardinality.");

  m.def(
      "gem_pool",
      [](const Eigen::MatrixXd& points, int p_max) {
        return slosh::gem_pool(make_set(points), slosh::GemConfig{p_max});
      },
      py::arg("points"), py::arg("p_max") = 1,
      "Power means of |x| per feature for p = 1..p_max, concatenated.");

  m.def(
      "cov_pool",
      [](const Eigen::MatrixXd& points, double lam) {
        return slosh::cov_pool(make_set(points), slosh::CovConfig{lam});
      },
      py::arg("points"), py::arg("lambda") = 0.0,
      "Flattened unbiased covariance with a trace-scaled ridge.");

  m.def(
      "fspool_di",
      [](const Eigen::MatrixXd& points, int m_grid) {
        return slosh::fspool_di(make_set(points), slosh::FsPoolConfig{m_grid});
      },
      py::arg("points"), py::arg("m_grid"),
      "Per-feature sorted values resampled on a fixed quantile grid.");

  m.def(
      "gen_blobs",
      [](int classes, int sets_per_class, int d, int card_mean,
         double card_std, std::uint64_t seed) {
        const slosh::SetDataset ds = slosh::gen_blobs(
            classes, sets_per_class, d, card_mean, card_std, seed);
        std::vector<Eigen::MatrixXd> sets;
        std::vector<int> labels;
        for (const slosh::PointSet& s : ds.sets) {
          sets.push_back(s.points);
          labels.push_back(s.label);
        }
        return py::make_tuple(sets, labels);
      },
      py::arg("classes"), py::arg("sets_per_class"), py::arg("d"),
      py::arg("card_mean"), py::arg("card_std"), py::arg("seed") = 0,
      "Synthetic labeled sets: mirror-paired Gaussian mixtures whose paired "
      "classes share all first and second moments.");

  m.def(
      "evaluate_retrieval",
      [](const std::vector<Eigen::MatrixXd>& train_sets,
         const std::vector<int>& train_labels,
         const std::vector<Eigen::MatrixXd>& test_sets,
         const std::vector<int>& test_labels, const std::string& embedder,
         int L, int M, const std::string& reference, const std::string& index,
         const std::vector<int>& ks, int repeats, std::uint64_t seed) {
        slosh::SetDataset train = make_dataset(train_sets, train_labels);
        slosh::SetDataset test = make_dataset(test_sets, test_labels);
        // Distinct ids across the two splits so self-matches are only
        // possible when a test set really is a training set.
        for (std::size_t i = 0; i < test.sets.size(); ++i)
          test.sets[i].id = static_cast<std::int64_t>(train.sets.size() + i);
        slosh::PipelineConfig cfg;
        cfg.embedder = embedder;
        cfg.L = L;
        cfg.M = M;
        cfg.reference = reference;
        cfg.index = index;
        cfg.seed = seed;
        const slosh::EvalReport rep =
            slosh::evaluate(cfg, train, test, ks, repeats);
        py::dict out;
        out["method"] = rep.method;
        py::dict precision, accuracy;
        for (const int k : rep.ks) {
          precision[py::int_(k)] = rep.precision_mean.at(k);
          accuracy[py::int_(k)] = rep.accuracy_mean.at(k);
        }
        out["precision"] = precision;
        out["accuracy"] = accuracy;
        out["digest"] = rep.digest();
        return out;
      },
      py::arg("train_sets"), py::arg("train_labels"), py::arg("test_sets"),
      py::arg("test_labels"), py::arg("embedder") = "swe", py::arg("L") = 16,
      py::arg("M") = 0, py::arg("reference") = "kmeans",
      py::arg("index") = "bucket",
      py::arg("ks") = std::vector<int>{4}, py::arg("repeats") = 1,
      py::arg("seed") = 1,
      "Fit an embed->hash pipeline on the training sets and report "
      "Precision@k / majority-vote accuracy on the test sets.");
}
