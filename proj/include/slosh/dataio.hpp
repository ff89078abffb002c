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

#include "slosh/types.hpp"

namespace slosh {

enum class DatasetFormat {
  kText,    // "SSD1" header line, human-diffable decimal records
  kBinary,  // "SSB1" magic, packed little-endian records
};

/// Writes a dataset. The text form round-trips bit-identically (17
/// significant digits); the binary twin stores raw doubles.
void save_dataset(const SetDataset& ds, const std::string& path,
                  DatasetFormat format = DatasetFormat::kText);

/// Reads either format, sniffing the leading magic. Malformed input raises
/// std::runtime_error naming the offending record index where applicable.
SetDataset load_dataset(const std::string& path);

/// Synthetic labeled set data. Each class is a fixed zero-mean, two-component
/// Gaussian mixture along a class-pair axis; classes 2p and 2p+1 share the
/// axis and all first and second moments and differ only in the sign of the
/// third moment (one mixture is the mirror image of the other). Retrieval on
/// these blobs therefore measures sensitivity to distribution shape rather
/// than to means or covariances. Cardinalities are floor(Normal(card_mean,
/// card_std)) clamped to >= 1. Deterministic under seed.
SetDataset gen_blobs(int classes, int sets_per_class, int d, int card_mean,
                     double card_std, std::uint64_t seed);

/// Min-max scales a set into [0,1]^d with a single global scale (largest
/// coordinate range) after translating the per-coordinate minima to 0, so
/// pairwise distance ratios are preserved. A degenerate set (all points
/// equal) maps to the cube center.
PointSet normalize_unit_cube(const PointSet& set);

/// Builds an M x d reference from a dataset.
///   kmeans     — k-means++ seeding + Lloyd's algorithm over the pooled
///                elements (subsampled to <= 100000), 100-iteration cap,
///                tolerance 1e-6 on centroid movement.
///   random-set — one dataset member resampled to M points (without
///                replacement when it is large enough, with replacement
///                otherwise).
///   uniform    — i.i.d. uniform over the dataset's bounding box.
///   normal     — i.i.d. Gaussian with the pooled elements' per-coordinate
///                mean and variance (diagonal covariance).
Eigen::MatrixXd build_reference(const SetDataset& ds, const std::string& method,
                                int M, std::uint64_t seed);

}  // namespace slosh
