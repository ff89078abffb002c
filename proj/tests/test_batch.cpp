/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include <doctest.h>

#include <Eigen/Dense>
#include <fstream>
#include <stdexcept>
#include <string>

#include "slosh/batch.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

namespace {

slosh::EmbeddingBatch make_batch(const std::string& method, int L, int M) {
  slosh::EmbeddingBatch batch;
  batch.method = method;
  batch.L = static_cast<std::uint32_t>(L);
  batch.M = static_cast<std::uint32_t>(M);
  batch.d = 3;
  batch.bank_seed = 42;
  batch.ref_digest = 0xabcdef;
  const Eigen::MatrixXd vals = oracles::gaussian_matrix(4, L * M, 7);
  for (int i = 0; i < 4; ++i) {
    batch.append(100 + i, i % 2, vals.row(i).transpose());
  }
  return batch;
}

TEST_CASE("append stores float32 truncations record-major") {
  slosh::EmbeddingBatch batch;
  batch.L = 1;
  batch.M = 2;
  Eigen::VectorXd v(2);
  v << 0.1, -2.5;
  batch.append(7, 3, v);
  CHECK(batch.count() == 1);
  CHECK(batch.ids[0] == 7);
  CHECK(batch.labels[0] == 3);
  CHECK(batch.data[0] == 0.1f);
  CHECK(batch.data[1] == -2.5f);
  // record() widens the stored floats back to doubles.
  const Eigen::VectorXd r = batch.record(0);
  CHECK(r[0] == static_cast<double>(0.1f));
  CHECK(r[1] == -2.5);
  CHECK_THROWS_AS(batch.append(8, 0, Eigen::VectorXd::Zero(3)),
                  std::invalid_argument);
}

TEST_CASE("to_matrix lays records out row-wise") {
  const slosh::EmbeddingBatch batch = make_batch("swe", 2, 3);
  const Eigen::MatrixXd m = batch.to_matrix();
  CHECK(m.rows() == 4);
  CHECK(m.cols() == 6);
  for (int i = 0; i < 4; ++i) {
    CHECK(m.row(i).transpose() == batch.record(static_cast<std::size_t>(i)));
  }
}

TEST_CASE("swe batches round-trip through the embedding magic") {
  const testsupport::TempDir tmp("batch");
  const slosh::EmbeddingBatch batch = make_batch("swe", 2, 3);
  const std::string path = tmp.file("batch.swe");
  slosh::save_batch(batch, path);

  //On-disk format starts with the embedding magic.
  std::ifstream is(path, std::ios::binary);
  char magic[4];
  is.read(magic, 4);
  CHECK(std::string(magic, 4) == "SWE1");

  const slosh::EmbeddingBatch loaded = slosh::load_batch(path);
  CHECK(loaded.method == "swe");
  CHECK(loaded.L == batch.L);
  CHECK(loaded.M == batch.M);
  CHECK(loaded.d == batch.d);
  CHECK(loaded.bank_seed == batch.bank_seed);
  CHECK(loaded.ref_digest == batch.ref_digest);
  CHECK(loaded.ids == batch.ids);
  CHECK(loaded.labels == batch.labels);
  CHECK(loaded.data == batch.data);
  CHECK(loaded.digest() == batch.digest());
}

TEST_CASE("pooling batches carry their method tag") {
  const testsupport::TempDir tmp("batch");
  const slosh::EmbeddingBatch batch = make_batch("gem-abs[p=2]", 1, 6);
  const std::string path = tmp.file("batch.pool");
  slosh::save_batch(batch, path);

  std::ifstream is(path, std::ios::binary);
  char magic[4];
  is.read(magic, 4);
  CHECK(std::string(magic, 4) == "POOL");

  const slosh::EmbeddingBatch loaded = slosh::load_batch(path);
  CHECK(loaded.method == "gem-abs[p=2]");
  CHECK(loaded.data == batch.data);
}

TEST_CASE("digest distinguishes contents and ignores nothing it shouldn't") {
  const slosh::EmbeddingBatch a = make_batch("swe", 2, 3);
  slosh::EmbeddingBatch b = a;
  CHECK(a.digest() == b.digest());
  b.data[0] += 1.0f;
  CHECK(a.digest() != b.digest());
  slosh::EmbeddingBatch c = a;
  c.labels[0] = 9;
  CHECK(a.digest() != c.digest());
  slosh::EmbeddingBatch d = a;
  d.method = "cov[lambda=0.5]";
  CHECK(a.digest() != d.digest());
}

TEST_CASE("loader rejects foreign magics and truncated files") {
  const testsupport::TempDir tmp("batch");
  const std::string other = tmp.file("other.bin");
  std::ofstream(other, std::ios::binary) << "SLB1xxxxxxxx";
  CHECK_THROWS_AS(slosh::load_batch(other), std::runtime_error);

  const slosh::EmbeddingBatch batch = make_batch("swe", 2, 3);
  const std::string full = tmp.file("full.swe");
  slosh::save_batch(batch, full);
  std::ifstream in(full, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const std::string cut = tmp.file("cut.swe");
  std::ofstream(cut, std::ios::binary)
      << bytes.substr(0, bytes.size() / 2);
  CHECK_THROWS_AS(slosh::load_batch(cut), std::runtime_error);
}

}  // namespace
