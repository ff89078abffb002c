/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "slosh/batch.hpp"

#include <fstream>

#include "slosh/util.hpp"

namespace slosh {

Eigen::VectorXd EmbeddingBatch::record(std::size_t i) const {
  const std::size_t len = vector_length();
  Eigen::VectorXd v(len);
  for (std::size_t j = 0; j < len; ++j)
    v(static_cast<Eigen::Index>(j)) =
        static_cast<double>(data[i * len + j]);
  return v;
}

Eigen::MatrixXd EmbeddingBatch::to_matrix() const {
  const std::size_t len = vector_length();
  Eigen::MatrixXd m(count(), len);
  for (std::size_t i = 0; i < count(); ++i)
    for (std::size_t j = 0; j < len; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(data[i * len + j]);
  return m;
}

void EmbeddingBatch::append(std::int64_t id, std::int32_t label,
                            const Eigen::VectorXd& v) {
  require(static_cast<std::size_t>(v.size()) == vector_length(),
          "EmbeddingBatch::append: vector length does not match batch shape");
  ids.push_back(id);
  labels.push_back(label);
  for (Eigen::Index j = 0; j < v.size(); ++j)
    data.push_back(static_cast<float>(v(j)));
}

std::uint64_t EmbeddingBatch::digest() const {
  std::uint64_t h = fnv1a64(method);
  const std::uint32_t shape[3] = {L, M, d};
  h = fnv1a64(shape, sizeof(shape), h);
  h = fnv1a64(&bank_seed, sizeof(bank_seed), h);
  h = fnv1a64(&ref_digest, sizeof(ref_digest), h);
  if (!ids.empty()) {
    h = fnv1a64(ids.data(), ids.size() * sizeof(std::int64_t), h);
    h = fnv1a64(labels.data(), labels.size() * sizeof(std::int32_t), h);
    h = fnv1a64(data.data(), data.size() * sizeof(float), h);
  }
  return h;
}

void save_batch(const EmbeddingBatch& batch, const std::string& path) {
  require(batch.vector_length() > 0, "save_batch: batch shape is unset");
  require(batch.ids.size() == batch.labels.size() &&
              batch.data.size() == batch.count() * batch.vector_length(),
          "save_batch: inconsistent record arrays");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  const bool is_swe = batch.method == "swe";
  io::write_magic(os, is_swe ? "SWE1" : "POOL");
  io::write_pod<std::uint64_t>(os, batch.count());
  io::write_pod<std::uint32_t>(os, batch.L);
  io::write_pod<std::uint32_t>(os, batch.M);
  io::write_pod<std::uint32_t>(os, batch.d);
  io::write_pod<std::uint64_t>(os, batch.bank_seed);
  io::write_pod<std::uint64_t>(os, batch.ref_digest);
  if (!is_swe) {
    io::write_pod<std::uint32_t>(os,
                                 static_cast<std::uint32_t>(batch.method.size()));
    os.write(batch.method.data(),
             static_cast<std::streamsize>(batch.method.size()));
  }
  const std::size_t len = batch.vector_length();
  for (std::size_t i = 0; i < batch.count(); ++i) {
    io::write_pod<std::int64_t>(os, batch.ids[i]);
    io::write_pod<std::int32_t>(os, batch.labels[i]);
    io::write_floats(os, batch.data.data() + i * len, len);
  }
  if (!os) throw std::runtime_error("write failed for " + path);
}

EmbeddingBatch load_batch(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  const std::string magic = io::read_magic(is);
  if (magic != "SWE1" && magic != "POOL")
    throw std::runtime_error(path + ": not an embedding batch file");
  EmbeddingBatch batch;
  const auto count = io::read_pod<std::uint64_t>(is);
  batch.L = io::read_pod<std::uint32_t>(is);
  batch.M = io::read_pod<std::uint32_t>(is);
  batch.d = io::read_pod<std::uint32_t>(is);
  batch.bank_seed = io::read_pod<std::uint64_t>(is);
  batch.ref_digest = io::read_pod<std::uint64_t>(is);
  if (magic == "POOL") {
    const auto method_len = io::read_pod<std::uint32_t>(is);
    if (method_len == 0 || method_len > 64)
      throw std::runtime_error(path + ": corrupt method tag");
    batch.method.resize(method_len);
    is.read(batch.method.data(), method_len);
    if (!is) throw std::runtime_error(path + ": truncated method tag");
  }
  if (batch.vector_length() == 0)
    throw std::runtime_error(path + ": corrupt header (zero vector length)");
  batch.ids.resize(count);
  batch.labels.resize(count);
  batch.data.resize(count * batch.vector_length());
  const std::size_t len = batch.vector_length();
  for (std::uint64_t i = 0; i < count; ++i) {
    batch.ids[i] = io::read_pod<std::int64_t>(is);
    batch.labels[i] = io::read_pod<std::int32_t>(is);
    io::read_floats(is, batch.data.data() + i * len, len);
  }
  return batch;
}

}  // namespace slosh
