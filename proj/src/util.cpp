/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "slosh/util.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace slosh {

std::vector<int> argsort(const double* values, int n) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [values](int a, int b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });
  return idx;
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (threads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t nworkers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(nworkers);
  for (std::size_t w = 0; w < nworkers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += nworkers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace io {

void write_magic(std::ostream& os, const char magic[4]) { os.write(magic, 4); }

std::string read_magic(std::istream& is) {
  char buf[4];
  is.read(buf, 4);
  if (!is) throw std::runtime_error("file too short to contain a magic tag");
  return std::string(buf, 4);
}

void write_doubles(std::ostream& os, const double* p, std::size_t n) {
  os.write(reinterpret_cast<const char*>(p),
           static_cast<std::streamsize>(n * sizeof(double)));
}

void read_doubles(std::istream& is, double* p, std::size_t n) {
  is.read(reinterpret_cast<char*>(p),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!is) throw std::runtime_error("unexpected end of file");
}

void write_floats(std::ostream& os, const float* p, std::size_t n) {
  os.write(reinterpret_cast<const char*>(p),
           static_cast<std::streamsize>(n * sizeof(float)));
}

void read_floats(std::istream& is, float* p, std::size_t n) {
  is.read(reinterpret_cast<char*>(p),
          static_cast<std::streamsize>(n * sizeof(float)));
  if (!is) throw std::runtime_error("unexpected end of file");
}

}  // namespace io

}  // namespace slosh
