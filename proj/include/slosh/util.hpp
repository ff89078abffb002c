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
#include <cstring>
#include <functional>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace slosh {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// FNV-1a over raw bytes. Used for artifact and report digests; stable for a
// fixed byte layout (all formats are little-endian).
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  return fnv1a64(s.data(), s.size(), h);
}

// splitmix64 finalizer; derives decorrelated sub-seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Argsort with ties broken by original index, so permutations are
// deterministic regardless of the sort algorithm.
std::vector<int> argsort(const double* values, int n);

inline std::vector<int> argsort(const std::vector<double>& v) {
  return argsort(v.data(), static_cast<int>(v.size()));
}

// Runs fn(i) for i in [0, n). Each index writes only its own output slot, so
// results are identical for any thread count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

namespace io {

template <class T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("unexpected end of file");
  return v;
}

void write_magic(std::ostream& os, const char magic[4]);
// Returns the 4-byte magic without consuming interpretation.
std::string read_magic(std::istream& is);

void write_doubles(std::ostream& os, const double* p, std::size_t n);
void read_doubles(std::istream& is, double* p, std::size_t n);
void write_floats(std::ostream& os, const float* p, std::size_t n);
void read_floats(std::istream& is, float* p, std::size_t n);

}  // namespace io

}  // namespace slosh
