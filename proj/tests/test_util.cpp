/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include <doctest.h>

#include <atomic>
#include <cstdint>
#include <sstream>
#include <vector>

#include "slosh/util.hpp"

namespace {

TEST_CASE("require throws invalid_argument with the message") {
  CHECK_NOTHROW(slosh::require(true, "ok"));
  CHECK_THROWS_AS(slosh::require(false, "boom"), std::invalid_argument);
  try {
    slosh::require(false, "boom");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()) == "boom");
  }
}

TEST_CASE("fnv1a64 matches the reference constants") {
  // Offset basis for empty input; published FNV-1a test vector for "a".
  CHECK(slosh::fnv1a64(nullptr, 0) == 0xcbf29ce484222325ull);
  CHECK(slosh::fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
  // Chaining: hashing "ab" equals hashing "b" seeded with hash("a").
  CHECK(slosh::fnv1a64("ab", 2) ==
        slosh::fnv1a64("b", 1, slosh::fnv1a64("a", 1)));
  CHECK(slosh::fnv1a64(std::string("ab")) == slosh::fnv1a64("ab", 2));
}

TEST_CASE("mix_seed decorrelates salts and is deterministic") {
  const std::uint64_t base = 42;
  CHECK(slosh::mix_seed(base, 0) == slosh::mix_seed(base, 0));
  CHECK(slosh::mix_seed(base, 0) != slosh::mix_seed(base, 1));
  CHECK(slosh::mix_seed(base, 0) != slosh::mix_seed(base + 1, 0));
  // No fixed point at zero (a zero seed must still produce distinct streams).
  CHECK(slosh::mix_seed(0, 0) != 0);
}

TEST_CASE("argsort is stable: ties broken by original index") {
  const std::vector<double> v{3.0, 1.0, 3.0, 1.0, 2.0};
  const std::vector<int> order = slosh::argsort(v);
  CHECK(order == std::vector<int>{1, 3, 4, 0, 2});

  const std::vector<double> ties{5.0, 5.0, 5.0};
  CHECK(slosh::argsort(ties) == std::vector<int>{0, 1, 2});

  CHECK(slosh::argsort(std::vector<double>{}).empty());
}

TEST_CASE("parallel_for covers every index exactly once for any thread count") {
  const std::size_t n = 997;
  for (const int threads : {1, 2, 7, 64}) {
    std::vector<std::atomic<int>> hits(n);
    slosh::parallel_for(n, threads,
                        [&](std::size_t i) { hits[i].fetch_add(1); });
    for (std::size_t i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
  }
  // Per-slot writes are thread-count independent by construction.
  std::vector<double> one(n), many(n);
  slosh::parallel_for(n, 1, [&](std::size_t i) { one[i] = 3.0 * i + 1; });
  slosh::parallel_for(n, 13, [&](std::size_t i) { many[i] = 3.0 * i + 1; });
  CHECK(one == many);
}

TEST_CASE("pod and array io round-trips through a stream") {
  std::stringstream ss;
  slosh::io::write_magic(ss, "SLB1");
  slosh::io::write_pod<std::uint64_t>(ss, 0xdeadbeefcafef00dull);
  slosh::io::write_pod<std::int32_t>(ss, -7);
  const std::vector<double> xs{1.5, -2.25, 3.0};
  slosh::io::write_doubles(ss, xs.data(), xs.size());
  const std::vector<float> fs{0.5f, -1.0f};
  slosh::io::write_floats(ss, fs.data(), fs.size());

  CHECK(slosh::io::read_magic(ss) == "SLB1");
  CHECK(slosh::io::read_pod<std::uint64_t>(ss) == 0xdeadbeefcafef00dull);
  CHECK(slosh::io::read_pod<std::int32_t>(ss) == -7);
  std::vector<double> xs2(3);
  slosh::io::read_doubles(ss, xs2.data(), xs2.size());
  CHECK(xs2 == xs);
  std::vector<float> fs2(2);
  slosh::io::read_floats(ss, fs2.data(), fs2.size());
  CHECK(fs2 == fs);
  // Reading past the end reports truncation.
  CHECK_THROWS_AS(slosh::io::read_pod<std::uint64_t>(ss), std::runtime_error);
}

}  // namespace
