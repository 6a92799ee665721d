// Copyright 2026 The primegaps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "primegaps/errors.hpp"
#include "primegaps/sieve.hpp"

using namespace primegaps;
using u64 = std::uint64_t;

namespace {

std::vector<u64> stream(const SegmentedSieve& s, u64 lo, u64 hi) {
  std::vector<u64> out;
  s.stream_primes(lo, hi, [&](u64 p) { out.push_back(p); });
  return out;
}

SegmentedSieve small_sieve(u64 limit, unsigned threads = 1) {
  SieveConfig cfg;
  cfg.limit = limit;
  cfg.segment_bits = kMinSegmentBits;
  cfg.threads = threads;
  return SegmentedSieve(cfg);
}

}  // namespace

TEST_CASE("base_primes small cases") {
  CHECK(base_primes(10) == std::vector<u64>{2, 3, 5, 7});
  CHECK(base_primes(2) == std::vector<u64>{2});
  CHECK(base_primes(30) == std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(base_primes(100000) == oracle::primes_in(2, 100001));
}

TEST_CASE("base_primes bounds") {
  CHECK_THROWS_AS(base_primes(1), BoundsError);
  CHECK_THROWS_AS(base_primes((u64{1} << 32) + 1), BoundsError);
}

TEST_CASE("base_primes above the small-sieve cutoff") {
  const auto p = base_primes(3000000);
  CHECK(p.size() == 216816);
  CHECK(p.back() == 2999999);
}

TEST_CASE("stream_primes examples") {
  const auto s = small_sieve(1000);
  CHECK(stream(s, 1, 20) == std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19});
  CHECK(stream(s, 89, 98) == std::vector<u64>{89, 97});
  CHECK(stream(s, 24, 28).empty());
  CHECK(stream(s, 3, 4) == std::vector<u64>{3});
  CHECK(stream(s, 2, 3) == std::vector<u64>{2});
}

TEST_CASE("stream_primes bounds") {
  const auto s = small_sieve(1000);
  CHECK_THROWS_AS(stream(s, 10, 1001), BoundsError);
  CHECK_THROWS_AS(stream(s, 20, 10), BoundsError);
  CHECK(stream(s, 10, 10).empty());
}

TEST_CASE("config validation") {
  SieveConfig cfg;
  cfg.segment_bits = 1000;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.segment_bits = kMinSegmentBits / 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.segment_bits = kMinSegmentBits;
  cfg.limit = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.limit = kMaxSieveLimit;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.limit = kMaxSieveLimit - 1;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("membership matches trial division up to 10^7") {
  const u64 n = 10000000;
  const auto s = small_sieve(n + 1);
  std::vector<bool> member(n + 1, false);
  u64 prev = 0;
  bool ascending = true;
  s.stream_primes(0, n + 1, [&](u64 p) {
    ascending = ascending && p > prev;
    prev = p;
    member[p] = true;
  });
  CHECK(ascending);
  u64 mismatches = 0;
  for (u64 k = 0; k <= n; ++k) mismatches += member[k] != oracle::is_prime(k);
  CHECK(mismatches == 0);
}

TEST_CASE("segment stitching on random triples") {
  std::mt19937_64 rng(20260101);
  const u64 top = 1000000000;
  const auto s = small_sieve(top + 1);
  for (int trial = 0; trial < 40; ++trial) {
    const u64 a = 2 + rng() % (top - 3000000);
    const u64 b = a + 1 + rng() % 1000000;
    const u64 c = b + 1 + rng() % 1000000;
    auto left = stream(s, a, b);
    const auto right = stream(s, b, c);
    left.insert(left.end(), right.begin(), right.end());
    CHECK(left == stream(s, a, c));
  }
}

TEST_CASE("random windows agree with trial division") {
  std::mt19937_64 rng(7);
  const u64 top = u64{1} << 40;
  const auto s = small_sieve(top);
  for (int trial = 0; trial < 10; ++trial) {
    const u64 lo = rng() % (top - 10000);
    const u64 hi = lo + 1 + rng() % 5000;
    CHECK(stream(s, lo, hi) == oracle::primes_in(lo, hi));
  }
}

TEST_CASE("prime_count") {
  CHECK(prime_count(10) == 4);
  CHECK(prime_count(1) == 0);
  CHECK(prime_count(0) == 0);
  CHECK(prime_count(2) == 1);
  CHECK(prime_count(1000000) == 78498);
  CHECK(prime_count(u64{1} << 32) == 203280221);
  const auto s = small_sieve(200001);
  for (u64 x : {3ULL, 97ULL, 1000ULL, 65535ULL, 131072ULL, 200000ULL}) {
    CHECK(s.prime_count(x) == stream(s, 2, x + 1).size());
  }
}

TEST_CASE("concurrent sieving delivers the same ordered stream") {
  const u64 limit = 20000000;
  const auto one = small_sieve(limit, 1);
  const auto four = small_sieve(limit, 4);
  CHECK(stream(one, 5, limit) == stream(four, 5, limit));
}

TEST_CASE("segment tail bits stay composite") {
  const auto s = small_sieve(1000);
  Segment seg;
  seg.base = 100;
  seg.slots = 10;
  s.sieve_segment(seg);
  std::vector<u64> got;
  seg.for_each_prime([&](u64 p) { got.push_back(p); });
  CHECK(got == std::vector<u64>{101, 103, 107, 109, 113});
  CHECK(seg.count_primes() == 5);
  CHECK(seg.end() == 120);
}
