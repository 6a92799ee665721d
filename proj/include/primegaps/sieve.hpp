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

// Bit-packed segmented sieve of Eratosthenes over 64-bit ranges.
//
// Only odd numbers are stored. Slot i of a segment with base b stands for
// the odd number b + 2i + 1, and a set bit means "composite". The prime 2 is
// special-cased by the streaming helpers.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <future>
#include <span>
#include <vector>

#include "primegaps/errors.hpp"

namespace primegaps {

inline constexpr std::uint64_t kDefaultSegmentBits = std::uint64_t{1} << 23;
inline constexpr std::uint64_t kMinSegmentBits = std::uint64_t{1} << 16;
inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 63;

struct SieveConfig {
  // Odd slots per segment; 2^23 slots is 1 MiB of bitmap.
  std::uint64_t segment_bits = kDefaultSegmentBits;
  // Exclusive upper bound of everything this sieve may be asked for.
  std::uint64_t limit = std::uint64_t{1} << 32;
  // Segments sieved concurrently; delivery order is unaffected.
  unsigned threads = 1;

  void validate() const;
};

struct Segment {
  std::uint64_t base = 0;   // even
  std::uint64_t slots = 0;  // valid odd slots; bits past `slots` are set
  std::vector<std::uint64_t> bits;

  std::uint64_t number(std::uint64_t slot) const { return base + 2 * slot + 1; }
  // Exclusive numeric bound of the segment.
  std::uint64_t end() const { return base + 2 * slots; }

  bool composite(std::uint64_t slot) const {
    return (bits[slot >> 6] >> (slot & 63)) & 1U;
  }

  // Calls f(p) for every odd prime of the segment in ascending order.
  template <class F>
  void for_each_prime(F&& f) const {
    const std::size_t words = bits.size();
    for (std::size_t k = 0; k < words; ++k) {
      std::uint64_t w = ~bits[k];
      const std::uint64_t first = base + 128 * static_cast<std::uint64_t>(k) + 1;
      while (w != 0) {
        f(first + 2 * static_cast<std::uint64_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::uint64_t count_primes() const;
};

// All primes <= n, ascending. Requires 2 <= n <= 2^32.
std::vector<std::uint64_t> base_primes(std::uint64_t n);

class SegmentedSieve {
 public:
  explicit SegmentedSieve(SieveConfig config);

  const SieveConfig& config() const { return config_; }

  // Sieves the odd numbers of [lo, hi) and hands each segment to `sink` in
  // ascending order. With config.threads > 1 a batch of segments is sieved
  // concurrently, but segment k is delivered only after segment k-1 returned.
  template <class Sink>
  void for_each_segment(std::uint64_t lo, std::uint64_t hi, Sink&& sink) const {
    check_range(lo, hi);
    if (lo >= hi) return;
    const std::uint64_t start = lo & ~std::uint64_t{1};
    const std::uint64_t span = 2 * config_.segment_bits;
    const unsigned batch = std::max(1U, config_.threads);

    std::vector<Segment> segs(batch);
    for (std::uint64_t base = start; base < hi;) {
      std::size_t n = 0;
      for (; n < batch && base < hi; ++n, base += std::min(span, hi - base)) {
        segs[n].base = base;
        segs[n].slots = (std::min(base + span, hi) - base) / 2;
      }
      if (n == 1) {
        sieve_segment(segs[0]);
      } else {
        std::vector<std::future<void>> jobs;
        jobs.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
          jobs.push_back(std::async(std::launch::async,
                                    [this, &segs, i] { sieve_segment(segs[i]); }));
        }
        for (auto& j : jobs) j.get();
      }
      for (std::size_t i = 0; i < n; ++i) sink(static_cast<const Segment&>(segs[i]));
    }
  }

  // Every prime p with lo <= p < hi, exactly once, ascending.
  template <class Consumer>
  void stream_primes(std::uint64_t lo, std::uint64_t hi, Consumer&& consumer) const {
    check_range(lo, hi);
    if (lo <= 2 && hi > 2) consumer(std::uint64_t{2});
    for_each_segment(lo, hi, [&](const Segment& s) { s.for_each_prime(consumer); });
  }

  // #{p prime : p <= x}; requires x < config.limit.
  std::uint64_t prime_count(std::uint64_t x) const;

  // Fills `seg.bits` for the range described by seg.base and seg.slots.
  void sieve_segment(Segment& seg) const;

 private:
  void check_range(std::uint64_t lo, std::uint64_t hi) const;

  SieveConfig config_;
  std::vector<std::uint32_t> primes_;  // odd primes <= sqrt(limit), excluding presieved ones
};

// #{p prime : p <= x}.
std::uint64_t prime_count(std::uint64_t x);

}  // namespace primegaps
