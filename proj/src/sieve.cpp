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

#include "primegaps/sieve.hpp"

#include <array>
#include <cmath>
#include <string>

namespace primegaps {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0xffffffffULL || r * r > n) --r;
  while (r < 0xffffffffULL && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Odd-only byte sieve for small bounds.
std::vector<std::uint64_t> small_sieve(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  out.push_back(2);
  const std::uint64_t slots = (n - 1) / 2;  // odd numbers 3..n
  std::vector<std::uint8_t> comp(slots + 1, 0);
  for (std::uint64_t i = 1; i <= slots; ++i) {
    if (comp[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(p);
    for (std::uint64_t j = (p * p - 1) / 2; j <= slots; j += p) comp[j] = 1;
  }
  return out;
}

constexpr std::array<std::uint32_t, 5> kPresieved = {3, 5, 7, 11, 13};
constexpr std::uint64_t kPatternPeriod = 3 * 5 * 7 * 11 * 13;  // odd slots

// One period (in words) of the composite pattern of 3..13, indexed by the
// global odd index g = (n - 1) / 2. One extra word repeats word 0.
const std::vector<std::uint64_t>& presieve_pattern() {
  static const std::vector<std::uint64_t> pattern = [] {
    std::vector<std::uint64_t> w(kPatternPeriod + 1, 0);
    for (std::uint32_t q : kPresieved) {
      for (std::uint64_t g = (q - 1) / 2; g < 64 * kPatternPeriod; g += q) {
        w[g >> 6] |= std::uint64_t{1} << (g & 63);
      }
    }
    w[kPatternPeriod] = w[0];
    return w;
  }();
  return pattern;
}

}  // namespace

void SieveConfig::validate() const {
  if (segment_bits < kMinSegmentBits || !std::has_single_bit(segment_bits)) {
    throw ConfigError("segment_bits must be a power of two >= 2^16, got " +
                      std::to_string(segment_bits));
  }
  if (limit < 3 || limit >= kMaxSieveLimit) {
    throw ConfigError("sieve limit must lie in [3, 2^63), got " + std::to_string(limit));
  }
}

std::uint64_t Segment::count_primes() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : bits) n += static_cast<std::uint64_t>(std::popcount(~w));
  return n;
}

std::vector<std::uint64_t> base_primes(std::uint64_t n) {
  if (n < 2 || n > (std::uint64_t{1} << 32)) {
    throw BoundsError("base_primes: n must lie in [2, 2^32], got " + std::to_string(n));
  }
  if (n < (std::uint64_t{1} << 20)) return small_sieve(n);
  SieveConfig cfg;
  cfg.limit = n + 1;
  cfg.segment_bits = std::uint64_t{1} << 18;
  SegmentedSieve sieve(cfg);
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(1.2 * n / std::log(static_cast<double>(n))) + 16);
  sieve.stream_primes(2, n + 1, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

SegmentedSieve::SegmentedSieve(SieveConfig config) : config_(config) {
  config_.validate();
  const std::uint64_t root = std::max<std::uint64_t>(2, isqrt(config_.limit - 1));
  for (std::uint64_t p : base_primes(root)) {
    if (p > kPresieved.back()) primes_.push_back(static_cast<std::uint32_t>(p));
  }
}

void SegmentedSieve::check_range(std::uint64_t lo, std::uint64_t hi) const {
  if (lo > hi || hi > config_.limit) {
    throw BoundsError("sieve range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      ") outside [0, " + std::to_string(config_.limit) + ")");
  }
}

void SegmentedSieve::sieve_segment(Segment& seg) const {
  const std::uint64_t slots = seg.slots;
  const std::size_t words = static_cast<std::size_t>((slots + 63) / 64);
  seg.bits.resize(words);
  std::uint64_t* bits = seg.bits.data();

  // Copy the 3..13 pattern at the right phase.
  const auto& pat = presieve_pattern();
  const std::uint64_t off = (seg.base / 2) % (64 * kPatternPeriod);
  std::size_t wi = static_cast<std::size_t>(off >> 6);
  const unsigned sh = static_cast<unsigned>(off & 63);
  for (std::size_t j = 0; j < words; ++j) {
    bits[j] = sh == 0 ? pat[wi] : (pat[wi] >> sh) | (pat[wi + 1] << (64 - sh));
    if (++wi == kPatternPeriod) wi = 0;
  }
  const std::uint64_t end = seg.end();
  for (std::uint32_t q : kPresieved) {
    if (q > seg.base && q < end) {
      const std::uint64_t s = (q - seg.base - 1) / 2;
      bits[s >> 6] &= ~(std::uint64_t{1} << (s & 63));
    }
  }
  if (seg.base == 0) bits[0] |= 1;  // the number 1

  for (std::uint32_t p32 : primes_) {
    const std::uint64_t p = p32;
    const std::uint64_t sq = p * p;
    if (sq >= end) break;
    std::uint64_t m = (seg.base + 1 + p - 1) / p * p;
    if ((m & 1) == 0) m += p;
    if (m < sq) m = sq;
    for (std::uint64_t j = (m - seg.base - 1) / 2; j < slots; j += p) {
      bits[j >> 6] |= std::uint64_t{1} << (j & 63);
    }
  }

  if (const unsigned tail = static_cast<unsigned>(slots & 63); tail != 0) {
    bits[words - 1] |= ~std::uint64_t{0} << tail;
  }
}

std::uint64_t SegmentedSieve::prime_count(std::uint64_t x) const {
  if (x < 2) return 0;
  check_range(0, x + 1);
  std::uint64_t n = 1;
  for_each_segment(0, x + 1, [&](const Segment& s) { n += s.count_primes(); });
  return n;
}

std::uint64_t prime_count(std::uint64_t x) {
  if (x < 2) return 0;
  SieveConfig cfg;
  cfg.limit = x + 1;
  if (cfg.limit < 3) cfg.limit = 3;
  return SegmentedSieve(cfg).prime_count(x);
}

}  // namespace primegaps
