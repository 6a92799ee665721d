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

#include "primegaps/collector.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "primegaps/errors.hpp"

namespace primegaps {

void GapHistogram::add(std::uint64_t d, std::uint64_t n) {
  const std::uint64_t i = d / 2;
  if (i >= counts_.size()) counts_.resize(i + 1, 0);
  counts_[i] += n;
}

std::uint64_t GapHistogram::total() const {
  std::uint64_t t = 0;
  for (std::uint64_t c : counts_) t += c;
  return t;
}

u128 GapHistogram::weighted_total() const {
  u128 t = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) t += static_cast<u128>(2 * i) * counts_[i];
  return t;
}

u128 GapHistogram::squared_total() const {
  u128 t = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    t += static_cast<u128>(4 * i * i) * counts_[i];
  }
  return t;
}

std::uint64_t GapHistogram::max_gap() const {
  for (std::size_t i = counts_.size(); i-- > 0;) {
    if (counts_[i] != 0) return 2 * i;
  }
  return 0;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> GapHistogram::entries() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] != 0) out.emplace_back(2 * i, counts_[i]);
  }
  return out;
}

const CompensatedSum& BrunLedger::accumulator(std::uint64_t d) const {
  static const CompensatedSum zero{};
  const std::uint64_t i = d / 2;
  return (d % 2 == 0 && i < sums_.size()) ? sums_[i] : zero;
}

void BrunLedger::set(std::uint64_t d, CompensatedSum s) {
  const std::uint64_t i = d / 2;
  if (i >= sums_.size()) sums_.resize(i + 1);
  sums_[i] = s;
}

std::vector<std::pair<std::uint64_t, CompensatedSum>> BrunLedger::entries() const {
  std::vector<std::pair<std::uint64_t, CompensatedSum>> out;
  for (std::size_t i = 0; i < sums_.size(); ++i) {
    if (sums_[i].sum != 0.0 || sums_[i].comp != 0.0) out.emplace_back(2 * i, sums_[i]);
  }
  return out;
}

double BrunLedger::total() const {
  CompensatedSum t;
  for (const auto& s : sums_) {
    t.add(s.sum);
    t.add(s.comp);
  }
  return t.value();
}

void FirstOccurrences::set(std::uint64_t d, std::uint64_t p) {
  const std::uint64_t i = d / 2;
  if (i >= first_.size()) first_.resize(i + 1, 0);
  first_[i] = p;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> FirstOccurrences::entries() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t i = 0; i < first_.size(); ++i) {
    if (first_[i] != 0) out.emplace_back(2 * i, first_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// PairCounter

PairCounter::PairCounter(std::uint64_t d_max) : d_max_(d_max), width_(d_max / 2) {
  if (d_max == 0) return;
  if (d_max % 2 != 0 || d_max > kMaxPairWindow) {
    throw ConfigError("pair d_max must be even and <= 2^16, got " + std::to_string(d_max));
  }
  window_.assign(static_cast<std::size_t>((width_ + 63) / 64), 0);
  counts_.assign(static_cast<std::size_t>(width_ + 1), 0);
}

void PairCounter::ingest(const Segment& seg) {
  if (!enabled()) return;
  if (seg.base != next_base_) {
    throw SequencingError("pair counter expected a segment at " + std::to_string(next_base_) +
                          ", got " + std::to_string(seg.base));
  }
  absorb(seg, true);
}

void PairCounter::load_window(const Segment& seg) {
  if (!enabled()) return;
  absorb(seg, false);
}

void PairCounter::absorb(const Segment& seg, bool count) {
  const std::uint64_t w = width_;
  const std::uint64_t n = seg.slots;
  const std::uint64_t total = w + n;
  const std::size_t words = static_cast<std::size_t>((total + 63) / 64) + 1;
  buffer_.assign(words, 0);

  // [0, w): carried window, [w, w + n): primality of the segment's odd slots.
  std::copy(window_.begin(), window_.end(), buffer_.begin());
  const std::size_t off_word = static_cast<std::size_t>(w >> 6);
  const unsigned off_bit = static_cast<unsigned>(w & 63);
  for (std::size_t j = 0; j < seg.bits.size(); ++j) {
    const std::uint64_t v = ~seg.bits[j];
    buffer_[off_word + j] |= v << off_bit;
    if (off_bit != 0) buffer_[off_word + j + 1] |= v >> (64 - off_bit);
  }

  if (count && n != 0) {
    const std::uint64_t* b = buffer_.data();
    const std::size_t first = off_word;
    const std::size_t last = static_cast<std::size_t>((total - 1) >> 6);
    const std::uint64_t first_mask = ~std::uint64_t{0} << off_bit;
    for (std::uint64_t s = 1; s <= w; ++s) {
      const std::size_t q = static_cast<std::size_t>(s >> 6);
      const unsigned r = static_cast<unsigned>(s & 63);
      auto shifted = [&](std::size_t k) -> std::uint64_t {
        std::uint64_t v = k >= q ? b[k - q] << r : 0;
        if (r != 0 && k >= q + 1) v |= b[k - q - 1] >> (64 - r);
        return v;
      };
      std::uint64_t c = static_cast<std::uint64_t>(std::popcount(b[first] & shifted(first) & first_mask));
      if (r != 0) {
        for (std::size_t k = first + 1; k <= last; ++k) {
          const std::uint64_t v = (b[k - q] << r) | (b[k - q - 1] >> (64 - r));
          c += static_cast<std::uint64_t>(std::popcount(b[k] & v));
        }
      } else {
        for (std::size_t k = first + 1; k <= last; ++k) {
          c += static_cast<std::uint64_t>(std::popcount(b[k] & b[k - q]));
        }
      }
      counts_[s] += c;
    }
  }

  // The new window is bits [n, n + w) of the buffer.
  for (std::size_t t = 0; t < window_.size(); ++t) {
    const std::uint64_t o = n + 64 * static_cast<std::uint64_t>(t);
    const std::size_t k = static_cast<std::size_t>(o >> 6);
    const unsigned r = static_cast<unsigned>(o & 63);
    std::uint64_t v = buffer_[k] >> r;
    if (r != 0 && k + 1 < buffer_.size()) v |= buffer_[k + 1] << (64 - r);
    window_[t] = v;
  }
  if (const unsigned tail = static_cast<unsigned>(w & 63); tail != 0) {
    window_.back() &= (std::uint64_t{1} << tail) - 1;
  }
  next_base_ = seg.end();
}

std::map<std::uint64_t, std::uint64_t> PairCounter::counts() const {
  std::map<std::uint64_t, std::uint64_t> out;
  for (std::uint64_t s = 1; s <= width_; ++s) out[2 * s] = counts_[s];
  return out;
}

void PairCounter::restore(std::uint64_t position,
                          const std::map<std::uint64_t, std::uint64_t>& counts) {
  std::fill(counts_.begin(), counts_.end(), 0);
  for (const auto& [d, c] : counts) {
    if (d % 2 != 0 || d < 2 || d > d_max_) {
      throw ConfigError("pair count for d=" + std::to_string(d) + " outside window");
    }
    counts_[d / 2] = c;
  }
  std::fill(window_.begin(), window_.end(), 0);
  next_base_ = position;
}

// ---------------------------------------------------------------------------
// Collector

std::uint64_t largest_gap(const RunState& state, std::uint64_t x) {
  for (auto it = state.max_gap_records.rbegin(); it != state.max_gap_records.rend(); ++it) {
    if (it->upper_prime <= x) return it->gap;
  }
  return 0;
}

std::uint64_t Checkpoint::largest_gap() const { return primegaps::largest_gap(state, x); }

Collector::Collector(std::uint64_t pair_dmax) : pairs_(pair_dmax) {
  state_.histogram.dense().reserve(1024);
  state_.brun.dense().reserve(1024);
  state_.first_occurrences.dense().reserve(1024);
}

Collector Collector::resume_from(const Checkpoint& c) {
  Collector col(c.pair_dmax);
  col.state_ = c.state;
  col.position_ = c.x + 1;
  col.max_gap_ = c.state.max_gap_records.empty() ? 0 : c.state.max_gap_records.back().gap;
  col.last_inverse_ = c.state.last_prime == 0 ? 0.0 : 1.0 / static_cast<double>(c.state.last_prime);
  if (col.pairs_.enabled()) col.pairs_.restore((c.x + 1) & ~std::uint64_t{1}, c.pair_counts);
  return col;
}

inline void Collector::record(std::uint64_t p) {
  RunState& st = state_;
  const double inv = 1.0 / static_cast<double>(p);
  st.harmonic_sum.add(inv);
  if (st.last_prime >= 3) {
    const std::uint64_t d = p - st.last_prime;
    const std::size_t i = static_cast<std::size_t>(d >> 1);
    auto& hist = st.histogram.dense();
    auto& brun = st.brun.dense();
    auto& first = st.first_occurrences.dense();
    if (i >= hist.size()) hist.resize(i + 1, 0);
    if (i >= brun.size()) brun.resize(i + 1);
    if (i >= first.size()) first.resize(i + 1, 0);
    ++hist[i];
    st.sum_sq_gaps += static_cast<u128>(d * d);
    brun[i].add(last_inverse_);
    brun[i].add(inv);
    if (first[i] == 0) first[i] = st.last_prime;
    if (d > max_gap_) {
      max_gap_ = d;
      st.max_gap_records.push_back({d, st.last_prime, p, st.primes_seen + 1});
    }
  }
  st.last_prime = p;
  last_inverse_ = inv;
  ++st.primes_seen;
}

void Collector::ingest(std::uint64_t p) {
  const std::uint64_t last = state_.last_prime;
  if (state_.primes_seen == 0 && p != 2) {
    throw OrderingError("prime stream must start at 2, got " + std::to_string(p));
  }
  if (state_.primes_seen != 0 && p <= last) {
    throw OrderingError("prime " + std::to_string(p) + " does not exceed previous prime " +
                        std::to_string(last));
  }
  if (last >= 3 && (p - last) % 2 != 0) {
    throw OrderingError("odd gap between " + std::to_string(last) + " and " + std::to_string(p));
  }
  record(p);
}

void Collector::ingest_segment(const Segment& seg) {
  pairs_.ingest(seg);
  bool checked = false;
  seg.for_each_prime([&](std::uint64_t p) {
    if (!checked) {
      if (state_.primes_seen == 0 || p <= state_.last_prime) {
        throw OrderingError("segment at " + std::to_string(seg.base) +
                            " does not continue the prime stream");
      }
      checked = true;
    }
    record(p);
  });
  position_ = std::max(position_, seg.end());
}

Checkpoint Collector::snapshot(std::uint64_t x) const {
  if (state_.last_prime > x) {
    throw SequencingError("snapshot at " + std::to_string(x) + " after prime " +
                          std::to_string(state_.last_prime) + " was ingested");
  }
  if (pairs_.enabled() && pairs_.position() / 2 != (x + 1) / 2) {
    throw SequencingError("pair counts cover odd numbers below " +
                          std::to_string(pairs_.position()) + ", not through " +
                          std::to_string(x));
  }
  Checkpoint c;
  c.x = x;
  c.pi = state_.primes_seen;
  c.state = state_;
  c.pair_dmax = pairs_.d_max();
  if (pairs_.enabled()) c.pair_counts = pairs_.counts();
  return c;
}

std::map<std::uint64_t, std::uint64_t> pair_counts(std::uint64_t x, std::uint64_t d_max) {
  PairCounter counter(d_max);
  if (x >= 3 && counter.enabled()) {
    SieveConfig cfg;
    cfg.limit = x + 1;
    cfg.segment_bits = std::uint64_t{1} << 18;
    SegmentedSieve(cfg).for_each_segment(0, x + 1, [&](const Segment& s) { counter.ingest(s); });
  }
  return counter.counts();
}

}  // namespace primegaps
