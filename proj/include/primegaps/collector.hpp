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

// Single-pass gap statistics over an ordered prime stream.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "primegaps/compensated.hpp"
#include "primegaps/sieve.hpp"

namespace primegaps {

__extension__ typedef unsigned __int128 u128;

inline constexpr std::uint64_t kMaxPairWindow = std::uint64_t{1} << 16;

// tau_d: number of consecutive-prime pairs with gap d. Stored densely by d/2;
// odd gaps never appear because the (2, 3) pair is not recorded.
class GapHistogram {
 public:
  std::uint64_t count(std::uint64_t d) const {
    const std::uint64_t i = d / 2;
    return (d % 2 == 0 && i < counts_.size()) ? counts_[i] : 0;
  }

  void add(std::uint64_t d, std::uint64_t n = 1);

  // Sum of all counts.
  std::uint64_t total() const;
  // Sum of d * tau_d.
  u128 weighted_total() const;
  // Sum of d^2 * tau_d.
  u128 squared_total() const;
  // Largest d with a nonzero count, 0 when empty.
  std::uint64_t max_gap() const;

  // Nonzero (d, tau_d) entries, ascending in d.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries() const;

  std::vector<std::uint64_t>& dense() { return counts_; }
  const std::vector<std::uint64_t>& dense() const { return counts_; }

  bool operator==(const GapHistogram& o) const { return entries() == o.entries(); }

 private:
  std::vector<std::uint64_t> counts_;  // index d/2
};

// B_d(x): sum of 1/p over both ends of every consecutive pair with gap d.
// A prime sitting between two gaps of the same length is counted twice.
class BrunLedger {
 public:
  double sum(std::uint64_t d) const {
    const std::uint64_t i = d / 2;
    return (d % 2 == 0 && i < sums_.size()) ? sums_[i].value() : 0.0;
  }
  const CompensatedSum& accumulator(std::uint64_t d) const;
  void set(std::uint64_t d, CompensatedSum s);

  // Nonzero entries, ascending in d.
  std::vector<std::pair<std::uint64_t, CompensatedSum>> entries() const;
  // Compensated total over all d.
  double total() const;

  std::vector<CompensatedSum>& dense() { return sums_; }
  const std::vector<CompensatedSum>& dense() const { return sums_; }

  bool operator==(const BrunLedger& o) const { return entries() == o.entries(); }

 private:
  std::vector<CompensatedSum> sums_;  // index d/2
};

struct MaxGapRecord {
  std::uint64_t gap = 0;
  std::uint64_t lower_prime = 0;
  std::uint64_t upper_prime = 0;
  // pi(upper_prime), i.e. the number of primes <= upper_prime.
  std::uint64_t pi_upper = 0;

  friend bool operator==(const MaxGapRecord&, const MaxGapRecord&) = default;
};

// p_f(d): the smallest prime followed by a gap of exactly d.
class FirstOccurrences {
 public:
  std::optional<std::uint64_t> at(std::uint64_t d) const {
    const std::uint64_t i = d / 2;
    if (d % 2 != 0 || i >= first_.size() || first_[i] == 0) return std::nullopt;
    return first_[i];
  }
  void set(std::uint64_t d, std::uint64_t p);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries() const;

  std::vector<std::uint64_t>& dense() { return first_; }
  const std::vector<std::uint64_t>& dense() const { return first_; }

  bool operator==(const FirstOccurrences& o) const { return entries() == o.entries(); }

 private:
  std::vector<std::uint64_t> first_;  // index d/2, 0 = not seen
};

struct RunState {
  std::uint64_t last_prime = 0;
  std::uint64_t primes_seen = 0;
  CompensatedSum harmonic_sum;
  u128 sum_sq_gaps = 0;
  GapHistogram histogram;
  BrunLedger brun;
  std::vector<MaxGapRecord> max_gap_records;
  FirstOccurrences first_occurrences;

  bool operator==(const RunState&) const = default;
};

// Counts prime pairs (p, p + d), not necessarily consecutive, for every even
// d <= d_max. A pair is attributed to its upper member, so after the odd
// numbers below x + 1 have been fed the counts are pi_d(x). The trailing
// d_max / 2 odd slots are carried across segment boundaries.
class PairCounter {
 public:
  PairCounter() = default;
  explicit PairCounter(std::uint64_t d_max);

  std::uint64_t d_max() const { return d_max_; }
  bool enabled() const { return d_max_ != 0; }

  // Segments must be contiguous: each base equals the previous end.
  void ingest(const Segment& seg);
  // Shifts `seg` into the window without counting and positions the counter
  // at seg.end(). Used after restore() when resuming.
  void load_window(const Segment& seg);

  // Exclusive end of the odd numbers consumed so far.
  std::uint64_t position() const { return next_base_; }

  std::uint64_t count(std::uint64_t d) const {
    return (d % 2 == 0 && d >= 2 && d <= d_max_) ? counts_[d / 2] : 0;
  }
  std::map<std::uint64_t, std::uint64_t> counts() const;
  void restore(std::uint64_t position, const std::map<std::uint64_t, std::uint64_t>& counts);

 private:
  void absorb(const Segment& seg, bool count);

  std::uint64_t d_max_ = 0;
  std::uint64_t width_ = 0;              // d_max / 2 odd slots
  std::uint64_t next_base_ = 0;
  std::vector<std::uint64_t> window_;    // prime flags of the last width_ odd slots
  std::vector<std::uint64_t> counts_;    // index d/2
  std::vector<std::uint64_t> buffer_;
};

struct Checkpoint {
  std::uint64_t x = 0;
  std::uint64_t pi = 0;
  RunState state;
  // pi_d(x) for even d <= pair_dmax; empty when pair counting is off.
  std::uint64_t pair_dmax = 0;
  std::map<std::uint64_t, std::uint64_t> pair_counts;

  // G(x); 0 when no even gap has been seen.
  std::uint64_t largest_gap() const;
  std::optional<std::uint64_t> first_occurrence(std::uint64_t d) const {
    return state.first_occurrences.at(d);
  }

  bool operator==(const Checkpoint&) const = default;
};

// Largest recorded gap whose upper prime is <= x; 0 when none.
std::uint64_t largest_gap(const RunState& state, std::uint64_t x);

class Collector {
 public:
  // pair_dmax = 0 disables non-consecutive pair counting.
  explicit Collector(std::uint64_t pair_dmax = 0);

  // Rebuilds a collector positioned just after c.x. When pair counting is
  // on, the caller must still load the pair window (see PairCounter).
  static Collector resume_from(const Checkpoint& c);

  void ingest(std::uint64_t p);
  // Feeds every odd prime of `seg` (and the pair counter, if enabled).
  void ingest_segment(const Segment& seg);

  Checkpoint snapshot(std::uint64_t x) const;

  const RunState& state() const { return state_; }
  PairCounter& pairs() { return pairs_; }
  const PairCounter& pairs() const { return pairs_; }

  // Exclusive end of the segments consumed so far. Single primes passed to
  // ingest() do not move it.
  std::uint64_t position() const { return position_; }

 private:
  void record(std::uint64_t p);

  RunState state_;
  PairCounter pairs_;
  std::uint64_t position_ = 0;
  std::uint64_t max_gap_ = 0;
  double last_inverse_ = 0.0;
};

// pi_d(x) for every even d <= d_max, computed by a dedicated sieve pass.
std::map<std::uint64_t, std::uint64_t> pair_counts(std::uint64_t x, std::uint64_t d_max);

}  // namespace primegaps
