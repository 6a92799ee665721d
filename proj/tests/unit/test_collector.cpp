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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "primegaps/collector.hpp"
#include "primegaps/errors.hpp"
#include "primegaps/pipeline.hpp"

using namespace primegaps;
using u64 = std::uint64_t;

namespace {

Collector feed(std::initializer_list<u64> primes) {
  Collector c;
  for (u64 p : primes) c.ingest(p);
  return c;
}

Checkpoint run_to(u64 limit, u64 pair_dmax) {
  CollectOptions o;
  o.limit = limit;
  o.segment_bits = kMinSegmentBits;
  o.pair_dmax = pair_dmax;
  return collect(o).back();
}

}  // namespace

TEST_CASE("ingest small sequences") {
  const Collector a = feed({2, 3, 5, 7, 11});
  CHECK(a.state().histogram.count(2) == 2);
  CHECK(a.state().histogram.count(4) == 1);
  CHECK(a.state().histogram.total() == 3);
  CHECK(a.state().sum_sq_gaps == 24);

  const Collector b = feed({2, 3});
  CHECK(b.state().histogram.entries().empty());
  CHECK(b.state().sum_sq_gaps == 0);
  CHECK(b.state().harmonic_sum.value() == doctest::Approx(0.5 + 1.0 / 3.0));
  CHECK(b.state().primes_seen == 2);
}

TEST_CASE("ingest ordering violations") {
  Collector c;
  CHECK_THROWS_AS(c.ingest(3), OrderingError);
  c.ingest(2);
  c.ingest(3);
  c.ingest(5);
  CHECK_THROWS_AS(c.ingest(5), OrderingError);
  CHECK_THROWS_AS(c.ingest(4), OrderingError);
}

TEST_CASE("snapshot sequencing") {
  Collector c = feed({2, 3});
  const Checkpoint cp = c.snapshot(4);
  CHECK(cp.pi == 2);
  CHECK(cp.state.histogram.entries().empty());
  CHECK(cp.largest_gap() == 0);
  c.ingest(5);
  const Checkpoint c5 = c.snapshot(5);
  CHECK(c5.pi == 3);
  CHECK(c5.state.histogram.count(2) == 1);
  c.ingest(7);
  CHECK_THROWS_AS(c.snapshot(6), SequencingError);
}

TEST_CASE("primes below 100") {
  const Checkpoint c = run_to(100, 8);
  CHECK(c.pi == 25);
  CHECK(c.state.histogram.count(2) == 8);
  CHECK(c.largest_gap() == 8);
  CHECK(largest_gap(c.state, 100) == 8);
  CHECK(largest_gap(c.state, 96) == 6);
  CHECK(c.first_occurrence(2) == 3);
  CHECK(c.first_occurrence(4) == 7);
  CHECK(c.first_occurrence(6) == 23);
  CHECK_FALSE(c.first_occurrence(10).has_value());
  CHECK(c.pair_counts.at(2) == 8);
}

TEST_CASE("collector matches brute force to 10^6") {
  const u64 x = 1000000;
  const Checkpoint c = run_to(x, 0);
  const oracle::GapStats o = oracle::gap_stats(x);
  CHECK(c.pi == o.count);
  CHECK(c.state.last_prime == o.last);
  CHECK(c.state.sum_sq_gaps == o.sum_sq);

  std::map<u64, u64> tau;
  for (const auto& [d, n] : c.state.histogram.entries()) tau[d] = n;
  CHECK(tau == o.tau);

  std::map<u64, u64> first;
  for (const auto& [d, p] : c.state.first_occurrences.entries()) first[d] = p;
  CHECK(first == o.first);

  REQUIRE(c.state.max_gap_records.size() == o.records.size());
  for (std::size_t i = 0; i < o.records.size(); ++i) {
    const MaxGapRecord& r = c.state.max_gap_records[i];
    CHECK(r.gap == o.records[i].first);
    CHECK(r.lower_prime == o.records[i].second);
    CHECK(r.upper_prime == r.lower_prime + r.gap);
    CHECK(r.pi_upper == oracle::primes_in(2, r.upper_prime + 1).size());
  }
  CHECK(c.largest_gap() == 114);

  for (const auto& [d, sum] : o.brun) {
    CHECK(std::fabs(c.state.brun.sum(d) - static_cast<double>(sum)) <= 1e-14 * sum);
  }
  CHECK(std::fabs(c.state.harmonic_sum.value() - static_cast<double>(o.harmonic)) <=
        1e-15 * static_cast<double>(o.harmonic));
}

TEST_CASE("exact identities at every checkpoint") {
  CollectOptions o;
  o.limit = u64{1} << 24;
  o.pair_dmax = 16;
  for (const Checkpoint& c : collect(o)) {
    CHECK(c.state.histogram.total() == c.pi - 2);
    CHECK(c.state.histogram.weighted_total() == c.state.last_prime - 3);
    CHECK(c.state.histogram.squared_total() == c.state.sum_sq_gaps);
    const double ledger = 0.5 + 1.0 / 6.0 + 0.5 / static_cast<double>(c.state.last_prime) +
                          0.5 * c.state.brun.total();
    const double h = c.state.harmonic_sum.value();
    CHECK(std::fabs(h - ledger) <= 1e-12 * h);
    CHECK(c.state.brun.sum(2) <= 2.0);
    CHECK(c.pair_counts.at(2) == c.state.histogram.count(2));
    CHECK(c.pair_counts.at(4) == c.state.histogram.count(4) + 1);
    u64 prev_gap = 0;
    u64 prev_pos = 0;
    for (const MaxGapRecord& r : c.state.max_gap_records) {
      CHECK(r.gap > prev_gap);
      CHECK(r.lower_prime > prev_pos);
      CHECK(*c.first_occurrence(r.gap) <= r.lower_prime);
      prev_gap = r.gap;
      prev_pos = r.lower_prime;
    }
  }
}

TEST_CASE("pair counts against brute force") {
  const u64 x = 300001;
  const auto expect = oracle::pair_counts(x, 520);
  const Checkpoint c = run_to(x, 520);
  CHECK(c.pair_counts == expect);
  CHECK(pair_counts(x, 520) == expect);
}

TEST_CASE("pair count examples") {
  CHECK(pair_counts(20, 4).at(4) == 3);
  CHECK(pair_counts(100, 2).at(2) == 8);
  CHECK(pair_counts(10, 8).at(8) == 0);
  CHECK(pair_counts(7, 4).at(4) == 1);
  CHECK(pair_counts(6, 4).at(4) == 0);
}

TEST_CASE("pair counter configuration") {
  CHECK_THROWS_AS(PairCounter(3), ConfigError);
  CHECK_THROWS_AS(PairCounter(kMaxPairWindow + 2), ConfigError);
  CHECK_NOTHROW(PairCounter(kMaxPairWindow));
  CHECK_FALSE(PairCounter(0).enabled());
}

TEST_CASE("pair counter rejects gaps in the segment stream") {
  PairCounter pc(8);
  Segment seg;
  seg.base = 1000;
  seg.slots = 10;
  seg.bits.assign(1, ~u64{0});
  CHECK_THROWS_AS(pc.ingest(seg), SequencingError);
}

TEST_CASE("resumed collector continues identically") {
  CollectOptions o;
  o.limit = u64{1} << 20;
  o.segment_bits = kMinSegmentBits;
  o.pair_dmax = 64;
  const auto full = collect(o);

  // Stop after the 2^17 checkpoint, then continue from it.
  const Checkpoint& mid = full[2];
  REQUIRE(mid.x == (u64{1} << 17));
  Collector resumed = Collector::resume_from(mid);
  std::vector<Checkpoint> rest;
  run_collection(o, resumed, [&](const Checkpoint& c) { rest.push_back(c); });
  REQUIRE(rest.size() == full.size() - 3);
  for (std::size_t i = 0; i < rest.size(); ++i) CHECK(rest[i] == full[i + 3]);
}
