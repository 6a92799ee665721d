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

#include "primegaps/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "primegaps/errors.hpp"

namespace primegaps {

std::vector<std::uint64_t> CheckpointGrid::thresholds(std::uint64_t limit) const {
  std::vector<std::uint64_t> out;
  if (kind == GridKind::kPow2) {
    for (int k = 15; k < 63; ++k) {
      const std::uint64_t x = std::uint64_t{1} << k;
      if (x > limit) break;
      out.push_back(x);
    }
  } else {
    if (!(base >= 1.0) || !(ratio > 1.0)) {
      throw ConfigError("geometric grid needs base >= 1 and ratio > 1");
    }
    for (int k = 0;; ++k) {
      const double v = std::floor(base * std::pow(ratio, k));
      if (v > static_cast<double>(limit)) break;
      const auto x = static_cast<std::uint64_t>(v);
      if (out.empty() || x > out.back()) out.push_back(x);
    }
  }
  if (out.empty() || out.back() != limit) out.push_back(limit);
  return out;
}

void run_collection(const CollectOptions& options, Collector& collector,
                    const CheckpointSink& on_checkpoint, const ProgressSink& progress) {
  if (options.limit < 2 || options.limit >= kMaxSieveLimit - 1) {
    throw ConfigError("collection limit must lie in [2, 2^63 - 1)");
  }
  SieveConfig cfg;
  cfg.limit = options.limit + 1;
  cfg.segment_bits = options.segment_bits;
  cfg.threads = options.threads;
  SegmentedSieve sieve(cfg);

  std::uint64_t pos = collector.position();
  if (pos > options.limit) return;

  PairCounter& pairs = collector.pairs();
  if (pairs.enabled() && pos > 0) {
    const std::uint64_t reach = 2 * pairs.d_max() + 2;
    const std::uint64_t lo = pos > reach ? pos - reach : 0;
    sieve.for_each_segment(lo, pos, [&](const Segment& s) { pairs.load_window(s); });
  }
  if (pos <= 2) collector.ingest(2);

  for (std::uint64_t x : options.grid.thresholds(options.limit)) {
    if (x < pos) continue;
    sieve.for_each_segment(collector.position(), x + 1, [&](const Segment& s) {
      collector.ingest_segment(s);
      if (progress) progress(s.end(), options.limit);
    });
    if (on_checkpoint) on_checkpoint(collector.snapshot(x));
  }
}

std::vector<Checkpoint> collect(const CollectOptions& options) {
  Collector collector(options.pair_dmax);
  std::vector<Checkpoint> out;
  run_collection(options, collector, [&](const Checkpoint& c) { out.push_back(c); });
  return out;
}

std::uint64_t parse_limit(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '_' && ch != '\'') s.push_back(ch);
  }
  auto parse_u64 = [&](std::string_view v) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
      throw ArgumentError("cannot parse limit '" + text + "'");
    }
    return out;
  };
  if (s.rfind("2^", 0) == 0) {
    const std::uint64_t e = parse_u64(std::string_view(s).substr(2));
    if (e > 62) throw ArgumentError("limit exponent must be <= 62");
    return std::uint64_t{1} << e;
  }
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    const std::uint64_t mant = parse_u64(std::string_view(s).substr(0, e));
    const std::uint64_t exp = parse_u64(std::string_view(s).substr(e + 1));
    std::uint64_t v = mant;
    for (std::uint64_t i = 0; i < exp; ++i) {
      if (v > (std::uint64_t{1} << 62) / 10) throw ArgumentError("limit too large: " + text);
      v *= 10;
    }
    return v;
  }
  return parse_u64(s);
}

}  // namespace primegaps
