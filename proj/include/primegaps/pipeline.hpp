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

// Drives the sieve through a Collector and snapshots on a threshold grid.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "primegaps/collector.hpp"
#include "primegaps/sieve.hpp"

namespace primegaps {

enum class GridKind { kPow2, kGeometric };

struct CheckpointGrid {
  GridKind kind = GridKind::kPow2;
  // Geometric grid x_k = floor(base * ratio^k).
  double base = 1000.0;
  double ratio = 1.03;

  // Ascending, deduplicated thresholds <= limit. Powers of two start at
  // 2^15. `limit` itself is always the last threshold.
  std::vector<std::uint64_t> thresholds(std::uint64_t limit) const;

  bool operator==(const CheckpointGrid&) const = default;
};

struct CollectOptions {
  // Statistics cover every prime <= limit.
  std::uint64_t limit = std::uint64_t{1} << 32;
  CheckpointGrid grid;
  std::uint64_t segment_bits = kDefaultSegmentBits;
  unsigned threads = 1;
  std::uint64_t pair_dmax = 512;
};

using CheckpointSink = std::function<void(const Checkpoint&)>;
// Called after every segment with the position reached.
using ProgressSink = std::function<void(std::uint64_t position, std::uint64_t limit)>;

// Runs `collector` from its current position to options.limit. A resumed
// collector gets its pair window rebuilt first. The collector's own pair
// d_max wins over options.pair_dmax.
void run_collection(const CollectOptions& options, Collector& collector,
                    const CheckpointSink& on_checkpoint, const ProgressSink& progress = {});

// Convenience wrapper: fresh run, all checkpoints returned.
std::vector<Checkpoint> collect(const CollectOptions& options);

// Parses "2^N" or a decimal integer.
std::uint64_t parse_limit(const std::string& text);

}  // namespace primegaps
