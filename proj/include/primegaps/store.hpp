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

// Checkpoint persistence, run manifests, resume, and CSV export.
//
// A run directory holds `manifest.json` and one `ckpt_HHHHHHHH_LLLLLLLL.v1`
// file per checkpoint (threshold in hex, high and low 32-bit halves). Every
// file is written to a temporary name and renamed into place.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "primegaps/collector.hpp"
#include "primegaps/pipeline.hpp"

namespace primegaps {

inline constexpr int kFormatVersion = 1;

struct RunManifest {
  int format_version = kFormatVersion;
  std::uint64_t limit = 0;
  CheckpointGrid grid;
  std::uint64_t segment_bits = kDefaultSegmentBits;
  std::uint64_t pair_dmax = 0;
  std::string created;
  std::string updated;
  std::uint64_t completed_up_to = 0;
  std::vector<std::string> checkpoints;  // file names, ascending threshold

  static std::filesystem::path path(const std::filesystem::path& dir);
  // Throws UnrecoverableStateError when missing or corrupt and
  // UpgradeRequiredError on a version mismatch.
  static RunManifest read(const std::filesystem::path& dir);
  void write(const std::filesystem::path& dir) const;
};

std::string checkpoint_filename(std::uint64_t x);

void write_checkpoint_file(const Checkpoint& c, const std::filesystem::path& file);
Checkpoint read_checkpoint(const std::filesystem::path& file);

void serialize_checkpoint(const Checkpoint& c, std::ostream& out);
Checkpoint parse_checkpoint(std::istream& in, const std::string& origin = "<stream>");

// Writes the checkpoint into `dir` and, when a manifest exists there, records
// it and advances completed_up_to.
std::filesystem::path write_checkpoint(const Checkpoint& c, const std::filesystem::path& dir);

// All checkpoints listed by the manifest, ascending in x.
std::vector<Checkpoint> load_checkpoints(const std::filesystem::path& dir);

enum class ResumeStatus {
  kFresh,     // nothing to resume from
  kPartial,   // continue after `checkpoint`
  kComplete,  // completed_up_to == limit
};

struct ResumePoint {
  ResumeStatus status = ResumeStatus::kFresh;
  std::optional<RunManifest> manifest;
  std::optional<Checkpoint> checkpoint;  // latest
  // First integer not yet covered (checkpoint x + 1, or 0).
  std::uint64_t next_position = 0;
};

ResumePoint resume(const std::filesystem::path& dir);

// Starts the collection described by `options` in `dir`, persisting each
// checkpoint as it is produced. Throws ConfigError if `dir` already holds a
// manifest.
void collect_to_directory(const CollectOptions& options, const std::filesystem::path& dir,
                          const ProgressSink& progress = {});

// Continues the run recorded in `dir` using its manifest's parameters.
// Returns false when there is nothing to do.
bool resume_directory(const std::filesystem::path& dir, unsigned threads = 1,
                      const ProgressSink& progress = {});

// --- CSV export ----------------------------------------------------------------

enum class CsvKind { kTau, kPairs, kBrun, kMaxGap, kFirstOcc, kTable1, kTable2, kScaling, kMertens };

// Accepts "tau", "TAU", "maxgap", "table2", ...; throws ArgumentError.
CsvKind parse_csv_kind(std::string_view name);
std::string_view csv_kind_name(CsvKind kind);

struct ExportOptions {
  std::uint64_t andrica_limit = 1000000;  // TABLE2 source range
  std::size_t andrica_rows = 10;
};

void write_csv(CsvKind kind, const std::vector<Checkpoint>& checkpoints, std::ostream& out,
               const ExportOptions& options = {});
void export_csv(CsvKind kind, const std::vector<Checkpoint>& checkpoints,
                const std::filesystem::path& path, const ExportOptions& options = {});

// Decimal rendering of a 128-bit unsigned integer.
std::string to_string_u128(u128 v);
u128 parse_u128(std::string_view s);
// 17 significant digits; round-trips every finite double.
std::string format_real(double v);

}  // namespace primegaps
