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

// primegaps: collect, resume, report, export and verify prime-gap runs.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "primegaps/analysis.hpp"
#include "primegaps/constants.hpp"
#include "primegaps/errors.hpp"
#include "primegaps/models.hpp"
#include "primegaps/pipeline.hpp"
#include "primegaps/store.hpp"

namespace fs = std::filesystem;
using namespace primegaps;

namespace {

enum Exit { kOk = 0, kUsage = 1, kRuntime = 2, kVerifyFailed = 3 };

class ProgressLine {
 public:
  explicit ProgressLine(bool enabled) : enabled_(enabled) {}

  void operator()(std::uint64_t position, std::uint64_t limit) {
    if (!enabled_ || ++calls_ % 16 != 0) return;
    std::fprintf(stderr, "  sieved to %" PRIu64 " (%.1f%%)\n", position,
                 100.0 * static_cast<double>(position) / static_cast<double>(limit));
  }

 private:
  bool enabled_;
  std::uint64_t calls_ = 0;
};

std::string pow2_label(std::uint64_t x) {
  if (x != 0 && (x & (x - 1)) == 0) return "2^" + std::to_string(std::countr_zero(x));
  return std::to_string(x);
}

std::vector<Checkpoint> load_run(const fs::path& dir) {
  if (!fs::exists(RunManifest::path(dir))) {
    throw StoreError("no run found in " + dir.string());
  }
  return load_checkpoints(dir);
}

const Checkpoint& latest(const std::vector<Checkpoint>& cps) {
  if (cps.empty()) throw StoreError("run holds no checkpoints yet");
  return cps.back();
}

std::size_t row_cap(std::size_t limit_rows, std::size_t n) {
  return limit_rows == 0 ? n : std::min(limit_rows, n);
}

// --- reports ------------------------------------------------------------------

void report_table1(const std::vector<Checkpoint>& cps) {
  std::printf("%-6s %16s %16s %8s %16s %8s\n", "x", "sum d^2", "2x log x", "ratio", "conj. 5",
              "ratio");
  for (const auto& r : table1(cps)) {
    std::printf("%-6s %16s %16s %8.4f %16s %8.4f\n", pow2_label(r.x).c_str(),
                to_string_u128(r.sum_sq).c_str(), to_string_u128(r.heath_brown).c_str(),
                r.heath_brown_ratio, to_string_u128(r.conjecture5).c_str(), r.conjecture5_ratio);
  }
}

void report_andrica(std::uint64_t limit, std::size_t rows) {
  std::printf("%6s %10s %10s %5s %11s\n", "n", "p_n", "p_n+1", "d_n", "A_n");
  for (const auto& r : andrica_table(limit, rows)) {
    std::printf("%6" PRIu64 " %10" PRIu64 " %10" PRIu64 " %5" PRIu64 " %11.7f\n", r.n, r.p,
                r.next, r.gap, r.a);
  }
}

void report_maxgaps(const Checkpoint& c, std::size_t limit_rows) {
  const auto rows = max_gap_comparison(c.state.max_gap_records);
  std::printf("%6s %20s %20s %12s %12s %8s\n", "G", "p_n", "p_n+1", "g(x)", "log^2 x", "G/g");
  for (std::size_t i = 0; i < row_cap(limit_rows, rows.size()); ++i) {
    const auto& r = rows[i];
    std::printf("%6" PRIu64 " %20" PRIu64 " %20" PRIu64 " %12.4f %12.4f %8.4f\n", r.record.gap,
                r.record.lower_prime, r.record.upper_prime, r.g, r.cramer, r.ratio);
  }
  const std::vector<MaxGapComparison> all = rows;
  std::vector<double> grid;
  for (const auto& r : all) grid.push_back(static_cast<double>(r.record.upper_prime));
  std::size_t k = 0;
  const auto series = sign_changes(grid, [&](double) {
    const auto& r = all[k++];
    return static_cast<double>(r.record.gap) - r.g;
  });
  std::printf("sign changes of G - g: %" PRIu64 "\n", series.total());
}

void report_brun(const Checkpoint& c, std::size_t limit_rows) {
  const double x = static_cast<double>(c.x);
  const auto entries = c.state.brun.entries();
  std::printf("x = %s\n", pow2_label(c.x).c_str());
  std::printf("%6s %20s %20s %20s\n", "d", "B_d(x)", "extrapolated", "4c2 S(d)/d");
  for (std::size_t i = 0; i < row_cap(limit_rows, entries.size()); ++i) {
    const auto& [d, acc] = entries[i];
    const double partial = acc.value();
    std::printf("%6" PRIu64 " %20.12f %20.12f %20.12f\n", d, partial,
                brun_model(BrunVariant::kExtrapolated, d, x, partial),
                brun_model(BrunVariant::kC6, d));
  }
  if (c.state.brun.sum(2) > 0.0) {
    std::printf("B_2 estimate (linear in 1/log x): %.12f\n",
                brun_model(BrunVariant::kB2Law, 2, x, c.state.brun.sum(2)));
  }
}

void report_firstocc(const Checkpoint& c, std::uint64_t dmin, std::uint64_t dmax,
                     std::size_t limit_rows) {
  const auto rows = first_occurrence_comparison(c.state, dmin, dmax);
  std::printf("%6s %20s %16s %16s %10s\n", "d", "p_f(d)", "conj. 7", "exp(sqrt d)",
              "log ratio");
  for (std::size_t i = 0; i < row_cap(limit_rows, rows.size()); ++i) {
    const auto& r = rows[i];
    std::printf("%6" PRIu64 " %20" PRIu64 " %16.6g %16.6g %10.4f\n", r.d, r.p_f, r.c7, r.shanks,
                r.log_ratio);
  }
}

void report_mertens(const std::vector<Checkpoint>& cps) {
  std::printf("%-14s %20s %20s %14s\n", "x", "sum 1/p", "loglog x + M", "difference");
  for (const auto& c : cps) {
    if (c.x < 3) continue;
    const double s = c.state.harmonic_sum.value();
    const double m = mertens_model(static_cast<double>(c.x));
    std::printf("%-14s %20.15f %20.15f %14.6e\n", pow2_label(c.x).c_str(), s, m, s - m);
  }
}

void report_scaling(const std::vector<Checkpoint>& cps) {
  std::printf("%-14s %10s %12s %8s %12s\n", "x", "slope", "prefactor", "points", "rms");
  for (const auto& c : cps) {
    try {
      const FitResult f = scaling_slope(c);
      std::printf("%-14s %10.6f %12.6f %8zu %12.4e\n", pow2_label(c.x).c_str(), f.b, f.a,
                  f.points_used, f.residual_rms);
    } catch (const InsufficientDataError&) {
      // Too few large counts at this threshold.
    }
  }
}

int verify_run(const fs::path& dir) {
  const auto cps = load_run(dir);
  std::size_t good = 0;
  for (const auto& c : cps) {
    const VerifyReport r = verify_checkpoint(c);
    if (r.ok()) {
      ++good;
      continue;
    }
    std::printf("x = %" PRIu64 ": FAILED%s%s%s%s%s (brun relative error %.3e)\n", c.x,
                r.gap_count ? "" : " gap-count", r.gap_sum ? "" : " gap-sum",
                r.sum_squares ? "" : " sum-of-squares", r.brun_accounting ? "" : " brun-accounting",
                r.pairs ? "" : " pair-counts", r.brun_relative_error);
  }
  std::printf("identities hold at %zu/%zu checkpoints\n", good, cps.size());
  return good == cps.size() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime-gap statistics: sieve, collect, compare against models."};
  app.require_subcommand(1);

  std::string out_dir;
  const auto add_out = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--out", out_dir, "Run directory")->envname("PRIMEGAPS_OUT");
    if (required) opt->required();
  };

  // collect
  auto* collect_cmd = app.add_subcommand("collect", "Sieve up to a limit and store checkpoints");
  std::string limit_text = "2^32";
  std::string grid_kind = "pow2";
  double grid_base = 1000.0;
  double grid_ratio = 1.03;
  std::uint64_t segment_bits = kDefaultSegmentBits;
  unsigned threads = 1;
  std::uint64_t pair_dmax = 512;
  bool quiet = false;
  collect_cmd->add_option("--limit", limit_text, "Largest number covered (2^N or decimal)");
  add_out(collect_cmd, true);
  collect_cmd->add_option("--grid", grid_kind, "Checkpoint grid")
      ->check(CLI::IsMember({"pow2", "geometric"}));
  collect_cmd->add_option("--grid-base", grid_base, "Geometric grid base");
  collect_cmd->add_option("--grid-ratio", grid_ratio, "Geometric grid ratio");
  collect_cmd->add_option("--segment-bits", segment_bits, "Odd numbers per segment");
  collect_cmd->add_option("--threads", threads, "Concurrent sieving workers");
  collect_cmd->add_option("--pair-dmax", pair_dmax, "Largest d for pair counts (0 disables)");
  collect_cmd->add_flag("--quiet", quiet, "No progress on stderr");

  // resume
  auto* resume_cmd = app.add_subcommand("resume", "Continue an interrupted run");
  add_out(resume_cmd, true);
  resume_cmd->add_option("--threads", threads, "Concurrent sieving workers");
  resume_cmd->add_flag("--quiet", quiet, "No progress on stderr");

  // report
  auto* report_cmd = app.add_subcommand("report", "Print a table");
  std::string report_kind;
  std::size_t limit_rows = 0;
  std::string andrica_limit_text = "1000000";
  std::uint64_t dmin = 2;
  std::uint64_t dmax = 1u << 16;
  report_cmd->add_option("kind", report_kind, "Table")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "andrica", "maxgaps", "brun", "firstocc",
                             "mertens", "scaling-slopes"}));
  add_out(report_cmd, false);
  report_cmd->add_option("--limit-rows", limit_rows, "Print at most this many rows");
  report_cmd->add_option("--limit", andrica_limit_text, "Prime range for table2/andrica");
  report_cmd->add_option("--dmin", dmin, "Smallest gap for firstocc");
  report_cmd->add_option("--dmax", dmax, "Largest gap for firstocc");

  // export
  auto* export_cmd = app.add_subcommand("export", "Write a CSV file");
  std::string export_kind;
  std::string csv_path;
  export_cmd->add_option("kind", export_kind, "tau|pairs|brun|maxgap|firstocc|table1|table2|scaling|mertens")
      ->required();
  add_out(export_cmd, true);
  export_cmd->add_option("--csv", csv_path, "Output file")->required();
  export_cmd->add_option("--limit-rows", limit_rows, "Rows for table2");
  export_cmd->add_option("--limit", andrica_limit_text, "Prime range for table2");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check the exact identities of a stored run");
  add_out(verify_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*collect_cmd) {
      CollectOptions opt;
      opt.limit = parse_limit(limit_text);
      opt.grid.kind = grid_kind == "pow2" ? GridKind::kPow2 : GridKind::kGeometric;
      opt.grid.base = grid_base;
      opt.grid.ratio = grid_ratio;
      opt.segment_bits = segment_bits;
      opt.threads = threads;
      opt.pair_dmax = pair_dmax;
      ProgressLine progress(!quiet);
      collect_to_directory(opt, out_dir, std::ref(progress));
      const RunManifest m = RunManifest::read(out_dir);
      std::printf("collected %zu checkpoints up to %" PRIu64 " in %s\n", m.checkpoints.size(),
                  m.completed_up_to, out_dir.c_str());
      return kOk;
    }
    if (*resume_cmd) {
      ProgressLine progress(!quiet);
      const ResumePoint rp = resume(out_dir);
      if (!rp.manifest) {
        std::fprintf(stderr, "error: no run to resume in %s\n", out_dir.c_str());
        return kRuntime;
      }
      if (!resume_directory(out_dir, threads, std::ref(progress))) {
        std::printf("run in %s is already complete\n", out_dir.c_str());
        return kOk;
      }
      const RunManifest m = RunManifest::read(out_dir);
      std::printf("resumed; %zu checkpoints up to %" PRIu64 " in %s\n", m.checkpoints.size(),
                  m.completed_up_to, out_dir.c_str());
      return kOk;
    }
    if (*report_cmd) {
      if (report_kind == "table2" || report_kind == "andrica") {
        report_andrica(parse_limit(andrica_limit_text), limit_rows == 0 ? 10 : limit_rows);
        return kOk;
      }
      if (out_dir.empty()) throw ArgumentError("--out is required for report " + report_kind);
      const auto cps = load_run(out_dir);
      if (report_kind == "table1") report_table1(cps);
      if (report_kind == "maxgaps") report_maxgaps(latest(cps), limit_rows);
      if (report_kind == "brun") report_brun(latest(cps), limit_rows);
      if (report_kind == "firstocc") report_firstocc(latest(cps), dmin, dmax, limit_rows);
      if (report_kind == "mertens") report_mertens(cps);
      if (report_kind == "scaling-slopes") report_scaling(cps);
      return kOk;
    }
    if (*export_cmd) {
      const CsvKind kind = parse_csv_kind(export_kind);
      ExportOptions eo;
      eo.andrica_limit = parse_limit(andrica_limit_text);
      if (limit_rows != 0) eo.andrica_rows = limit_rows;
      const auto cps = kind == CsvKind::kTable2 ? std::vector<Checkpoint>{} : load_run(out_dir);
      export_csv(kind, cps, csv_path, eo);
      return kOk;
    }
    if (*verify_cmd) return verify_run(out_dir);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntime;
  }
  return kUsage;
}
