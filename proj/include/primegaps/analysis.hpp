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

// Turning checkpoints and models into fits, tables and residual series.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "primegaps/collector.hpp"

namespace primegaps {

// --- exponential fits ---------------------------------------------------------

enum class Weighting {
  kNone,
  // Weights proportional to y: the inverse variance of log y for Poisson counts.
  kLog,
};

// y ~ a exp(-b d), fitted by least squares on (d, log y).
struct FitResult {
  double a = 0.0;
  double b = 0.0;
  double residual_rms = 0.0;  // in log space
  std::size_t points_used = 0;
};

// Points with y <= 0 are skipped; fewer than three usable points raise
// InsufficientDataError.
FitResult fit_exponential(std::span<const std::pair<double, double>> points,
                          Weighting weighting = Weighting::kNone);

// --- scaling collapse -----------------------------------------------------------

struct ScalingPoint {
  std::uint64_t d = 0;
  double D = 0.0;  // d pi(x) / x
  double T = 0.0;  // x tau_d / (C2 S(d) pi^2)
};

// One point per even d with tau_d > tau_min.
std::vector<ScalingPoint> scaling_collapse(const Checkpoint& c, std::uint64_t tau_min = 1000);

// Slope s of log T = log a - s D over the exponential-dominated region:
// d / log x > log d and tau_d > tau_min.
FitResult scaling_slope(const Checkpoint& c, std::uint64_t tau_min = 1000);

// --- sign changes -------------------------------------------------------------

struct SignChangeSeries {
  std::vector<double> grid;
  std::vector<int> signs;             // -1, 0, +1
  std::vector<std::uint64_t> nu;      // running count of sign changes
  std::uint64_t total() const { return nu.empty() ? 0 : nu.back(); }
};

// Exact zeros are skipped: a change is counted when a nonzero sign differs
// from the previous nonzero sign.
SignChangeSeries sign_changes(std::span<const double> grid,
                              const std::function<double(double)>& residual);

// --- squared-gap table --------------------------------------------------------

struct Table1Row {
  std::uint64_t x = 0;
  u128 sum_sq = 0;
  u128 heath_brown = 0;  // 2 p log p at the last prime p <= x, rounded half-up
  double heath_brown_ratio = 0.0;
  u128 conjecture5 = 0;  // at the last prime p <= x with pi(x) - 2 gaps, rounded half-up
  double conjecture5_ratio = 0.0;
};

// Rows for the checkpoints at x = 2^k with even k >= 24, ascending in x.
std::vector<Table1Row> table1(std::span<const Checkpoint> checkpoints);

// --- Andrica ------------------------------------------------------------------

struct AndricaRow {
  std::uint64_t n = 0;  // index of p_n, with p_1 = 2
  std::uint64_t p = 0;
  std::uint64_t next = 0;
  std::uint64_t gap = 0;
  double a = 0.0;  // sqrt(next) - sqrt(p)
};

// The top_k largest sqrt(p_{n+1}) - sqrt(p_n) with p_{n+1} < limit, descending.
std::vector<AndricaRow> andrica_table(std::uint64_t limit, std::size_t top_k);

struct RPoint {
  std::uint64_t x = 0;  // upper prime of the record gap
  std::uint64_t lower = 0;
  std::uint64_t gap = 0;
  double r = 0.0;  // sqrt(upper) - sqrt(lower)
};

std::vector<RPoint> r_series(std::span<const MaxGapRecord> records);

// --- model comparisons used by reports ----------------------------------------

struct MaxGapComparison {
  MaxGapRecord record;
  double g = 0.0;       // gmax C4 at x = upper prime with the sieved pi
  double cramer = 0.0;  // log^2 x
  double ratio = 0.0;   // G / g
};

// Records with upper prime >= 11 (where the C4 model is defined).
std::vector<MaxGapComparison> max_gap_comparison(std::span<const MaxGapRecord> records);

struct FirstOccurrenceComparison {
  std::uint64_t d = 0;
  std::uint64_t p_f = 0;
  double c7 = 0.0;
  double shanks = 0.0;
  double log_ratio = 0.0;  // log p_f / log C7
};

std::vector<FirstOccurrenceComparison> first_occurrence_comparison(const RunState& state,
                                                                   std::uint64_t d_min,
                                                                   std::uint64_t d_max);

// --- exact identities ------------------------------------------------------------

struct VerifyReport {
  bool gap_count = true;       // sum tau_d = pi - 2
  bool gap_sum = true;         // sum d tau_d = last prime - 3
  bool sum_squares = true;     // sum d^2 tau_d = stored accumulator
  bool brun_accounting = true; // harmonic sum vs Brun ledger
  bool pairs = true;           // pi_2 = tau_2, pi_4 = tau_4 + [x >= 7]
  double brun_relative_error = 0.0;

  bool ok() const { return gap_count && gap_sum && sum_squares && brun_accounting && pairs; }
};

inline constexpr double kBrunAccountingTolerance = 1e-11;

VerifyReport verify_checkpoint(const Checkpoint& c);

}  // namespace primegaps
