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

#include "primegaps/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>

#include "primegaps/constants.hpp"
#include "primegaps/errors.hpp"
#include "primegaps/models.hpp"
#include "primegaps/sieve.hpp"

namespace primegaps {

namespace {

u128 round_half_up(double v) { return static_cast<u128>(std::floor(v + 0.5)); }

}  // namespace

FitResult fit_exponential(std::span<const std::pair<double, double>> points,
                          Weighting weighting) {
  std::vector<std::pair<double, double>> used;  // (d, log y)
  std::vector<double> w;
  for (const auto& [d, y] : points) {
    if (!(y > 0.0)) continue;
    used.emplace_back(d, std::log(y));
    w.push_back(weighting == Weighting::kLog ? y : 1.0);
  }
  if (used.size() < 3) {
    throw InsufficientDataError("fit_exponential: need at least 3 points with y > 0, got " +
                                std::to_string(used.size()));
  }
  double sw = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < used.size(); ++i) {
    sw += w[i];
    mx += w[i] * used[i].first;
    my += w[i] * used[i].second;
  }
  mx /= sw;
  my /= sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < used.size(); ++i) {
    const double dx = used[i].first - mx;
    sxx += w[i] * dx * dx;
    sxy += w[i] * dx * (used[i].second - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("fit_exponential: abscissae are all equal");
  const double slope = sxy / sxx;
  const double log_a = my - slope * mx;

  FitResult r;
  r.a = std::exp(log_a);
  r.b = -slope;
  r.points_used = used.size();
  double ss = 0.0;
  for (const auto& [d, ly] : used) {
    const double e = ly - (log_a + slope * d);
    ss += e * e;
  }
  r.residual_rms = std::sqrt(ss / static_cast<double>(used.size()));
  return r;
}

std::vector<ScalingPoint> scaling_collapse(const Checkpoint& c, std::uint64_t tau_min) {
  std::vector<ScalingPoint> out;
  const double x = static_cast<double>(c.x);
  const double pi = static_cast<double>(c.pi);
  for (const auto& [d, tau] : c.state.histogram.entries()) {
    if (tau <= tau_min) continue;
    const double dd = static_cast<double>(d);
    out.push_back({d, dd * pi / x,
                   x * static_cast<double>(tau) / (kTwinConstant * singular_series(d) * pi * pi)});
  }
  return out;
}

FitResult scaling_slope(const Checkpoint& c, std::uint64_t tau_min) {
  const double lx = std::log(static_cast<double>(c.x));
  std::vector<std::pair<double, double>> pts;
  for (const ScalingPoint& s : scaling_collapse(c, tau_min)) {
    const double dd = static_cast<double>(s.d);
    if (dd / lx > std::log(dd)) pts.emplace_back(s.D, s.T);
  }
  return fit_exponential(pts);
}

SignChangeSeries sign_changes(std::span<const double> grid,
                              const std::function<double(double)>& residual) {
  SignChangeSeries s;
  s.grid.assign(grid.begin(), grid.end());
  int last = 0;
  std::uint64_t nu = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ArgumentError("sign_changes: grid not ascending");
    const double r = residual(grid[i]);
    const int sign = r > 0.0 ? 1 : (r < 0.0 ? -1 : 0);
    if (sign != 0) {
      if (last != 0 && sign != last) ++nu;
      last = sign;
    }
    s.signs.push_back(sign);
    s.nu.push_back(nu);
  }
  return s;
}

std::vector<Table1Row> table1(std::span<const Checkpoint> checkpoints) {
  std::vector<Table1Row> rows;
  for (const Checkpoint& c : checkpoints) {
    if (!std::has_single_bit(c.x)) continue;
    const int k = std::countr_zero(c.x);
    if (k < 24 || k % 2 != 0) continue;
    if (c.pi < 3) continue;
    // The sum runs up to the last prime and counts pi - 2 gaps; the models
    // are evaluated on the same footing.
    const double x = static_cast<double>(c.state.last_prime);
    const double pi = static_cast<double>(c.pi - 2);
    const double sq = static_cast<double>(c.state.sum_sq_gaps);
    const double hb = sumsq_model(SumSqVariant::kHeathBrown, x, pi);
    const double c5 = sumsq_model(SumSqVariant::kC5, x, pi);
    rows.push_back({c.x, c.state.sum_sq_gaps, round_half_up(hb), sq / hb, round_half_up(c5),
                    sq / c5});
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  return rows;
}

std::vector<AndricaRow> andrica_table(std::uint64_t limit, std::size_t top_k) {
  if (limit < 4) throw BoundsError("andrica_table: limit must be >= 4");
  auto worse = [](const AndricaRow& a, const AndricaRow& b) {
    return a.a != b.a ? a.a > b.a : a.n < b.n;
  };
  // Min-heap on A_n holding the current top_k.
  std::priority_queue<AndricaRow, std::vector<AndricaRow>, decltype(worse)> heap(worse);
  std::uint64_t n = 0;
  std::uint64_t prev = 0;
  double prev_root = 0.0;
  SieveConfig cfg;
  cfg.limit = limit;
  SegmentedSieve(cfg).stream_primes(2, limit, [&](std::uint64_t p) {
    const double root = std::sqrt(static_cast<double>(p));
    if (prev != 0 && top_k > 0) {
      AndricaRow row{n, prev, p, p - prev, root - prev_root};
      if (heap.size() < top_k) {
        heap.push(row);
      } else if (worse(row, heap.top())) {
        heap.pop();
        heap.push(row);
      }
    }
    ++n;
    prev = p;
    prev_root = root;
  });
  std::vector<AndricaRow> out;
  while (!heap.empty()) {
    out.push_back(heap.top());
    heap.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<RPoint> r_series(std::span<const MaxGapRecord> records) {
  std::vector<RPoint> out;
  out.reserve(records.size());
  for (const MaxGapRecord& r : records) {
    out.push_back({r.upper_prime, r.lower_prime, r.gap,
                   std::sqrt(static_cast<double>(r.upper_prime)) -
                       std::sqrt(static_cast<double>(r.lower_prime))});
  }
  return out;
}

std::vector<MaxGapComparison> max_gap_comparison(std::span<const MaxGapRecord> records) {
  std::vector<MaxGapComparison> out;
  for (const MaxGapRecord& r : records) {
    if (r.upper_prime < 11) continue;
    const double x = static_cast<double>(r.upper_prime);
    const double g = gmax_model(GmaxVariant::kC4, x, static_cast<double>(r.pi_upper));
    out.push_back({r, g, gmax_model(GmaxVariant::kCramer, x), static_cast<double>(r.gap) / g});
  }
  return out;
}

std::vector<FirstOccurrenceComparison> first_occurrence_comparison(const RunState& state,
                                                                   std::uint64_t d_min,
                                                                   std::uint64_t d_max) {
  std::vector<FirstOccurrenceComparison> out;
  for (const auto& [d, p] : state.first_occurrences.entries()) {
    if (d < d_min || d > d_max) continue;
    const double dd = static_cast<double>(d);
    const double c7 = pf_model(PfVariant::kC7, dd);
    out.push_back({d, p, c7, pf_model(PfVariant::kShanks, dd),
                   std::log(static_cast<double>(p)) / std::log(c7)});
  }
  return out;
}

VerifyReport verify_checkpoint(const Checkpoint& c) {
  VerifyReport r;
  const RunState& s = c.state;
  const std::uint64_t pi = c.pi;

  const std::uint64_t expected_count = pi >= 2 ? pi - 2 : 0;
  r.gap_count = s.histogram.total() == expected_count && pi == s.primes_seen;
  const u128 expected_sum = pi >= 2 ? static_cast<u128>(s.last_prime - 3) : 0;
  r.gap_sum = s.histogram.weighted_total() == expected_sum;
  r.sum_squares = s.histogram.squared_total() == s.sum_sq_gaps;

  if (pi >= 2) {
    CompensatedSum rhs;
    rhs.add(0.5);
    rhs.add(1.0 / 6.0);
    rhs.add(0.5 / static_cast<double>(s.last_prime));
    for (const auto& [d, acc] : s.brun.entries()) {
      rhs.add(0.5 * acc.sum);
      rhs.add(0.5 * acc.comp);
    }
    const double h = s.harmonic_sum.value();
    r.brun_relative_error = std::fabs(h - rhs.value()) / h;
    r.brun_accounting = r.brun_relative_error < kBrunAccountingTolerance;
  }

  if (c.pair_dmax >= 2) {
    auto pair = [&](std::uint64_t d) {
      auto it = c.pair_counts.find(d);
      return it == c.pair_counts.end() ? std::uint64_t{0} : it->second;
    };
    r.pairs = pair(2) == s.histogram.count(2);
    if (c.pair_dmax >= 4) {
      r.pairs = r.pairs && pair(4) == s.histogram.count(4) + (c.x >= 7 ? 1 : 0);
    }
  }
  return r;
}

}  // namespace primegaps
