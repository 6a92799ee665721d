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

// Slow, independent reference implementations used as test oracles.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo; n < hi; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

struct GapStats {
  std::map<std::uint64_t, std::uint64_t> tau;
  std::map<std::uint64_t, long double> brun;
  std::map<std::uint64_t, std::uint64_t> first;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> records;  // (gap, lower)
  unsigned __int128 sum_sq = 0;
  long double harmonic = 0.0L;
  std::uint64_t count = 0;
  std::uint64_t last = 0;
};

// Consecutive-gap statistics over all primes <= x, skipping the (2, 3) gap.
inline GapStats gap_stats(std::uint64_t x) {
  GapStats s;
  std::uint64_t prev = 0;
  std::uint64_t best = 0;
  for (std::uint64_t p : primes_in(2, x + 1)) {
    ++s.count;
    s.harmonic += 1.0L / p;
    if (prev >= 3) {
      const std::uint64_t d = p - prev;
      ++s.tau[d];
      s.sum_sq += static_cast<unsigned __int128>(d) * d;
      s.brun[d] += 1.0L / prev + 1.0L / p;
      s.first.emplace(d, prev);
      if (d > best) {
        best = d;
        s.records.emplace_back(d, prev);
      }
    }
    prev = p;
  }
  s.last = prev;
  return s;
}

// #{p : p and p + d prime, p + d <= x} for even d <= d_max.
inline std::map<std::uint64_t, std::uint64_t> pair_counts(std::uint64_t x, std::uint64_t d_max) {
  std::vector<bool> prime(x + 1, false);
  for (std::uint64_t n = 2; n <= x; ++n) prime[n] = is_prime(n);
  std::map<std::uint64_t, std::uint64_t> out;
  for (std::uint64_t d = 2; d <= d_max; d += 2) {
    std::uint64_t c = 0;
    for (std::uint64_t p = 2; p + d <= x; ++p) c += prime[p] && prime[p + d];
    out[d] = c;
  }
  return out;
}

// Composite Simpson rule on [a, b] with `panels` (even) subintervals.
template <class F>
double simpson(F&& f, double a, double b, std::uint64_t panels) {
  const double h = (b - a) / static_cast<double>(panels);
  long double s = f(a) + f(b);
  for (std::uint64_t i = 1; i < panels; ++i) {
    s += (i % 2 ? 4.0L : 2.0L) * f(a + h * static_cast<double>(i));
  }
  return static_cast<double>(s * h / 3.0L);
}

}  // namespace oracle
