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

#include "primegaps/constants.hpp"

#include <cmath>
#include <string>

#include "primegaps/compensated.hpp"
#include "primegaps/errors.hpp"
#include "primegaps/sieve.hpp"

namespace primegaps {

namespace {

constexpr std::uint64_t kSeriesTableMax = 100000;

double series_from_divisors(std::uint64_t d) {
  double s = 1.0;
  for (std::uint64_t p : odd_prime_divisors(d)) {
    s *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
  }
  return s;
}

const std::vector<double>& series_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kSeriesTableMax / 2 + 1, 1.0);
    for (std::uint64_t d = 2; d <= kSeriesTableMax; d += 2) t[d / 2] = series_from_divisors(d);
    return t;
  }();
  return table;
}

// Adaptive Simpson on [a, b] with Richardson correction.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

const ConstantTable& constants() {
  static const ConstantTable table{kTwinConstant, kTwinConstantHalf, kMertensConstant,
                                   kEulerGamma, std::log(kTwinConstant)};
  return table;
}

std::vector<std::uint64_t> odd_prime_divisors(std::uint64_t d) {
  if (d < 2) throw DomainError("odd_prime_divisors: d must be >= 2");
  std::vector<std::uint64_t> out;
  while ((d & 1) == 0) d >>= 1;
  for (std::uint64_t p = 3; p * p <= d; p += 2) {
    if (d % p != 0) continue;
    out.push_back(p);
    while (d % p == 0) d /= p;
  }
  if (d > 1) out.push_back(d);
  return out;
}

double singular_series(std::uint64_t d) {
  if (d < 2 || (d & 1) != 0) {
    throw DomainError("singular_series: d must be even and >= 2, got " + std::to_string(d));
  }
  if (d <= kSeriesTableMax) return series_table()[d / 2];
  return series_from_divisors(d);
}

double twin_constant_product(std::uint64_t cutoff) {
  if (cutoff < 3) throw DomainError("twin_constant_product: cutoff must be >= 3");
  CompensatedSum log_sum;
  auto factor = [&](std::uint64_t p) {
    if (p == 2) return;
    const double q = static_cast<double>(p - 1);
    log_sum.add(std::log1p(-1.0 / (q * q)));
  };
  if (cutoff <= (std::uint64_t{1} << 32)) {
    for (std::uint64_t p : base_primes(cutoff)) factor(p);
  } else {
    SieveConfig cfg;
    cfg.limit = cutoff + 1;
    SegmentedSieve(cfg).stream_primes(3, cutoff + 1, factor);
  }
  return 2.0 * std::exp(log_sum.value());
}

double li2(double x) {
  if (!(x >= 2.0)) throw DomainError("li2: x must be >= 2");
  if (x == 2.0) return 0.0;
  // Substituting u = e^t gives a smooth integrand e^t / t^2 on [log 2, log x].
  auto f = [](double t) { return std::exp(t) / (t * t); };
  const double a = std::log(2.0);
  const double b = std::log(x);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = 1e-12 * std::fabs(whole);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

}  // namespace primegaps
