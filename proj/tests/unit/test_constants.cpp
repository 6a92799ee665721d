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

#include <bit>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "primegaps/constants.hpp"
#include "primegaps/errors.hpp"

using namespace primegaps;
using doctest::Approx;

TEST_CASE("constant table") {
  const ConstantTable& k = constants();
  CHECK(k.C2 == 2.0 * k.c2);
  CHECK(k.log_C2 == std::log(k.C2));
  CHECK(k.C2 > 1.3203236);
  CHECK(k.C2 < 1.3203237);
  CHECK(k.log_C2 == Approx(0.2778769).epsilon(1e-7));
  CHECK(k.mertens_M == Approx(0.2614972).epsilon(1e-7));
  CHECK(k.euler_gamma == Approx(0.577216).epsilon(1e-6));
}

TEST_CASE("odd_prime_divisors") {
  CHECK(odd_prime_divisors(6) == std::vector<std::uint64_t>{3});
  CHECK(odd_prime_divisors(210) == std::vector<std::uint64_t>{3, 5, 7});
  CHECK(odd_prime_divisors(64).empty());
  CHECK(odd_prime_divisors(2 * 9 * 25 * 101) == std::vector<std::uint64_t>{3, 5, 101});
  CHECK_THROWS_AS(odd_prime_divisors(1), DomainError);
}

TEST_CASE("singular_series examples") {
  CHECK(singular_series(8) == 1.0);
  CHECK(singular_series(6) == 2.0);
  CHECK(singular_series(30) == Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(singular_series(210) == Approx(3.2).epsilon(1e-15));
  CHECK_THROWS_AS(singular_series(7), DomainError);
  CHECK_THROWS_AS(singular_series(0), DomainError);
}

TEST_CASE("singular_series properties against a factorization oracle") {
  const std::uint64_t n = 1000000;
  // Smallest-prime-factor table for the oracle.
  std::vector<std::uint32_t> spf(2 * n + 1, 0);
  for (std::uint64_t i = 2; i <= 2 * n; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= 2 * n; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  long double mean = 0.0L;
  bool all_match = true;
  bool floor_ok = true;
  bool doubling_ok = true;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const std::uint64_t d = 2 * k;
    long double expect = 1.0L;
    for (std::uint64_t m = d; m > 1;) {
      const std::uint64_t p = spf[m];
      if (p > 2) expect *= static_cast<long double>(p - 1) / (p - 2);
      while (m % p == 0) m /= p;
    }
    const double got = singular_series(d);
    all_match = all_match && std::fabs(got - static_cast<double>(expect)) <= 1e-13 * got;
    floor_ok = floor_ok && (got >= 1.0) && ((got == 1.0) == std::has_single_bit(d));
    if (d <= n) doubling_ok = doubling_ok && singular_series(2 * d) == got;
    mean += got;
  }
  mean /= n;
  CHECK(all_match);
  CHECK(floor_ok);
  CHECK(doubling_ok);
  CHECK(std::fabs(static_cast<double>(mean) - 1.0 / kTwinConstantHalf) < 1e-3);
}

TEST_CASE("twin_constant_product") {
  CHECK(twin_constant_product(3) == Approx(1.5).epsilon(1e-15));
  CHECK(std::fabs(twin_constant_product(1000000) - kTwinConstant) < 1e-6);
  CHECK(std::fabs(twin_constant_product(100000000) - 1.32032363169) < 1e-8);
  CHECK(twin_constant_product(10000) > twin_constant_product(100000));
  CHECK(twin_constant_product(100000) > kTwinConstant);
  CHECK_THROWS_AS(twin_constant_product(2), DomainError);
}

TEST_CASE("li2 against a fine Simpson oracle") {
  // du / log^2 u with u = e^t.
  const auto integrand = [](double t) { return std::exp(t) / (t * t); };
  CHECK(li2(2.0) == 0.0);
  for (double x : {100.0, 1e6}) {
    const double expect = oracle::simpson(integrand, std::log(2.0), std::log(x), 1000000);
    CHECK(std::fabs(li2(x) - expect) <= 1e-9 * expect);
  }
  CHECK_THROWS_AS(li2(1.5), DomainError);
}

TEST_CASE("li2 growth") {
  double prev = 0.0;
  for (double x = 3.0; x < 1e12; x *= 1.7) {
    const double v = li2(x);
    CHECK(v > prev);
    prev = v;
  }
  const double x = 1e10;
  const double l = std::log(x);
  CHECK(std::fabs(li2(x) * l * l / x - 1.0) < 0.15);
}
