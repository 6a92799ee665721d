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

// Number-theoretic constants and the elementary functions the gap models
// are built from.

#pragma once

#include <cstdint>
#include <vector>

namespace primegaps {

// Twin prime constant C2 = 2 * prod_{p>2} (1 - 1/(p-1)^2).
inline constexpr double kTwinConstant = 1.32032363169373914785562422002911;
// c2 = C2 / 2.
inline constexpr double kTwinConstantHalf = 0.66016181584686957392781211001455;
inline constexpr double kMertensConstant = 0.26149721284764278375542683860869;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240;

struct ConstantTable {
  double C2;
  double c2;
  double mertens_M;
  double euler_gamma;
  double log_C2;  // c = log C2, appears in the maximal-gap model
};

const ConstantTable& constants();

// Distinct odd primes dividing d, ascending. Requires d >= 2.
std::vector<std::uint64_t> odd_prime_divisors(std::uint64_t d);

// prod_{p | d, p > 2} (p-1)/(p-2). Requires even d >= 2; equals 1 exactly
// when d is a power of two. Values for d <= 10^5 come from a table.
double singular_series(std::uint64_t d);

// 2 * prod_{2 < p <= cutoff} (1 - 1/(p-1)^2), accumulated in log space.
double twin_constant_product(std::uint64_t cutoff);

// Li_2(x) = integral from 2 to x of du / log^2(u), x >= 2.
double li2(double x);

}  // namespace primegaps
