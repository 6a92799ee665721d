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

// Closed-form gap models. Everything here is a pure function of the
// threshold x, the prime count pi(x) supplied by the caller, and/or a gap d.
// Callers pick the prime count: the exact sieved value or x / log x.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace primegaps {

enum class FormulaId {
  kHlPair,
  kTauC1,
  kTauC1Prime,
  kTauC1DoublePrime,
  kTwinC2,
  kTwinHl,
  kTwinLi2,
  kGmaxC4,
  kGmaxPnt,
  kGmaxCramer,
  kGmaxGranville,
  kSumSqC5,
  kSumSqSimple,
  kSumSqHeathBrown,
  kLargeGapSum,
  kBrunC6,
  kBrunPartial,
  kBrunExtrapolated,
  kBrunB2Law,
  kMertens,
  kPfC7,
  kPfShanks,
  kPfAsymptotic,
  kRC8,
  kRCramer,
  kRShanks2,
};

std::string_view formula_name(FormulaId id);
// Inverse of formula_name (e.g. "TAU_C1"); throws ArgumentError.
FormulaId parse_formula(std::string_view name);

struct ModelArgs {
  std::optional<double> x;
  std::optional<double> pi_x;
  std::optional<std::uint64_t> d;  // gap, or H for kLargeGapSum
  std::optional<double> partial;   // B_d(x) for kBrunExtrapolated / kBrunB2Law
};

struct ModelEval {
  FormulaId formula_id;
  std::optional<double> x;
  std::optional<std::uint64_t> d;
  double value;
};

// Dispatches to the functions below; missing arguments raise ArgumentError.
ModelEval evaluate(FormulaId id, const ModelArgs& args);

// --- consecutive-gap counts tau_d(x) --------------------------------------

enum class TauVariant { kC1, kC1Prime, kC1DoublePrime };

// C1:   C2 S(d) (pi^2/x) (1 - 2 pi/x)^(d/2 - 1)
// C1':  C2 S(d) pi^2/(x - 2 pi) exp(-d pi/x)
// C1'': C2 S(d) (pi^2/x) exp(-d pi/x)
// Requires x > 2 pi_x and even d >= 2.
double tau_model(TauVariant v, double x, double pi_x, std::uint64_t d);

// Hardy-Littlewood pair count C2 S(d) x / log^2 x, x > e.
double hl_pair_model(double x, std::uint64_t d);

// tau_d(x) minus the C1 prediction.
double delta(double x, double pi_x, std::uint64_t d, double tau_observed);

// --- twins ------------------------------------------------------------------

enum class TwinVariant { kSquarePi, kHardyLittlewood, kLi2 };

// kSquarePi: C2 pi^2/x; kHardyLittlewood: C2 x/log^2 x; kLi2: C2 Li2(x).
double twin_model(TwinVariant v, double x, double pi_x);

// --- maximal gap G(x) -------------------------------------------------------

enum class GmaxVariant { kC4, kPnt, kCramer, kGranville };

// kC4:        (x/pi)(2 log pi - log x + log C2)
// kPnt:       log x (log x - 2 log log x + log C2)
// kCramer:    log^2 x
// kGranville: 2 exp(-gamma) log^2 x
// pi_x is only read by kC4. Throws DomainError when the C4/PNT bracket is
// not positive.
double gmax_model(GmaxVariant v, double x, double pi_x = 0.0);

// --- sum of squared gaps ----------------------------------------------------

enum class SumSqVariant { kC5, kSimple, kHeathBrown };

// kC5: 2x^3/(pi (x - 2pi)) (1 - 3pi/x + 2pi^2/x^2); kSimple: 2x^2/pi;
// kHeathBrown: 2x log x. Requires x > 2 pi_x.
double sumsq_model(SumSqVariant v, double x, double pi_x);

// Sum of d tau_d over d >= h: x^2/(x - 2pi) (1 - 2pi/x)^(h/2) (1 + (h-2) pi/x).
double large_gap_sum_model(double x, double pi_x, std::uint64_t h);

// --- generalized Brun constants ----------------------------------------------

enum class BrunVariant { kC6, kPartial, kExtrapolated, kB2Law };

// kC6:           4 c2 S(d) / d
// kPartial:      (2 C2 / d) S(d) exp(-d / log x)                     needs x > 1
// kExtrapolated: partial + (2 C2 / d) S(d) (1 - exp(-d / log x))     needs x, partial
// kB2Law:        partial + 4 c2 / log x, d in {2, 4}                 needs x, partial
double brun_model(BrunVariant v, std::uint64_t d, std::optional<double> x = std::nullopt,
                  std::optional<double> partial = std::nullopt);

// log log x + M.
double mertens_model(double x);

// --- first occurrence p_f(d) ------------------------------------------------

enum class PfVariant { kC7, kShanks, kAsymptotic };

// kC7: sqrt(d) exp(sqrt(log^2 d + 4d) / 2); kShanks: exp(sqrt d);
// kAsymptotic: sqrt(d) exp(sqrt d).
double pf_model(PfVariant v, double d);

// --- Andrica / R(x) ---------------------------------------------------------

// t^(3/4) exp(-sqrt(t)/2) / 2; maximal at t = 9.
double andrica_kernel(double t);

enum class AndricaVariant { kC8, kCramer, kShanks2 };

// kC8 takes (x, pi_x) and evaluates the kernel at gmax_model(kC4);
// kCramer takes x: log^{3/2} x / (2 sqrt x); kShanks2 takes d as `arg`:
// d exp(-sqrt(d)/2) / 2.
double andrica_model(AndricaVariant v, double arg, double pi_x = 0.0);

}  // namespace primegaps
