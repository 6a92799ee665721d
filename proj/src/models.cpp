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

#include "primegaps/models.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "primegaps/constants.hpp"
#include "primegaps/errors.hpp"

namespace primegaps {

namespace {

constexpr std::array<std::pair<FormulaId, std::string_view>, 26> kNames = {{
    {FormulaId::kHlPair, "HL_PAIR"},
    {FormulaId::kTauC1, "TAU_C1"},
    {FormulaId::kTauC1Prime, "TAU_C1P"},
    {FormulaId::kTauC1DoublePrime, "TAU_C1PP"},
    {FormulaId::kTwinC2, "TWIN_C2"},
    {FormulaId::kTwinHl, "TWIN_HL"},
    {FormulaId::kTwinLi2, "TWIN_LI2"},
    {FormulaId::kGmaxC4, "GMAX_C4"},
    {FormulaId::kGmaxPnt, "GMAX_PNT"},
    {FormulaId::kGmaxCramer, "GMAX_CRAMER"},
    {FormulaId::kGmaxGranville, "GMAX_GRANVILLE"},
    {FormulaId::kSumSqC5, "SUMSQ_C5"},
    {FormulaId::kSumSqSimple, "SUMSQ_SIMPLE"},
    {FormulaId::kSumSqHeathBrown, "SUMSQ_HB"},
    {FormulaId::kLargeGapSum, "LARGE_GAP_SUM"},
    {FormulaId::kBrunC6, "BRUN_C6"},
    {FormulaId::kBrunPartial, "BRUN_PARTIAL"},
    {FormulaId::kBrunExtrapolated, "BRUN_EXTRAP"},
    {FormulaId::kBrunB2Law, "BRUN_B2_LAW"},
    {FormulaId::kMertens, "MERTENS"},
    {FormulaId::kPfC7, "PF_C7"},
    {FormulaId::kPfShanks, "PF_SHANKS"},
    {FormulaId::kPfAsymptotic, "PF_ASYMPT"},
    {FormulaId::kRC8, "R_C8"},
    {FormulaId::kRCramer, "R_CRAMER"},
    {FormulaId::kRShanks2, "R_SHANKS2"},
}};

void require_even_gap(std::uint64_t d, const char* who) {
  if (d < 2 || d % 2 != 0) {
    throw DomainError(std::string(who) + ": d must be even and >= 2, got " + std::to_string(d));
  }
}

// 1 - 2 pi/x, which must be positive for every pi-based model.
double density_complement(double x, double pi_x, const char* who) {
  if (!(x > 0.0) || !(pi_x >= 0.0) || !(x > 2.0 * pi_x)) {
    throw DomainError(std::string(who) + ": requires x > 2 pi(x)");
  }
  return 1.0 - 2.0 * pi_x / x;
}

template <class T>
T need(const std::optional<T>& v, const char* what, FormulaId id) {
  if (!v) {
    throw ArgumentError(std::string(formula_name(id)) + " needs argument '" + what + "'");
  }
  return *v;
}

}  // namespace

std::string_view formula_name(FormulaId id) {
  for (const auto& [fid, name] : kNames) {
    if (fid == id) return name;
  }
  return "UNKNOWN";
}

FormulaId parse_formula(std::string_view name) {
  for (const auto& [fid, n] : kNames) {
    if (n == name) return fid;
  }
  throw ArgumentError("unknown formula '" + std::string(name) + "'");
}

double tau_model(TauVariant v, double x, double pi_x, std::uint64_t d) {
  require_even_gap(d, "tau_model");
  const double q = density_complement(x, pi_x, "tau_model");
  const double pref = kTwinConstant * singular_series(d);
  const double dd = static_cast<double>(d);
  switch (v) {
    case TauVariant::kC1:
      return pref * (pi_x * pi_x / x) * std::pow(q, dd / 2.0 - 1.0);
    case TauVariant::kC1Prime:
      return pref * pi_x * pi_x / (x - 2.0 * pi_x) * std::exp(-dd * pi_x / x);
    case TauVariant::kC1DoublePrime:
      return pref * (pi_x * pi_x / x) * std::exp(-dd * pi_x / x);
  }
  throw ArgumentError("tau_model: unknown variant");
}

double hl_pair_model(double x, std::uint64_t d) {
  require_even_gap(d, "hl_pair_model");
  if (!(x > std::exp(1.0))) throw DomainError("hl_pair_model: requires x > e");
  const double lx = std::log(x);
  return kTwinConstant * singular_series(d) * x / (lx * lx);
}

double delta(double x, double pi_x, std::uint64_t d, double tau_observed) {
  return tau_observed - tau_model(TauVariant::kC1, x, pi_x, d);
}

double twin_model(TwinVariant v, double x, double pi_x) {
  switch (v) {
    case TwinVariant::kSquarePi:
      if (!(x > 0.0)) throw DomainError("twin_model: requires x > 0");
      return kTwinConstant * pi_x * pi_x / x;
    case TwinVariant::kHardyLittlewood: {
      if (!(x > 1.0)) throw DomainError("twin_model: requires x > 1");
      const double lx = std::log(x);
      return kTwinConstant * x / (lx * lx);
    }
    case TwinVariant::kLi2:
      return kTwinConstant * li2(x);
  }
  throw ArgumentError("twin_model: unknown variant");
}

double gmax_model(GmaxVariant v, double x, double pi_x) {
  if (!(x > 1.0)) throw DomainError("gmax_model: requires x > 1");
  const double lx = std::log(x);
  const double c = constants().log_C2;
  switch (v) {
    case GmaxVariant::kC4: {
      if (!(pi_x > 1.0)) throw DomainError("gmax_model: C4 requires pi(x) > 1");
      const double bracket = 2.0 * std::log(pi_x) - lx + c;
      if (!(bracket > 0.0)) throw DomainError("gmax_model: 2 log pi - log x + c is not positive");
      return x / pi_x * bracket;
    }
    case GmaxVariant::kPnt: {
      if (!(lx > 1.0)) throw DomainError("gmax_model: PNT form requires x > e");
      const double bracket = lx - 2.0 * std::log(lx) + c;
      if (!(bracket > 0.0)) throw DomainError("gmax_model: PNT bracket is not positive");
      return lx * bracket;
    }
    case GmaxVariant::kCramer:
      return lx * lx;
    case GmaxVariant::kGranville:
      return 2.0 * std::exp(-kEulerGamma) * lx * lx;
  }
  throw ArgumentError("gmax_model: unknown variant");
}

double sumsq_model(SumSqVariant v, double x, double pi_x) {
  density_complement(x, pi_x, "sumsq_model");
  if (!(pi_x > 0.0)) throw DomainError("sumsq_model: requires pi(x) > 0");
  switch (v) {
    case SumSqVariant::kC5: {
      const double r = pi_x / x;
      return 2.0 * x * x * x / (pi_x * (x - 2.0 * pi_x)) * (1.0 - 3.0 * r + 2.0 * r * r);
    }
    case SumSqVariant::kSimple:
      return 2.0 * x * x / pi_x;
    case SumSqVariant::kHeathBrown:
      return 2.0 * x * std::log(x);
  }
  throw ArgumentError("sumsq_model: unknown variant");
}

double large_gap_sum_model(double x, double pi_x, std::uint64_t h) {
  require_even_gap(h, "large_gap_sum_model");
  const double q = density_complement(x, pi_x, "large_gap_sum_model");
  const double hh = static_cast<double>(h);
  return x * x / (x - 2.0 * pi_x) * std::pow(q, hh / 2.0) * (1.0 + (hh - 2.0) * pi_x / x);
}

double brun_model(BrunVariant v, std::uint64_t d, std::optional<double> x,
                  std::optional<double> partial) {
  require_even_gap(d, "brun_model");
  const double s = singular_series(d);
  const double dd = static_cast<double>(d);
  auto decay = [&]() {
    if (!x) throw ArgumentError("brun_model: this variant needs x");
    if (!(*x > 1.0)) throw DomainError("brun_model: requires x > 1");
    return std::exp(-dd / std::log(*x));
  };
  switch (v) {
    case BrunVariant::kC6:
      return 4.0 * kTwinConstantHalf / dd * s;
    case BrunVariant::kPartial:
      return 2.0 * kTwinConstant / dd * s * decay();
    case BrunVariant::kExtrapolated: {
      if (!partial) throw ArgumentError("brun_model: extrapolation needs the partial sum");
      return *partial + 2.0 * kTwinConstant / dd * s * (1.0 - decay());
    }
    case BrunVariant::kB2Law: {
      if (d != 2 && d != 4) throw DomainError("brun_model: the 1/log x law applies to d = 2, 4");
      if (!partial) throw ArgumentError("brun_model: the 1/log x law needs the partial sum");
      if (!x) throw ArgumentError("brun_model: this variant needs x");
      if (!(*x > 1.0)) throw DomainError("brun_model: requires x > 1");
      return *partial + 4.0 * kTwinConstantHalf / std::log(*x);
    }
  }
  throw ArgumentError("brun_model: unknown variant");
}

double mertens_model(double x) {
  if (!(x > 1.0)) throw DomainError("mertens_model: requires x > 1");
  return std::log(std::log(x)) + kMertensConstant;
}

double pf_model(PfVariant v, double d) {
  if (!(d >= 2.0)) throw DomainError("pf_model: requires d >= 2");
  const double sd = std::sqrt(d);
  switch (v) {
    case PfVariant::kC7: {
      const double ld = std::log(d);
      return sd * std::exp(0.5 * std::sqrt(ld * ld + 4.0 * d));
    }
    case PfVariant::kShanks:
      return std::exp(sd);
    case PfVariant::kAsymptotic:
      return sd * std::exp(sd);
  }
  throw ArgumentError("pf_model: unknown variant");
}

double andrica_kernel(double t) {
  if (!(t >= 0.0)) throw DomainError("andrica_kernel: requires t >= 0");
  return 0.5 * std::pow(t, 0.75) * std::exp(-0.5 * std::sqrt(t));
}

double andrica_model(AndricaVariant v, double arg, double pi_x) {
  switch (v) {
    case AndricaVariant::kC8:
      return andrica_kernel(gmax_model(GmaxVariant::kC4, arg, pi_x));
    case AndricaVariant::kCramer: {
      if (!(arg > 1.0)) throw DomainError("andrica_model: requires x > 1");
      const double lx = std::log(arg);
      return std::pow(lx, 1.5) / (2.0 * std::sqrt(arg));
    }
    case AndricaVariant::kShanks2:
      if (!(arg >= 0.0)) throw DomainError("andrica_model: requires d >= 0");
      return 0.5 * arg * std::exp(-0.5 * std::sqrt(arg));
  }
  throw ArgumentError("andrica_model: unknown variant");
}

ModelEval evaluate(FormulaId id, const ModelArgs& a) {
  ModelEval e{id, a.x, a.d, 0.0};
  auto X = [&] { return need(a.x, "x", id); };
  auto P = [&] { return need(a.pi_x, "pi_x", id); };
  auto D = [&] { return need(a.d, "d", id); };
  switch (id) {
    case FormulaId::kHlPair: e.value = hl_pair_model(X(), D()); break;
    case FormulaId::kTauC1: e.value = tau_model(TauVariant::kC1, X(), P(), D()); break;
    case FormulaId::kTauC1Prime: e.value = tau_model(TauVariant::kC1Prime, X(), P(), D()); break;
    case FormulaId::kTauC1DoublePrime:
      e.value = tau_model(TauVariant::kC1DoublePrime, X(), P(), D());
      break;
    case FormulaId::kTwinC2: e.value = twin_model(TwinVariant::kSquarePi, X(), P()); break;
    case FormulaId::kTwinHl: e.value = twin_model(TwinVariant::kHardyLittlewood, X(), 0.0); break;
    case FormulaId::kTwinLi2: e.value = twin_model(TwinVariant::kLi2, X(), 0.0); break;
    case FormulaId::kGmaxC4: e.value = gmax_model(GmaxVariant::kC4, X(), P()); break;
    case FormulaId::kGmaxPnt: e.value = gmax_model(GmaxVariant::kPnt, X()); break;
    case FormulaId::kGmaxCramer: e.value = gmax_model(GmaxVariant::kCramer, X()); break;
    case FormulaId::kGmaxGranville: e.value = gmax_model(GmaxVariant::kGranville, X()); break;
    case FormulaId::kSumSqC5: e.value = sumsq_model(SumSqVariant::kC5, X(), P()); break;
    case FormulaId::kSumSqSimple: e.value = sumsq_model(SumSqVariant::kSimple, X(), P()); break;
    case FormulaId::kSumSqHeathBrown:
      e.value = sumsq_model(SumSqVariant::kHeathBrown, X(), P());
      break;
    case FormulaId::kLargeGapSum: e.value = large_gap_sum_model(X(), P(), D()); break;
    case FormulaId::kBrunC6: e.value = brun_model(BrunVariant::kC6, D()); break;
    case FormulaId::kBrunPartial: e.value = brun_model(BrunVariant::kPartial, D(), X()); break;
    case FormulaId::kBrunExtrapolated:
      e.value = brun_model(BrunVariant::kExtrapolated, D(), X(), need(a.partial, "partial", id));
      break;
    case FormulaId::kBrunB2Law:
      e.value = brun_model(BrunVariant::kB2Law, D(), X(), need(a.partial, "partial", id));
      break;
    case FormulaId::kMertens: e.value = mertens_model(X()); break;
    case FormulaId::kPfC7: e.value = pf_model(PfVariant::kC7, static_cast<double>(D())); break;
    case FormulaId::kPfShanks: e.value = pf_model(PfVariant::kShanks, static_cast<double>(D())); break;
    case FormulaId::kPfAsymptotic:
      e.value = pf_model(PfVariant::kAsymptotic, static_cast<double>(D()));
      break;
    case FormulaId::kRC8: e.value = andrica_model(AndricaVariant::kC8, X(), P()); break;
    case FormulaId::kRCramer: e.value = andrica_model(AndricaVariant::kCramer, X()); break;
    case FormulaId::kRShanks2:
      e.value = andrica_model(AndricaVariant::kShanks2, static_cast<double>(D()));
      break;
  }
  return e;
}

}  // namespace primegaps
