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

#include <cmath>

#include "doctest.h"
#include "primegaps/analysis.hpp"
#include "primegaps/constants.hpp"
#include "primegaps/errors.hpp"
#include "primegaps/models.hpp"
#include "primegaps/pipeline.hpp"

using namespace primegaps;
using u64 = std::uint64_t;
using Points = std::vector<std::pair<double, double>>;

namespace {

const std::vector<Checkpoint>& run24() {
  static const std::vector<Checkpoint> cps = [] {
    CollectOptions o;
    o.limit = u64{1} << 24;
    o.pair_dmax = 0;
    return collect(o);
  }();
  return cps;
}

}  // namespace

TEST_CASE("fit_exponential recovers an exact exponential") {
  Points pts;
  for (int d = 2; d <= 20; ++d) pts.emplace_back(d, 2.0 * std::exp(-0.5 * d));
  for (Weighting w : {Weighting::kNone, Weighting::kLog}) {
    const FitResult f = fit_exponential(pts, w);
    CHECK(std::fabs(f.a - 2.0) < 1e-12);
    CHECK(std::fabs(f.b - 0.5) < 1e-12);
    CHECK(f.residual_rms < 1e-12);
    CHECK(f.points_used == 19);
  }
}

TEST_CASE("fit_exponential on constant data") {
  const Points pts{{1, 5}, {2, 5}, {3, 5}, {4, 5}};
  const FitResult f = fit_exponential(pts);
  CHECK(std::fabs(f.b) < 1e-14);
  CHECK(f.a == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("fit_exponential needs three positive points") {
  CHECK_THROWS_AS(fit_exponential(Points{{1, 1}, {2, 0.5}}), InsufficientDataError);
  CHECK_THROWS_AS(fit_exponential(Points{{1, 1}, {2, 0.5}, {3, 0}, {4, -1}}),
                  InsufficientDataError);
  const FitResult f = fit_exponential(Points{{1, 1}, {2, 0.5}, {3, 0}, {4, 0.25}});
  CHECK(f.points_used == 3);
}

TEST_CASE("fit_exponential is scale equivariant") {
  const Points pts{{2, 9.1}, {4, 4.2}, {6, 2.3}, {8, 0.9}, {10, 0.52}};
  for (Weighting w : {Weighting::kNone, Weighting::kLog}) {
    const FitResult f = fit_exponential(pts, w);
    Points scaled = pts;
    for (auto& [d, y] : scaled) y *= 37.0;
    const FitResult g = fit_exponential(scaled, w);
    CHECK(g.a == doctest::Approx(37.0 * f.a).epsilon(1e-12));
    CHECK(g.b == doctest::Approx(f.b).epsilon(1e-12));
    CHECK(g.residual_rms == doctest::Approx(f.residual_rms).epsilon(1e-9));
  }
}

TEST_CASE("fit of tau_d / S(d) at 2^24") {
  const Checkpoint& c = run24().back();
  const double x = static_cast<double>(c.x);
  const double rate = static_cast<double>(c.pi) / x;
  // The dominance region d / log x > log d holds no d with tau_d > 1000 this
  // early, so every well-populated gap is used.
  Points pts;
  for (const auto& [d, tau] : c.state.histogram.entries()) {
    if (tau > 1000) {
      pts.emplace_back(static_cast<double>(d), static_cast<double>(tau) / singular_series(d));
    }
  }
  CHECK_THROWS_AS(scaling_slope(c), InsufficientDataError);
  const FitResult f = fit_exponential(pts);
  CHECK(f.b > 0.0);
  CHECK(std::fabs(f.b - 1.16 * rate) <= 0.3 * 1.16 * rate);
}

TEST_CASE("scaling collapse of model data") {
  Checkpoint c;
  c.x = u64{1} << 30;
  c.pi = 54400028;
  const double x = static_cast<double>(c.x);
  const double pi = static_cast<double>(c.pi);
  for (u64 d = 2; d <= 400; d += 2) {
    const double t = tau_model(TauVariant::kC1DoublePrime, x, pi, d);
    c.state.histogram.add(d, static_cast<u64>(std::llround(t)));
  }
  for (const ScalingPoint& p : scaling_collapse(c, 1000)) {
    const double tau = static_cast<double>(c.state.histogram.count(p.d));
    CHECK(tau > 1000);
    CHECK(p.D == doctest::Approx(static_cast<double>(p.d) * pi / x).epsilon(1e-15));
    // Only the rounding of tau to an integer separates T from exp(-D).
    CHECK(std::fabs(p.T - std::exp(-p.D)) <= std::exp(-p.D) * 0.6 / tau);
  }
}

TEST_CASE("scaling collapse threshold") {
  Checkpoint c;
  c.x = 1000000;
  c.pi = 78498;
  c.state.histogram.add(2, 1001);
  c.state.histogram.add(4, 1000);
  c.state.histogram.add(6, 5000);
  const auto pts = scaling_collapse(c, 1000);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].d == 2);
  CHECK(pts[1].d == 6);
}

TEST_CASE("sign changes") {
  const std::vector<double> grid{1, 2, 3, 4, 5};
  CHECK(sign_changes(std::vector<double>{1, 2, 3},
                     [](double t) { return t == 2 ? -1.0 : 1.0; })
            .total() == 2);
  CHECK(sign_changes(grid, [](double t) { return t; }).total() == 0);
  const auto s = sign_changes(grid, [](double t) { return t == 3 ? 0.0 : (t < 3 ? 1.0 : -1.0); });
  CHECK(s.total() == 1);
  CHECK(s.signs == std::vector<int>{1, 1, 0, -1, -1});
  CHECK(s.nu == std::vector<u64>{0, 0, 0, 1, 1});
  CHECK(sign_changes(std::vector<double>{}, [](double) { return 1.0; }).total() == 0);
  CHECK_THROWS_AS(sign_changes(std::vector<double>{2, 1}, [](double) { return 1.0; }),
                  ArgumentError);
}

TEST_CASE("table1 row at 2^24") {
  const auto rows = table1(run24());
  REQUIRE(rows.size() == 1);
  const Table1Row& r = rows[0];
  CHECK(r.x == (u64{1} << 24));
  CHECK(r.sum_sq == 444929860);
  CHECK(r.heath_brown == 558195733);
  CHECK(r.conjecture5 == 488725881);
  CHECK(std::round(r.heath_brown_ratio * 1e4) / 1e4 == doctest::Approx(0.7971));
  CHECK(std::round(r.conjecture5_ratio * 1e4) / 1e4 == doctest::Approx(0.9104));
}

TEST_CASE("andrica table") {
  const auto rows = andrica_table(1000000, 10);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].n == 4);
  CHECK(rows[0].p == 7);
  CHECK(rows[0].next == 11);
  CHECK(rows[0].gap == 4);
  CHECK(rows[0].a == doctest::Approx(0.6708735).epsilon(1e-7));
  CHECK(rows[1].n == 30);
  CHECK(rows[1].p == 113);
  CHECK(rows[1].a == doctest::Approx(0.6392819).epsilon(1e-7));
  bool found = false;
  for (const auto& r : rows) {
    if (r.p == 3) {
      found = true;
      CHECK(r.a == doctest::Approx(0.5040172).epsilon(1e-7));
    }
  }
  CHECK(found);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].a <= rows[i - 1].a);
}

TEST_CASE("andrica ordering persists to 10^8") {
  const auto small = andrica_table(1000000, 10);
  const auto large = andrica_table(100000000, 10);
  REQUIRE(large.size() == small.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    CHECK(large[i].n == small[i].n);
    CHECK(large[i].p == small[i].p);
  }
}

TEST_CASE("R series") {
  const std::vector<MaxGapRecord> recs{{8, 89, 97, 25}, {14, 113, 127, 31}};
  const auto r = r_series(recs);
  REQUIRE(r.size() == 2);
  CHECK(r[0].r == doctest::Approx(std::sqrt(97.0) - std::sqrt(89.0)));
  CHECK(r[0].r == doctest::Approx(0.414877).epsilon(1e-6));
  CHECK(r[1].r == doctest::Approx(0.6392819).epsilon(1e-7));
  CHECK(r[1].x == 127);
  for (const auto& p : r_series(run24().back().state.max_gap_records)) CHECK(p.r > 0.0);
}

TEST_CASE("max gap comparison") {
  const auto rows = max_gap_comparison(run24().back().state.max_gap_records);
  REQUIRE_FALSE(rows.empty());
  CHECK(rows.front().record.upper_prime >= 11);
  for (const auto& r : rows) {
    CHECK(r.g == gmax_model(GmaxVariant::kC4, static_cast<double>(r.record.upper_prime),
                            static_cast<double>(r.record.pi_upper)));
    CHECK(r.ratio == doctest::Approx(static_cast<double>(r.record.gap) / r.g));
  }
}

TEST_CASE("first occurrence comparison") {
  const auto rows = first_occurrence_comparison(run24().back().state, 2, 20);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].d == 2);
  CHECK(rows[0].p_f == 3);
  CHECK(rows[2].p_f == 23);
  CHECK(rows[1].log_ratio == doctest::Approx(std::log(7.0) / std::log(rows[1].c7)));
}

TEST_CASE("verify_checkpoint") {
  for (const Checkpoint& c : run24()) CHECK(verify_checkpoint(c).ok());
  Checkpoint bad = run24().back();
  bad.pi += 1;
  const VerifyReport r = verify_checkpoint(bad);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.gap_count);
  CHECK(r.gap_sum);
  Checkpoint skew = run24().back();
  skew.state.harmonic_sum.sum += 1e-9;
  CHECK_FALSE(verify_checkpoint(skew).brun_accounting);
}
