// Copyright 2026-present the normtrace-lab project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <map>

#include "ntlab/intersect.hpp"

using namespace ntlab;

namespace {

// Tuple-at-a-time oracle, independent of the histogram engine.
std::map<uint64_t, uint64_t> brute_parabola_histogram(const NormTraceCurve& curve) {
  std::map<uint64_t, uint64_t> h;
  const uint64_t Q = curve.field().order();
  for (elem A = 1; A < Q; ++A)
    for (elem B = 0; B < Q; ++B)
      for (elem C = 0; C < Q; ++C)
        ++h[count_intersections(curve, PolyGraphCurve::parabola(A, B, C)).n_points];
  return h;
}

}  // namespace

TEST_CASE("decompose identities") {
  for (uint64_t q : {2ull, 3ull, 5ull, 17ull}) {
    auto c1 = decompose(q * q + 1, q);
    CHECK(c1.eta == 0);
    CHECK(c1.residue == 1);
    auto c2 = decompose(q * q - 2 * q + 1, q);
    CHECK(c2.eta == -2);
    CHECK(c2.residue == 1);
    auto c3 = decompose(q * q - q, q);
    CHECK(c3.eta == -1);
    CHECK(c3.residue == 0);
    for (uint64_t n = 0; n < 3 * q * q; ++n) {
      auto d = decompose(n, q);
      CHECK(d.residue < q);
      CHECK(static_cast<int64_t>(n) ==
            static_cast<int64_t>(q * q) + d.eta * static_cast<int64_t>(q) + d.residue);
    }
  }
}

TEST_CASE("count_intersections basics at q=2") {
  NormTraceCurve curve(build_tower(2, 1, 3));
  // y = x (h=1)
  uint64_t brute = 0;
  const Field& F = curve.field();
  for (elem x = 0; x < 8; ++x)
    if (curve.norm(x) == curve.trace(x)) ++brute;
  auto c = count_intersections(curve, PolyGraphCurve(1, {0, 1, 0, 0}));
  CHECK(c.n_points == brute);
  // parabola y = x^2
  auto cp = count_intersections(curve, PolyGraphCurve::parabola(1, 0, 0));
  CHECK(cp.n_points % 2 == 1);
  CHECK(cp.eta >= -2);
  CHECK(cp.eta <= 2);
  CHECK(cp.residue == 1);
  (void)F;
}

TEST_CASE("parabola sweep q=2: histogram matches tuple-at-a-time brute force") {
  NormTraceCurve curve(build_tower(2, 1, 3));
  auto report = sweep_parabolas(curve, SweepMode::Exhaustive(), 2);
  CHECK(report.swept == 7ull * 8 * 8);
  auto brute = brute_parabola_histogram(curve);
  CHECK(report.histogram == brute);
  CHECK(report.violations.empty());
  CHECK(report.violation_tuples == 0);
  CHECK(report.eta_valid);
  CHECK(report.eta_min >= -2);
  CHECK(report.eta_max <= 2);
}

TEST_CASE("parabola sweep q=3: shape and brute cross-check") {
  NormTraceCurve curve(build_tower(3, 1, 3));
  auto report = sweep_parabolas(curve, SweepMode::Exhaustive(), 2);
  CHECK(report.swept == 26ull * 27 * 27);
  CHECK(report.violations.empty());
  auto brute = brute_parabola_histogram(curve);
  CHECK(report.histogram == brute);
  // Bezout cap
  for (auto& [n, freq] : report.histogram) CHECK(n <= 2 * (9 + 3 + 1));
}

TEST_CASE("sweep report is job-count invariant") {
  NormTraceCurve curve(build_tower(3, 1, 3));
  auto r1 = sweep_parabolas(curve, SweepMode::Exhaustive(), 1);
  auto r4 = sweep_parabolas(curve, SweepMode::Exhaustive(), 4);
  CHECK(r1.histogram == r4.histogram);
  CHECK(r1.swept == r4.swept);
  CHECK(r1.eta_min == r4.eta_min);
  CHECK(r1.eta_max == r4.eta_max);
  auto s1 = sweep_parabolas(curve, SweepMode::Sample(9, 100), 1);
  auto s3 = sweep_parabolas(curve, SweepMode::Sample(9, 100), 3);
  CHECK(s1.histogram == s3.histogram);
}

TEST_CASE("sampled sweep agrees with per-tuple counting") {
  NormTraceCurve curve(build_tower(3, 1, 3));
  auto s = sweep_parabolas(curve, SweepMode::Sample(1234, 50), 2);
  CHECK(s.swept == 50ull * 27);
  CHECK(s.violations.empty());
}

TEST_CASE("budget rules") {
  NormTraceCurve c11(build_tower(11, 1, 3));
  CHECK_THROWS_AS(sweep_parabolas(c11, SweepMode::Exhaustive(), 1), BudgetError);
  NormTraceCurve c5(build_tower(5, 1, 3));
  CHECK_THROWS_AS(sweep_cubics(c5, SweepMode::Exhaustive(), 1), BudgetError);
  CHECK_THROWS_AS(sweep_parabolas(c11, SweepMode::Sample(1, 0), 1), BudgetError);
}

TEST_CASE("cubic sweep q=2 exhaustive matches brute force and flags the cap") {
  NormTraceCurve curve(build_tower(2, 1, 3));
  auto report = sweep_cubics(curve, SweepMode::Exhaustive(), 2);
  CHECK(report.swept == 7ull * 8 * 8 * 8);
  std::map<uint64_t, uint64_t> brute;
  for (elem A = 1; A < 8; ++A)
    for (elem B = 0; B < 8; ++B)
      for (elem C = 0; C < 8; ++C)
        for (elem D = 0; D < 8; ++D)
          ++brute[count_intersections(curve, PolyGraphCurve::cubic(A, B, C, D)).n_points];
  CHECK(report.histogram == brute);
  CHECK(report.cap == 4 + 14 + 1);
  // q^3 = 8 < cap: no count can exceed it
  CHECK(report.over_cap_tuples == 0);
}

TEST_CASE("degenerate graph curves are rejected") {
  CHECK_THROWS_AS(PolyGraphCurve(2, {1, 1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PolyGraphCurve(0, {1, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PolyGraphCurve(2, {1, 0, 1, 1}), std::invalid_argument);
}

TEST_CASE("r=2 towers are refused by the intersection layer") {
  NormTraceCurve herm(build_tower(2, 1, 2));
  CHECK_THROWS_AS(count_intersections(herm, PolyGraphCurve::parabola(1, 0, 0)),
                  std::invalid_argument);
}
