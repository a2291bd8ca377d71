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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ntlab/curve.hpp"
#include "ntlab/errors.hpp"
#include "ntlab/kernels.hpp"

namespace ntlab {

/// Graph curve y = A(x) of degree h over GF(q^3); coef[i] multiplies x^i.
struct PolyGraphCurve {
  int h = 1;
  std::array<elem, 4> coef{};  // coef[3] used only for h = 3

  PolyGraphCurve() = default;
  PolyGraphCurve(int degree, std::array<elem, 4> coefficients);
  static PolyGraphCurve parabola(elem A, elem B, elem C) {
    return PolyGraphCurve(2, {C, B, A, 0});
  }
  static PolyGraphCurve cubic(elem A, elem B, elem C, elem D) {
    return PolyGraphCurve(3, {D, C, B, A});
  }
};

struct IntersectionCount {
  uint64_t n_points = 0;
  int64_t eta = 0;
  uint32_t residue = 0;
};

/// Unique (eta, residue) with n = q^2 + eta*q + residue, residue in [0, q).
IntersectionCount decompose(uint64_t n, uint64_t q);

/// |{x in GF(q^3) : N(x) = T(A(x))}| — each solution x carries exactly one
/// common point (x, A(x)). Requires r = 3.
IntersectionCount count_intersections(const NormTraceCurve& curve,
                                      const PolyGraphCurve& g);

struct SweepViolation {
  elem A = 0, B = 0, C = 0, D = 0;  // representative parameter tuple
  uint64_t n_points = 0;
  int64_t eta = 0;
  uint32_t residue = 0;
  uint64_t tuple_count = 1;  // tuples sharing this representative's count class
};

struct SweepMode {
  bool exhaustive = true;
  uint64_t seed = 0;
  uint64_t samples = 0;  // sampled leading-coefficient tuples
  static SweepMode Exhaustive() { return {true, 0, 0}; }
  static SweepMode Sample(uint64_t seed, uint64_t samples) {
    return {false, seed, samples};
  }
};

struct SweepReport {
  uint64_t q = 0;
  int h = 2;
  bool exhaustive = true;
  uint64_t seed = 0;
  uint64_t swept = 0;  // parameter tuples covered
  std::map<uint64_t, uint64_t> histogram;
  bool eta_valid = false;
  int64_t eta_min = 0, eta_max = 0;  // over counts with residue == 1
  std::vector<SweepViolation> violations;  // residue != 1 or |eta| > 2
  uint64_t violation_tuples = 0;
  // degree-3 extras: counts above the irreducible-surface cap witness a
  // reducible surface
  uint64_t cap = 0;
  uint64_t over_cap_tuples = 0;
  std::map<uint64_t, uint64_t> over_cap_histogram;
  std::string kernel;
};

inline constexpr uint64_t kSweepParabolaExhaustiveMaxQ = 9;
inline constexpr uint64_t kSweepCubicExhaustiveMaxQ = 4;

/// Exhaustive histogram over all (A,B,C), A != 0, of the intersection count
/// with y = Ax^2 + Bx + C. Cost Theta(q^9): the constant term is folded in
/// through the per-(A,B) difference histogram. Sampled mode draws (A,B)
/// pairs and still covers every constant term for each drawn pair.
SweepReport sweep_parabolas(const NormTraceCurve& curve, const SweepMode& mode,
                            unsigned jobs = 1);

/// Same for y = Ax^3 + Bx^2 + Cx + D, A != 0. Exhaustive cost Theta(q^12);
/// sampled mode draws (A,B,C) triples.
SweepReport sweep_cubics(const NormTraceCurve& curve, const SweepMode& mode,
                         unsigned jobs = 1);

// ---------------------------------------------------------------------------
// Shared sweep machinery (also used by the code layer): per-curve byte tables
// and the pair scanner that delivers one GF(q)-bin histogram per coefficient
// pair, covering all constant terms at once.

class SweepTables {
 public:
  explicit SweepTables(const NormTraceCurve& curve);
  const NormTraceCurve& curve() const { return *curve_; }
  uint32_t q() const { return q_; }
  uint32_t Q() const { return Q_; }  // q^3
  const kernels::DiffSpec& spec() const { return spec_; }
  const uint8_t* norm_bytes() const { return norm_b_.data(); }
  elem fiber_rep(uint32_t t) const { return fiber_rep_[t]; }

  /// out[x] = T(coef * x) for every x, by GF(q)-linearity in the digits of x.
  void fill_trace_affine(elem coef, uint8_t* out) const;
  /// out[x] = sub(acc[x], T(coef * x^k)) with k in {1,2,3}.
  void subtract_trace_of_power(const uint8_t* acc, elem coef, int k,
                               uint8_t* out) const;

  uint8_t sub_fq(uint8_t a, uint8_t b) const;
  uint8_t add_fq(uint8_t a, uint8_t b) const;

 private:
  const NormTraceCurve* curve_;
  uint32_t q_ = 0, Q_ = 0;
  std::vector<uint8_t> norm_b_;
  std::vector<elem> pow_tab_[4];  // pow_tab_[k][x] = x^k (k = 2,3)
  std::vector<elem> fiber_rep_;
  kernels::DiffSpec spec_;
  std::vector<uint8_t> subtab_;
  std::vector<uint8_t> addtab_;
};

struct PairSink {
  virtual ~PairSink() = default;
  /// hist[t] = |{x : N(x) - T(lead * x^deg + B * x) = t}| for the current
  /// leading part; one call per (lead, B).
  virtual void on_pair(elem A, elem B, const uint64_t* hist) = 0;
};

/// Iterates leading coefficient A over [a_begin, a_end) (skipping 0 unless
/// include_zero_lead), B over all of GF(q^3); calls sink per pair. deg = 2.
void scan_parabola_pairs(const SweepTables& t, bool include_zero_lead,
                         elem a_begin, elem a_end, PairSink& sink);

struct TripleSink {
  virtual ~TripleSink() = default;
  virtual void on_triple(elem A, elem B, elem C, const uint64_t* hist) = 0;
};

void scan_cubic_triples(const SweepTables& t, elem a_begin, elem a_end,
                        TripleSink& sink);

/// SplitMix64 stream derivation: deterministic per-shard seeds.
uint64_t splitmix64(uint64_t& state);

}  // namespace ntlab
