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

#include <optional>
#include <string>
#include <vector>

#include "ntlab/intersect.hpp"

namespace ntlab {

/// psi(x) = M x with rows the cyclic shifts of (alpha, alpha^q, alpha^{q^2});
/// maps the GF(q)-model surface onto its GF(q^3)-model.
struct ChangeOfVars {
  FieldPtr fq3;
  std::array<elem, 9> m{};  // row-major
  elem det = 0;
};

ChangeOfVars change_of_vars(const NormalBasis& nb);

/// The GF(q)-model cubic surface attached to a parabola y = Ax^2 + Bx + C:
/// all twenty affine monomial coefficients. The cubic part depends only on
/// the normal-basis element.
struct SurfaceS1 {
  FieldPtr fq;
  // cubic: x_i^3 share c300; the two mixed-square orbits share one value each
  elem c300 = 0, c030 = 0, c003 = 0;
  elem c210 = 0, c021 = 0, c102 = 0;  // x0^2x1, x1^2x2, x2^2x0
  elem c201 = 0, c120 = 0, c012 = 0;  // x0^2x2, x1^2x0, x2^2x1
  elem c111 = 0;
  elem a200 = 0, a020 = 0, a002 = 0;  // x_i^2
  elem a110 = 0, a101 = 0, a011 = 0;  // cross terms
  elem b100 = 0, b010 = 0, b001 = 0;  // linear
  elem d = 0;                         // constant = T(C)
};

/// The GF(q^3)-model: X0X1X2 = A X0^h + A^q X1^h + A^{q^2} X2^h + ... + dconst.
struct SurfaceS2 {
  FieldPtr fq3;
  int h = 2;
  elem A = 0, B = 0, C = 0;  // C used when h = 3
  elem dconst = 0;           // trace of the parabola/cubic constant term
};

SurfaceS1 build_s1(const NormTraceCurve& curve, const NormalBasis& nb,
                   const PolyGraphCurve& parabola);
SurfaceS2 build_s2(const NormTraceCurve& curve, const PolyGraphCurve& parabola);
SurfaceS2 build_s2_cubic(const NormTraceCurve& curve, const PolyGraphCurve& cubic);

/// Evaluate in any context that contains GF(q) with index-stable constants
/// (GF(q) itself or an extension of it).
elem eval_s1(const SurfaceS1& s, const Field& E, elem x0, elem x1, elem x2);
std::array<elem, 3> eval_s1_grad(const SurfaceS1& s, const Field& E, elem x0,
                                 elem x1, elem x2);

/// |{x in GF(q)^3 : S1(x) = 0}| by direct evaluation.
uint64_t rational_points_s1(const SurfaceS1& s);

/// Residual of the GF(q^3)-model equation at a point with coordinates in K
/// (coefficients embedded via emb); zero iff the point lies on the surface.
elem s2_residual(const SurfaceS2& s, const Field& K, const Embedding& emb,
                 elem X0, elem X1, elem X2);
/// The three derivative residuals X1X2 - 2AX0 - B etc. (h = 2 only).
std::array<elem, 3> s2_deriv_residuals(const SurfaceS2& s, const Field& K,
                                       const Embedding& emb, elem X0, elem X1,
                                       elem X2);

/// All singular points of the GF(q^3)-model with coordinates in K (h = 2).
/// K must contain GF(q^3). O(|K|) via substitution into the derivative
/// system; no elimination-ideal computation.
std::vector<std::array<elem, 3>> s2_singular_points_over(const SurfaceS2& s,
                                                         const FieldPtr& K);

enum class SingPattern {
  Smooth,
  OneRational,
  TwoRational,
  TwoConjugatePair,
  ThreeWithRational,
  ThreeConjugateTriple,
  FourWithRational,
  FourTwoConjugatePairs,
  FourConjugateQuadruple,  // provably impossible; classify hard-errors on it
  BZeroOrigin,
  BZeroFourPoints,
};

const char* pattern_name(SingPattern p);

struct SingularPoint {
  enum class Model { S1, S2 };       // S1: coords in GF(q^2); S2: coords in GF(q^3)
  enum class Tag { Rational, PairMember, TripleMember };
  std::array<elem, 3> coords{};
  Model model = Model::S1;
  Tag tag = Tag::Rational;
};

struct SingularityReport {
  int delta = 0;
  std::vector<SingularPoint> points;
  SingPattern pattern = SingPattern::Smooth;
  int n_rational = 0, n_pairs = 0, n_triples = 0;
  bool b_zero = false;
  bool char2_outside_analysis = false;  // q even and singular: outside the odd-q case analysis
  // filled by classify_and_bound
  int64_t lower = 0;
  int64_t upper = 0;
  bool lower_informative = false;
  bool exact_form = false;  // count must be q^2 + eta q + 1 with eta in allowed_eta
  bool mod_one_required = false;  // delta in {1,4}: birationally trivial, count = 1 mod q
  std::vector<int64_t> allowed_eta;
};

/// Shared per-(curve, basis) scan state: the GF(q^2)^3 point tables for the
/// parabola-independent parts of S1 and its gradient.
class S1ScanTables {
 public:
  S1ScanTables(const NormTraceCurve& curve, const NormalBasis& nb);
  std::vector<std::array<elem, 3>> scan(const SurfaceS1& s) const;
  const Field& fq2() const { return *fq2_; }

 private:
  FieldPtr fq2_;
  uint32_t q2_ = 0;
  std::vector<elem> cub_, g0_, g1_, g2_;
  std::vector<elem> s0_, s1_, s2_, m01_, m02_, m12_;
  std::vector<elem> x0_, x1_, x2_, t0_, t1_, t2_;
};

struct SurfaceContext {
  const NormTraceCurve* curve = nullptr;
  NormalBasis basis;
  ChangeOfVars psi;
  std::unique_ptr<S1ScanTables> scan;
};

SurfaceContext make_surface_context(const NormTraceCurve& curve);
SurfaceContext make_surface_context(const NormTraceCurve& curve,
                                    const NormalBasis& nb);

struct SurfaceModel {
  PolyGraphCurve parabola;
  SurfaceS1 s1;
  SurfaceS2 s2;
};

SurfaceModel build_surface_model(const SurfaceContext& ctx,
                                 const PolyGraphCurve& parabola);

/// Exhaustive singular-point search: the (F_{q^2})^3 scan of the GF(q)-model
/// plus the GF(q^3)-coordinate search of the GF(q^3)-model (which sees the
/// conjugate triples the quadratic-extension scan cannot represent). The two
/// routes are cross-checked on the rational points.
SingularityReport find_singular_points(const SurfaceContext& ctx,
                                       const SurfaceModel& model);

struct BZeroResult {
  std::vector<SingularPoint> points;  // S2 model
  std::string note;
};

/// The four singular points (gamma-form sign patterns) of the B = 0 model,
/// q odd, when the consistency condition D = -4 N(A) holds; empty with an
/// explanation otherwise. Each returned point is substitution-verified.
BZeroResult b_zero_singularities(const NormTraceCurve& curve, elem A, elem D_fq);

/// Point-count interval implied by the singularity pattern; also recorded in
/// the report. Hard-errors (MathFinding) on FourConjugateQuadruple.
std::pair<int64_t, int64_t> classify_and_bound(SingularityReport& report, uint64_t q);

/// Does a measured |S1(F_q)| respect the classified interval (and the exact
/// q^2 + eta q + 1 form where one is prescribed)?
bool count_conforms(const SingularityReport& report, uint64_t count, uint64_t q);

/// Verifies the degree-3-part homogeneous system has no projective zero over
/// GF(q^2), i.e. no singular points at infinity.
bool no_singular_points_at_infinity(const SurfaceContext& ctx, const SurfaceModel& model);

/// Lines through a conjugate-form singular point: the family's leading
/// coefficient is N(b), nonzero for every b != 0, so the count is 0.
/// Verified on `samples` random b values.
int check_lines_through_singularity(const SurfaceS2& s, const SingularPoint& p,
                                    uint64_t seed, int samples = 100);

}  // namespace ntlab
