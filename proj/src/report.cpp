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

#include "ntlab/report.hpp"

#include <ostream>

#include "ntlab/kernels.hpp"

namespace ntlab {

using nlohmann::json;

json run_meta(const Tower& tower, const NormalBasis& nb,
              std::optional<uint64_t> seed) {
  json meta;
  meta["tool"] = kToolVersion;
  meta["p"] = tower.p;
  meta["m"] = tower.m;
  meta["q"] = tower.q;
  meta["r"] = tower.r;
  if (tower.m > 1) meta["modulus_fq"] = tower.fq->modulus_string();
  meta["modulus_fq2"] = tower.fq2->modulus_string();
  meta["modulus_fq3"] = tower.fq3->modulus_string();
  meta["alpha"] = format_elem(*tower.fq3, nb.alpha);
  meta["kernel"] = kernels::active_kernels().name;
  if (seed) meta["seed"] = *seed;
  return meta;
}

namespace {

json histogram_json(const std::map<uint64_t, uint64_t>& h) {
  json arr = json::array();
  for (auto& [k, v] : h) arr.push_back({k, v});
  return arr;
}

void write_meta_comments(std::ostream& os, const Tower& tower, const NormalBasis& nb) {
  os << "# tool: " << kToolVersion << "\n";
  os << "# p: " << tower.p << " m: " << tower.m << " q: " << tower.q
     << " r: " << tower.r << "\n";
  if (tower.m > 1) os << "# modulus_fq: " << tower.fq->modulus_string() << "\n";
  os << "# modulus_fq2: " << tower.fq2->modulus_string() << "\n";
  os << "# modulus_fq3: " << tower.fq3->modulus_string() << "\n";
  os << "# alpha: " << format_elem(*tower.fq3, nb.alpha) << "\n";
  os << "# elements: base-" << tower.p
     << " digit strings, most significant digit first\n";
}

}  // namespace

json sweep_report_json(const SweepReport& rep, const Tower& tower,
                       const NormalBasis& nb) {
  json j;
  j["meta"] = run_meta(tower, nb,
                       rep.exhaustive ? std::nullopt : std::optional<uint64_t>(rep.seed));
  j["q"] = rep.q;
  j["degree"] = rep.h;
  j["exhaustive"] = rep.exhaustive;
  j["swept"] = rep.swept;
  j["histogram"] = histogram_json(rep.histogram);
  if (rep.eta_valid) {
    j["eta_min"] = rep.eta_min;
    j["eta_max"] = rep.eta_max;
  }
  j["violation_tuples"] = rep.violation_tuples;
  json viols = json::array();
  const Field& F = *tower.fq3;
  for (const auto& v : rep.violations) {
    json e;
    e["A"] = format_elem(F, v.A);
    e["B"] = format_elem(F, v.B);
    e["C"] = format_elem(F, v.C);
    if (rep.h == 3) e["D"] = format_elem(F, v.D);
    e["n_points"] = v.n_points;
    e["eta"] = v.eta;
    e["residue"] = v.residue;
    e["tuple_count"] = v.tuple_count;
    viols.push_back(e);
  }
  j["violations"] = viols;
  if (rep.h == 3) {
    j["irreducible_cap"] = rep.cap;
    j["over_cap_tuples"] = rep.over_cap_tuples;
    j["over_cap_histogram"] = histogram_json(rep.over_cap_histogram);
  }
  j["kernel"] = rep.kernel;
  return j;
}

namespace {

// Detail emission re-runs the histogram scan and expands each trace class to
// its constant terms.
struct CsvPairSink : PairSink {
  std::ostream* os = nullptr;
  const NormTraceCurve* curve = nullptr;
  uint32_t q = 0;
  elem fixedA = 0;  // cubic case: printed before the pair
  bool cubic = false;
  void on_pair(elem A, elem B, const uint64_t* hist) override {
    const Field& F = curve->field();
    std::vector<std::pair<elem, uint64_t>> rows;
    for (uint32_t t = 0; t < q; ++t)
      for (elem c : curve->trace_fiber(static_cast<elem>(t)))
        rows.push_back({c, hist[t]});
    std::sort(rows.begin(), rows.end());
    for (auto& [c, n] : rows) {
      auto dec = decompose(n, curve->q());
      if (cubic)
        *os << format_elem(F, fixedA) << "," << format_elem(F, A) << ","
            << format_elem(F, B) << "," << format_elem(F, c);
      else
        *os << format_elem(F, A) << "," << format_elem(F, B) << ","
            << format_elem(F, c);
      *os << "," << n << "," << dec.eta << "," << dec.residue << "\n";
    }
  }
};

}  // namespace

void write_sweep_csv(std::ostream& os, const NormTraceCurve& curve,
                     const NormalBasis& nb, int degree, unsigned jobs) {
  (void)jobs;  // detail emission is sequential so rows stay ordered
  SweepTables tables(curve);
  const uint64_t Q = curve.field().order();
  uint64_t tuples = (Q - 1) * Q * Q * (degree == 3 ? Q : 1);
  if (tuples > kSweepCsvMaxTuples)
    throw BudgetError("per-tuple CSV output limited to 2^21 rows; use the JSON summary");
  write_meta_comments(os, curve.tower(), nb);
  CsvPairSink sink;
  sink.os = &os;
  sink.curve = &curve;
  sink.q = tables.q();
  if (degree == 2) {
    os << "A,B,C,n_points,eta,residue\n";
    scan_parabola_pairs(tables, false, 1, static_cast<elem>(Q), sink);
  } else {
    os << "A,B,C,D,n_points,eta,residue\n";
    sink.cubic = true;
    struct Fwd : TripleSink {
      CsvPairSink* inner;
      void on_triple(elem A, elem B, elem C, const uint64_t* hist) override {
        inner->fixedA = A;
        inner->on_pair(B, C, hist);
      }
    } fwd;
    fwd.inner = &sink;
    scan_cubic_triples(tables, 1, static_cast<elem>(Q), fwd);
  }
}

void write_points_csv(std::ostream& os, const NormTraceCurve& curve,
                      const NormalBasis& nb) {
  write_meta_comments(os, curve.tower(), nb);
  os << "x_coeffs,y_coeffs\n";
  const Field& F = curve.field();
  for (const auto& pt : curve.enumerate_points())
    os << format_elem(F, pt.x) << "," << format_elem(F, pt.y) << "\n";
}

json points_json(const NormTraceCurve& curve, const NormalBasis& nb) {
  json j;
  j["meta"] = run_meta(curve.tower(), nb, std::nullopt);
  j["count"] = curve.expected_affine_points();
  json pts = json::array();
  const Field& F = curve.field();
  for (const auto& pt : curve.enumerate_points())
    pts.push_back({format_elem(F, pt.x), format_elem(F, pt.y)});
  j["points"] = pts;
  return j;
}

json classify_record_json(const SurfaceContext& ctx, const SurfaceModel& model,
                          const SingularityReport& rep, uint64_t count) {
  const Field& F = ctx.curve->field();
  const Field& F2 = ctx.scan->fq2();
  json j;
  j["A"] = format_elem(F, model.parabola.coef[2]);
  j["B"] = format_elem(F, model.parabola.coef[1]);
  j["C"] = format_elem(F, model.parabola.coef[0]);
  j["s1_count"] = count;
  j["delta"] = rep.delta;
  j["pattern"] = pattern_name(rep.pattern);
  json pts = json::array();
  for (const auto& p : rep.points) {
    json e;
    const Field& coordF = p.model == SingularPoint::Model::S1 ? F2 : F;
    e["model"] = p.model == SingularPoint::Model::S1 ? "s1" : "s2";
    e["coords"] = {format_elem(coordF, p.coords[0]),
                   format_elem(coordF, p.coords[1]),
                   format_elem(coordF, p.coords[2])};
    e["tag"] = p.tag == SingularPoint::Tag::Rational     ? "rational"
               : p.tag == SingularPoint::Tag::PairMember ? "conjugate-pair-member"
                                                         : "conjugate-triple-member";
    pts.push_back(e);
  }
  j["points"] = pts;
  j["predicted"] = {rep.lower, rep.upper};
  if (rep.exact_form) j["allowed_eta"] = rep.allowed_eta;
  if (rep.mod_one_required) j["count_mod_q_must_be_1"] = true;
  j["conforms"] = count_conforms(rep, count, ctx.curve->q());
  if (rep.char2_outside_analysis) j["char2_outside_analysis"] = true;
  return j;
}

json weights_json(const NormTraceCurve& curve, const NormalBasis& nb,
                  const WeightDistribution& dist, const TheoremReport& rep) {
  json j;
  j["meta"] = run_meta(curve.tower(), nb, std::nullopt);
  j["q"] = rep.q;
  j["n"] = rep.n;
  j["k"] = 4;
  j["code_size"] = rep.code_size;
  j["sum_ok"] = rep.sum_ok;
  j["A0_is_one"] = rep.a0_is_one;
  j["min_distance"] = rep.min_weight;
  j["designed_distance"] = rep.designed_distance;
  j["min_eq_designed"] = rep.min_eq_designed;
  j["gap"] = {rep.gap_lo, rep.gap_hi};
  j["gap_ok"] = rep.gap_empty;
  j["bezout_floor_ok"] = rep.bezout_floor_ok;
  j["classifier_consistent"] = classifier_consistent(curve, 2000);
  j["distribution"] = histogram_json(dist.counts);
  j["line_zero_histogram"] = histogram_json(dist.line_zero_hist);
  j["parabola_zero_histogram"] = histogram_json(dist.parabola_zero_hist);
  json notes = json::array();
  for (auto& s : rep.notes) notes.push_back(s);
  j["notes"] = notes;
  return j;
}

void write_weights_csv(std::ostream& os, const Tower& tower, const NormalBasis& nb,
                       const WeightDistribution& dist) {
  write_meta_comments(os, tower, nb);
  os << "weight,count\n";
  for (auto& [w, cnt] : dist.counts) os << w << "," << cnt << "\n";
}

}  // namespace ntlab
