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

#include "ntlab/intersect.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <random>
#include <thread>
#include <tuple>

namespace ntlab {

namespace {
constexpr size_t kMaxViolationList = 1000;
constexpr uint64_t kMaxSamples = 1ull << 22;
}  // namespace

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PolyGraphCurve::PolyGraphCurve(int degree, std::array<elem, 4> coefficients)
    : h(degree), coef(coefficients) {
  if (h < 1 || h > 3) throw std::invalid_argument("degree must be 1, 2 or 3");
  if (coef[h] == 0) throw std::invalid_argument("leading coefficient must be nonzero");
  for (int i = h + 1; i < 4; ++i)
    if (coef[i] != 0) throw std::invalid_argument("coefficient above declared degree");
}

IntersectionCount decompose(uint64_t n, uint64_t q) {
  IntersectionCount c;
  c.n_points = n;
  int64_t num = static_cast<int64_t>(n) - static_cast<int64_t>(q * q);
  int64_t qq = static_cast<int64_t>(q);
  int64_t res = ((num % qq) + qq) % qq;
  c.residue = static_cast<uint32_t>(res);
  c.eta = (num - res) / qq;
  return c;
}

IntersectionCount count_intersections(const NormTraceCurve& curve,
                                      const PolyGraphCurve& g) {
  if (curve.r() != 3)
    throw std::invalid_argument("intersection counting requires r = 3");
  const Field& F = curve.field();
  for (int i = 0; i <= g.h; ++i)
    if (g.coef[i] >= F.order())
      throw std::invalid_argument("coefficient outside GF(q^3)");
  uint64_t n = 0;
  for (uint64_t x = 0; x < F.order(); ++x) {
    elem xe = static_cast<elem>(x);
    elem y = g.coef[g.h];
    for (int i = g.h - 1; i >= 0; --i) y = F.add(F.mul(y, xe), g.coef[i]);
    if (curve.norm(xe) == curve.trace(y)) ++n;
  }
  return decompose(n, curve.q());
}

// ---------------------------------------------------------------------------
// SweepTables

SweepTables::SweepTables(const NormTraceCurve& curve) : curve_(&curve) {
  if (curve.r() != 3) throw std::invalid_argument("sweeps require r = 3");
  if (curve.q() > 256) throw BudgetError("sweep tables need q <= 256");
  q_ = static_cast<uint32_t>(curve.q());
  Q_ = static_cast<uint32_t>(curve.field().order());

  const Field& F = curve.field();
  norm_b_.resize(Q_);
  for (uint32_t x = 0; x < Q_; ++x) norm_b_[x] = static_cast<uint8_t>(curve.norm(x));

  pow_tab_[2].resize(Q_);
  pow_tab_[3].resize(Q_);
  for (uint32_t x = 0; x < Q_; ++x) {
    elem sq = F.mul(x, x);
    pow_tab_[2][x] = sq;
    pow_tab_[3][x] = F.mul(sq, x);
  }

  fiber_rep_.assign(q_, 0);
  std::vector<bool> seen(q_, false);
  for (uint32_t x = 0; x < Q_; ++x) {
    elem t = curve.trace(x);
    if (!seen[t]) {
      seen[t] = true;
      fiber_rep_[t] = x;
    }
  }

  const Field& B = curve.base();
  subtab_.resize(static_cast<size_t>(q_) * q_);
  addtab_.resize(static_cast<size_t>(q_) * q_);
  for (uint32_t a = 0; a < q_; ++a)
    for (uint32_t b = 0; b < q_; ++b) {
      subtab_[a * q_ + b] = static_cast<uint8_t>(B.sub(a, b));
      addtab_[a * q_ + b] = static_cast<uint8_t>(B.add(a, b));
    }

  if (B.characteristic() == 2) {
    spec_.mode = kernels::DiffMode::Xor;
  } else if (B.degree() == 1 && B.base() == nullptr) {
    spec_.mode = kernels::DiffMode::ModSub;
    spec_.p = B.characteristic();
  } else {
    spec_.mode = kernels::DiffMode::TableSub;
  }
  spec_.q = q_;
  spec_.sub_table = subtab_.data();
}

uint8_t SweepTables::sub_fq(uint8_t a, uint8_t b) const {
  return subtab_[static_cast<size_t>(a) * q_ + b];
}
uint8_t SweepTables::add_fq(uint8_t a, uint8_t b) const {
  return addtab_[static_cast<size_t>(a) * q_ + b];
}

void SweepTables::fill_trace_affine(elem coef, uint8_t* out) const {
  const Field& F = curve_->field();
  const uint32_t q = q_;
  // T(coef*x) is GF(q)-linear in the digits of x: lam[i] = T(coef * X^i),
  // where the basis monomial X^i has index q^i.
  uint8_t c[3][256];
  for (int i = 0; i < 3; ++i) {
    elem xi = 1;
    for (int k = 0; k < i; ++k) xi *= q;
    elem lam = F.trace_to_base(F.mul(coef, xi));
    for (uint32_t d = 0; d < q; ++d)
      c[i][d] = static_cast<uint8_t>(curve_->base().mul(lam, d));
  }
  thread_local std::vector<uint8_t> rows;
  rows.resize(static_cast<size_t>(q) * q);
  for (uint32_t r = 0; r < q; ++r)
    for (uint32_t j = 0; j < q; ++j) rows[r * q + j] = add_fq(static_cast<uint8_t>(r), c[0][j]);
  uint8_t* p = out;
  for (uint32_t x2 = 0; x2 < q; ++x2) {
    uint8_t s2 = c[2][x2];
    for (uint32_t x1 = 0; x1 < q; ++x1) {
      uint8_t s12 = add_fq(s2, c[1][x1]);
      std::memcpy(p, &rows[static_cast<size_t>(s12) * q], q);
      p += q;
    }
  }
}

void SweepTables::subtract_trace_of_power(const uint8_t* acc, elem coef, int k,
                                          uint8_t* out) const {
  thread_local std::vector<uint8_t> lf;
  lf.resize(Q_);
  fill_trace_affine(coef, lf.data());
  if (k == 1) {
    for (uint32_t x = 0; x < Q_; ++x) out[x] = sub_fq(acc[x], lf[x]);
    return;
  }
  const auto& pw = pow_tab_[k];
  for (uint32_t x = 0; x < Q_; ++x) out[x] = sub_fq(acc[x], lf[pw[x]]);
}

void scan_parabola_pairs(const SweepTables& t, bool include_zero_lead,
                         elem a_begin, elem a_end, PairSink& sink) {
  const uint32_t Q = t.Q(), q = t.q();
  std::vector<uint8_t> wA(Q), tB(Q);
  std::vector<uint64_t> hist(q);
  const auto& K = kernels::active_kernels();
  for (elem A = a_begin; A < a_end; ++A) {
    if (A == 0 && !include_zero_lead) continue;
    t.subtract_trace_of_power(t.norm_bytes(), A, 2, wA.data());
    for (uint32_t B = 0; B < Q; ++B) {
      t.fill_trace_affine(B, tB.data());
      std::fill(hist.begin(), hist.end(), 0);
      K.diff_hist(wA.data(), tB.data(), Q, t.spec(), hist.data());
      sink.on_pair(A, B, hist.data());
    }
  }
}

void scan_cubic_triples(const SweepTables& t, elem a_begin, elem a_end,
                        TripleSink& sink) {
  const uint32_t Q = t.Q(), q = t.q();
  std::vector<uint8_t> wA(Q), wAB(Q), tC(Q);
  std::vector<uint64_t> hist(q);
  const auto& K = kernels::active_kernels();
  for (elem A = a_begin; A < a_end; ++A) {
    if (A == 0) continue;
    t.subtract_trace_of_power(t.norm_bytes(), A, 3, wA.data());
    for (uint32_t B = 0; B < Q; ++B) {
      t.subtract_trace_of_power(wA.data(), B, 2, wAB.data());
      for (uint32_t C = 0; C < Q; ++C) {
        t.fill_trace_affine(C, tC.data());
        std::fill(hist.begin(), hist.end(), 0);
        K.diff_hist(wAB.data(), tC.data(), Q, t.spec(), hist.data());
        sink.on_triple(A, B, C, hist.data());
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Report accumulation

namespace {

struct ReportAccum {
  uint64_t q = 0;
  uint64_t q2 = 0;  // constant terms per trace class
  std::map<uint64_t, uint64_t> histogram;
  bool eta_valid = false;
  int64_t eta_min = 0, eta_max = 0;
  std::vector<SweepViolation> violations;
  uint64_t violation_tuples = 0;
  uint64_t swept = 0;
  uint64_t cap = 0;  // 0 = no cap tracking
  uint64_t over_cap_tuples = 0;
  std::map<uint64_t, uint64_t> over_cap_histogram;
  const SweepTables* tables = nullptr;
  bool track_shape = true;

  void absorb_class(elem A, elem B, elem C, elem D, uint32_t t, uint64_t n,
                    bool cubic) {
    histogram[n] += q2;
    swept += q2;
    IntersectionCount dec = decompose(n, q);
    if (track_shape) {
      if (dec.residue == 1) {
        if (!eta_valid) {
          eta_valid = true;
          eta_min = eta_max = dec.eta;
        } else {
          eta_min = std::min(eta_min, dec.eta);
          eta_max = std::max(eta_max, dec.eta);
        }
      }
      if (dec.residue != 1 || dec.eta < -2 || dec.eta > 2) {
        violation_tuples += q2;
        if (violations.size() < kMaxViolationList) {
          elem rep = tables->fiber_rep(t);
          SweepViolation v;
          if (cubic) {
            v.A = A; v.B = B; v.C = C; v.D = rep;
          } else {
            v.A = A; v.B = B; v.C = rep; v.D = D;
          }
          v.n_points = n;
          v.eta = dec.eta;
          v.residue = dec.residue;
          v.tuple_count = q2;
          violations.push_back(v);
        }
      }
    }
    if (cap != 0 && n > cap) {
      over_cap_tuples += q2;
      over_cap_histogram[n] += q2;
    }
  }

  void merge_from(ReportAccum& o) {
    for (auto& [k, v] : o.histogram) histogram[k] += v;
    if (o.eta_valid) {
      if (!eta_valid) {
        eta_valid = true;
        eta_min = o.eta_min;
        eta_max = o.eta_max;
      } else {
        eta_min = std::min(eta_min, o.eta_min);
        eta_max = std::max(eta_max, o.eta_max);
      }
    }
    for (auto& v : o.violations)
      if (violations.size() < kMaxViolationList) violations.push_back(v);
    violation_tuples += o.violation_tuples;
    swept += o.swept;
    over_cap_tuples += o.over_cap_tuples;
    for (auto& [k, v] : o.over_cap_histogram) over_cap_histogram[k] += v;
  }
};

struct ParabolaReportSink : PairSink {
  ReportAccum acc;
  void on_pair(elem A, elem B, const uint64_t* hist) override {
    for (uint32_t t = 0; t < acc.q; ++t)
      acc.absorb_class(A, B, 0, 0, t, hist[t], false);
  }
};

struct CubicReportSink : TripleSink {
  ReportAccum acc;
  void on_triple(elem A, elem B, elem C, const uint64_t* hist) override {
    for (uint32_t t = 0; t < acc.q; ++t)
      acc.absorb_class(A, B, C, 0, t, hist[t], true);
  }
};

template <typename Sink>
void init_accum(Sink& s, const SweepTables& t, uint64_t cap, bool track_shape) {
  s.acc.q = t.q();
  s.acc.q2 = static_cast<uint64_t>(t.q()) * t.q();
  s.acc.tables = &t;
  s.acc.cap = cap;
  s.acc.track_shape = track_shape;
}

SweepReport finish_report(const NormTraceCurve& curve, ReportAccum& acc, int h,
                          const SweepMode& mode) {
  SweepReport r;
  r.q = curve.q();
  r.h = h;
  r.exhaustive = mode.exhaustive;
  r.seed = mode.seed;
  r.swept = acc.swept;
  r.histogram = std::move(acc.histogram);
  r.eta_valid = acc.eta_valid;
  r.eta_min = acc.eta_min;
  r.eta_max = acc.eta_max;
  r.violations = std::move(acc.violations);
  std::sort(r.violations.begin(), r.violations.end(),
            [](const SweepViolation& a, const SweepViolation& b) {
              return std::tie(a.A, a.B, a.C, a.D) < std::tie(b.A, b.B, b.C, b.D);
            });
  r.violation_tuples = acc.violation_tuples;
  r.cap = acc.cap;
  r.over_cap_tuples = acc.over_cap_tuples;
  r.over_cap_histogram = std::move(acc.over_cap_histogram);
  r.kernel = kernels::active_kernels().name;
  return r;
}

std::vector<std::pair<elem, elem>> shard_range(elem begin, elem end, unsigned jobs) {
  std::vector<std::pair<elem, elem>> shards;
  uint64_t total = end - begin;
  jobs = std::max(1u, jobs);
  jobs = static_cast<unsigned>(std::min<uint64_t>(jobs, std::max<uint64_t>(1, total)));
  uint64_t per = total / jobs, extra = total % jobs;
  elem at = begin;
  for (unsigned i = 0; i < jobs; ++i) {
    uint64_t len = per + (i < extra ? 1 : 0);
    shards.push_back({at, static_cast<elem>(at + len)});
    at = static_cast<elem>(at + len);
  }
  return shards;
}

}  // namespace

SweepReport sweep_parabolas(const NormTraceCurve& curve, const SweepMode& mode,
                            unsigned jobs) {
  SweepTables tables(curve);
  const uint32_t Q = tables.Q();

  if (mode.exhaustive) {
    if (curve.q() > kSweepParabolaExhaustiveMaxQ)
      throw BudgetError("exhaustive parabola sweep limited to q <= 9; use sampling");
    auto shards = shard_range(1, static_cast<elem>(Q), jobs);
    std::vector<ParabolaReportSink> sinks(shards.size());
    for (auto& s : sinks) init_accum(s, tables, 0, true);
    std::vector<std::thread> threads;
    for (size_t i = 0; i < shards.size(); ++i)
      threads.emplace_back([&, i] {
        scan_parabola_pairs(tables, false, shards[i].first, shards[i].second, sinks[i]);
      });
    for (auto& th : threads) th.join();
    for (size_t i = 1; i < sinks.size(); ++i) sinks[0].acc.merge_from(sinks[i].acc);
    return finish_report(curve, sinks[0].acc, 2, mode);
  }

  if (mode.samples == 0 || mode.samples > kMaxSamples)
    throw BudgetError("sample count must be in 1..2^22");
  // Sample (A,B) pairs from the seed alone so results are job-count invariant;
  // each pair still covers every constant term through the histogram.
  std::vector<std::pair<elem, elem>> pairs(mode.samples);
  uint64_t st = mode.seed;
  std::mt19937_64 rng(splitmix64(st));
  for (auto& pr : pairs) {
    pr.first = static_cast<elem>(1 + rng() % (Q - 1));
    pr.second = static_cast<elem>(rng() % Q);
  }
  unsigned n_shards = std::max(1u, jobs);
  std::vector<ParabolaReportSink> sinks(n_shards);
  for (auto& s : sinks) init_accum(s, tables, 0, true);
  std::vector<std::thread> threads;
  for (unsigned i = 0; i < n_shards; ++i)
    threads.emplace_back([&, i] {
      std::vector<uint8_t> wA(Q), tB(Q);
      std::vector<uint64_t> hist(tables.q());
      const auto& K = kernels::active_kernels();
      for (size_t k = i; k < pairs.size(); k += n_shards) {
        auto [A, B] = pairs[k];
        tables.subtract_trace_of_power(tables.norm_bytes(), A, 2, wA.data());
        tables.fill_trace_affine(B, tB.data());
        std::fill(hist.begin(), hist.end(), 0);
        K.diff_hist(wA.data(), tB.data(), Q, tables.spec(), hist.data());
        sinks[i].on_pair(A, B, hist.data());
      }
    });
  for (auto& th : threads) th.join();
  for (unsigned i = 1; i < n_shards; ++i) sinks[0].acc.merge_from(sinks[i].acc);
  return finish_report(curve, sinks[0].acc, 2, mode);
}

SweepReport sweep_cubics(const NormTraceCurve& curve, const SweepMode& mode,
                         unsigned jobs) {
  SweepTables tables(curve);
  const uint32_t Q = tables.Q();
  const uint64_t q = curve.q();
  const uint64_t cap = q * q + 7 * q + 1;

  if (mode.exhaustive) {
    if (q > kSweepCubicExhaustiveMaxQ)
      throw BudgetError("exhaustive cubic sweep limited to q <= 4; use sampling");
    auto shards = shard_range(1, static_cast<elem>(Q), jobs);
    std::vector<CubicReportSink> sinks(shards.size());
    for (auto& s : sinks) init_accum(s, tables, cap, true);
    std::vector<std::thread> threads;
    for (size_t i = 0; i < shards.size(); ++i)
      threads.emplace_back([&, i] {
        scan_cubic_triples(tables, shards[i].first, shards[i].second, sinks[i]);
      });
    for (auto& th : threads) th.join();
    for (size_t i = 1; i < sinks.size(); ++i) sinks[0].acc.merge_from(sinks[i].acc);
    return finish_report(curve, sinks[0].acc, 3, mode);
  }

  if (mode.samples == 0 || mode.samples > kMaxSamples)
    throw BudgetError("sample count must be in 1..2^22");
  std::vector<std::array<elem, 3>> triples(mode.samples);
  uint64_t st = mode.seed;
  std::mt19937_64 rng(splitmix64(st));
  for (auto& tr : triples) {
    tr[0] = static_cast<elem>(1 + rng() % (Q - 1));
    tr[1] = static_cast<elem>(rng() % Q);
    tr[2] = static_cast<elem>(rng() % Q);
  }
  unsigned n_shards = std::max(1u, jobs);
  std::vector<CubicReportSink> sinks(n_shards);
  for (auto& s : sinks) init_accum(s, tables, cap, true);
  std::vector<std::thread> threads;
  for (unsigned i = 0; i < n_shards; ++i)
    threads.emplace_back([&, i] {
      std::vector<uint8_t> wA(Q), wAB(Q), tC(Q);
      std::vector<uint64_t> hist(tables.q());
      const auto& K = kernels::active_kernels();
      for (size_t k = i; k < triples.size(); k += n_shards) {
        auto [A, B, C] = triples[k];
        tables.subtract_trace_of_power(tables.norm_bytes(), A, 3, wA.data());
        tables.subtract_trace_of_power(wA.data(), B, 2, wAB.data());
        tables.fill_trace_affine(C, tC.data());
        std::fill(hist.begin(), hist.end(), 0);
        K.diff_hist(wAB.data(), tC.data(), Q, tables.spec(), hist.data());
        sinks[i].on_triple(A, B, C, hist.data());
      }
    });
  for (auto& th : threads) th.join();
  for (unsigned i = 1; i < n_shards; ++i) sinks[0].acc.merge_from(sinks[i].acc);
  return finish_report(curve, sinks[0].acc, 3, mode);
}

}  // namespace ntlab
