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

// Command-line front door: reproducible runs of the curve/surface/code
// experiments with machine-readable outputs.
//
// Exit codes: 0 ok, 2 usage, 3 budget exceeded, 4 mathematical finding.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "ntlab/report.hpp"

using namespace ntlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitFinding = 4;

struct CommonOpts {
  uint32_t p = 0;
  uint32_t m = 1;
  unsigned jobs = 0;
  std::string out;
  std::string format = "csv";
  uint64_t seed = 0;
  uint64_t sample = 0;
  bool seed_given = false;
  bool sample_given = false;
};

unsigned effective_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void emit(const std::string& out, const std::string& payload) {
  if (out.empty()) {
    std::cout << payload;
    if (payload.empty() || payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out);
  f << payload;
  if (payload.empty() || payload.back() != '\n') f << '\n';
}

int cmd_points(const CommonOpts& o, uint32_t r) {
  NormTraceCurve curve(build_tower(o.p, o.m, r));
  NormalBasis nb = find_normal_basis(curve.tower());
  if (o.format == "json") {
    emit(o.out, points_json(curve, nb).dump(2));
  } else {
    std::ostringstream os;
    write_points_csv(os, curve, nb);
    emit(o.out, os.str());
  }
  return kExitOk;
}

int cmd_sweep(const CommonOpts& o, int degree, const std::string& csv_path) {
  NormTraceCurve curve(build_tower(o.p, o.m, 3));
  NormalBasis nb = find_normal_basis(curve.tower());
  SweepMode mode = o.sample_given ? SweepMode::Sample(o.seed, o.sample)
                                  : SweepMode::Exhaustive();
  unsigned jobs = effective_jobs(o.jobs);
  SweepReport rep = degree == 2 ? sweep_parabolas(curve, mode, jobs)
                                : sweep_cubics(curve, mode, jobs);
  if (!csv_path.empty()) {
    if (!mode.exhaustive)
      throw BudgetError("per-tuple CSV detail requires an exhaustive sweep");
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + csv_path);
    write_sweep_csv(f, curve, nb, degree, jobs);
  }
  emit(o.out, sweep_report_json(rep, curve.tower(), nb).dump(2));
  return rep.violation_tuples == 0 ? kExitOk : kExitFinding;
}

int cmd_classify(const CommonOpts& o, bool exhaustive, const std::string& records_path) {
  NormTraceCurve curve(build_tower(o.p, o.m, 3));
  SurfaceContext ctx = make_surface_context(curve);
  const uint64_t Q = curve.field().order();
  if (exhaustive && curve.q() > 3)
    throw BudgetError("exhaustive classification limited to q <= 3; use --sample");
  if (!exhaustive && !o.sample_given)
    throw BudgetError("classification needs --exhaustive (q <= 3) or --sample");

  std::vector<PolyGraphCurve> work;
  if (exhaustive) {
    for (elem A = 1; A < Q; ++A)
      for (elem B = 0; B < Q; ++B)
        for (elem C = 0; C < Q; ++C) work.push_back(PolyGraphCurve::parabola(A, B, C));
  } else {
    uint64_t st = o.seed;
    std::mt19937_64 rng(splitmix64(st));
    for (uint64_t i = 0; i < o.sample; ++i)
      work.push_back(PolyGraphCurve::parabola(static_cast<elem>(1 + rng() % (Q - 1)),
                                              static_cast<elem>(rng() % Q),
                                              static_cast<elem>(rng() % Q)));
  }

  std::ofstream records;
  if (!records_path.empty()) {
    records.open(records_path, std::ios::binary);
    if (!records) throw std::runtime_error("cannot open output file: " + records_path);
  }

  std::map<std::string, uint64_t> patterns;
  uint64_t nonconforming = 0, char2_caveats = 0, infinity_bad = 0;
  int max_delta = 0;
  for (const auto& g : work) {
    auto model = build_surface_model(ctx, g);
    auto rep = find_singular_points(ctx, model);
    uint64_t count = rational_points_s1(model.s1);
    patterns[pattern_name(rep.pattern)]++;
    max_delta = std::max(max_delta, rep.delta);
    bool conforms = count_conforms(rep, count, curve.q());
    if (!conforms) {
      if (rep.char2_outside_analysis)
        ++char2_caveats;
      else
        ++nonconforming;
    }
    if (!no_singular_points_at_infinity(ctx, model)) ++infinity_bad;
    if (records.is_open())
      records << classify_record_json(ctx, model, rep, count).dump() << "\n";
  }

  json j;
  j["meta"] = run_meta(curve.tower(), ctx.basis,
                       exhaustive ? std::nullopt : std::optional<uint64_t>(o.seed));
  j["q"] = curve.q();
  j["scanned"] = work.size();
  j["exhaustive"] = exhaustive;
  j["patterns"] = patterns;
  j["max_delta"] = max_delta;
  j["nonconforming"] = nonconforming;
  j["char2_flagged_nonconforming"] = char2_caveats;
  j["singular_points_at_infinity"] = infinity_bad;
  if (curve.tower().p == 2) j["char2_outside_analysis"] = true;
  emit(o.out, j.dump(2));
  return (nonconforming == 0 && infinity_bad == 0) ? kExitOk : kExitFinding;
}

int cmd_weights(const CommonOpts& o, const std::string& mode_str,
                const std::string& csv_path) {
  NormTraceCurve curve(build_tower(o.p, o.m, 3));
  NormalBasis nb = find_normal_basis(curve.tower());
  WeightMode mode =
      mode_str == "exhaustive" ? WeightMode::Exhaustive : WeightMode::Projective;
  auto dist = weight_distribution(curve, mode, effective_jobs(o.jobs));
  auto rep = verify_theorem(curve, dist);
  if (!csv_path.empty()) {
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + csv_path);
    write_weights_csv(f, curve.tower(), nb, dist);
  }
  emit(o.out, weights_json(curve, nb, dist, rep).dump(2));
  bool sane = rep.sum_ok && rep.a0_is_one && rep.min_ge_designed &&
              rep.bezout_floor_ok && classifier_consistent(curve, 2000);
  bool theorem_ok = curve.q() < 8 || (rep.min_eq_designed && rep.gap_empty);
  return (sane && theorem_ok) ? kExitOk : kExitFinding;
}

int cmd_check_conjecture(const CommonOpts& o, uint64_t q_max) {
  json results = json::array();
  bool all_ok = true;
  for (uint64_t q = 2; q <= q_max; ++q) {
    uint64_t t = q, p = 0;
    for (uint64_t d = 2; d * d <= t; ++d)
      if (t % d == 0) {
        p = d;
        break;
      }
    if (p == 0) p = t;
    uint32_t m = 0;
    while (t > 1 && t % p == 0) {
      t /= p;
      ++m;
    }
    if (t != 1) continue;  // not a prime power
    NormTraceCurve curve(build_tower(static_cast<uint32_t>(p), m, 3));
    SweepMode mode = SweepMode::Exhaustive();
    if (q > kSweepParabolaExhaustiveMaxQ) {
      if (!o.sample_given) throw BudgetError("q > 9 in the range requires --sample");
      mode = SweepMode::Sample(o.seed, o.sample);
    }
    auto rep = sweep_parabolas(curve, mode, effective_jobs(o.jobs));
    json e;
    e["q"] = q;
    e["exhaustive"] = rep.exhaustive;
    e["swept"] = rep.swept;
    if (rep.eta_valid) {
      e["eta_min"] = rep.eta_min;
      e["eta_max"] = rep.eta_max;
    }
    e["violation_tuples"] = rep.violation_tuples;
    results.push_back(e);
    if (rep.violation_tuples != 0) all_ok = false;
  }
  json j;
  j["tool"] = kToolVersion;
  j["q_max"] = q_max;
  j["results"] = results;
  j["conjecture_holds"] = all_ok;
  emit(o.out, j.dump(2));
  return all_ok ? kExitOk : kExitFinding;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "norm-trace curve laboratory: exact intersection counts, cubic-surface "
      "singularity classification, and one-point code weight distributions "
      "over GF(q^3)"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  CommonOpts o;
  uint32_t r = 3;
  int degree = 2;
  std::string csv_path, records_path, mode_str = "projective";
  bool exhaustive_flag = false;
  uint64_t q_max = 8;

  auto add_common = [&](CLI::App* sub, bool needs_pm = true) {
    if (needs_pm) {
      sub->add_option("--p", o.p, "prime characteristic")->required();
      sub->add_option("--m", o.m, "extension degree of the base field (q = p^m)")
          ->default_val(1);
    }
    sub->add_option("--jobs", o.jobs, "worker threads (0 = hardware)");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--seed", o.seed, "sampling seed")->each([&](const std::string&) {
      o.seed_given = true;
    });
    sub->add_option("--sample", o.sample, "sample count (enables sampled mode)")
        ->each([&](const std::string&) { o.sample_given = true; });
  };

  auto* points = app.add_subcommand("points", "enumerate the affine points (CSV/JSON)");
  add_common(points);
  points->add_option("--r", r, "extension degree of the curve field (2 or 3)")
      ->check(CLI::IsMember({2, 3}))
      ->default_val(3);
  points->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("csv");

  auto* sweep = app.add_subcommand(
      "sweep", "intersection-count histogram over all parabolas or cubics");
  add_common(sweep);
  sweep->add_option("--degree", degree, "graph degree: 2 or 3")
      ->check(CLI::IsMember({2, 3}))
      ->default_val(2);
  sweep->add_option("--csv", csv_path, "also write per-tuple CSV detail (small runs)");

  auto* classify = app.add_subcommand(
      "classify", "singularity classification of the parabola surfaces");
  add_common(classify);
  classify->add_flag("--exhaustive", exhaustive_flag,
                     "classify every parabola (q <= 3)");
  classify->add_option("--records", records_path, "write one JSON record per parabola");

  auto* weights = app.add_subcommand(
      "weights", "weight distribution of the one-point code and theorem checks");
  add_common(weights);
  weights->add_option("--mode", mode_str, "projective (default) or exhaustive")
      ->check(CLI::IsMember({"projective", "exhaustive"}));
  weights->add_option("--csv", csv_path, "also write weight,count CSV");

  auto* conj = app.add_subcommand(
      "check-conjecture", "parabola sweeps across a range of prime powers q");
  add_common(conj, false);
  conj->add_option("--q-max", q_max, "largest q to test")->default_val(8);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (points->parsed()) return cmd_points(o, r);
    if (sweep->parsed()) return cmd_sweep(o, degree, csv_path);
    if (classify->parsed()) return cmd_classify(o, exhaustive_flag, records_path);
    if (weights->parsed()) return cmd_weights(o, mode_str, csv_path);
    if (conj->parsed()) return cmd_check_conjecture(o, q_max);
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const MathFinding& e) {
    std::cerr << "finding: " << e.what() << "\n";
    return kExitFinding;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
