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

#include <iosfwd>
#include <json.hpp>
#include <optional>

#include "ntlab/agcode.hpp"
#include "ntlab/surface.hpp"

namespace ntlab {

inline constexpr const char* kToolVersion = "ntlab 0.1.0";

/// Reproducibility block embedded in every output: tool version, field
/// construction (moduli), the normal-basis element, kernel variant, seed.
nlohmann::json run_meta(const Tower& tower, const NormalBasis& nb,
                        std::optional<uint64_t> seed);

nlohmann::json sweep_report_json(const SweepReport& rep, const Tower& tower,
                                 const NormalBasis& nb);

/// Per-tuple CSV rows (A,B,C[,D],n_points,eta,residue); only emitted for
/// exhaustive sweeps small enough to enumerate (budget-gated by the caller).
void write_sweep_csv(std::ostream& os, const NormTraceCurve& curve,
                     const NormalBasis& nb, int degree, unsigned jobs);
inline constexpr uint64_t kSweepCsvMaxTuples = 1ull << 21;

void write_points_csv(std::ostream& os, const NormTraceCurve& curve,
                      const NormalBasis& nb);
nlohmann::json points_json(const NormTraceCurve& curve, const NormalBasis& nb);

nlohmann::json classify_record_json(const SurfaceContext& ctx,
                                    const SurfaceModel& model,
                                    const SingularityReport& rep, uint64_t count);

nlohmann::json weights_json(const NormTraceCurve& curve, const NormalBasis& nb,
                            const WeightDistribution& dist,
                            const TheoremReport& rep);
void write_weights_csv(std::ostream& os, const Tower& tower, const NormalBasis& nb,
                       const WeightDistribution& dist);

}  // namespace ntlab
