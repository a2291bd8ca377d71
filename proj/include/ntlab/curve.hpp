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

#include <vector>

#include "ntlab/field.hpp"

namespace ntlab {

struct AffinePoint {
  elem x = 0, y = 0;
  bool operator==(const AffinePoint&) const = default;
};

/// The norm-trace curve N(x) = T(y) over GF(q^r), its point set and fiber
/// structure. Norm/trace values and the trace-fiber partition of GF(q^r)
/// are precomputed at construction so that enumeration is table lookups.
class NormTraceCurve {
 public:
  explicit NormTraceCurve(Tower tower);

  const Tower& tower() const { return tower_; }
  const Field& field() const { return *fqr_; }
  FieldPtr field_ptr() const { return fqr_; }
  const Field& base() const { return *tower_.fq; }
  uint64_t q() const { return tower_.q; }
  int r() const { return static_cast<int>(tower_.r); }

  uint64_t pole_order_x() const { return pole_x_; }        // q^{r-1}
  uint64_t pole_order_y() const { return pole_y_; }        // (q^r-1)/(q-1)
  uint64_t expected_affine_points() const { return expected_; }  // q^{2r-1}

  elem norm(elem x) const { return norm_tab_[x]; }
  elem trace(elem x) const { return trace_tab_[x]; }
  const std::vector<elem>& trace_fiber(elem t) const { return fibers_[t]; }

  /// Throws std::invalid_argument when a coordinate index is outside GF(q^r).
  bool is_on_curve(const AffinePoint& pt) const;
  /// All affine points, x-major, y ascending within a fiber.
  std::vector<AffinePoint> enumerate_points() const;
  std::vector<AffinePoint> fiber_over_x(elem x0) const;

 private:
  Tower tower_;
  FieldPtr fqr_;
  uint64_t pole_x_ = 0, pole_y_ = 0, expected_ = 0;
  std::vector<elem> norm_tab_, trace_tab_;
  std::vector<std::vector<elem>> fibers_;  // indexed by GF(q) value
};

}  // namespace ntlab
