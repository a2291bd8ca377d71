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

#include "ntlab/curve.hpp"

#include <stdexcept>

#include "ntlab/errors.hpp"

namespace ntlab {

namespace {
constexpr uint64_t kEnumerableCap = 1ull << 24;
}

NormTraceCurve::NormTraceCurve(Tower tower) : tower_(std::move(tower)) {
  fqr_ = tower_.curve_field_ptr();
  if (fqr_->order() > kEnumerableCap)
    throw BudgetError("curve field too large to enumerate");
  const uint64_t q = tower_.q;
  const uint32_t r = tower_.r;
  pole_x_ = 1;
  for (uint32_t i = 0; i + 1 < r; ++i) pole_x_ *= q;
  uint64_t qr = pole_x_ * q;
  pole_y_ = (qr - 1) / (q - 1);
  expected_ = pole_x_ * pole_x_ * q;  // q^{2r-1}

  const Field& F = *fqr_;
  norm_tab_.resize(F.order());
  trace_tab_.resize(F.order());
  fibers_.assign(q, {});
  for (auto& f : fibers_) f.reserve(pole_x_);
  for (uint64_t x = 0; x < F.order(); ++x) {
    elem e = static_cast<elem>(x);
    norm_tab_[x] = F.norm_to_base(e);
    trace_tab_[x] = F.trace_to_base(e);
    fibers_[trace_tab_[x]].push_back(e);
  }
}

bool NormTraceCurve::is_on_curve(const AffinePoint& pt) const {
  if (pt.x >= fqr_->order() || pt.y >= fqr_->order())
    throw std::invalid_argument("point coordinate outside the curve field");
  return norm_tab_[pt.x] == trace_tab_[pt.y];
}

std::vector<AffinePoint> NormTraceCurve::enumerate_points() const {
  std::vector<AffinePoint> pts;
  pts.reserve(expected_);
  for (uint64_t x = 0; x < fqr_->order(); ++x) {
    const auto& ys = fibers_[norm_tab_[x]];
    for (elem y : ys) pts.push_back({static_cast<elem>(x), y});
  }
  return pts;
}

std::vector<AffinePoint> NormTraceCurve::fiber_over_x(elem x0) const {
  if (x0 >= fqr_->order())
    throw std::invalid_argument("x outside the curve field");
  std::vector<AffinePoint> pts;
  const auto& ys = fibers_[norm_tab_[x0]];
  pts.reserve(ys.size());
  for (elem y : ys) pts.push_back({x0, y});
  return pts;
}

}  // namespace ntlab
