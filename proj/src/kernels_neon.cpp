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

#include <arm_neon.h>

#include "ntlab/kernels.hpp"

namespace ntlab::kernels {

namespace {

inline void tally_block(uint8x16_t diff, uint32_t nbins, uint64_t* hist) {
  for (uint32_t t = 0; t < nbins; ++t) {
    uint8x16_t cmp = vceqq_u8(diff, vdupq_n_u8(static_cast<uint8_t>(t)));
    // 0xFF per match; shift to 1 and add across lanes
    hist[t] += vaddvq_u8(vshrq_n_u8(cmp, 7));
  }
}

void diff_hist_neon(const uint8_t* a, const uint8_t* b, size_t n,
                    const DiffSpec& spec, uint64_t* hist) {
  const size_t body = n & ~size_t(15);
  size_t i = 0;
  const bool tally = spec.q <= 32;

  if (spec.mode == DiffMode::Xor) {
    for (; i < body; i += 16) {
      uint8x16_t d = veorq_u8(vld1q_u8(a + i), vld1q_u8(b + i));
      if (tally) {
        tally_block(d, spec.q, hist);
      } else {
        uint8_t buf[16];
        vst1q_u8(buf, d);
        for (int k = 0; k < 16; ++k) ++hist[buf[k]];
      }
    }
    for (; i < n; ++i) ++hist[a[i] ^ b[i]];
    return;
  }

  if (spec.mode == DiffMode::ModSub) {
    const uint8x16_t vp = vdupq_n_u8(static_cast<uint8_t>(spec.p));
    for (; i < body; i += 16) {
      uint8x16_t va = vld1q_u8(a + i);
      uint8x16_t vb = vld1q_u8(b + i);
      uint8x16_t d = vsubq_u8(va, vb);
      uint8x16_t alb = vcltq_u8(va, vb);
      d = vaddq_u8(d, vandq_u8(alb, vp));
      if (tally) {
        tally_block(d, spec.p, hist);
      } else {
        uint8_t buf[16];
        vst1q_u8(buf, d);
        for (int k = 0; k < 16; ++k) ++hist[buf[k]];
      }
    }
    const uint32_t p = spec.p;
    for (; i < n; ++i) {
      uint32_t d = a[i] + p - b[i];
      if (d >= p) d -= p;
      ++hist[d];
    }
    return;
  }

  const uint8_t* t = spec.sub_table;
  const uint32_t q = spec.q;
  for (; i < n; ++i) ++hist[t[a[i] * q + b[i]]];
}

}  // namespace

const KernelSet& neon_kernels() {
  static const KernelSet k{"neon", diff_hist_neon};
  return k;
}

}  // namespace ntlab::kernels
