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

#include <immintrin.h>

#include "ntlab/kernels.hpp"

namespace ntlab::kernels {

namespace {

// Count matches of each bin value over a 32-byte block of differences.
inline void tally_block(__m256i diff, uint32_t nbins, uint64_t* hist) {
  for (uint32_t t = 0; t < nbins; ++t) {
    __m256i cmp = _mm256_cmpeq_epi8(diff, _mm256_set1_epi8(static_cast<char>(t)));
    hist[t] += static_cast<unsigned>(__builtin_popcount(
        static_cast<unsigned>(_mm256_movemask_epi8(cmp))));
  }
}

void diff_hist_avx2(const uint8_t* a, const uint8_t* b, size_t n,
                    const DiffSpec& spec, uint64_t* hist) {
  const size_t body = n & ~size_t(31);
  size_t i = 0;
  // compare-and-popcount pays off only for few bins
  const bool tally = spec.q <= 32;

  if (spec.mode == DiffMode::Xor) {
    for (; i < body; i += 32) {
      __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
      __m256i d = _mm256_xor_si256(va, vb);
      if (tally) {
        tally_block(d, spec.q, hist);
      } else {
        alignas(32) uint8_t buf[32];
        _mm256_store_si256(reinterpret_cast<__m256i*>(buf), d);
        for (int k = 0; k < 32; ++k) ++hist[buf[k]];
      }
    }
    for (; i < n; ++i) ++hist[a[i] ^ b[i]];
    return;
  }

  if (spec.mode == DiffMode::ModSub) {
    const __m256i vp = _mm256_set1_epi8(static_cast<char>(spec.p));
    for (; i < body; i += 32) {
      __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
      __m256i d = _mm256_sub_epi8(va, vb);
      // borrow iff a < b (unsigned): min(a,b) == a and a != b
      __m256i mn = _mm256_min_epu8(va, vb);
      __m256i alb = _mm256_andnot_si256(_mm256_cmpeq_epi8(va, vb),
                                        _mm256_cmpeq_epi8(mn, va));
      d = _mm256_add_epi8(d, _mm256_and_si256(alb, vp));
      if (tally) {
        tally_block(d, spec.p, hist);
      } else {
        alignas(32) uint8_t buf[32];
        _mm256_store_si256(reinterpret_cast<__m256i*>(buf), d);
        for (int k = 0; k < 32; ++k) ++hist[buf[k]];
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

  // TableSub stays scalar: the gather does not pay off at these table sizes.
  const uint8_t* t = spec.sub_table;
  const uint32_t q = spec.q;
  for (; i < n; ++i) ++hist[t[a[i] * q + b[i]]];
}

}  // namespace

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

const KernelSet& avx2_kernels() {
  static const KernelSet k{"avx2", diff_hist_avx2};
  return k;
}

}  // namespace ntlab::kernels
