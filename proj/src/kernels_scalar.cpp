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

#include "ntlab/kernels.hpp"

namespace ntlab::kernels {

namespace {

void diff_hist_scalar(const uint8_t* a, const uint8_t* b, size_t n,
                      const DiffSpec& spec, uint64_t* hist) {
  switch (spec.mode) {
    case DiffMode::Xor:
      for (size_t i = 0; i < n; ++i) ++hist[a[i] ^ b[i]];
      break;
    case DiffMode::ModSub: {
      const uint32_t p = spec.p;
      for (size_t i = 0; i < n; ++i) {
        uint32_t d = a[i] + p - b[i];
        if (d >= p) d -= p;
        ++hist[d];
      }
      break;
    }
    case DiffMode::TableSub: {
      const uint8_t* t = spec.sub_table;
      const uint32_t q = spec.q;
      for (size_t i = 0; i < n; ++i) ++hist[t[a[i] * q + b[i]]];
      break;
    }
  }
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet k{"scalar", diff_hist_scalar};
  return k;
}

}  // namespace ntlab::kernels
