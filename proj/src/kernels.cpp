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

#include <cstdlib>
#include <cstring>

namespace ntlab::kernels {

namespace {

const KernelSet* pick() {
  const char* want = std::getenv("NTLAB_KERNELS");
#if defined(NTLAB_HAVE_AVX2)
  if (want && std::strcmp(want, "avx2") == 0 && cpu_has_avx2()) return &avx2_kernels();
#endif
#if defined(NTLAB_HAVE_NEON)
  if (want && std::strcmp(want, "neon") == 0) return &neon_kernels();
#endif
  if (want && std::strcmp(want, "scalar") == 0) return &scalar_kernels();
#if defined(NTLAB_HAVE_AVX2)
  if (cpu_has_avx2()) return &avx2_kernels();
#endif
#if defined(NTLAB_HAVE_NEON)
  return &neon_kernels();
#endif
  return &scalar_kernels();
}

}  // namespace

const KernelSet& active_kernels() {
  static const KernelSet* chosen = pick();
  return *chosen;
}

std::vector<const KernelSet*> available_kernels() {
  std::vector<const KernelSet*> v{&scalar_kernels()};
#if defined(NTLAB_HAVE_AVX2)
  if (cpu_has_avx2()) v.push_back(&avx2_kernels());
#endif
#if defined(NTLAB_HAVE_NEON)
  v.push_back(&neon_kernels());
#endif
  return v;
}

}  // namespace ntlab::kernels
