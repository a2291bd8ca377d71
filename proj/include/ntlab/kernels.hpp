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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ntlab::kernels {

// The sweep inner loop: given two byte arrays of GF(q) values, histogram the
// per-index difference a[i] - b[i]. Element encoding is the field index, so
// subtraction is XOR in characteristic 2, modular subtraction for prime q,
// and a table lookup otherwise.
enum class DiffMode : uint8_t { Xor, ModSub, TableSub };

struct DiffSpec {
  DiffMode mode = DiffMode::Xor;
  uint32_t p = 2;                      // modulus for ModSub
  const uint8_t* sub_table = nullptr;  // q*q row-major, TableSub
  uint32_t q = 2;                      // value range / table stride
};

using DiffHistFn = void (*)(const uint8_t* a, const uint8_t* b, size_t n,
                            const DiffSpec& spec, uint64_t* hist);

struct KernelSet {
  const char* name;
  DiffHistFn diff_hist;
};

// Scalar reference implementation (always available).
const KernelSet& scalar_kernels();

// Preferred implementation for this machine, chosen once at first use.
// NTLAB_KERNELS=scalar|avx2|neon overrides the choice; an unavailable
// request falls back to scalar.
const KernelSet& active_kernels();

// Every implementation compiled in and usable on this CPU (for equivalence
// testing and benchmarks).
std::vector<const KernelSet*> available_kernels();

#if defined(NTLAB_HAVE_AVX2)
const KernelSet& avx2_kernels();
bool cpu_has_avx2();
#endif
#if defined(NTLAB_HAVE_NEON)
const KernelSet& neon_kernels();
#endif

}  // namespace ntlab::kernels
