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

#include <doctest.h>

#include <random>
#include <vector>

#include "ntlab/field.hpp"
#include "ntlab/kernels.hpp"

using namespace ntlab;
using namespace ntlab::kernels;

namespace {

// Naive model of the kernel contract.
void reference_hist(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b,
                    const DiffSpec& spec, std::vector<uint64_t>& hist) {
  for (size_t i = 0; i < a.size(); ++i) {
    uint32_t d;
    switch (spec.mode) {
      case DiffMode::Xor: d = a[i] ^ b[i]; break;
      case DiffMode::ModSub: d = (a[i] + spec.p - b[i]) % spec.p; break;
      default: d = spec.sub_table[a[i] * spec.q + b[i]]; break;
    }
    ++hist[d];
  }
}

}  // namespace

TEST_CASE("all kernel variants agree with the reference on every mode") {
  std::mt19937_64 rng(42);
  auto variants = available_kernels();
  CHECK(!variants.empty());

  struct Case { DiffMode mode; uint32_t q; uint32_t p; };
  std::vector<Case> cases = {
      {DiffMode::Xor, 2, 2},    {DiffMode::Xor, 4, 2},   {DiffMode::Xor, 8, 2},
      {DiffMode::Xor, 256, 2},  {DiffMode::ModSub, 3, 3}, {DiffMode::ModSub, 5, 5},
      {DiffMode::ModSub, 7, 7}, {DiffMode::ModSub, 251, 251},
      {DiffMode::TableSub, 9, 3}, {DiffMode::TableSub, 27, 3}, {DiffMode::TableSub, 49, 7},
  };

  for (const auto& c : cases) {
    // table for TableSub: genuine field subtraction
    std::vector<uint8_t> table;
    if (c.mode == DiffMode::TableSub) {
      auto fp = Field::prime(c.p);
      uint32_t m = 0, t = c.q;
      while (t > 1) { t /= c.p; ++m; }
      auto f = m == 1 ? fp : Field::extension(fp, m);
      REQUIRE(f->order() == c.q);
      table.resize(c.q * c.q);
      for (uint32_t x = 0; x < c.q; ++x)
        for (uint32_t y = 0; y < c.q; ++y)
          table[x * c.q + y] = static_cast<uint8_t>(f->sub(x, y));
    }
    DiffSpec spec;
    spec.mode = c.mode;
    spec.p = c.p;
    spec.q = c.q;
    spec.sub_table = table.data();

    for (size_t n : {size_t(0), size_t(1), size_t(31), size_t(32), size_t(33),
                     size_t(512), size_t(1000), size_t(4096 + 17)}) {
      std::vector<uint8_t> a(n), b(n);
      for (auto& v : a) v = static_cast<uint8_t>(rng() % c.q);
      for (auto& v : b) v = static_cast<uint8_t>(rng() % c.q);
      std::vector<uint64_t> expect(c.q, 0);
      reference_hist(a, b, spec, expect);
      for (const KernelSet* k : variants) {
        std::vector<uint64_t> got(c.q, 0);
        k->diff_hist(a.data(), b.data(), n, spec, got.data());
        INFO("kernel ", k->name, " mode ", int(c.mode), " q ", c.q, " n ", n);
        CHECK(got == expect);
      }
    }
  }
}

TEST_CASE("active kernel is one of the available ones") {
  auto variants = available_kernels();
  bool found = false;
  for (auto* k : variants)
    if (k == &active_kernels()) found = true;
  CHECK(found);
}
