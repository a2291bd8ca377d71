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

// Univariate polynomials over a field context, little-endian coefficients.
// Small degrees only (moduli searches, root counting); nothing here is on a
// hot path.
using Poly = std::vector<elem>;

Poly poly_trim(Poly a);
int poly_deg(const Poly& a);  // -1 for the zero polynomial
Poly poly_add(const Field& f, const Poly& a, const Poly& b);
Poly poly_sub(const Field& f, const Poly& a, const Poly& b);
Poly poly_mul(const Field& f, const Poly& a, const Poly& b);
Poly poly_mod(const Field& f, Poly a, const Poly& m);
Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& m);
Poly poly_powmod_x(const Field& f, uint64_t e, const Poly& m);  // X^e mod m
Poly poly_gcd(const Field& f, Poly a, Poly b);                  // monic gcd
Poly poly_derivative(const Field& f, const Poly& a);
elem poly_eval(const Field& f, const Poly& a, elem x);

/// Number of distinct roots of a in the field itself: deg gcd(a, X^|f| - X).
uint32_t count_roots_in_field(const Field& f, const Poly& a);

bool poly_is_irreducible(const Field& base, const Poly& monic);

}  // namespace ntlab
