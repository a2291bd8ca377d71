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

#include "ntlab/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace ntlab {

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

int poly_deg(const Poly& a) {
  for (size_t i = a.size(); i > 0; --i)
    if (a[i - 1] != 0) return static_cast<int>(i - 1);
  return -1;
}

Poly poly_add(const Field& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    elem ai = i < a.size() ? a[i] : 0;
    elem bi = i < b.size() ? b[i] : 0;
    r[i] = f.add(ai, bi);
  }
  return poly_trim(std::move(r));
}

Poly poly_sub(const Field& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    elem ai = i < a.size() ? a[i] : 0;
    elem bi = i < b.size() ? b[i] : 0;
    r[i] = f.sub(ai, bi);
  }
  return poly_trim(std::move(r));
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return poly_trim(std::move(r));
}

Poly poly_mod(const Field& f, Poly a, const Poly& m) {
  int dm = poly_deg(m);
  if (dm < 0) throw std::domain_error("poly_mod by zero");
  elem lead_inv = f.inv(m[dm]);
  int da = poly_deg(a);
  while (da >= dm) {
    elem c = f.mul(a[da], lead_inv);
    for (int i = 0; i <= dm; ++i)
      a[da - dm + i] = f.sub(a[da - dm + i], f.mul(c, m[i]));
    da = poly_deg(a);
  }
  a.resize(dm > 0 ? dm : 0);
  return poly_trim(std::move(a));
}

Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& m) {
  return poly_mod(f, poly_mul(f, a, b), m);
}

Poly poly_powmod_x(const Field& f, uint64_t e, const Poly& m) {
  Poly result{1};
  Poly base{0, 1};
  base = poly_mod(f, base, m);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(f, result, base, m);
    base = poly_mulmod(f, base, base, m);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(const Field& f, Poly a, Poly b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  int d = poly_deg(a);
  if (d >= 0 && a[d] != 1) {
    elem li = f.inv(a[d]);
    for (auto& c : a) c = f.mul(c, li);
  }
  return a;
}

Poly poly_derivative(const Field& f, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1, 0);
  for (size_t i = 1; i < a.size(); ++i)
    r[i - 1] = f.mul(f.from_int(i), a[i]);
  return poly_trim(std::move(r));
}

elem poly_eval(const Field& f, const Poly& a, elem x) {
  elem acc = 0;
  for (size_t i = a.size(); i > 0; --i) acc = f.add(f.mul(acc, x), a[i - 1]);
  return acc;
}

uint32_t count_roots_in_field(const Field& f, const Poly& a) {
  Poly g = poly_trim(a);
  if (g.empty()) throw std::domain_error("root count of zero polynomial");
  if (poly_deg(g) == 0) return 0;
  Poly xq = poly_powmod_x(f, f.order(), g);
  // X^|f| - X mod g
  Poly x{0, 1};
  Poly diff = poly_sub(f, xq, poly_mod(f, x, g));
  Poly d = poly_gcd(f, g, diff);
  int deg = poly_deg(d);
  return deg < 0 ? 0 : static_cast<uint32_t>(deg);
}

bool poly_is_irreducible(const Field& base, const Poly& monic) {
  int d = poly_deg(monic);
  if (d <= 0) return false;
  if (d == 1) return true;
  // Rabin: f (degree d) is irreducible over GF(Q) iff X^{Q^d} == X mod f and
  // gcd(X^{Q^{d/l}} - X, f) = 1 for every prime l dividing d.
  uint64_t Q = base.order();
  std::vector<Poly> powers(d + 1);  // powers[k] = X^{Q^k} mod f
  powers[0] = poly_mod(base, Poly{0, 1}, monic);
  for (int k = 1; k <= d; ++k) {
    Poly p = powers[k - 1];
    Poly r{1};
    uint64_t e = Q;
    while (e > 0) {
      if (e & 1) r = poly_mulmod(base, r, p, monic);
      p = poly_mulmod(base, p, p, monic);
      e >>= 1;
    }
    powers[k] = std::move(r);
  }
  if (!poly_trim(poly_sub(base, powers[d], powers[0])).empty()) return false;
  for (int l = 2; l <= d; ++l) {
    if (d % l != 0) continue;
    bool l_prime = true;
    for (int t = 2; t * t <= l; ++t)
      if (l % t == 0) { l_prime = false; break; }
    if (!l_prime) continue;
    Poly diff = poly_sub(base, powers[d / l], powers[0]);
    Poly g = poly_gcd(base, monic, std::move(diff));
    if (poly_deg(g) != 0) return false;
  }
  return true;
}

}  // namespace ntlab
