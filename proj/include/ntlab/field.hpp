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

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ntlab {

/// Element of a finite field, addressed as an index in 0..order-1.
/// An extension element with digits (c_{d-1},...,c_1,c_0) over a base of
/// order Q packs as sum(c_i * Q^i); constants of the base therefore keep
/// their index across every extension built on top of it.
using elem = uint32_t;

inline constexpr uint64_t kTableCap = 4096;  // full add/mul tables up to this order
inline constexpr uint64_t kTowerCap = 1024;  // largest supported q = p^m for towers

bool is_prime_u64(uint64_t n);

/// One finite field context: either a prime field GF(p) or an extension
/// GF(Q^d) of another context of order Q, defined by the lexicographically
/// least monic irreducible modulus of degree d over the base. Immutable
/// after construction; safe to share across threads.
class Field {
 public:
  static std::shared_ptr<const Field> prime(uint32_t p);
  static std::shared_ptr<const Field> extension(std::shared_ptr<const Field> base,
                                                uint32_t degree);

  uint64_t order() const { return order_; }
  uint32_t characteristic() const { return p_; }
  uint32_t degree() const { return degree_; }          // over base (1 for prime)
  uint32_t abs_degree() const { return abs_degree_; }  // over GF(p)
  const Field* base() const { return base_.get(); }
  std::shared_ptr<const Field> base_ptr() const { return base_; }
  bool tabled() const { return tabled_; }
  /// Monic modulus, little-endian coefficients over the base; empty for prime fields.
  const std::vector<elem>& modulus() const { return modulus_; }

  elem add(elem a, elem b) const;
  elem sub(elem a, elem b) const;
  elem neg(elem a) const;
  elem mul(elem a, elem b) const;
  elem inv(elem a) const;  // throws std::domain_error on 0
  elem div(elem a, elem b) const { return mul(a, inv(b)); }
  elem pow(elem a, uint64_t e) const;
  elem from_int(uint64_t n) const;  // n mod p as a field constant

  // Digit access over the base field.
  void unpack(elem x, elem* digits) const;  // degree() entries, digits[0] lowest
  elem pack(const elem* digits) const;
  elem coeff(elem x, uint32_t i) const;

  // Relative maps of an extension over its immediate base.
  elem frob(elem x) const;           // x^{|base|}
  elem trace_to_base(elem x) const;  // base-field element
  elem norm_to_base(elem x) const;

  std::string describe() const;  // e.g. "GF(8)=GF(2)[x]/(x^3+x+1)"
  std::string modulus_string() const;

  ~Field() = default;
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field() = default;
  void build_extension_core();
  void build_tables();
  // Coefficient-vector arithmetic (little-endian digit arrays of length degree_).
  void mul_cc(const elem* a, const elem* b, elem* out) const;
  void add_cc(const elem* a, const elem* b, elem* out) const;
  elem frob_cc(elem x) const;
  elem pow_generic(elem a, uint64_t e) const;

  uint32_t p_ = 0;
  uint64_t order_ = 0;
  uint32_t degree_ = 1;
  uint32_t abs_degree_ = 1;
  std::shared_ptr<const Field> base_;
  std::vector<elem> modulus_;
  // X^{degree+k} mod modulus for k = 0..degree-2, as digit rows.
  std::vector<std::vector<elem>> red_rows_;
  // Images of the basis monomials X^i under x -> x^{|base|}.
  std::vector<std::vector<elem>> frob_basis_;

  bool tabled_ = false;
  std::vector<uint16_t> add_tab_, mul_tab_;
  std::vector<elem> neg_tab_, inv_tab_, frob_tab_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// GF(p) ⊂ GF(q) ⊂ {GF(q^2), GF(q^3)} with q = p^m.
struct Tower {
  uint32_t p = 0, m = 0, r = 0;
  uint64_t q = 0;
  FieldPtr fp, fq, fq2, fq3;
  const Field& curve_field() const { return r == 2 ? *fq2 : *fq3; }
  FieldPtr curve_field_ptr() const { return r == 2 ? fq2 : fq3; }
};

/// Builds the full tower. Throws std::invalid_argument for non-prime p,
/// m == 0, r not in {2,3}, or p^m beyond kTowerCap.
Tower build_tower(uint32_t p, uint32_t m, uint32_t r);

/// Normal basis {α, α^q, α^{q²}} of GF(q³)/GF(q): α is the first element in
/// index order whose conjugates are linearly independent over GF(q).
struct NormalBasis {
  FieldPtr fq3;
  FieldPtr fq;
  elem alpha = 0;
  std::array<elem, 3> conj{};                     // α, α^q, α^{q²}
  std::array<std::array<elem, 3>, 3> inv_mat{};   // coordinates -> (s0,s1,s2), over GF(q)
};

NormalBasis find_normal_basis(const Tower& tower);
elem phi_b(const NormalBasis& nb, const std::array<elem, 3>& s);
std::array<elem, 3> phi_b_inv(const NormalBasis& nb, elem x);

/// Injective field homomorphism realized as a full image table over the
/// subfield (subfield order must be <= kTableCap).
struct Embedding {
  FieldPtr sub, super;
  std::vector<elem> img;
  elem operator()(elem x) const { return img[x]; }
};

Embedding make_embedding(const FieldPtr& sub, const FieldPtr& super);

/// Digit string for reports: absolute base-p digits, most significant first.
/// Digits are concatenated for p <= 10 and dot-separated otherwise.
std::string format_elem(const Field& f, elem x);
/// Inverse of format_elem (used by tests round-tripping CLI output).
elem parse_elem(const Field& f, const std::string& s);

}  // namespace ntlab
