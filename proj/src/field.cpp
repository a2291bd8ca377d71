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

#include "ntlab/field.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

#include "ntlab/poly.hpp"

namespace ntlab {

namespace {
constexpr uint32_t kMaxDegree = 16;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::shared_ptr<const Field> Field::prime(uint32_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("characteristic must be prime");
  if (p > kTableCap) throw std::invalid_argument("prime field order beyond table cap");
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->order_ = p;
  f->degree_ = 1;
  f->abs_degree_ = 1;
  f->tabled_ = true;
  f->add_tab_.resize(static_cast<size_t>(p) * p);
  f->mul_tab_.resize(static_cast<size_t>(p) * p);
  f->neg_tab_.resize(p);
  f->inv_tab_.resize(p, 0);
  f->frob_tab_.resize(p);
  for (uint32_t a = 0; a < p; ++a) {
    f->neg_tab_[a] = (p - a) % p;
    f->frob_tab_[a] = a;
    for (uint32_t b = 0; b < p; ++b) {
      f->add_tab_[static_cast<size_t>(a) * p + b] = static_cast<uint16_t>((a + b) % p);
      f->mul_tab_[static_cast<size_t>(a) * p + b] =
          static_cast<uint16_t>((static_cast<uint64_t>(a) * b) % p);
    }
  }
  for (uint32_t a = 1; a < p; ++a) f->inv_tab_[a] = f->pow(a, p - 2);
  return f;
}

std::shared_ptr<const Field> Field::extension(std::shared_ptr<const Field> base,
                                              uint32_t degree) {
  if (!base) throw std::invalid_argument("extension needs a base field");
  if (degree < 2 || degree > kMaxDegree)
    throw std::invalid_argument("unsupported extension degree");
  if (!base->tabled())
    throw std::invalid_argument("extension base must be table-backed");
  uint64_t order = 1;
  for (uint32_t i = 0; i < degree; ++i) {
    order *= base->order();
    if (order > (1ull << 31)) throw std::invalid_argument("extension order too large");
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = base->characteristic();
  f->order_ = order;
  f->degree_ = degree;
  f->abs_degree_ = base->abs_degree() * degree;
  f->base_ = std::move(base);

  // Lexicographically least monic irreducible: scan packed low-coefficient
  // vectors in index order.
  const Field& b = *f->base_;
  uint64_t span = 1;
  for (uint32_t i = 0; i < degree; ++i) span *= b.order();
  bool found = false;
  for (uint64_t k = 0; k < span; ++k) {
    Poly cand(degree + 1, 0);
    uint64_t t = k;
    for (uint32_t i = 0; i < degree; ++i) {
      cand[i] = static_cast<elem>(t % b.order());
      t /= b.order();
    }
    cand[degree] = 1;
    if (poly_is_irreducible(b, cand)) {
      f->modulus_ = std::move(cand);
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("no irreducible modulus found");

  f->build_extension_core();
  if (f->order_ <= kTableCap) f->build_tables();
  return f;
}

void Field::build_extension_core() {
  const Field& b = *base_;
  const uint32_t d = degree_;
  // X^{d+k} mod modulus, k = 0..d-2
  red_rows_.assign(d > 1 ? d - 1 : 0, std::vector<elem>(d, 0));
  std::vector<elem> cur(d, 0);  // digits of X^d mod f = -modulus[0..d-1]
  for (uint32_t i = 0; i < d; ++i) cur[i] = b.neg(modulus_[i]);
  red_rows_[0] = cur;
  for (uint32_t k = 1; k + 1 < d; ++k) {
    // multiply cur by X and reduce
    std::vector<elem> nxt(d, 0);
    elem top = cur[d - 1];
    for (uint32_t i = d - 1; i > 0; --i) nxt[i] = cur[i - 1];
    nxt[0] = 0;
    if (top != 0)
      for (uint32_t i = 0; i < d; ++i)
        nxt[i] = b.add(nxt[i], b.mul(top, red_rows_[0][i]));
    red_rows_[k] = nxt;
    cur = std::move(nxt);
  }
  // Frobenius basis images: (X^Q)^i mod f
  frob_basis_.assign(d, std::vector<elem>(d, 0));
  for (uint32_t i = 0; i < d; ++i) {
    Poly img = poly_powmod_x(b, b.order() * static_cast<uint64_t>(i), modulus_);
    img.resize(d, 0);
    for (uint32_t j = 0; j < d; ++j) frob_basis_[i][j] = img[j];
  }
}

void Field::add_cc(const elem* a, const elem* b, elem* out) const {
  const Field& bf = *base_;
  for (uint32_t i = 0; i < degree_; ++i) out[i] = bf.add(a[i], b[i]);
}

void Field::mul_cc(const elem* a, const elem* b, elem* out) const {
  const Field& bf = *base_;
  const uint32_t d = degree_;
  elem prod[2 * kMaxDegree] = {0};
  for (uint32_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (uint32_t j = 0; j < d; ++j) {
      if (b[j] == 0) continue;
      prod[i + j] = bf.add(prod[i + j], bf.mul(a[i], b[j]));
    }
  }
  for (uint32_t k = 2 * d - 2; k >= d && k < 2 * kMaxDegree; --k) {
    elem c = prod[k];
    if (c != 0) {
      const auto& row = red_rows_[k - d];
      for (uint32_t i = 0; i < d; ++i) prod[i] = bf.add(prod[i], bf.mul(c, row[i]));
    }
    if (k == d) break;
  }
  for (uint32_t i = 0; i < d; ++i) out[i] = prod[i];
}

void Field::build_tables() {
  const uint64_t n = order_;
  tabled_ = true;
  add_tab_.resize(n * n);
  mul_tab_.resize(n * n);
  neg_tab_.resize(n);
  inv_tab_.assign(n, 0);
  frob_tab_.resize(n);

  const uint32_t d = degree_;
  std::vector<elem> digits(n * d);
  for (uint64_t x = 0; x < n; ++x) unpack(static_cast<elem>(x), &digits[x * d]);

  std::vector<elem> out(d);
  const Field& bf = *base_;
  for (uint64_t a = 0; a < n; ++a) {
    const elem* da = &digits[a * d];
    for (uint64_t b = 0; b < n; ++b) {
      const elem* db = &digits[b * d];
      for (uint32_t i = 0; i < d; ++i) out[i] = bf.add(da[i], db[i]);
      add_tab_[a * n + b] = static_cast<uint16_t>(pack(out.data()));
      mul_cc(da, db, out.data());
      mul_tab_[a * n + b] = static_cast<uint16_t>(pack(out.data()));
    }
    for (uint32_t i = 0; i < d; ++i) out[i] = bf.neg(da[i]);
    neg_tab_[a] = pack(out.data());
    frob_tab_[a] = frob_cc(static_cast<elem>(a));
  }
  for (uint64_t a = 1; a < n; ++a) inv_tab_[a] = pow_generic(static_cast<elem>(a), n - 2);
  // context self-check
  for (uint64_t a = 1; a < n; ++a)
    if (mul(static_cast<elem>(a), inv_tab_[a]) != 1)
      throw std::logic_error("field table inconsistency");
}

elem Field::add(elem a, elem b) const {
  if (tabled_) return add_tab_[static_cast<size_t>(a) * order_ + b];
  elem da[kMaxDegree], db[kMaxDegree], out[kMaxDegree] = {0};
  unpack(a, da);
  unpack(b, db);
  add_cc(da, db, out);
  return pack(out);
}

elem Field::neg(elem a) const {
  if (tabled_) return neg_tab_[a];
  elem da[kMaxDegree], out[kMaxDegree] = {0};
  unpack(a, da);
  for (uint32_t i = 0; i < degree_; ++i) out[i] = base_->neg(da[i]);
  return pack(out);
}

elem Field::sub(elem a, elem b) const { return add(a, neg(b)); }

elem Field::mul(elem a, elem b) const {
  if (tabled_) return mul_tab_[static_cast<size_t>(a) * order_ + b];
  elem da[kMaxDegree], db[kMaxDegree], out[kMaxDegree] = {0};
  unpack(a, da);
  unpack(b, db);
  mul_cc(da, db, out);
  return pack(out);
}

elem Field::pow_generic(elem a, uint64_t e) const {
  elem result = 1, acc = a;
  while (e > 0) {
    if (e & 1) result = mul(result, acc);
    acc = mul(acc, acc);
    e >>= 1;
  }
  return result;
}

elem Field::pow(elem a, uint64_t e) const { return pow_generic(a, e); }

elem Field::inv(elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (tabled_) return inv_tab_[a];
  return pow_generic(a, order_ - 2);
}

elem Field::from_int(uint64_t n) const {
  if (base_) return base_->from_int(n);  // constants keep their index
  return static_cast<elem>(n % p_);
}

void Field::unpack(elem x, elem* digits) const {
  if (!base_) {
    digits[0] = x;
    return;
  }
  uint64_t q = base_->order();
  uint64_t v = x;
  for (uint32_t i = 0; i < degree_; ++i) {
    digits[i] = static_cast<elem>(v % q);
    v /= q;
  }
}

elem Field::pack(const elem* digits) const {
  if (!base_) return digits[0];
  uint64_t q = base_->order();
  uint64_t v = 0;
  for (uint32_t i = degree_; i > 0; --i) v = v * q + digits[i - 1];
  return static_cast<elem>(v);
}

elem Field::coeff(elem x, uint32_t i) const {
  if (!base_) return i == 0 ? x : 0;
  uint64_t q = base_->order();
  uint64_t v = x;
  for (uint32_t k = 0; k < i; ++k) v /= q;
  return static_cast<elem>(v % q);
}

elem Field::frob_cc(elem x) const {
  elem dx[kMaxDegree];
  unpack(x, dx);
  const Field& bf = *base_;
  elem out[kMaxDegree] = {0};
  for (uint32_t i = 0; i < degree_; ++i) {
    if (dx[i] == 0) continue;
    for (uint32_t j = 0; j < degree_; ++j)
      out[j] = bf.add(out[j], bf.mul(dx[i], frob_basis_[i][j]));
  }
  return pack(out);
}

elem Field::frob(elem x) const {
  if (!base_) return x;
  if (tabled_) return frob_tab_[x];
  return frob_cc(x);
}

elem Field::trace_to_base(elem x) const {
  if (!base_) throw std::logic_error("trace needs an extension context");
  elem acc = x, t = x;
  for (uint32_t k = 1; k < degree_; ++k) {
    acc = frob(acc);
    t = add(t, acc);
  }
  // trace lands in the base field: all higher digits vanish
  assert(t < base_->order() || coeff(t, 1) == 0);
  return t;  // constant index == base index
}

elem Field::norm_to_base(elem x) const {
  if (!base_) throw std::logic_error("norm needs an extension context");
  elem acc = x, n = x;
  for (uint32_t k = 1; k < degree_; ++k) {
    acc = frob(acc);
    n = mul(n, acc);
  }
  assert(n < base_->order());
  return n;
}

std::string Field::modulus_string() const {
  if (!base_) return "";
  std::ostringstream os;
  bool first = true;
  for (uint32_t i = degree_ + 1; i > 0; --i) {
    uint32_t k = i - 1;
    elem c = k < modulus_.size() ? modulus_[k] : 0;
    if (k == degree_) c = 1;
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (k == 0 || c != 1) os << c;
    if (k >= 1) {
      os << "x";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(" << order_ << ")";
  if (base_) os << "=GF(" << base_->order() << ")[x]/(" << modulus_string() << ")";
  return os.str();
}

Tower build_tower(uint32_t p, uint32_t m, uint32_t r) {
  if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
  if (m == 0) throw std::invalid_argument("m must be positive");
  if (r != 2 && r != 3) throw std::invalid_argument("r must be 2 or 3");
  uint64_t q = 1;
  for (uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kTowerCap) throw std::invalid_argument("q=p^m beyond the supported cap");
  }
  Tower t;
  t.p = p;
  t.m = m;
  t.r = r;
  t.q = q;
  t.fp = Field::prime(p);
  t.fq = (m == 1) ? t.fp : Field::extension(t.fp, m);
  t.fq2 = Field::extension(t.fq, 2);
  t.fq3 = Field::extension(t.fq, 3);
  return t;
}

namespace {

// 3x3 inverse over a field; returns false if singular.
bool invert3(const Field& f, const std::array<std::array<elem, 3>, 3>& a,
             std::array<std::array<elem, 3>, 3>& out) {
  auto det2 = [&](elem x, elem y, elem z, elem w) { return f.sub(f.mul(x, w), f.mul(y, z)); };
  std::array<std::array<elem, 3>, 3> cof{};
  cof[0][0] = det2(a[1][1], a[1][2], a[2][1], a[2][2]);
  cof[0][1] = f.neg(det2(a[1][0], a[1][2], a[2][0], a[2][2]));
  cof[0][2] = det2(a[1][0], a[1][1], a[2][0], a[2][1]);
  cof[1][0] = f.neg(det2(a[0][1], a[0][2], a[2][1], a[2][2]));
  cof[1][1] = det2(a[0][0], a[0][2], a[2][0], a[2][2]);
  cof[1][2] = f.neg(det2(a[0][0], a[0][1], a[2][0], a[2][1]));
  cof[2][0] = det2(a[0][1], a[0][2], a[1][1], a[1][2]);
  cof[2][1] = f.neg(det2(a[0][0], a[0][2], a[1][0], a[1][2]));
  cof[2][2] = det2(a[0][0], a[0][1], a[1][0], a[1][1]);
  elem det = f.add(f.add(f.mul(a[0][0], cof[0][0]), f.mul(a[0][1], cof[0][1])),
                   f.mul(a[0][2], cof[0][2]));
  if (det == 0) return false;
  elem di = f.inv(det);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = f.mul(di, cof[j][i]);  // adjugate transpose
  return true;
}

}  // namespace

NormalBasis find_normal_basis(const Tower& tower) {
  const Field& F = *tower.fq3;
  const Field& B = *tower.fq;
  NormalBasis nb;
  nb.fq3 = tower.fq3;
  nb.fq = tower.fq;
  for (uint64_t x = 0; x < F.order(); ++x) {
    elem a0 = static_cast<elem>(x);
    elem a1 = F.frob(a0);
    elem a2 = F.frob(a1);
    std::array<std::array<elem, 3>, 3> mat{};  // mat[row=digit][col=conjugate]
    for (int c = 0; c < 3; ++c) {
      elem v = c == 0 ? a0 : (c == 1 ? a1 : a2);
      for (int rw = 0; rw < 3; ++rw) mat[rw][c] = F.coeff(v, rw);
    }
    std::array<std::array<elem, 3>, 3> inv{};
    if (invert3(B, mat, inv)) {
      nb.alpha = a0;
      nb.conj = {a0, a1, a2};
      nb.inv_mat = inv;
      return nb;
    }
  }
  throw std::logic_error("no normal basis element found");
}

elem phi_b(const NormalBasis& nb, const std::array<elem, 3>& s) {
  const Field& F = *nb.fq3;
  elem acc = 0;
  for (int i = 0; i < 3; ++i) acc = F.add(acc, F.mul(s[i], nb.conj[i]));
  return acc;
}

std::array<elem, 3> phi_b_inv(const NormalBasis& nb, elem x) {
  const Field& F = *nb.fq3;
  const Field& B = *nb.fq;
  std::array<elem, 3> coords{F.coeff(x, 0), F.coeff(x, 1), F.coeff(x, 2)};
  std::array<elem, 3> s{};
  for (int i = 0; i < 3; ++i) {
    elem acc = 0;
    for (int j = 0; j < 3; ++j) acc = B.add(acc, B.mul(nb.inv_mat[i][j], coords[j]));
    s[i] = acc;
  }
  return s;
}

Embedding make_embedding(const FieldPtr& sub, const FieldPtr& super) {
  if (!sub || !super) throw std::invalid_argument("make_embedding: null field");
  if (sub->characteristic() != super->characteristic())
    throw std::invalid_argument("make_embedding: characteristic mismatch");
  if (super->abs_degree() % sub->abs_degree() != 0)
    throw std::invalid_argument("make_embedding: no embedding exists");

  Embedding e;
  e.sub = sub;
  e.super = super;
  if (sub.get() == super.get()) {
    e.img.resize(sub->order());
    for (uint64_t x = 0; x < sub->order(); ++x) e.img[x] = static_cast<elem>(x);
    return e;
  }
  // If sub already sits inside super's base, constants keep their index.
  if (super->base() != nullptr &&
      super->base()->abs_degree() % sub->abs_degree() == 0) {
    Embedding inner = make_embedding(sub, super->base_ptr());
    e.img = std::move(inner.img);
    return e;
  }
  if (sub->order() > kTableCap)
    throw std::invalid_argument("make_embedding: subfield too large to materialize");
  if (sub->base() == nullptr) {
    e.img.resize(sub->order());
    for (uint64_t x = 0; x < sub->order(); ++x) e.img[x] = super->from_int(x);
    return e;
  }
  // Root-based: map sub's modulus into super and locate its least root.
  Embedding eb = make_embedding(sub->base_ptr(), super);
  Poly mapped(sub->modulus().size());
  for (size_t i = 0; i < mapped.size(); ++i) mapped[i] = eb(sub->modulus()[i]);
  elem delta = 0;
  bool found = false;
  for (uint64_t x = 0; x < super->order(); ++x) {
    if (poly_eval(*super, mapped, static_cast<elem>(x)) == 0) {
      delta = static_cast<elem>(x);
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("make_embedding: modulus has no root upstairs");
  e.img.resize(sub->order());
  uint32_t d = sub->degree();
  std::vector<elem> digits(d);
  for (uint64_t x = 0; x < sub->order(); ++x) {
    sub->unpack(static_cast<elem>(x), digits.data());
    elem acc = 0;
    for (uint32_t i = d; i > 0; --i)
      acc = super->add(super->mul(acc, delta), eb(digits[i - 1]));
    e.img[x] = acc;
  }
  return e;
}

namespace {
void abs_digits(const Field& f, elem x, std::vector<uint32_t>& out) {
  if (f.base() == nullptr) {
    out.push_back(x);
    return;
  }
  for (uint32_t i = f.degree(); i > 0; --i) abs_digits(*f.base(), f.coeff(x, i - 1), out);
}
}  // namespace

std::string format_elem(const Field& f, elem x) {
  std::vector<uint32_t> digits;
  abs_digits(f, x, digits);
  std::ostringstream os;
  bool dotted = f.characteristic() > 10;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (dotted && i) os << '.';
    os << digits[i];
  }
  return os.str();
}

elem parse_elem(const Field& f, const std::string& s) {
  std::vector<uint32_t> digits;
  if (f.characteristic() > 10) {
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, '.')) digits.push_back(std::stoul(tok));
  } else {
    for (char c : s) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad element digit string");
      digits.push_back(static_cast<uint32_t>(c - '0'));
    }
  }
  if (digits.size() != f.abs_degree())
    throw std::invalid_argument("element digit string has wrong length");
  uint64_t v = 0;
  for (uint32_t d : digits) {
    if (d >= f.characteristic()) throw std::invalid_argument("digit out of range");
    v = v * f.characteristic() + d;
  }
  // v is the packed base-p value; repack through the tower structure.
  // Because every level packs digits positionally with the base order, the
  // absolute base-p packing coincides with the element index.
  if (v >= f.order()) throw std::invalid_argument("element out of range");
  return static_cast<elem>(v);
}

}  // namespace ntlab
