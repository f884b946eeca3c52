#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "canonica/field.hpp"
#include "canonica/monomial.hpp"

namespace canonica {

/// Polynomial ring k[x_0, ..., x_{n-1}] with a grading and a monomial order.
template <class K>
class PolyRing {
 public:
  PolyRing(K field, std::vector<std::string> names, MonomialOrder order = MonomialOrder::grevlex(),
           std::vector<int> weights = {});

  const K& field() const { return field_; }
  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& weights() const { return weights_; }
  const MonomialOrder& order() const { return order_; }

  /// Weighted degree.
  int degree(const Monomial& m) const {
    if (unit_weights_) return static_cast<int>(m.degree());
    int d = 0;
    for (int i = 0; i < nvars(); ++i) d += weights_[i] * m.exponent(i);
    return d;
  }
  int index_of(std::string_view name) const;

  std::shared_ptr<PolyRing> with_order(MonomialOrder order) const {
    return std::make_shared<PolyRing>(field_, names_, order, weights_);
  }

  std::string monomial_to_string(const Monomial& m) const;

 private:
  K field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
  std::vector<int> weights_;
  bool unit_weights_ = true;
};

template <class K>
using PolyRingPtr = std::shared_ptr<const PolyRing<K>>;

template <class K>
struct Term {
  Monomial m;
  typename K::Element c;
};

/// Sparse polynomial; terms are sorted strictly descending in the ring order
/// and carry nonzero coefficients.
template <class K>
class Polynomial {
 public:
  using Element = typename K::Element;
  using TermT = Term<K>;

  Polynomial() = default;
  explicit Polynomial(const PolyRing<K>* ring) : ring_(ring) {}
  Polynomial(const PolyRing<K>* ring, std::vector<TermT> sorted_terms)
      : ring_(ring), terms_(std::move(sorted_terms)) {}

  static Polynomial constant(const PolyRing<K>* ring, const Element& c);
  static Polynomial constant(const PolyRing<K>* ring, std::int64_t c) {
    return constant(ring, ring->field().from_int(c));
  }
  static Polynomial variable(const PolyRing<K>* ring, int var);
  static Polynomial monomial(const PolyRing<K>* ring, const Monomial& m, const Element& c);
  /// Sorts, merges equal monomials, drops zeros.
  static Polynomial from_terms(const PolyRing<K>* ring, std::vector<TermT> terms);

  const PolyRing<K>* ring() const { return ring_; }
  const std::vector<TermT>& terms() const { return terms_; }
  std::vector<TermT>& mutable_terms() { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermT& lead() const { return terms_.front(); }
  const Monomial& lead_monomial() const { return terms_.front().m; }
  const Element& lead_coeff() const { return terms_.front().c; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }

  /// Largest weighted degree of a term; -1 for zero.
  int degree() const;
  bool is_homogeneous() const;

  Polynomial operator+(const Polynomial& o) const { return combine(o, false); }
  Polynomial operator-(const Polynomial& o) const { return combine(o, true); }
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Element& c) const;
  Polynomial mul_term(const Monomial& m, const Element& c) const;
  Polynomial monic() const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const {
    if (ring_ != o.ring_) throw AlgebraError("polynomial ring mismatch");
  }
  Polynomial combine(const Polynomial& o, bool subtract) const;

  const PolyRing<K>* ring_ = nullptr;
  std::vector<TermT> terms_;
};

/// Merge a + s * b (both sorted in `order`); the result is sorted.
template <class K>
std::vector<Term<K>> merge_terms(const K& field, const MonomialOrder& order,
                                 const std::vector<Term<K>>& a, const std::vector<Term<K>>& b,
                                 const typename K::Element& s, const Monomial& shift);

// ---------------------------------------------------------------------------

template <class K>
PolyRing<K>::PolyRing(K field, std::vector<std::string> names, MonomialOrder order,
                      std::vector<int> weights)
    : field_(std::move(field)), names_(std::move(names)), order_(order), weights_(std::move(weights)) {
  if (static_cast<int>(names_.size()) > kMaxVars)
    throw AlgebraError("too many variables (max " + std::to_string(kMaxVars) + ")");
  if (weights_.empty()) weights_.assign(names_.size(), 1);
  if (weights_.size() != names_.size()) throw AlgebraError("weight vector length mismatch");
  for (int w : weights_) {
    if (w <= 0) throw AlgebraError("grading weights must be positive");
    if (w != 1) unit_weights_ = false;
  }
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw AlgebraError("duplicate variable name " + names_[i]);
}

template <class K>
int PolyRing<K>::index_of(std::string_view name) const {
  for (int i = 0; i < nvars(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

template <class K>
std::string PolyRing<K>::monomial_to_string(const Monomial& m) const {
  std::string s;
  for (int i = 0; i < nvars(); ++i) {
    int e = m.exponent(i);
    if (e == 0) continue;
    if (!s.empty()) s += '*';
    s += names_[i];
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

template <class K>
Polynomial<K> Polynomial<K>::constant(const PolyRing<K>* ring, const Element& c) {
  Polynomial p(ring);
  if (!ring->field().is_zero(c)) p.terms_.push_back({Monomial(), c});
  return p;
}

template <class K>
Polynomial<K> Polynomial<K>::variable(const PolyRing<K>* ring, int var) {
  Monomial m;
  m.set_exponent(var, 1);
  return monomial(ring, m, ring->field().one());
}

template <class K>
Polynomial<K> Polynomial<K>::monomial(const PolyRing<K>* ring, const Monomial& m, const Element& c) {
  Polynomial p(ring);
  if (!ring->field().is_zero(c)) p.terms_.push_back({m, c});
  return p;
}

template <class K>
Polynomial<K> Polynomial<K>::from_terms(const PolyRing<K>* ring, std::vector<TermT> terms) {
  const auto& ord = ring->order();
  const K& F = ring->field();
  std::sort(terms.begin(), terms.end(),
            [&](const TermT& a, const TermT& b) { return ord.compare(a.m, b.m) > 0; });
  std::vector<TermT> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c = F.add(out.back().c, t.c);
    } else {
      if (!out.empty() && F.is_zero(out.back().c)) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && F.is_zero(out.back().c)) out.pop_back();
  return Polynomial(ring, std::move(out));
}

template <class K>
int Polynomial<K>::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, ring_->degree(t.m));
  return d;
}

template <class K>
bool Polynomial<K>::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = ring_->degree(terms_[0].m);
  for (const auto& t : terms_)
    if (ring_->degree(t.m) != d) return false;
  return true;
}

template <class K>
std::vector<Term<K>> merge_terms(const K& F, const MonomialOrder& order, const std::vector<Term<K>>& a,
                                 const std::vector<Term<K>>& b, const typename K::Element& s,
                                 const Monomial& shift) {
  std::vector<Term<K>> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  const bool trivial_shift = shift.is_one();
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Monomial mb = trivial_shift ? b[j].m : b[j].m * shift;
    if (i == a.size()) {
      out.push_back({mb, F.mul(s, b[j].c)});
      ++j;
      continue;
    }
    int c = order.compare(a[i].m, mb);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({mb, F.mul(s, b[j].c)});
      ++j;
    } else {
      auto v = F.add(a[i].c, F.mul(s, b[j].c));
      if (!F.is_zero(v)) out.push_back({a[i].m, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

template <class K>
Polynomial<K> Polynomial<K>::combine(const Polynomial& o, bool subtract) const {
  if (o.ring_ == nullptr || o.terms_.empty()) return *this;
  if (ring_ == nullptr || terms_.empty()) return subtract ? -o : o;
  check_ring(o);
  const K& F = ring_->field();
  return Polynomial(ring_, merge_terms<K>(F, ring_->order(), terms_, o.terms_,
                                          subtract ? F.neg(F.one()) : F.one(), Monomial()));
}

template <class K>
Polynomial<K> Polynomial<K>::operator-() const {
  Polynomial r = *this;
  if (ring_)
    for (auto& t : r.terms_) t.c = ring_->field().neg(t.c);
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::operator*(const Polynomial& o) const {
  if (terms_.empty() || o.terms_.empty()) return Polynomial(ring_ ? ring_ : o.ring_);
  check_ring(o);
  const K& F = ring_->field();
  const Polynomial& small = terms_.size() <= o.terms_.size() ? *this : o;
  const Polynomial& big = terms_.size() <= o.terms_.size() ? o : *this;
  std::vector<TermT> acc;
  for (const auto& t : small.terms_) {
    if (acc.empty()) {
      acc.reserve(big.terms_.size());
      for (const auto& u : big.terms_) acc.push_back({u.m * t.m, F.mul(u.c, t.c)});
    } else {
      acc = merge_terms<K>(F, ring_->order(), acc, big.terms_, t.c, t.m);
    }
  }
  return Polynomial(ring_, std::move(acc));
}

template <class K>
Polynomial<K> Polynomial<K>::scaled(const Element& c) const {
  if (!ring_) return *this;
  const K& F = ring_->field();
  if (F.is_zero(c)) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.c = F.mul(t.c, c);
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::mul_term(const Monomial& m, const Element& c) const {
  if (!ring_) return *this;
  const K& F = ring_->field();
  if (F.is_zero(c)) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) {
    t.m = t.m * m;
    t.c = F.mul(t.c, c);
  }
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::monic() const {
  if (terms_.empty()) return *this;
  return scaled(ring_->field().inv(lead_coeff()));
}

template <class K>
Polynomial<K> Polynomial<K>::pow(unsigned e) const {
  Polynomial r = constant(ring_, ring_->field().one());
  Polynomial b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

template <class K>
bool Polynomial<K>::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  if (terms_.empty()) return true;
  const K& F = ring_->field();
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].m != o.terms_[i].m || !F.equal(terms_[i].c, o.terms_[i].c)) return false;
  return true;
}

template <class K>
std::string Polynomial<K>::to_string() const {
  if (terms_.empty()) return "0";
  const K& F = ring_->field();
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = F.to_string(t.c);
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (t.m.is_one()) {
      s += c;
    } else {
      if (c != "1") s += c + "*";
      s += ring_->monomial_to_string(t.m);
    }
  }
  return s;
}

}  // namespace canonica
