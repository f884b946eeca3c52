#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "canonica/polynomial.hpp"

namespace canonica {

/// One term of a vector in a free module: coefficient * monomial * e_comp.
template <class K>
struct VTerm {
  Monomial m;
  std::uint32_t comp;
  typename K::Element c;
};

/// Sparse vector in a free module S^r.  Terms are kept sorted descending in
/// the position-over-term order: a smaller component index is larger, ties
/// broken by the monomial order.
template <class K>
using Vec = std::vector<VTerm<K>>;

inline int pot_compare(const MonomialOrder& ord, std::uint32_t ca, const Monomial& a, std::uint32_t cb,
                       const Monomial& b) {
  if (ca != cb) return ca < cb ? 1 : -1;
  return ord.compare(a, b);
}

template <class K>
int pot_compare(const MonomialOrder& ord, const VTerm<K>& a, const VTerm<K>& b) {
  return pot_compare(ord, a.comp, a.m, b.comp, b.m);
}

/// a + s * mono * b, with b's components shifted by `comp_offset`.  Inputs are
/// sorted; so is the output.  `start_a` / `start_b` skip leading terms.
template <class K>
Vec<K> vec_axpy(const PolyRing<K>& R, const Vec<K>& a, const Vec<K>& b, const typename K::Element& s,
                const Monomial& mono, std::uint32_t comp_offset = 0, std::size_t start_a = 0,
                std::size_t start_b = 0) {
  const K& F = R.field();
  const MonomialOrder& ord = R.order();
  Vec<K> out;
  out.reserve(a.size() - start_a + b.size() - start_b);
  std::size_t i = start_a, j = start_b;
  const bool unit_mono = mono.is_one();
  while (i < a.size() && j < b.size()) {
    Monomial mb = unit_mono ? b[j].m : b[j].m * mono;
    std::uint32_t cbj = b[j].comp + comp_offset;
    int c = pot_compare(ord, a[i].comp, a[i].m, cbj, mb);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({mb, cbj, F.mul(s, b[j].c)});
      ++j;
    } else {
      auto v = F.add(a[i].c, F.mul(s, b[j].c));
      if (!F.is_zero(v)) out.push_back({a[i].m, a[i].comp, std::move(v)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({unit_mono ? b[j].m : b[j].m * mono, b[j].comp + comp_offset, F.mul(s, b[j].c)});
  return out;
}

template <class K>
Vec<K> vec_add(const PolyRing<K>& R, const Vec<K>& a, const Vec<K>& b) {
  return vec_axpy(R, a, b, R.field().one(), Monomial());
}

template <class K>
Vec<K> vec_sub(const PolyRing<K>& R, const Vec<K>& a, const Vec<K>& b) {
  return vec_axpy(R, a, b, R.field().neg(R.field().one()), Monomial());
}

template <class K>
Vec<K> vec_scale(const PolyRing<K>& R, const Vec<K>& a, const typename K::Element& s) {
  if (R.field().is_zero(s)) return {};
  Vec<K> out = a;
  for (auto& t : out) t.c = R.field().mul(t.c, s);
  return out;
}

/// f * v for a polynomial f.
template <class K>
Vec<K> vec_mul_poly(const PolyRing<K>& R, const Polynomial<K>& f, const Vec<K>& v) {
  Vec<K> acc;
  for (const auto& t : f.terms()) acc = vec_axpy(R, acc, v, t.c, t.m);
  return acc;
}

/// Sorts and merges arbitrary terms into canonical form.
template <class K>
Vec<K> vec_normalize(const PolyRing<K>& R, Vec<K> terms) {
  const K& F = R.field();
  const MonomialOrder& ord = R.order();
  std::sort(terms.begin(), terms.end(), [&](const VTerm<K>& a, const VTerm<K>& b) { return pot_compare(ord, a, b) > 0; });
  Vec<K> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().comp == t.comp && out.back().m == t.m) {
      out.back().c = F.add(out.back().c, t.c);
    } else {
      if (!out.empty() && F.is_zero(out.back().c)) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && F.is_zero(out.back().c)) out.pop_back();
  return out;
}

/// Vector from a dense column of polynomials.
template <class K>
Vec<K> vec_from_column(const std::vector<Polynomial<K>>& col, std::uint32_t offset = 0) {
  Vec<K> out;
  for (std::size_t i = 0; i < col.size(); ++i)
    for (const auto& t : col[i].terms()) out.push_back({t.m, static_cast<std::uint32_t>(i + offset), t.c});
  return out;  // already sorted: components ascending, each polynomial descending
}

/// Component `comp` of v as a polynomial.
template <class K>
Polynomial<K> vec_component(const PolyRing<K>* R, const Vec<K>& v, std::uint32_t comp) {
  std::vector<Term<K>> ts;
  for (const auto& t : v)
    if (t.comp == comp) ts.push_back({t.m, t.c});
  return Polynomial<K>(R, std::move(ts));
}

/// Dense column of length `rank`.
template <class K>
std::vector<Polynomial<K>> vec_to_column(const PolyRing<K>* R, const Vec<K>& v, std::size_t rank) {
  std::vector<std::vector<Term<K>>> parts(rank);
  for (const auto& t : v) parts.at(t.comp).push_back({t.m, t.c});
  std::vector<Polynomial<K>> out;
  out.reserve(rank);
  for (auto& p : parts) out.emplace_back(R, std::move(p));
  return out;
}

template <class K>
Vec<K> vec_unit(const PolyRing<K>& R, std::uint32_t comp) {
  return Vec<K>{{Monomial(), comp, R.field().one()}};
}

template <class K>
bool vec_equal(const PolyRing<K>& R, const Vec<K>& a, const Vec<K>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].comp != b[i].comp || a[i].m != b[i].m || !R.field().equal(a[i].c, b[i].c)) return false;
  return true;
}

/// Degree of a term in a graded free module with generator degrees `shifts`.
template <class K>
int term_degree(const PolyRing<K>& R, const VTerm<K>& t, std::span<const int> shifts) {
  return R.degree(t.m) + (shifts.empty() ? 0 : shifts[t.comp]);
}

/// Largest term degree, or INT_MIN for the zero vector.
template <class K>
int vec_degree(const PolyRing<K>& R, const Vec<K>& v, std::span<const int> shifts) {
  int d = -(1 << 30);
  for (const auto& t : v) d = std::max(d, term_degree(R, t, shifts));
  return d;
}

template <class K>
bool vec_is_homogeneous(const PolyRing<K>& R, const Vec<K>& v, std::span<const int> shifts) {
  if (v.empty()) return true;
  int d = term_degree(R, v[0], shifts);
  for (const auto& t : v)
    if (term_degree(R, t, shifts) != d) return false;
  return true;
}

template <class K>
std::string vec_to_string(const PolyRing<K>& R, const Vec<K>& v) {
  if (v.empty()) return "0";
  std::string s;
  std::size_t i = 0;
  while (i < v.size()) {
    std::uint32_t c = v[i].comp;
    std::vector<Term<K>> ts;
    while (i < v.size() && v[i].comp == c) {
      ts.push_back({v[i].m, v[i].c});
      ++i;
    }
    if (!s.empty()) s += " + ";
    s += "(" + Polynomial<K>(&R, std::move(ts)).to_string() + ")*e" + std::to_string(c);
  }
  return s;
}

}  // namespace canonica
