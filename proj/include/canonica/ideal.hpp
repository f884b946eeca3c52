#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "canonica/groebner.hpp"

namespace canonica {

template <class K>
using PolyVec = std::vector<Polynomial<K>>;

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`'s order,
/// sorted by leading monomial descending.  With `ambient_gb` (a Gröbner basis
/// of some ideal I) the computation is modulo I: the result together with
/// ambient_gb is a Gröbner basis of gens + I and its elements are reduced
/// modulo I.
template <class K>
PolyVec<K> groebner_basis(const PolyRing<K>& ring, const PolyVec<K>& gens, const PolyVec<K>* ambient_gb = nullptr,
                          bool use_criteria = true);

/// Remainder of f modulo a Gröbner basis (optionally together with a second one).
template <class K>
Polynomial<K> normal_form(const Polynomial<K>& f, const PolyVec<K>& gb, const PolyVec<K>* ambient_gb = nullptr);

/// Buchberger criterion for a polynomial basis.
template <class K>
bool is_groebner_basis(const PolyRing<K>& ring, const PolyVec<K>& gb, const PolyVec<K>* ambient_gb = nullptr);

/// Image under x_i -> y_{var_map[i]}; var_map[i] < 0 sends x_i to zero.
template <class K>
Polynomial<K> map_variables(const Polynomial<K>& f, const PolyRing<K>* target, std::span<const int> var_map);

/// Same polynomial in a ring with the same variables and another order.
template <class K>
Polynomial<K> reorder(const Polynomial<K>& f, const PolyRing<K>* target);

/// Generators of (gens) ∩ k[x_k, ..., x_{n-1}] (a Gröbner basis).
template <class K>
PolyVec<K> eliminate(const PolyRing<K>& ring, const PolyVec<K>& gens, int k);

/// A ∩ B via t*A + (1 - t)*B with t eliminated.  Optional ambient ideal I is
/// added to both sides.
template <class K>
PolyVec<K> intersect(const PolyRing<K>& ring, const PolyVec<K>& A, const PolyVec<K>& B,
                     const PolyVec<K>* ambient_gb = nullptr);

/// (A + I : B) as the intersection over the generators g of B of
/// ((A + I) ∩ (g)) / g.  Returns a Gröbner basis of the colon modulo I.
template <class K>
PolyVec<K> colon(const PolyRing<K>& ring, const PolyVec<K>& A, const PolyVec<K>& B, const PolyVec<K>* ambient_gb = nullptr);

/// (A + I : g) as the set of first coordinates of syzygies of (g, A) modulo I.
template <class K>
PolyVec<K> colon_by_syzygies(const PolyRing<K>& ring, const PolyVec<K>& A, const Polynomial<K>& g,
                             const PolyVec<K>* ambient_gb = nullptr);

/// Exact division f / g; throws when g does not divide f.
template <class K>
Polynomial<K> divide_exact(const Polynomial<K>& f, const Polynomial<K>& g);

/// Ideal of a polynomial ring with a lazily computed, cached Gröbner basis.
template <class K>
class Ideal {
 public:
  Ideal() = default;
  Ideal(PolyRingPtr<K> ring, PolyVec<K> gens);

  const PolyRingPtr<K>& ring_ptr() const { return ring_; }
  const PolyRing<K>& ring() const { return *ring_; }
  const PolyVec<K>& gens() const { return gens_; }
  /// Reduced Gröbner basis in the ring's order (computed once).
  const PolyVec<K>& gb() const;

  bool contains(const Polynomial<K>& f) const { return normal_form(f, gb()).is_zero(); }
  Polynomial<K> reduce(const Polynomial<K>& f) const { return normal_form(f, gb()); }
  bool is_zero() const { return gb().empty(); }
  bool is_unit() const;
  bool is_homogeneous() const;
  bool operator==(const Ideal& o) const;

  Ideal operator+(const Ideal& o) const;
  Ideal operator*(const Ideal& o) const;
  Ideal intersect(const Ideal& o) const;
  Ideal colon(const Ideal& o) const;
  Ideal eliminate(int k) const;

 private:
  struct Cache {
    std::mutex mu;
    std::optional<PolyVec<K>> gb;
  };
  PolyRingPtr<K> ring_;
  PolyVec<K> gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

}  // namespace canonica
