#pragma once

#include <optional>
#include <vector>

#include "canonica/rings.hpp"

namespace canonica {

/// numerator / (product of denominator factors) inside the fraction field of
/// a graded domain R.  The numerator is an ideal of R on minimal generators.
template <class K>
struct FractionalIdeal {
  QRingPtr<K> ring;
  PolyVec<K> numerator;
  PolyVec<K> denominator_factors;
  /// Set once the ideal is known to be divisorial.
  bool canonical = false;

  Polynomial<K> denominator() const;
  int denominator_degree() const;
  std::string to_string() const;
};

/// Thrown when no label within the scan window matches.
class ClassNotFound : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

template <class K>
FractionalIdeal<K> make_fractional(QRingPtr<K> ring, const PolyVec<K>& gens, PolyVec<K> denominator = {});

template <class K>
FractionalIdeal<K> frac_mul(const FractionalIdeal<K>& a, const FractionalIdeal<K>& b);

/// a :_Q b = {x : x b ⊆ a}.
template <class K>
FractionalIdeal<K> frac_colon(const FractionalIdeal<K>& a, const FractionalIdeal<K>& b);

/// R :_Q (R :_Q a).
template <class K>
FractionalIdeal<K> divisorial_hull(const FractionalIdeal<K>& a);

/// Equality as submodules of the fraction field.
template <class K>
bool frac_equal(const FractionalIdeal<K>& a, const FractionalIdeal<K>& b);

template <class K>
struct Principal {
  bool principal = false;
  Polynomial<K> numerator;
  PolyVec<K> denominator_factors;
};

template <class K>
Principal<K> is_principal(const FractionalIdeal<K>& a);

template <class K>
bool ideals_isomorphic(const FractionalIdeal<K>& a, const FractionalIdeal<K>& b);

/// Image of a rank-one torsion-free module under a minimal generator of Hom(M, R).
template <class K>
FractionalIdeal<K> embed_as_ideal(const FPModule<K>& M);

/// Row ideal to the power c for c >= 0, column ideal to the power -c otherwise.
template <class K>
FractionalIdeal<K> power_ideal(const DetRing<K>& det, int c);

/// The label c with |c| <= scan_bound and a isomorphic to power_ideal(det, c),
/// scanned in the order 0, 1, -1, 2, -2, ...
template <class K>
int class_of(const FractionalIdeal<K>& a, const DetRing<K>& det, int scan_bound);

/// The numerator as a module, shifted so that it is isomorphic to a as a graded module.
template <class K>
FPModule<K> fractional_module(const FractionalIdeal<K>& a);

}  // namespace canonica
