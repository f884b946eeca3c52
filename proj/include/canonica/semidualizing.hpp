#pragma once

#include <optional>
#include <string>
#include <vector>

#include "canonica/rings.hpp"

namespace canonica {

enum class Homothety { Iso, NotCyclic, IdentityNotGenerator };
enum class SdVerdict { SemidualizingUpToBound, NotSemidualizing, HomothetyFails };
enum class DualVerdict { DualizingUpToBound, NotDualizing };
enum class OrderAnswer { True, False, Undetermined };

const char* to_string(Homothety h);
const char* to_string(SdVerdict v);
const char* to_string(DualVerdict v);
const char* to_string(OrderAnswer a);

struct SemidualizingReport {
  std::uint64_t module_fingerprint = 0;
  Homothety homothety = Homothety::Iso;
  /// Ext^i(C, C) was examined for 1 <= i <= ext_checked_to.
  int ext_checked_to = 0;
  std::optional<int> first_nonvanishing_ext;
  SdVerdict verdict = SdVerdict::SemidualizingUpToBound;

  bool passed() const { return verdict == SdVerdict::SemidualizingUpToBound; }
};

struct DualizingReport {
  std::vector<std::size_t> bass;
  std::optional<int> ring_depth;
  DualVerdict verdict = DualVerdict::NotDualizing;
};

struct ReflexivityReport {
  bool holds = false;
  /// Empty when holds; otherwise e.g. "ext(G,C) at 2" or "biduality not surjective".
  std::string failure;
};

template <class K>
Homothety homothety_is_iso(const FPModule<K>& C);

/// Least 1 <= i <= bound with Ext^i(C, C) != 0.
template <class K>
std::optional<int> ext_self_vanishing(const FPModule<K>& C, int bound);

/// bound < 0 means dim R + 1.
template <class K>
SemidualizingReport is_semidualizing(const FPModule<K>& C, int bound = -1);

template <class K>
DualizingReport is_dualizing(const FPModule<K>& C, int bound = -1);

/// Ext vanishing both ways plus the biduality map G -> Hom(Hom(G, C), C).
template <class K>
ReflexivityReport totally_reflexive_wrt(const FPModule<K>& G, const FPModule<K>& C, int bound);

/// [C] before [C2]: C2 is C-reflexive.  Answered only when C2 is maximal Cohen-Macaulay.
template <class K>
OrderAnswer reflexive_order_le(const FPModule<K>& C, const FPModule<K>& C2, int bound);

/// Depth of the ring itself (depth of the free module of rank one).
template <class K>
std::optional<int> ring_depth(const QRingPtr<K>& R);

/// C ⊗ target for target = C.ring / (ys) with ys regular; Tor_1 is spot-checked.
template <class K>
FPModule<K> base_change_tensor(const FPModule<K>& C, const QRingPtr<K>& target, const PolyVec<K>& ys);

/// Hom_B(E, C) as a module over the trivial extension E = B ⋉ B^q, where the
/// q extension variables are the trailing variables of E.
template <class K>
FPModule<K> hom_twist(const FPModule<K>& C, const QRingPtr<K>& extension);

/// Ext^{|ys|}_A(A / (ys)^m, C) as a module over quotient = A / (ys)^m.
template <class K>
FPModule<K> ext_twist_finite(const FPModule<K>& C, const QRingPtr<K>& quotient, const PolyVec<K>& ys, int m);

}  // namespace canonica
