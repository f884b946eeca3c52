#include "canonica/semidualizing.hpp"

namespace canonica {

const char* to_string(Homothety h) {
  switch (h) {
    case Homothety::Iso: return "ISO";
    case Homothety::NotCyclic: return "NOT_CYCLIC";
    case Homothety::IdentityNotGenerator: return "IDENTITY_NOT_GENERATOR";
  }
  return "?";
}

const char* to_string(SdVerdict v) {
  switch (v) {
    case SdVerdict::SemidualizingUpToBound: return "SEMIDUALIZING_UP_TO_BOUND";
    case SdVerdict::NotSemidualizing: return "NOT_SEMIDUALIZING";
    case SdVerdict::HomothetyFails: return "HOMOTHETY_FAILS";
  }
  return "?";
}

const char* to_string(DualVerdict v) {
  return v == DualVerdict::DualizingUpToBound ? "DUALIZING_UP_TO_BOUND" : "NOT_DUALIZING";
}

const char* to_string(OrderAnswer a) {
  switch (a) {
    case OrderAnswer::True: return "TRUE";
    case OrderAnswer::False: return "FALSE";
    case OrderAnswer::Undetermined: return "UNDETERMINED";
  }
  return "?";
}

namespace {

template <class K>
int default_bound(const QuotientRing<K>& R, int bound) {
  return bound < 0 ? R.dim() + 1 : bound;
}

}  // namespace

template <class K>
Homothety homothety_is_iso(const FPModule<K>& C) {
  FPModule<K> Cm = minimal_presentation(C);
  const std::uint32_t c = Cm.ngens();
  if (c == 0) return Homothety::NotCyclic;
  Vec<K> id;
  for (std::uint32_t s = 0; s < c; ++s) id.push_back({Monomial(), s * c + s, C.S().field().one()});
  auto H = hom(Cm, Cm, {id});
  if (H.module.ngens() != 1 || !H.module.relations.empty()) return Homothety::NotCyclic;
  return H.preferred_kept[0] ? Homothety::Iso : Homothety::IdentityNotGenerator;
}

template <class K>
std::optional<int> ext_self_vanishing(const FPModule<K>& C, int bound) {
  for (int i = 1; i <= bound; ++i)
    if (!ext_vanishes(i, C, C)) return i;
  return std::nullopt;
}

template <class K>
SemidualizingReport is_semidualizing(const FPModule<K>& C, int bound) {
  bound = default_bound(*C.ring, bound);
  SemidualizingReport r;
  r.module_fingerprint = C.fingerprint();
  r.homothety = homothety_is_iso(C);
  if (r.homothety != Homothety::Iso) {
    r.verdict = SdVerdict::HomothetyFails;
    return r;
  }
  r.first_nonvanishing_ext = ext_self_vanishing(C, bound);
  r.ext_checked_to = r.first_nonvanishing_ext ? *r.first_nonvanishing_ext : bound;
  r.verdict = r.first_nonvanishing_ext ? SdVerdict::NotSemidualizing : SdVerdict::SemidualizingUpToBound;
  return r;
}

template <class K>
std::optional<int> ring_depth(const QRingPtr<K>& R) {
  return depth(FPModule<K>::free(R, {0}), R->dim());
}

template <class K>
DualizingReport is_dualizing(const FPModule<K>& C, int bound) {
  bound = default_bound(*C.ring, bound);
  DualizingReport r;
  r.bass = bass_numbers(C, bound);
  r.ring_depth = ring_depth(C.ring);
  if (!r.ring_depth || *r.ring_depth > bound) return r;
  for (int i = 0; i <= bound; ++i)
    if (r.bass[i] != (i == *r.ring_depth ? 1u : 0u)) return r;
  r.verdict = DualVerdict::DualizingUpToBound;
  return r;
}

template <class K>
ReflexivityReport totally_reflexive_wrt(const FPModule<K>& G, const FPModule<K>& C, int bound) {
  const PolyRing<K>& S = G.S();
  for (int i = 1; i <= bound; ++i)
    if (!ext_vanishes(i, G, C)) return {false, "ext(G,C) at " + std::to_string(i)};
  auto first = hom(G, C);
  const FPModule<K>& D = first.module;
  for (int i = 1; i <= bound; ++i)
    if (!ext_vanishes(i, D, C)) return {false, "ext(Hom(G,C),C) at " + std::to_string(i)};

  // evaluation at generator s of G, in the map encoding of Hom(D, C)
  const std::uint32_t a = first.source.ngens(), c = first.target.ngens();
  const auto b = static_cast<std::uint32_t>(first.maps.size());
  if (minimal_presentation(D).ngens() != b) throw AlgebraError("internal: Hom generators are not minimal");
  std::vector<Vec<K>> ev(a);
  for (std::uint32_t s = 0; s < a; ++s) {
    Vec<K> terms;
    for (std::uint32_t t = 0; t < b; ++t)
      for (const auto& term : first.maps[t])
        if (term.comp / c == s) terms.push_back({term.m, t * c + term.comp % c, term.c});
    ev[s] = vec_normalize(S, std::move(terms));
  }
  auto second = hom(D, C, ev);
  if (beta0(second.module) != a) return {false, "biduality: generator counts differ"};
  for (std::uint32_t s = 0; s < a; ++s)
    if (!second.preferred_kept[s]) return {false, "biduality not surjective"};
  if (!(hilbert_series(G) == hilbert_series(second.module))) return {false, "biduality: Hilbert series differ"};
  return {true, ""};
}

template <class K>
OrderAnswer reflexive_order_le(const FPModule<K>& C, const FPModule<K>& C2, int bound) {
  auto dr = ring_depth(C.ring);
  auto d2 = depth(C2, C.ring->dim());
  if (!dr || !d2 || *dr != *d2) return OrderAnswer::Undetermined;
  return totally_reflexive_wrt(C2, C, bound).holds ? OrderAnswer::True : OrderAnswer::False;
}

template <class K>
FPModule<K> base_change_tensor(const FPModule<K>& C, const QRingPtr<K>& target, const PolyVec<K>& ys) {
  check_regular_sequence(*C.ring, ys);
  if (!ys.empty() && tor_beta0(1, C, FPModule<K>::cyclic(C.ring, ys)) != 0)
    throw AlgebraError("Tor_1 does not vanish along the base change");
  return minimal_presentation(transport(C, target));
}

template <class K>
FPModule<K> hom_twist(const FPModule<K>& C, const QRingPtr<K>& extension) {
  const int base_vars = C.ring->nvars();
  const int q = extension->nvars() - base_vars;
  if (q < 1) throw AlgebraError("hom_twist: the extension adds no variables");
  transport(C, extension);  // checks that the variables extend
  FPModule<K> Cm = minimal_presentation(C);
  const PolyRing<K>& E = extension->ambient();
  const K& F = E.field();
  const auto w = static_cast<std::uint32_t>(q + 1);
  // generator g*w + k sends basis element k (1, z_1, ..., z_q) to generator g of C
  std::vector<int> degs;
  for (std::uint32_t g = 0; g < Cm.ngens(); ++g)
    for (std::uint32_t k = 0; k < w; ++k) degs.push_back(Cm.degrees[g] - (k == 0 ? 0 : 1));
  std::vector<Vec<K>> rels;
  for (const auto& col : Cm.relations)
    for (std::uint32_t k = 0; k < w; ++k) {
      Vec<K> v;
      for (const auto& t : col) v.push_back({t.m, t.comp * w + k, t.c});
      rels.push_back(vec_normalize(E, std::move(v)));
    }
  for (std::uint32_t g = 0; g < Cm.ngens(); ++g)
    for (std::uint32_t i = 1; i < w; ++i) {
      const Monomial z = Polynomial<K>::variable(&E, base_vars + static_cast<int>(i) - 1).terms()[0].m;
      for (std::uint32_t k = 0; k < w; ++k) {
        Vec<K> v{{z, g * w + k, F.one()}};
        if (k == i) v.push_back({Monomial(), g * w, F.neg(F.one())});
        rels.push_back(vec_normalize(E, std::move(v)));
      }
    }
  return minimal_presentation(FPModule<K>::make(extension, std::move(degs), std::move(rels)));
}

template <class K>
FPModule<K> ext_twist_finite(const FPModule<K>& C, const QRingPtr<K>& quotient, const PolyVec<K>& ys, int m) {
  const int q = static_cast<int>(ys.size());
  auto X = ext(q, FPModule<K>::cyclic(C.ring, power_generators(ys, m)), C);
  return minimal_presentation(transport(X, quotient));
}

#define CANONICA_INSTANTIATE(K)                                                                                 \
  template Homothety homothety_is_iso(const FPModule<K>&);                                                      \
  template std::optional<int> ext_self_vanishing(const FPModule<K>&, int);                                      \
  template SemidualizingReport is_semidualizing(const FPModule<K>&, int);                                       \
  template std::optional<int> ring_depth(const QRingPtr<K>&);                                                   \
  template DualizingReport is_dualizing(const FPModule<K>&, int);                                               \
  template ReflexivityReport totally_reflexive_wrt(const FPModule<K>&, const FPModule<K>&, int);                \
  template OrderAnswer reflexive_order_le(const FPModule<K>&, const FPModule<K>&, int);                         \
  template FPModule<K> base_change_tensor(const FPModule<K>&, const QRingPtr<K>&, const PolyVec<K>&);          \
  template FPModule<K> hom_twist(const FPModule<K>&, const QRingPtr<K>&);                                       \
  template FPModule<K> ext_twist_finite(const FPModule<K>&, const QRingPtr<K>&, const PolyVec<K>&, int);

CANONICA_INSTANTIATE(PrimeField)
CANONICA_INSTANTIATE(RationalField)

}  // namespace canonica
