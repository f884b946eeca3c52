#include "canonica/divisor.hpp"

#include <algorithm>
#include <sstream>

namespace canonica {

namespace {

template <class K>
PolyVec<K> minimal_ideal_generators(const QuotientRing<K>& R, const PolyVec<K>& gens) {
  std::vector<Vec<K>> vs;
  PolyVec<K> polys;
  for (const auto& g : gens) {
    auto r = R.reduce(g);
    if (r.is_zero()) continue;
    if (!r.is_homogeneous()) throw AlgebraError("fractional ideals must be homogeneous: " + g.to_string());
    vs.push_back(vec_from_column(PolyVec<K>{r}));
    polys.push_back(std::move(r));
  }
  // lower degrees first so the kept generators are as small as possible
  std::vector<std::size_t> order(polys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return polys[a].degree() < polys[b].degree(); });
  std::vector<Vec<K>> sorted;
  for (auto i : order) sorted.push_back(vs[i]);
  PolyVec<K> out;
  for (auto k : minimal_generator_indices(R, 1, {0}, {}, {}, sorted)) out.push_back(polys[order[k]].monic());
  return out;
}

template <class K>
PolyVec<K> products(const PolyVec<K>& a, const PolyVec<K>& b) {
  PolyVec<K> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

template <class K>
bool ideal_within(const QuotientRing<K>& R, const PolyVec<K>& a, const PolyVec<K>& b) {
  auto gb = R.ideal_gb(b);
  for (const auto& x : a)
    if (!R.ideal_contains(gb, x)) return false;
  return true;
}

/// Cancels denominator factors that divide the whole numerator.
template <class K>
void simplify(FractionalIdeal<K>& a) {
  const QuotientRing<K>& R = *a.ring;
  PolyVec<K> kept;
  for (auto& d : a.denominator_factors) {
    if (d.is_constant()) continue;
    if (ideal_within(R, a.numerator, PolyVec<K>{d})) {
      a.numerator = minimal_ideal_generators(R, R.colon(a.numerator, {d}));
    } else {
      kept.push_back(d.monic());
    }
  }
  a.denominator_factors = std::move(kept);
}

}  // namespace

template <class K>
Polynomial<K> FractionalIdeal<K>::denominator() const {
  Polynomial<K> d = ring->one();
  for (const auto& f : denominator_factors) d = d * f;
  return d;
}

template <class K>
int FractionalIdeal<K>::denominator_degree() const {
  int d = 0;
  for (const auto& f : denominator_factors) d += f.degree();
  return d;
}

template <class K>
std::string FractionalIdeal<K>::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < numerator.size(); ++i) os << (i ? ", " : "") << numerator[i].to_string();
  os << ")";
  if (!denominator_factors.empty()) os << " / (" << denominator().to_string() << ")";
  return os.str();
}

template <class K>
FractionalIdeal<K> make_fractional(QRingPtr<K> ring, const PolyVec<K>& gens, PolyVec<K> denominator) {
  FractionalIdeal<K> a;
  a.ring = ring;
  a.numerator = minimal_ideal_generators(*ring, gens);
  if (a.numerator.empty()) throw AlgebraError("fractional ideal must be nonzero");
  for (auto& d : denominator) {
    if (ring->is_zero(d)) throw AlgebraError("zero denominator");
    if (!d.is_homogeneous()) throw AlgebraError("denominator must be homogeneous");
    a.denominator_factors.push_back(std::move(d));
  }
  simplify(a);
  return a;
}

template <class K>
FractionalIdeal<K> frac_mul(const FractionalIdeal<K>& a, const FractionalIdeal<K>& b) {
  PolyVec<K> den = a.denominator_factors;
  den.insert(den.end(), b.denominator_factors.begin(), b.denominator_factors.end());
  return make_fractional(a.ring, products(a.numerator, b.numerator), std::move(den));
}

template <class K>
FractionalIdeal<K> frac_colon(const FractionalIdeal<K>& a, const FractionalIdeal<K>& b) {
  // x b ⊆ a  <=>  x D_a N_b ⊆ D_b N_a; with y = x D_a n for a fixed n in N_b:
  // y ∈ (n D_b N_a : N_b) and x = y / (D_a n).
  const QuotientRing<K>& R = *a.ring;
  const Polynomial<K>& n = b.numerator.front();
  PolyVec<K> lhs = a.numerator;
  for (auto& g : lhs) g = g * n * b.denominator();
  PolyVec<K> den = a.denominator_factors;
  den.push_back(n);
  auto out = make_fractional(a.ring, R.colon(lhs, b.numerator), std::move(den));
  out.canonical = a.canonical;  // a :_Q b is divisorial when a is
  return out;
}

template <class K>
FractionalIdeal<K> divisorial_hull(const FractionalIdeal<K>& a) {
  if (a.canonical) return a;
  FractionalIdeal<K> unit = make_fractional(a.ring, PolyVec<K>{a.ring->one()});
  unit.canonical = true;
  auto h = frac_colon(unit, frac_colon(unit, a));
  h.canonical = true;
  return h;
}

template <class K>
bool frac_equal(const FractionalIdeal<K>& a, const FractionalIdeal<K>& b) {
  auto x = products(a.numerator, PolyVec<K>{b.denominator()});
  auto y = products(b.numerator, PolyVec<K>{a.denominator()});
  return a.ring->ideals_equal(x, y);
}

template <class K>
Principal<K> is_principal(const FractionalIdeal<K>& a) {
  FractionalIdeal<K> h = divisorial_hull(a);
  Principal<K> p;
  if (h.numerator.size() != 1) return p;
  p.principal = true;
  p.numerator = h.numerator.front();
  p.denominator_factors = h.denominator_factors;
  return p;
}

template <class K>
bool ideals_isomorphic(const FractionalIdeal<K>& a, const FractionalIdeal<K>& b) {
  FractionalIdeal<K> ha = divisorial_hull(a), hb = divisorial_hull(b);
  if (ha.numerator.size() != hb.numerator.size()) return false;
  auto p = is_principal(frac_colon(ha, hb));
  if (!p.principal) return false;
  PolyVec<K> den = p.denominator_factors;
  den.insert(den.end(), hb.denominator_factors.begin(), hb.denominator_factors.end());
  auto image = make_fractional(a.ring, products(PolyVec<K>{p.numerator}, hb.numerator), std::move(den));
  return frac_equal(divisorial_hull(image), ha);
}

template <class K>
FractionalIdeal<K> embed_as_ideal(const FPModule<K>& M) {
  if (module_rank(M) != 1) throw AlgebraError("embedding needs a module of rank one");
  auto H = hom(M, FPModule<K>::free(M.ring, {0}));
  if (H.maps.empty()) throw AlgebraError("internal: Hom(M, R) vanishes for a rank-one module");
  const std::uint32_t a = H.source.ngens();
  PolyVec<K> images;
  for (std::uint32_t s = 0; s < a; ++s) images.push_back(vec_component(M.ring->S(), H.maps[0], s));
  return make_fractional(M.ring, images);
}

template <class K>
FractionalIdeal<K> power_ideal(const DetRing<K>& det, int c) {
  const PolyVec<K>& base = c >= 0 ? det.row_ideal : det.column_ideal;
  const int e = c >= 0 ? c : -c;
  PolyVec<K> gens = e == 0 ? PolyVec<K>{det.ring->one()} : power_generators(base, e);
  auto a = make_fractional(det.ring, gens);
  a.canonical = true;  // symbolic and ordinary powers agree
  return a;
}

template <class K>
int class_of(const FractionalIdeal<K>& a, const DetRing<K>& det, int scan_bound) {
  const auto h = divisorial_hull(a);
  for (int k = 0; k <= 2 * scan_bound; ++k) {
    const int c = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
    auto p = power_ideal(det, c);
    if (p.numerator.size() != h.numerator.size()) continue;
    if (ideals_isomorphic(h, p)) return c;
  }
  throw ClassNotFound("NOT_FOUND_WITHIN_BOUND: no class with |c| <= " + std::to_string(scan_bound));
}

template <class K>
FPModule<K> fractional_module(const FractionalIdeal<K>& a) {
  auto M = FPModule<K>::from_ideal(a.ring, a.numerator);
  const int shift = a.denominator_degree();
  for (auto& d : M.degrees) d -= shift;
  return M;
}

#define CANONICA_INSTANTIATE(K)                                                                                    \
  template struct FractionalIdeal<K>;                                                                              \
  template FractionalIdeal<K> make_fractional(QRingPtr<K>, const PolyVec<K>&, PolyVec<K>);                         \
  template FractionalIdeal<K> frac_mul(const FractionalIdeal<K>&, const FractionalIdeal<K>&);                      \
  template FractionalIdeal<K> frac_colon(const FractionalIdeal<K>&, const FractionalIdeal<K>&);                    \
  template FractionalIdeal<K> divisorial_hull(const FractionalIdeal<K>&);                                          \
  template bool frac_equal(const FractionalIdeal<K>&, const FractionalIdeal<K>&);                                  \
  template Principal<K> is_principal(const FractionalIdeal<K>&);                                                   \
  template bool ideals_isomorphic(const FractionalIdeal<K>&, const FractionalIdeal<K>&);                           \
  template FractionalIdeal<K> embed_as_ideal(const FPModule<K>&);                                                  \
  template FractionalIdeal<K> power_ideal(const DetRing<K>&, int);                                                 \
  template int class_of(const FractionalIdeal<K>&, const DetRing<K>&, int);                                        \
  template FPModule<K> fractional_module(const FractionalIdeal<K>&);

CANONICA_INSTANTIATE(PrimeField)
CANONICA_INSTANTIATE(RationalField)

}  // namespace canonica
