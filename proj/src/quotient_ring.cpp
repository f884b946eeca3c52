#include "canonica/quotient_ring.hpp"

#include <bit>

namespace canonica {

namespace {

struct StaircaseSearch {
  int n;
  std::vector<std::uint32_t> supports;
  int best = -1;
  std::uint32_t best_set = 0;

  bool admissible(std::uint32_t U) const {
    for (auto s : supports)
      if ((s & ~U) == 0) return false;
    return true;
  }
  void run(int i, std::uint32_t U) {
    int size = std::popcount(U);
    if (size + (n - i) <= best) return;
    if (i == n) {
      best = size;
      best_set = U;
      return;
    }
    std::uint32_t with = U | (1u << i);
    if (admissible(with)) run(i + 1, with);
    run(i + 1, U);
  }
};

}  // namespace

int staircase_dimension(int nvars, const std::vector<Monomial>& leads, std::vector<int>* independent) {
  StaircaseSearch s{nvars, {}};
  for (const auto& m : leads) {
    std::uint32_t sup = 0;
    for (int i = 0; i < nvars; ++i)
      if (m.exponent(i)) sup |= 1u << i;
    if (sup == 0) return -1;
    s.supports.push_back(sup);
  }
  s.run(0, 0);
  if (independent) {
    independent->clear();
    for (int i = 0; i < nvars; ++i)
      if (s.best_set & (1u << i)) independent->push_back(i);
  }
  return s.best;
}

template <class K>
QuotientRing<K>::QuotientRing(PolyRingPtr<K> ambient, PolyVec<K> relations, std::string label)
    : ambient_(std::move(ambient)), label_(std::move(label)) {
  for (auto& r : relations) {
    if (r.is_zero()) continue;
    if (r.ring() != ambient_.get()) throw AlgebraError("relation from a different ring");
    if (!r.is_homogeneous()) throw AlgebraError("defining ideal must be homogeneous: " + r.to_string());
    relations_.push_back(std::move(r));
  }
  gb_ = groebner_basis(*ambient_, relations_);
  for (const auto& g : gb_)
    if (g.is_constant()) throw AlgebraError("defining ideal is the unit ideal");
  std::vector<Monomial> leads;
  for (const auto& g : gb_) leads.push_back(g.lead_monomial());
  dim_ = staircase_dimension(nvars(), leads, &independent_);
}

template <class K>
PolyVec<K> QuotientRing<K>::maximal_ideal() const {
  PolyVec<K> m;
  for (int i = 0; i < nvars(); ++i) m.push_back(var(i));
  return m;
}

template class QuotientRing<PrimeField>;
template class QuotientRing<RationalField>;

}  // namespace canonica
