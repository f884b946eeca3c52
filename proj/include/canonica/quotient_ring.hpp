#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "canonica/ideal.hpp"

namespace canonica {

/// R = S / I for a homogeneous ideal I of a polynomial ring S.
template <class K>
class QuotientRing {
 public:
  QuotientRing(PolyRingPtr<K> ambient, PolyVec<K> relations, std::string label = "");

  const PolyRingPtr<K>& ambient_ptr() const { return ambient_; }
  const PolyRing<K>& ambient() const { return *ambient_; }
  const PolyRing<K>* S() const { return ambient_.get(); }
  const K& field() const { return ambient_->field(); }
  int nvars() const { return ambient_->nvars(); }
  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }

  const PolyVec<K>& relations() const { return relations_; }
  /// Reduced Gröbner basis of I.
  const PolyVec<K>& gb() const { return gb_; }
  /// I as an implicit reducer family over a free module of the given rank.
  Family<K> family(std::uint32_t rank) const { return scalar_family(gb_, rank); }

  Polynomial<K> reduce(const Polynomial<K>& f) const { return normal_form(f, gb_); }
  bool is_zero(const Polynomial<K>& f) const { return reduce(f).is_zero(); }
  Polynomial<K> one() const { return Polynomial<K>::constant(S(), field().one()); }
  Polynomial<K> var(int i) const { return Polynomial<K>::variable(S(), i); }

  /// Krull dimension from the staircase of the leading-term ideal.
  int dim() const { return dim_; }
  /// A maximal set of variables independent modulo the leading-term ideal.
  const std::vector<int>& independent_set() const { return independent_; }
  bool is_polynomial_ring() const { return gb_.empty(); }

  // Ideals of R, represented by lifts to S.  Results are Gröbner bases
  // modulo I (reduced, with I's basis left implicit).
  PolyVec<K> ideal_gb(const PolyVec<K>& gens) const { return groebner_basis(*ambient_, gens, &gb_); }
  bool ideal_contains(const PolyVec<K>& ideal_gb_, const Polynomial<K>& f) const {
    return normal_form(f, ideal_gb_, &gb_).is_zero();
  }
  bool ideals_equal(const PolyVec<K>& a, const PolyVec<K>& b) const { return ideal_gb(a) == ideal_gb(b); }
  PolyVec<K> colon(const PolyVec<K>& a, const PolyVec<K>& b) const { return canonica::colon(*ambient_, a, b, &gb_); }
  PolyVec<K> intersect(const PolyVec<K>& a, const PolyVec<K>& b) const {
    return canonica::intersect(*ambient_, a, b, &gb_);
  }
  PolyVec<K> maximal_ideal() const;

  /// Per-ring memo table for derived objects (free resolutions).
  template <class T>
  std::shared_ptr<T> memo(std::uint64_t key, std::size_t slot) const;
  template <class T>
  void memo_store(std::uint64_t key, std::size_t slot, std::shared_ptr<T> value) const;

 private:
  PolyRingPtr<K> ambient_;
  PolyVec<K> relations_;
  PolyVec<K> gb_;
  std::string label_;
  int dim_ = 0;
  std::vector<int> independent_;

  mutable std::mutex memo_mu_;
  mutable std::map<std::pair<std::uint64_t, std::size_t>, std::shared_ptr<void>> memo_;
};

template <class K>
using QRingPtr = std::shared_ptr<const QuotientRing<K>>;

/// Krull dimension of S / (monomials) as the largest set of variables
/// containing the support of no given monomial.
int staircase_dimension(int nvars, const std::vector<Monomial>& leads, std::vector<int>* independent = nullptr);

template <class K>
template <class T>
std::shared_ptr<T> QuotientRing<K>::memo(std::uint64_t key, std::size_t slot) const {
  std::lock_guard<std::mutex> lock(memo_mu_);
  auto it = memo_.find({key, slot});
  if (it == memo_.end()) return nullptr;
  return std::static_pointer_cast<T>(it->second);
}

template <class K>
template <class T>
void QuotientRing<K>::memo_store(std::uint64_t key, std::size_t slot, std::shared_ptr<T> value) const {
  std::lock_guard<std::mutex> lock(memo_mu_);
  memo_.insert_or_assign(std::make_pair(key, slot), std::static_pointer_cast<void>(std::move(value)));
}

}  // namespace canonica
