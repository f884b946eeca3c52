#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "canonica/quotient_ring.hpp"

namespace canonica {

/// Finitely presented graded module: coker(R^relations -> R^generators).
template <class K>
struct FPModule {
  QRingPtr<K> ring;
  std::vector<int> degrees;
  /// Relation columns as vectors in R^{ngens()}, reduced modulo the ring.
  std::vector<Vec<K>> relations;

  std::uint32_t ngens() const { return static_cast<std::uint32_t>(degrees.size()); }
  const PolyRing<K>& S() const { return ring->ambient(); }

  /// Reduces relations modulo the ring, drops zero columns and checks that
  /// every column is homogeneous.
  static FPModule make(QRingPtr<K> ring, std::vector<int> degrees, std::vector<Vec<K>> relations);
  static FPModule free(QRingPtr<K> ring, std::vector<int> degrees);
  /// R / J on one generator of degree 0.
  static FPModule cyclic(QRingPtr<K> ring, const PolyVec<K>& ideal);
  /// The ideal J as a module, presented on its minimal generators.
  static FPModule from_ideal(QRingPtr<K> ring, const PolyVec<K>& ideal);
  /// The residue field R / (x_1, ..., x_n).
  static FPModule residue_field(QRingPtr<K> ring);

  std::uint64_t fingerprint() const;
  std::vector<int> relation_degrees() const;
  std::string to_string() const;
};

template <class K>
struct FreeResolution {
  /// degrees[i]: generator degrees of F_i.
  std::vector<std::vector<int>> degrees;
  /// maps[i]: columns of F_i -> F_{i-1} for i >= 1; maps[0] is empty.
  std::vector<std::vector<Vec<K>>> maps;
  bool complete = false;

  int length() const { return static_cast<int>(degrees.size()) - 1; }
  std::vector<std::size_t> betti() const;
};

/// H(t) = t^low * (numerator) / (1 - t)^pole_order with numerator(1) != 0.
struct HilbertSeries {
  int low = 0;
  std::vector<long long> numerator;
  int pole_order = 0;

  bool is_zero() const { return numerator.empty(); }
  long long multiplicity() const;
  /// dim_k of the degree-d piece.
  long long coefficient(int d) const;
  std::string to_string() const;
  bool operator==(const HilbertSeries& o) const {
    return low == o.low && numerator == o.numerator && pole_order == o.pole_order;
  }
  /// Builds and reduces sum_i c_i t^{low+i} / (1-t)^n.
  static HilbertSeries from_raw(int low, std::vector<long long> coeffs, int n);
};

// ---------------------------------------------------------------------------
// Syzygies and generators

/// Minimal generators of the syzygy module of `vectors` (elements of R^rank
/// with generator degrees `shifts`).  Syzygies live in R^{vectors.size()}.
template <class K>
std::vector<Vec<K>> syzygy_module(const QuotientRing<K>& R, const std::vector<Vec<K>>& vectors, std::uint32_t rank,
                                  const std::vector<int>& shifts);

/// Syzygies without the minimalization pass.
template <class K>
std::vector<Vec<K>> syzygies_raw(const QuotientRing<K>& R, const std::vector<Vec<K>>& vectors, std::uint32_t rank,
                                 const std::vector<int>& shifts, bool use_criteria = true);

/// Indices of `counted` that minimally generate (counted + base + families)
/// modulo (base + families).  Input must be homogeneous.
template <class K>
std::vector<std::size_t> minimal_generator_indices(const QuotientRing<K>& R, std::uint32_t rank,
                                                   const std::vector<int>& shifts,
                                                   const std::vector<Family<K>>& extra_families,
                                                   const std::vector<Vec<K>>& base,
                                                   const std::vector<Vec<K>>& counted);

/// Reduced Gröbner basis of the column span of a module's relations (over R).
template <class K>
Family<K> relation_family(const FPModule<K>& N, std::uint32_t nblocks, std::uint32_t first = 0);

// ---------------------------------------------------------------------------
// Module operations

template <class K>
FPModule<K> minimal_presentation(const FPModule<K>& M);

/// Keeps the generators and replaces the relations by a minimal generating set.
template <class K>
FPModule<K> minimize_relations(const FPModule<K>& M);

template <class K>
std::size_t beta0(const FPModule<K>& M);

template <class K>
bool is_zero_module(const FPModule<K>& M);

/// Minimal graded free resolution to homological degree L (cached per ring).
template <class K>
FreeResolution<K> free_resolution(const FPModule<K>& M, int L);

template <class K>
struct HomResult {
  FPModule<K> module;
  /// Generator i as a map: a vector in R^{a*c}, component s*c + l holding
  /// the l-th coordinate of the image of source generator s.
  std::vector<Vec<K>> maps;
  /// Presentations used for the source and target.
  FPModule<K> source;
  FPModule<K> target;
  /// preferred_kept[i]: preferred vector i is one of the minimal generators.
  std::vector<bool> preferred_kept;
};

/// Hom_R(M, N).  `preferred` vectors (elements of the kernel, in the map
/// encoding above for the minimal presentation of M) are offered first as
/// generators within their degree.
template <class K>
HomResult<K> hom(const FPModule<K>& M, const FPModule<K>& N, const std::vector<Vec<K>>& preferred = {});

template <class K>
FPModule<K> tensor(const FPModule<K>& M, const FPModule<K>& N);

template <class K>
FPModule<K> ext(int i, const FPModule<K>& M, const FPModule<K>& N);

template <class K>
bool ext_vanishes(int i, const FPModule<K>& M, const FPModule<K>& N);

/// Minimal number of generators of Ext^i(M, N).
template <class K>
std::size_t ext_beta0(int i, const FPModule<K>& M, const FPModule<K>& N);

template <class K>
FPModule<K> tor(int i, const FPModule<K>& M, const FPModule<K>& N);

template <class K>
std::size_t tor_beta0(int i, const FPModule<K>& M, const FPModule<K>& N);

/// Rank over the fraction field of R (R must be a domain).
template <class K>
int module_rank(const FPModule<K>& M);

/// Largest t with a nonzero t x t minor modulo the ring (exhaustive search).
template <class K>
int generic_rank_by_minors(const QuotientRing<K>& R, const std::vector<Vec<K>>& columns, std::uint32_t rows);

/// Least i <= bound with Ext^i(k, M) != 0.
template <class K>
std::optional<int> depth(const FPModule<K>& M, int bound);

template <class K>
std::vector<std::size_t> bass_numbers(const FPModule<K>& M, int i_max);

/// Hilbert series from a finite free resolution over the ambient polynomial ring.
template <class K>
HilbertSeries hilbert_series(const FPModule<K>& M);

/// Hilbert series from the leading terms of the relation module.
template <class K>
HilbertSeries hilbert_series_by_leading_terms(const FPModule<K>& M);

/// Numerator of the Hilbert series of S / (monomials) over (1 - t)^nvars.
std::vector<long long> monomial_hilbert_numerator(int nvars, std::vector<Monomial> gens);

template <class K>
long long multiplicity(const FPModule<K>& M);

}  // namespace canonica
