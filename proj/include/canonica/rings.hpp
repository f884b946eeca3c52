#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canonica/homalg.hpp"

namespace canonica {

/// Thrown when parameters are out of range (CLI exit code 3).
class ParameterError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

/// A sequence element is a zerodivisor modulo the earlier ones.
class RegularityFailure : public AlgebraError {
 public:
  RegularityFailure(int index, const std::string& element)
      : AlgebraError("REGULARITY_FAILURE(" + std::to_string(index) + "): " + element), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

/// All t x t minors, rows and columns chosen in lexicographic order.
template <class K>
PolyVec<K> minors_ideal(const std::vector<std::vector<Polynomial<K>>>& matrix, int t);

/// k[X] / I_{r+1}(X) for a generic m x n matrix X.
template <class K>
struct DetRing {
  int m = 0, n = 0, r = 0;
  /// Set when the requested shape had m < n; the stored shape has m >= n.
  bool transposed = false;
  QRingPtr<K> ring;
  /// Matrix of variables (empty when r = 0).
  std::vector<std::vector<Polynomial<K>>> matrix;
  /// r-minors of the first r rows / columns.
  PolyVec<K> row_ideal, column_ideal;
  int dim = 0;
  int grade = 0;
  /// m - n: the canonical module is the row ideal to this power.
  int canonical_exponent = 0;
  bool gorenstein = false;
  /// r = 0: the minors of size one kill every variable and the ring is the field.
  bool degenerate = false;
};

template <class K>
DetRing<K> build_det_ring(const K& field, int m, int n, int r);

/// B[z_first, ..., z_{first+q-1}] / (B's relations + (z)^2).
template <class K>
QRingPtr<K> build_trivial_extension(const QuotientRing<K>& B, int q, int first_index = 1);

/// A / (R_0 + (ys)) with every y checked to be regular modulo the earlier ones.
template <class K>
QRingPtr<K> quotient_by_regular_sequence(const QuotientRing<K>& A, const PolyVec<K>& ys);

/// Throws RegularityFailure unless ys is a regular sequence on A.
template <class K>
void check_regular_sequence(const QuotientRing<K>& A, const PolyVec<K>& ys);

/// A / (ys)^m after checking that ys is A-regular.
template <class K>
QRingPtr<K> build_power_quotient(const QuotientRing<K>& A, const PolyVec<K>& ys, int m);

/// Products of m elements of ys (the generators of (ys)^m).
template <class K>
PolyVec<K> power_generators(const PolyVec<K>& ys, int m);

/// The same module presented over a ring whose ambient extends M's ambient
/// by appended variables (or equals it): M ⊗ target for surjections and
/// polynomial extensions.
template <class K>
FPModule<K> transport(const FPModule<K>& M, const QRingPtr<K>& target);

/// Polynomial f rewritten over a ring whose variables extend f's.
template <class K>
Polynomial<K> lift_polynomial(const Polynomial<K>& f, const PolyRing<K>* target);

struct ChainStep {
  enum class Kind { Det, Trivial, PowerQuotient };
  Kind kind = Kind::Trivial;
  int m = 0, n = 0, r = 0;        // Det
  int q = 0;                      // Trivial
  std::vector<std::string> sequence;  // PowerQuotient (polynomial strings)
  int exponent = 1;               // PowerQuotient
};

struct ChainSpec {
  std::vector<ChainStep> steps;
};

/// One built step and the branch maps it contributes.
template <class K>
struct ChainLevel {
  ChainStep step;
  QRingPtr<K> ring;
  /// True when the step doubles the semidualizing classes.
  bool doubles = false;
  std::string branch;  // "det", "tensor/hom-twist", "tensor/ext-twist"
  PolyVec<K> sequence; // PowerQuotient: the regular sequence in the previous ring
  int first_new_var = 0;
  int new_vars = 0;
  DetRing<K> det;      // Det
};

template <class K>
struct Chain {
  QRingPtr<K> base;
  std::vector<ChainLevel<K>> levels;
  int predicted_cardinality = 1;
  const QRingPtr<K>& ring() const { return levels.empty() ? base : levels.back().ring; }
};

/// Builds the chain; a power-quotient step over the field base adjoins the
/// variables named in its sequence.
template <class K>
Chain<K> build_chain(const K& field, const ChainSpec& spec);

/// Ext^{grade}_S(R, S) over the ambient polynomial ring S, as an R-module.
template <class K>
FPModule<K> ext_twist_dagger(const DetRing<K>& det);

/// k-dimension of an Artinian ring (throws for dim > 0).
template <class K>
long long artinian_length(const QRingPtr<K>& R);

}  // namespace canonica
