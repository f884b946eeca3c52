#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "canonica/divisor.hpp"
#include "canonica/semidualizing.hpp"

namespace canonica {

/// A verifier that does not apply to the given ring (CLI exit code 5).
class Inapplicable : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

enum class ClassVerdict { MatchesTheorem, Mismatch, Partial };
const char* to_string(ClassVerdict v);

struct CandidateResult {
  /// Class label for determinantal scans, branch path for chains.
  std::string label;
  std::optional<int> class_label;
  SemidualizingReport report;
  std::size_t beta0 = 0;
  HilbertSeries hilbert;
  long long multiplicity = 0;
};

struct ClassificationReport {
  std::string ring;
  int scan_bound = 0;
  int ext_bound = 0;
  std::vector<int> predicted_classes;
  std::vector<int> found_classes;
  int predicted_cardinality = 0;
  int found_cardinality = 0;
  /// Ordered by label (scan order -S..S for determinantal rings).
  std::vector<CandidateResult> candidates;
  /// "EXHAUSTIVE_WITHIN_WINDOW" or "THEOREM_ASSERTED".
  std::string upper_bound;
  std::vector<std::string> notes;
  ClassVerdict verdict = ClassVerdict::Partial;
};

/// Runs fn(i) for 0 <= i < n on up to `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Scans power_ideal(det, c) for |c| <= scan_bound.  ext_bound < 0 means dim R + 1.
template <class K>
ClassificationReport enumerate_semidualizing_det(const DetRing<K>& det, int scan_bound, int ext_bound, int threads = 1);

/// Builds the candidates obtained by choosing a branch at every doubling step.
template <class K>
ClassificationReport verify_chain_cardinality(const Chain<K>& chain, int ext_bound, int threads = 1);

/// The candidate modules of a chain together with their branch paths.
template <class K>
std::vector<std::pair<std::string, FPModule<K>>> chain_candidates(const Chain<K>& chain);

/// One named check inside a suite.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  bool passed() const;
};

struct Beta0Table {
  std::vector<std::size_t> row_side, column_side;
  /// Monomial counts; empty when no closed form applies (r != 1).
  std::vector<std::size_t> row_expected, column_expected;
  bool matches = false;
};

/// beta0 of the row ideal powers v = 0..v_max and column ideal powers v = 0..w_max.
template <class K>
Beta0Table beta0_table(const DetRing<K>& det, int v_max, int w_max);

struct Eq07Row {
  int u = 0, v = 0;
  std::size_t bu = 0, bv = 0, buv = 0;
  bool holds = false;
};

/// beta0(p^u) beta0(p^v) > beta0(p^{u+v}) > beta0(p^v) for 1 <= u <= u_max, 1 <= v <= v_max.
template <class K>
std::vector<Eq07Row> verify_eq07(const DetRing<K>& det, int u_max, int v_max);

struct HomShift {
  int module_class = 0, fractional_class = 0;
  bool beta0_match = false, hilbert_match = false;
  bool holds = false;
};

/// Hom(p^u, p^v) against p^v : p^u; both should land in class v - u.
template <class K>
HomShift verify_hom_power_shift(const DetRing<K>& det, int u, int v, int scan_bound);

struct MultMap {
  bool iso = false;
  std::size_t kernel_generators = 0;
  std::string witness;
};

/// Kernel of a ⊗ b -> ab.
template <class K>
MultMap verify_mult_map(const FractionalIdeal<K>& a, const FractionalIdeal<K>& b);

/// Height-one and Ext checks for the canonical ideal (non-Gorenstein rings).
template <class K>
SuiteReport verify_prop_semidualizing_ideal(const DetRing<K>& det, int bound);

template <class K>
SuiteReport verify_multiplicity_equality(const QRingPtr<K>& R,
                                         const std::vector<std::pair<std::string, FPModule<K>>>& candidates);

/// Suites for determinantal rings: beta0, eq07, prop22, multmap, multiplicity, ordering, dagger.
template <class K>
SuiteReport run_det_suite(const std::string& suite, const DetRing<K>& det, int scan_bound, int ext_bound);

/// Suites for chains: multiplicity only; others throw Inapplicable.
template <class K>
SuiteReport run_chain_suite(const std::string& suite, const Chain<K>& chain, int ext_bound);

const std::vector<std::string>& suite_names();

}  // namespace canonica
