#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "canonica/module.hpp"

namespace canonica {

/// A Gröbner basis living in components [0, width) that is used as a set of
/// implicit reducers, replicated at components first + b*width for every block
/// b < nblocks.  `scalar` marks a width-1 family of polynomials replicated over
/// every component (the defining ideal of a quotient ring); only such
/// families admit the coprime-leading-term criterion against module vectors.
///
/// All families handed to one computation must together form a Gröbner basis
/// of the submodule they generate.
template <class K>
struct Family {
  std::vector<Vec<K>> gb;
  std::uint32_t width = 1;
  std::uint32_t first = 0;
  std::uint32_t nblocks = 0;
  bool scalar = false;
};

template <class K>
Family<K> scalar_family(const std::vector<Polynomial<K>>& gb, std::uint32_t rank);

/// Lazily materialized reducer set: explicit vectors plus replicated families.
template <class K>
class Reducer {
 public:
  struct Elem {
    Vec<K> v;
    Vec<K> track;
    int sugar = 0;
    bool is_virtual = false;
    bool scalar = false;
    Monomial lm;
    std::uint32_t comp = 0;
    std::uint64_t mask = 0;
  };

  Reducer(const PolyRing<K>& R, std::vector<Family<K>> families, std::uint32_t rank, std::vector<int> shifts = {});

  /// Adds a nonzero vector; it is scaled to be monic (track scaled alike).
  int add(Vec<K> v, Vec<K> track = {}, int sugar = 0);

  /// Index of an element whose leading term divides m*e_comp, or -1.
  int find(std::uint32_t comp, const Monomial& m);

  /// Reduces v in place.  With `full` the tail is reduced too.  When `track`
  /// is non-null it is updated alongside with the reducers' tracks.
  void reduce(Vec<K>& v, bool full, Vec<K>* track = nullptr, int* sugar = nullptr);

  /// Makes sure all family blocks touching `comp` exist.
  void materialize(std::uint32_t comp);

  const std::vector<int>& at_comp(std::uint32_t comp) {
    materialize(comp);
    return by_comp_[comp];
  }
  Elem& elem(int i) { return elems_[i]; }
  const Elem& elem(int i) const { return elems_[i]; }
  int size() const { return static_cast<int>(elems_.size()); }
  std::uint32_t rank() const { return rank_; }
  const PolyRing<K>& ring() const { return R_; }
  const std::vector<int>& shifts() const { return shifts_; }
  std::uint64_t reduction_steps() const { return steps_; }

 private:
  int push(Vec<K> v, Vec<K> track, int sugar, bool is_virtual, bool scalar);

  const PolyRing<K>& R_;
  std::vector<Family<K>> families_;
  std::vector<std::vector<char>> done_;
  std::uint32_t rank_;
  std::vector<int> shifts_;
  std::deque<Elem> elems_;
  std::vector<std::vector<int>> by_comp_;
  std::uint64_t steps_ = 0;
};

std::uint64_t divisibility_mask(const Monomial& m);

enum class InputKind { Base, Counted };

template <class K>
struct EngineInput {
  Vec<K> v;
  Vec<K> track;
  InputKind kind = InputKind::Counted;
};

template <class K>
struct EngineConfig {
  const PolyRing<K>* ring = nullptr;
  std::uint32_t rank = 1;
  std::vector<int> shifts;
  std::vector<Family<K>> families;
  /// Carry tracking vectors; syzygies are the tracks of zero reductions.
  bool tracking = false;
  bool collect_syzygies = false;
  std::uint32_t track_rank = 0;
  std::vector<Family<K>> track_families;
  /// Keep reduced tracks of the final basis.
  bool keep_gb_tracks = false;
  /// Disables the pair criteria (used by test oracles).
  bool use_criteria = true;
  bool tail_reduce = true;
  bool interreduce_output = true;
};

template <class K>
struct EngineResult {
  std::vector<Vec<K>> gb;
  std::vector<Vec<K>> gb_tracks;
  std::vector<Vec<K>> syzygies;
  /// Per input: true when it did not reduce to zero on arrival.  For
  /// homogeneous input the kept counted inputs are minimal generators modulo
  /// the base inputs and the families.
  std::vector<bool> kept;
  std::uint64_t pairs_processed = 0;
  std::uint64_t pairs_skipped = 0;
  std::uint64_t reduction_steps = 0;
};

/// Buchberger with sugar selection and Gebauer–Möller pair elimination over
/// position-over-term vectors.  Inputs are processed in degree order: within a
/// sugar degree S-pairs come first, then base inputs, then counted inputs.
template <class K>
EngineResult<K> run_engine(const EngineConfig<K>& cfg, std::vector<EngineInput<K>> inputs);

/// Checks that every S-pair of gb (and gb against the families) reduces to zero.
template <class K>
bool satisfies_buchberger_criterion(const EngineConfig<K>& cfg, const std::vector<Vec<K>>& gb);

/// Full normal form of v modulo gb and the families.
template <class K>
Vec<K> normal_form_vec(const PolyRing<K>& R, const std::vector<Vec<K>>& gb, const std::vector<Family<K>>& families,
                       std::uint32_t rank, const Vec<K>& v);

}  // namespace canonica
