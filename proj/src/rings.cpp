#include "canonica/rings.hpp"

#include <algorithm>
#include <functional>

#include "canonica/parser.hpp"

namespace canonica {

namespace {

std::vector<std::vector<int>> subsets(int n, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> go = [&](int i) {
    if (static_cast<int>(cur.size()) == t) {
      out.push_back(cur);
      return;
    }
    for (int j = i; j < n; ++j) {
      cur.push_back(j);
      go(j + 1);
      cur.pop_back();
    }
  };
  go(0);
  return out;
}

template <class K>
Polynomial<K> laplace(const std::vector<std::vector<Polynomial<K>>>& A, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
  if (rows.size() == 1) return A[rows[0]][cols[0]];
  Polynomial<K> acc(A[rows[0]][cols[0]].ring());
  std::vector<int> rest(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const auto& e = A[rows[0]][cols[k]];
    if (e.is_zero()) continue;
    std::vector<int> c2;
    for (std::size_t q = 0; q < cols.size(); ++q)
      if (q != k) c2.push_back(cols[q]);
    auto term = e * laplace(A, rest, c2);
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

template <class K>
PolyVec<K> lift_all(const PolyVec<K>& fs, const PolyRing<K>* target) {
  PolyVec<K> out;
  for (const auto& f : fs) out.push_back(lift_polynomial(f, target));
  return out;
}

bool extends(const std::vector<std::string>& small, const std::vector<std::string>& big) {
  return small.size() <= big.size() && std::equal(small.begin(), small.end(), big.begin());
}

}  // namespace

template <class K>
PolyVec<K> minors_ideal(const std::vector<std::vector<Polynomial<K>>>& matrix, int t) {
  const int rows = static_cast<int>(matrix.size());
  const int cols = rows ? static_cast<int>(matrix[0].size()) : 0;
  if (t < 1 || t > std::min(rows, cols)) throw ParameterError("minor size out of range");
  PolyVec<K> out;
  for (const auto& rs : subsets(rows, t))
    for (const auto& cs : subsets(cols, t)) {
      auto d = laplace(matrix, rs, cs);
      if (!d.is_zero()) out.push_back(std::move(d));
    }
  return out;
}

template <class K>
Polynomial<K> lift_polynomial(const Polynomial<K>& f, const PolyRing<K>* target) {
  if (f.ring() && f.ring() != target) {
    if (!extends(f.ring()->names(), target->names())) throw AlgebraError("target ring does not extend the source");
  }
  return Polynomial<K>(target, f.terms());
}

template <class K>
FPModule<K> transport(const FPModule<K>& M, const QRingPtr<K>& target) {
  if (!extends(M.S().names(), target->ambient().names()))
    throw AlgebraError("target ring does not extend the module's ring");
  return FPModule<K>::make(target, M.degrees, M.relations);
}

template <class K>
DetRing<K> build_det_ring(const K& field, int m, int n, int r) {
  if (m < 1 || n < 1) throw ParameterError("matrix size must be positive");
  if (r < 0 || r >= std::min(m, n)) throw ParameterError("need 0 <= r < min(m, n)");
  if (m * n > kMaxVars) throw ParameterError("at most " + std::to_string(kMaxVars) + " variables are supported");
  DetRing<K> d;
  if (m < n) {
    std::swap(m, n);
    d.transposed = true;
  }
  d.m = m;
  d.n = n;
  d.r = r;
  d.dim = (m + n - r) * r;
  d.grade = m * n - d.dim;
  d.canonical_exponent = m - n;
  d.gorenstein = (r == 0 || m == n);
  const std::string label = "det " + std::to_string(m) + " " + std::to_string(n) + " " + std::to_string(r);
  if (r == 0) {
    d.degenerate = true;
    auto S = std::make_shared<PolyRing<K>>(field, std::vector<std::string>{});
    d.ring = std::make_shared<QuotientRing<K>>(S, PolyVec<K>{}, label);
    d.row_ideal = d.column_ideal = {d.ring->one()};
    return d;
  }
  std::vector<std::string> names;
  const bool wide = m >= 10 || n >= 10;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j)
      names.push_back(wide ? "x_" + std::to_string(i) + "_" + std::to_string(j)
                           : "x" + std::to_string(i) + std::to_string(j));
  auto S = std::make_shared<PolyRing<K>>(field, names);
  d.matrix.assign(m, {});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) d.matrix[i].push_back(Polynomial<K>::variable(S.get(), i * n + j));
  d.ring = std::make_shared<QuotientRing<K>>(S, minors_ideal(d.matrix, r + 1), label);
  std::vector<std::vector<Polynomial<K>>> rows(d.matrix.begin(), d.matrix.begin() + r), cols(m);
  for (int i = 0; i < m; ++i) cols[i].assign(d.matrix[i].begin(), d.matrix[i].begin() + r);
  d.row_ideal = minors_ideal(rows, r);
  d.column_ideal = minors_ideal(cols, r);
  if (d.ring->dim() != d.dim) throw AlgebraError("internal: staircase dimension disagrees with (m+n-r)r");
  if (hilbert_series_by_leading_terms(FPModule<K>::free(d.ring, {0})).pole_order != d.dim)
    throw AlgebraError("internal: Hilbert pole order disagrees with (m+n-r)r");
  return d;
}

template <class K>
QRingPtr<K> build_trivial_extension(const QuotientRing<K>& B, int q, int first_index) {
  if (q < 1) throw ParameterError("trivial extension needs q >= 1");
  auto names = B.ambient().names();
  const int base = static_cast<int>(names.size());
  if (base + q > kMaxVars) throw ParameterError("too many variables");
  for (int i = 0; i < q; ++i) {
    std::string z = "z" + std::to_string(first_index + i);
    if (std::find(names.begin(), names.end(), z) != names.end()) throw ParameterError("variable " + z + " already used");
    names.push_back(z);
  }
  auto weights = B.ambient().weights();
  if (!weights.empty()) weights.resize(names.size(), 1);
  auto S = std::make_shared<PolyRing<K>>(B.field(), names, B.ambient().order(), weights);
  PolyVec<K> rel = lift_all(B.relations(), S.get());
  for (int i = 0; i < q; ++i)
    for (int j = i; j < q; ++j)
      rel.push_back(Polynomial<K>::variable(S.get(), base + i) * Polynomial<K>::variable(S.get(), base + j));
  std::string label = B.label().empty() ? "k" : B.label();
  return std::make_shared<QuotientRing<K>>(S, std::move(rel), label + " x " + std::to_string(q));
}

template <class K>
void check_regular_sequence(const QuotientRing<K>& A, const PolyVec<K>& ys) {
  PolyVec<K> rel = A.relations();
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const auto& y = ys[i];
    if (y.is_zero() || !y.is_homogeneous() || y.degree() < 1)
      throw RegularityFailure(static_cast<int>(i + 1), y.to_string() + " (not homogeneous of positive degree)");
    QuotientRing<K> Ai(A.ambient_ptr(), rel);
    if (!Ai.colon({}, {y}).empty()) throw RegularityFailure(static_cast<int>(i + 1), y.to_string());
    rel.push_back(y);
  }
}

template <class K>
QRingPtr<K> quotient_by_regular_sequence(const QuotientRing<K>& A, const PolyVec<K>& ys) {
  check_regular_sequence(A, ys);
  PolyVec<K> rel = A.relations();
  rel.insert(rel.end(), ys.begin(), ys.end());
  return std::make_shared<QuotientRing<K>>(A.ambient_ptr(), std::move(rel), A.label() + " / seq");
}

template <class K>
PolyVec<K> power_generators(const PolyVec<K>& ys, int m) {
  if (ys.empty()) throw ParameterError("empty sequence");
  PolyVec<K> out;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t, Polynomial<K>)> go = [&](std::size_t from, Polynomial<K> acc) {
    if (static_cast<int>(idx.size()) == m) {
      out.push_back(acc);
      return;
    }
    for (std::size_t j = from; j < ys.size(); ++j) {
      idx.push_back(j);
      go(j, acc * ys[j]);
      idx.pop_back();
    }
  };
  go(0, Polynomial<K>::constant(ys[0].ring(), ys[0].ring()->field().one()));
  return out;
}

template <class K>
QRingPtr<K> build_power_quotient(const QuotientRing<K>& A, const PolyVec<K>& ys, int m) {
  if (m < 1) throw ParameterError("power must be at least 1");
  check_regular_sequence(A, ys);
  PolyVec<K> rel = A.relations();
  for (auto& g : power_generators(ys, m)) rel.push_back(std::move(g));
  return std::make_shared<QuotientRing<K>>(A.ambient_ptr(), std::move(rel),
                                           (A.label().empty() ? "A" : A.label()) + " / (y)^" + std::to_string(m));
}

template <class K>
Chain<K> build_chain(const K& field, const ChainSpec& spec) {
  if (spec.steps.empty()) throw ParameterError("chain needs at least one step");
  Chain<K> ch;
  std::vector<std::string> base_vars;
  if (spec.steps[0].kind == ChainStep::Kind::PowerQuotient)
    for (const auto& s : spec.steps[0].sequence)
      for (const auto& id : identifiers_in(s))
        if (std::find(base_vars.begin(), base_vars.end(), id) == base_vars.end()) base_vars.push_back(id);
  auto S0 = std::make_shared<PolyRing<K>>(field, base_vars);
  ch.base = std::make_shared<QuotientRing<K>>(S0, PolyVec<K>{}, base_vars.empty() ? "k" : "A");
  int z = 1;
  int doubles = 0;
  for (std::size_t i = 0; i < spec.steps.size(); ++i) {
    const auto& st = spec.steps[i];
    const QRingPtr<K> cur = ch.ring();
    ChainLevel<K> lv;
    lv.step = st;
    lv.first_new_var = cur->nvars();
    switch (st.kind) {
      case ChainStep::Kind::Det: {
        if (i != 0) throw ParameterError("a determinantal block must be the first chain step");
        lv.det = build_det_ring(field, st.m, st.n, st.r);
        lv.ring = lv.det.ring;
        lv.doubles = !lv.det.gorenstein;
        lv.branch = "det";
        break;
      }
      case ChainStep::Kind::Trivial: {
        lv.ring = build_trivial_extension(*cur, st.q, z);
        z += st.q;
        lv.doubles = st.q > 1;
        lv.branch = "tensor/hom-twist";
        break;
      }
      case ChainStep::Kind::PowerQuotient: {
        for (const auto& s : st.sequence) lv.sequence.push_back(parse_polynomial(s, cur->ambient()));
        lv.ring = build_power_quotient(*cur, lv.sequence, st.exponent);
        lv.doubles = st.exponent > 1 && lv.sequence.size() > 1;
        lv.branch = "tensor/ext-twist";
        break;
      }
    }
    lv.new_vars = lv.ring->nvars() - lv.first_new_var;
    if (lv.doubles) ++doubles;
    ch.levels.push_back(std::move(lv));
  }
  ch.predicted_cardinality = 1 << doubles;
  return ch;
}

template <class K>
FPModule<K> ext_twist_dagger(const DetRing<K>& det) {
  if (det.degenerate) {
    // R = k: compute Ext^{mn}_S(k, S) over the polynomial ring of the matrix
    std::vector<std::string> names;
    for (int i = 1; i <= det.m * det.n; ++i) names.push_back("x" + std::to_string(i));
    auto P = std::make_shared<PolyRing<K>>(det.ring->field(), names);
    auto S = std::make_shared<QuotientRing<K>>(P, PolyVec<K>{});
    auto E = minimal_presentation(ext(det.grade, FPModule<K>::residue_field(S), FPModule<K>::free(S, {0})));
    if (E.ngens() != 1) throw AlgebraError("internal: top Ext of the residue field is not cyclic");
    PolyVec<K> ann;
    for (const auto& v : E.relations) ann.push_back(vec_component(P.get(), v, 0));
    if (!S->ideals_equal(ann, S->maximal_ideal())) throw AlgebraError("internal: top Ext of k is not k");
    return FPModule<K>::free(det.ring, E.degrees);
  }
  auto S = std::make_shared<QuotientRing<K>>(det.ring->ambient_ptr(), PolyVec<K>{});
  auto Rs = FPModule<K>::cyclic(S, det.ring->relations());
  auto E = ext(det.grade, Rs, FPModule<K>::free(S, {0}));
  return minimal_presentation(transport(E, det.ring));
}

template <class K>
long long artinian_length(const QRingPtr<K>& R) {
  if (R->dim() != 0) throw AlgebraError("ring is not Artinian");
  return hilbert_series(FPModule<K>::free(R, {0})).multiplicity();
}

#define CANONICA_INSTANTIATE(K)                                                                                    \
  template PolyVec<K> minors_ideal(const std::vector<std::vector<Polynomial<K>>>&, int);                           \
  template Polynomial<K> lift_polynomial(const Polynomial<K>&, const PolyRing<K>*);                               \
  template FPModule<K> transport(const FPModule<K>&, const QRingPtr<K>&);                                          \
  template DetRing<K> build_det_ring(const K&, int, int, int);                                                     \
  template QRingPtr<K> build_trivial_extension(const QuotientRing<K>&, int, int);                                  \
  template void check_regular_sequence(const QuotientRing<K>&, const PolyVec<K>&);                                 \
  template QRingPtr<K> quotient_by_regular_sequence(const QuotientRing<K>&, const PolyVec<K>&);                    \
  template PolyVec<K> power_generators(const PolyVec<K>&, int);                                                    \
  template QRingPtr<K> build_power_quotient(const QuotientRing<K>&, const PolyVec<K>&, int);                       \
  template Chain<K> build_chain(const K&, const ChainSpec&);                                                       \
  template FPModule<K> ext_twist_dagger(const DetRing<K>&);                                                        \
  template long long artinian_length(const QRingPtr<K>&);

CANONICA_INSTANTIATE(PrimeField)
CANONICA_INSTANTIATE(RationalField)

}  // namespace canonica
