#include "canonica/ideal.hpp"

#include "canonica/settings.hpp"

namespace canonica {

namespace {

template <class K>
Vec<K> to_vec(const Polynomial<K>& f) {
  Vec<K> v;
  v.reserve(f.size());
  for (const auto& t : f.terms()) v.push_back({t.m, 0, t.c});
  return v;
}

template <class K>
Polynomial<K> to_poly(const PolyRing<K>* R, const Vec<K>& v) {
  std::vector<Term<K>> ts;
  ts.reserve(v.size());
  for (const auto& t : v) ts.push_back({t.m, t.c});
  return Polynomial<K>(R, std::move(ts));
}

template <class K>
std::vector<Family<K>> ambient_families(const PolyVec<K>* ambient_gb) {
  std::vector<Family<K>> fam;
  if (ambient_gb && !ambient_gb->empty()) fam.push_back(scalar_family(*ambient_gb, 1));
  return fam;
}

template <class K>
std::shared_ptr<PolyRing<K>> with_t_variable(const PolyRing<K>& ring) {
  std::vector<std::string> names{"_t"};
  names.insert(names.end(), ring.names().begin(), ring.names().end());
  std::vector<int> w{1};
  w.insert(w.end(), ring.weights().begin(), ring.weights().end());
  return std::make_shared<PolyRing<K>>(ring.field(), names, MonomialOrder::elimination(1), w);
}

template <class K>
Polynomial<K> shift_into(const Polynomial<K>& f, const PolyRing<K>* target, int shift) {
  std::vector<Term<K>> ts;
  ts.reserve(f.size());
  for (const auto& t : f.terms()) ts.push_back({t.m.shifted(shift), t.c});
  return Polynomial<K>::from_terms(target, std::move(ts));
}

}  // namespace

template <class K>
PolyVec<K> groebner_basis(const PolyRing<K>& ring, const PolyVec<K>& gens, const PolyVec<K>* ambient_gb,
                          bool use_criteria) {
  EngineConfig<K> cfg;
  cfg.ring = &ring;
  cfg.rank = 1;
  cfg.families = ambient_families<K>(ambient_gb);
  cfg.use_criteria = use_criteria;
  std::vector<EngineInput<K>> inputs;
  for (const auto& g : gens) {
    if (g.ring() != nullptr && g.ring() != &ring) throw AlgebraError("generator from a different ring");
    if (!g.is_zero()) inputs.push_back({to_vec(g), {}, InputKind::Counted});
  }
  auto res = run_engine(cfg, std::move(inputs));
  PolyVec<K> out;
  out.reserve(res.gb.size());
  for (const auto& v : res.gb) out.push_back(to_poly(&ring, v));
  if (g_verify_gb.load(std::memory_order_relaxed)) {
    if (!satisfies_buchberger_criterion(cfg, res.gb)) throw AlgebraError("verify-gb: Buchberger criterion violated");
    for (const auto& g : gens)
      if (!normal_form(g, out, ambient_gb).is_zero()) throw AlgebraError("verify-gb: generator not in basis ideal");
  }
  return out;
}

template <class K>
Polynomial<K> normal_form(const Polynomial<K>& f, const PolyVec<K>& gb, const PolyVec<K>* ambient_gb) {
  if (f.is_zero()) return f;
  std::vector<Vec<K>> g;
  g.reserve(gb.size());
  for (const auto& p : gb) g.push_back(to_vec(p));
  Vec<K> r = normal_form_vec(*f.ring(), g, ambient_families<K>(ambient_gb), 1, to_vec(f));
  return to_poly(f.ring(), r);
}

template <class K>
bool is_groebner_basis(const PolyRing<K>& ring, const PolyVec<K>& gb, const PolyVec<K>* ambient_gb) {
  EngineConfig<K> cfg;
  cfg.ring = &ring;
  cfg.rank = 1;
  cfg.families = ambient_families<K>(ambient_gb);
  std::vector<Vec<K>> g;
  for (const auto& p : gb) g.push_back(to_vec(p));
  return satisfies_buchberger_criterion(cfg, g);
}

template <class K>
Polynomial<K> map_variables(const Polynomial<K>& f, const PolyRing<K>* target, std::span<const int> var_map) {
  std::vector<Term<K>> ts;
  const int n = f.ring() ? f.ring()->nvars() : 0;
  for (const auto& t : f.terms()) {
    Monomial m;
    bool zero = false;
    for (int i = 0; i < n; ++i) {
      int e = t.m.exponent(i);
      if (!e) continue;
      int j = var_map[i];
      if (j < 0) {
        zero = true;
        break;
      }
      m.set_exponent(j, m.exponent(j) + e);
    }
    if (!zero) ts.push_back({m, t.c});
  }
  return Polynomial<K>::from_terms(target, std::move(ts));
}

template <class K>
Polynomial<K> reorder(const Polynomial<K>& f, const PolyRing<K>* target) {
  return Polynomial<K>::from_terms(target, f.terms());
}

template <class K>
PolyVec<K> eliminate(const PolyRing<K>& ring, const PolyVec<K>& gens, int k) {
  if (k <= 0) return groebner_basis(ring, gens);
  auto E = ring.with_order(MonomialOrder::elimination(k));
  PolyVec<K> g;
  for (const auto& f : gens) g.push_back(reorder(f, E.get()));
  PolyVec<K> gb = groebner_basis(*E, g);
  PolyVec<K> kept;
  for (const auto& f : gb) {
    bool free = true;
    for (const auto& t : f.terms())
      for (int i = 0; i < k && free; ++i) free = t.m.exponent(i) == 0;
    if (free) kept.push_back(reorder(f, &ring));
  }
  return groebner_basis(ring, kept);
}

template <class K>
PolyVec<K> intersect(const PolyRing<K>& ring, const PolyVec<K>& A, const PolyVec<K>& B, const PolyVec<K>* ambient_gb) {
  auto T = with_t_variable(ring);
  const PolyRing<K>* t = T.get();
  const K& F = ring.field();
  auto tv = Polynomial<K>::variable(t, 0);
  auto one_minus_t = Polynomial<K>::constant(t, F.one()) - tv;
  PolyVec<K> gens;
  for (const auto& a : A)
    if (!a.is_zero()) gens.push_back(tv * shift_into(a, t, 1));
  for (const auto& b : B)
    if (!b.is_zero()) gens.push_back(one_minus_t * shift_into(b, t, 1));
  PolyVec<K> amb;
  if (ambient_gb)
    for (const auto& g : *ambient_gb) amb.push_back(shift_into(g, t, 1));
  PolyVec<K> gb = groebner_basis(*t, gens, amb.empty() ? nullptr : &amb);
  PolyVec<K> kept;
  for (const auto& f : gb)
    if (f.lead_monomial().exponent(0) == 0) kept.push_back(shift_into(f, &ring, -1));
  return groebner_basis(ring, kept, ambient_gb);
}

template <class K>
Polynomial<K> divide_exact(const Polynomial<K>& f, const Polynomial<K>& g) {
  if (g.is_zero()) throw AlgebraError("division by zero polynomial");
  const PolyRing<K>* R = f.ring() ? f.ring() : g.ring();
  const K& F = R->field();
  Polynomial<K> r = f;
  std::vector<Term<K>> q;
  auto inv = F.inv(g.lead_coeff());
  while (!r.is_zero()) {
    if (!g.lead_monomial().divides(r.lead_monomial())) throw AlgebraError("inexact polynomial division");
    Monomial m = r.lead_monomial() / g.lead_monomial();
    auto c = F.mul(r.lead_coeff(), inv);
    q.push_back({m, c});
    r = r - g.mul_term(m, c);
  }
  return Polynomial<K>(R, std::move(q));
}

template <class K>
PolyVec<K> colon(const PolyRing<K>& ring, const PolyVec<K>& A, const PolyVec<K>& B, const PolyVec<K>* ambient_gb) {
  bool any = false;
  PolyVec<K> acc;
  PolyVec<K> lhs = A;
  if (ambient_gb) lhs.insert(lhs.end(), ambient_gb->begin(), ambient_gb->end());
  for (const auto& b : B) {
    Polynomial<K> g = ambient_gb ? normal_form(b, *ambient_gb) : b;
    if (g.is_zero()) continue;
    PolyVec<K> cap = intersect(ring, lhs, PolyVec<K>{g});
    PolyVec<K> quo;
    for (const auto& f : cap) quo.push_back(divide_exact(f, g));
    quo = groebner_basis(ring, quo, ambient_gb);
    acc = any ? intersect(ring, acc, quo, ambient_gb) : quo;
    any = true;
  }
  if (!any) {
    for (const auto& b : B)
      if (!b.is_zero()) return PolyVec<K>{Polynomial<K>::constant(&ring, ring.field().one())};
    throw AlgebraError("colon by the zero ideal");
  }
  return acc;
}

template <class K>
PolyVec<K> colon_by_syzygies(const PolyRing<K>& ring, const PolyVec<K>& A, const Polynomial<K>& g,
                             const PolyVec<K>* ambient_gb) {
  EngineConfig<K> cfg;
  cfg.ring = &ring;
  cfg.rank = 1;
  cfg.families = ambient_families<K>(ambient_gb);
  cfg.tracking = true;
  cfg.collect_syzygies = true;
  cfg.track_rank = 1;
  cfg.track_families = ambient_families<K>(ambient_gb);
  std::vector<EngineInput<K>> inputs;
  inputs.push_back({to_vec(g), Vec<K>{{Monomial(), 0, ring.field().one()}}, InputKind::Counted});
  for (const auto& a : A)
    if (!a.is_zero()) inputs.push_back({to_vec(a), {}, InputKind::Base});
  auto res = run_engine(cfg, std::move(inputs));
  PolyVec<K> out;
  for (const auto& s : res.syzygies) out.push_back(to_poly(&ring, s));
  return groebner_basis(ring, out, ambient_gb);
}

// ---------------------------------------------------------------------------

template <class K>
Ideal<K>::Ideal(PolyRingPtr<K> ring, PolyVec<K> gens) : ring_(std::move(ring)) {
  for (auto& g : gens) {
    if (g.ring() != nullptr && g.ring() != ring_.get()) throw AlgebraError("ideal generator from a different ring");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

template <class K>
const PolyVec<K>& Ideal<K>::gb() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->gb) cache_->gb = groebner_basis(*ring_, gens_);
  return *cache_->gb;
}

template <class K>
bool Ideal<K>::is_unit() const {
  const auto& g = gb();
  return g.size() == 1 && g[0].is_constant();
}

template <class K>
bool Ideal<K>::is_homogeneous() const {
  for (const auto& g : gens_)
    if (!g.is_homogeneous()) return false;
  return true;
}

template <class K>
bool Ideal<K>::operator==(const Ideal& o) const {
  if (ring_.get() != o.ring_.get()) throw AlgebraError("ideal ring mismatch");
  const auto& a = gb();
  const auto& b = o.gb();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

template <class K>
Ideal<K> Ideal<K>::operator+(const Ideal& o) const {
  if (ring_.get() != o.ring_.get()) throw AlgebraError("ideal ring mismatch");
  PolyVec<K> g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return Ideal(ring_, std::move(g));
}

template <class K>
Ideal<K> Ideal<K>::operator*(const Ideal& o) const {
  if (ring_.get() != o.ring_.get()) throw AlgebraError("ideal ring mismatch");
  PolyVec<K> g;
  for (const auto& a : gens_)
    for (const auto& b : o.gens_) g.push_back(a * b);
  return Ideal(ring_, std::move(g));
}

template <class K>
Ideal<K> Ideal<K>::intersect(const Ideal& o) const {
  if (ring_.get() != o.ring_.get()) throw AlgebraError("ideal ring mismatch");
  return Ideal(ring_, canonica::intersect(*ring_, gens_, o.gens_));
}

template <class K>
Ideal<K> Ideal<K>::colon(const Ideal& o) const {
  if (ring_.get() != o.ring_.get()) throw AlgebraError("ideal ring mismatch");
  if (o.gens_.empty()) throw AlgebraError("colon by the zero ideal");
  return Ideal(ring_, canonica::colon(*ring_, gens_, o.gens_));
}

template <class K>
Ideal<K> Ideal<K>::eliminate(int k) const {
  return Ideal(ring_, canonica::eliminate(*ring_, gens_, k));
}

#define CANONICA_INSTANTIATE(K)                                                                                    \
  template PolyVec<K> groebner_basis(const PolyRing<K>&, const PolyVec<K>&, const PolyVec<K>*, bool);           \
  template Polynomial<K> normal_form(const Polynomial<K>&, const PolyVec<K>&, const PolyVec<K>*);                \
  template bool is_groebner_basis(const PolyRing<K>&, const PolyVec<K>&, const PolyVec<K>*);                     \
  template Polynomial<K> map_variables(const Polynomial<K>&, const PolyRing<K>*, std::span<const int>);          \
  template Polynomial<K> reorder(const Polynomial<K>&, const PolyRing<K>*);                                      \
  template PolyVec<K> eliminate(const PolyRing<K>&, const PolyVec<K>&, int);                                     \
  template PolyVec<K> intersect(const PolyRing<K>&, const PolyVec<K>&, const PolyVec<K>&, const PolyVec<K>*);    \
  template PolyVec<K> colon(const PolyRing<K>&, const PolyVec<K>&, const PolyVec<K>&, const PolyVec<K>*);        \
  template PolyVec<K> colon_by_syzygies(const PolyRing<K>&, const PolyVec<K>&, const Polynomial<K>&,             \
                                        const PolyVec<K>*);                                                      \
  template Polynomial<K> divide_exact(const Polynomial<K>&, const Polynomial<K>&);                               \
  template class Ideal<K>;

CANONICA_INSTANTIATE(PrimeField)
CANONICA_INSTANTIATE(RationalField)

}  // namespace canonica
