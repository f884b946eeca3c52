#include "canonica/homalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "canonica/settings.hpp"

namespace canonica {

namespace {

// memo slots
constexpr std::size_t kSlotResolution = 1;
constexpr std::size_t kSlotRelationGb = 2;
constexpr std::size_t kSlotAmbient = 3;

inline void mix(std::uint64_t& h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

template <class K>
std::vector<Family<K>> with_ring(const QuotientRing<K>& R, std::uint32_t rank, const std::vector<Family<K>>& extra) {
  std::vector<Family<K>> f;
  if (!R.gb().empty() && rank > 0) f.push_back(R.family(rank));
  for (const auto& e : extra)
    if (!e.gb.empty() && e.nblocks > 0) f.push_back(e);
  return f;
}

template <class K>
void check_gb(const EngineConfig<K>& cfg, const EngineResult<K>& res) {
  if (g_verify_gb.load() && !satisfies_buchberger_criterion(cfg, res.gb))
    throw AlgebraError("internal: module basis fails the Buchberger criterion");
}

/// Vectors of the preimage problem: T(v) = 0 modulo target families.
template <class K>
std::vector<Vec<K>> preimage(const QuotientRing<K>& R, const std::vector<Vec<K>>& images, std::uint32_t tgt_rank,
                             const std::vector<int>& tgt_shifts, const std::vector<Family<K>>& tgt_fams,
                             std::uint32_t src_rank, const std::vector<Family<K>>& src_fams) {
  const PolyRing<K>& S = R.ambient();
  EngineConfig<K> cfg;
  cfg.ring = &S;
  cfg.rank = tgt_rank;
  cfg.shifts = tgt_shifts;
  cfg.families = with_ring(R, tgt_rank, tgt_fams);
  cfg.tracking = true;
  cfg.collect_syzygies = true;
  cfg.track_rank = src_rank;
  cfg.track_families = with_ring(R, src_rank, src_fams);
  std::vector<EngineInput<K>> in;
  for (std::uint32_t k = 0; k < images.size(); ++k) in.push_back({images[k], vec_unit(S, k), InputKind::Counted});
  auto res = run_engine(cfg, std::move(in));
  check_gb(cfg, res);
  return std::move(res.syzygies);
}

/// Hom(F_src, N) -> Hom(F_tgt, N) induced by d: F_tgt -> F_src (columns of d
/// live in R^{a_src}).  Returns the images of the a_src * c unit vectors.
template <class K>
std::vector<Vec<K>> dual_images(const std::vector<Vec<K>>& d, std::uint32_t a_src, std::uint32_t c) {
  std::vector<Vec<K>> img(static_cast<std::size_t>(a_src) * c);
  for (std::uint32_t j = 0; j < d.size(); ++j)
    for (const auto& t : d[j])
      for (std::uint32_t l = 0; l < c; ++l) img[t.comp * c + l].push_back({t.m, j * c + l, t.c});
  return img;
}

template <class K>
Vec<K> reduce_with(const QuotientRing<K>& R, std::uint32_t rank, const std::vector<Family<K>>& fams, Vec<K> v) {
  Reducer<K> red(R.ambient(), with_ring(R, rank, fams), rank);
  red.reduce(v, true);
  return v;
}

/// Syzygies of `gens` modulo `fams` and the extra base vectors (which are
/// not tracked).
template <class K>
std::vector<Vec<K>> relations_of(const QuotientRing<K>& R, std::uint32_t rank, const std::vector<int>& shifts,
                                 const std::vector<Family<K>>& fams, const std::vector<Vec<K>>& gens,
                                 const std::vector<Vec<K>>& base) {
  const PolyRing<K>& S = R.ambient();
  EngineConfig<K> cfg;
  cfg.ring = &S;
  cfg.rank = rank;
  cfg.shifts = shifts;
  cfg.families = with_ring(R, rank, fams);
  cfg.tracking = true;
  cfg.collect_syzygies = true;
  cfg.track_rank = static_cast<std::uint32_t>(gens.size());
  cfg.track_families = with_ring(R, cfg.track_rank, {});
  std::vector<EngineInput<K>> in;
  for (const auto& b : base) in.push_back({b, {}, InputKind::Base});
  for (std::uint32_t k = 0; k < gens.size(); ++k) in.push_back({gens[k], vec_unit(S, k), InputKind::Counted});
  auto res = run_engine(cfg, std::move(in));
  check_gb(cfg, res);
  return std::move(res.syzygies);
}

template <class K>
FPModule<K> zero_module(const QRingPtr<K>& R) {
  return FPModule<K>{R, {}, {}};
}

template <class K>
QRingPtr<K> ambient_ring(const QuotientRing<K>& R) {
  if (R.is_polynomial_ring()) return nullptr;
  auto hit = R.template memo<QuotientRing<K>>(0, kSlotAmbient);
  if (hit) return hit;
  auto S = std::make_shared<QuotientRing<K>>(R.ambient_ptr(), PolyVec<K>{}, "ambient");
  R.template memo_store<QuotientRing<K>>(0, kSlotAmbient, S);
  return S;
}

}  // namespace

// ---------------------------------------------------------------------------
// FPModule

template <class K>
FPModule<K> FPModule<K>::make(QRingPtr<K> ring, std::vector<int> degrees, std::vector<Vec<K>> relations) {
  FPModule M{ring, std::move(degrees), {}};
  const std::uint32_t n = M.ngens();
  if (n == 0) return M;
  Reducer<K> red(ring->ambient(), with_ring(*ring, n, {}), n);
  for (auto& v : relations) {
    for (const auto& t : v)
      if (t.comp >= n) throw AlgebraError("relation has a component beyond the generators");
    red.reduce(v, true);
    if (v.empty()) continue;
    if (!vec_is_homogeneous(ring->ambient(), v, M.degrees))
      throw AlgebraError("relation is not homogeneous: " + vec_to_string(ring->ambient(), v));
    M.relations.push_back(std::move(v));
  }
  return M;
}

template <class K>
FPModule<K> FPModule<K>::free(QRingPtr<K> ring, std::vector<int> degrees) {
  return FPModule{std::move(ring), std::move(degrees), {}};
}

template <class K>
FPModule<K> FPModule<K>::cyclic(QRingPtr<K> ring, const PolyVec<K>& ideal) {
  std::vector<Vec<K>> rels;
  for (const auto& g : ideal) rels.push_back(vec_from_column(PolyVec<K>{g}));
  return make(std::move(ring), {0}, std::move(rels));
}

template <class K>
FPModule<K> FPModule<K>::from_ideal(QRingPtr<K> ring, const PolyVec<K>& ideal) {
  const QuotientRing<K>& R = *ring;
  std::vector<Vec<K>> vs;
  for (const auto& g : ideal) {
    auto r = R.reduce(g);
    if (!r.is_homogeneous()) throw AlgebraError("ideal generator is not homogeneous: " + g.to_string());
    if (!r.is_zero()) vs.push_back(vec_from_column(PolyVec<K>{r}));
  }
  auto keep = minimal_generator_indices(R, 1, {0}, {}, {}, vs);
  std::vector<Vec<K>> gens;
  std::vector<int> degs;
  for (auto i : keep) {
    gens.push_back(vs[i]);
    degs.push_back(vec_degree(R.ambient(), vs[i], std::span<const int>{}));
  }
  auto rels = syzygies_raw(R, gens, 1, {0});
  return minimize_relations(make(ring, degs, std::move(rels)));
}

template <class K>
FPModule<K> FPModule<K>::residue_field(QRingPtr<K> ring) {
  auto m = ring->maximal_ideal();
  return cyclic(std::move(ring), m);
}

template <class K>
std::uint64_t FPModule<K>::fingerprint() const {
  const K& F = ring->field();
  std::uint64_t h = 0xcbf29ce484222325ull;
  mix(h, degrees.size());
  for (int d : degrees) mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(d)));
  mix(h, relations.size());
  for (const auto& v : relations) {
    mix(h, v.size());
    for (const auto& t : v) {
      mix(h, t.m.hash());
      mix(h, t.comp);
      mix(h, F.hash(t.c));
    }
  }
  return h;
}

template <class K>
std::vector<int> FPModule<K>::relation_degrees() const {
  std::vector<int> out;
  for (const auto& v : relations) out.push_back(vec_degree(S(), v, degrees));
  return out;
}

template <class K>
std::string FPModule<K>::to_string() const {
  std::ostringstream os;
  os << "generators " << degrees.size() << " (degrees";
  for (int d : degrees) os << ' ' << d;
  os << "), relations " << relations.size();
  for (const auto& v : relations) os << "\n  " << vec_to_string(S(), v);
  return os.str();
}

template <class K>
std::vector<std::size_t> FreeResolution<K>::betti() const {
  std::vector<std::size_t> b;
  for (const auto& d : degrees) b.push_back(d.size());
  return b;
}

// ---------------------------------------------------------------------------
// HilbertSeries

long long HilbertSeries::multiplicity() const {
  return std::accumulate(numerator.begin(), numerator.end(), 0LL);
}

long long HilbertSeries::coefficient(int d) const {
  auto binom = [](long long n, long long k) {
    if (k < 0 || n < k) return 0LL;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  long long s = 0;
  for (std::size_t i = 0; i < numerator.size(); ++i) {
    long long e = d - low - static_cast<long long>(i);
    if (e < 0) continue;
    if (pole_order == 0) {
      if (e == 0) s += numerator[i];
    } else {
      s += numerator[i] * binom(e + pole_order - 1, pole_order - 1);
    }
  }
  return s;
}

std::string HilbertSeries::to_string() const {
  if (is_zero()) return "0";
  std::string num;
  int nterms = 0;
  for (std::size_t i = 0; i < numerator.size(); ++i) {
    long long c = numerator[i];
    if (c == 0) continue;
    int e = low + static_cast<int>(i);
    std::string mono = e == 0 ? "" : (e == 1 ? "t" : "t^" + std::to_string(e));
    long long a = c < 0 ? -c : c;
    std::string coef = (a == 1 && !mono.empty()) ? "" : std::to_string(a);
    if (nterms == 0)
      num += c < 0 ? "-" : "";
    else
      num += c < 0 ? "-" : "+";
    num += coef + mono;
    ++nterms;
  }
  if (pole_order == 0) return num;
  std::string den = pole_order == 1 ? "(1-t)" : "(1-t)^" + std::to_string(pole_order);
  if (nterms > 1 || num[0] == '-') num = "(" + num + ")";
  return num + "/" + den;
}

HilbertSeries HilbertSeries::from_raw(int low, std::vector<long long> c, int n) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  std::size_t lead = 0;
  while (lead < c.size() && c[lead] == 0) ++lead;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
  low += static_cast<int>(lead);
  HilbertSeries h;
  if (c.empty()) return h;
  while (n > 0 && std::accumulate(c.begin(), c.end(), 0LL) == 0) {
    // c = (1 - t) q
    std::vector<long long> q(c.size() - 1);
    long long run = 0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
      run += c[k];
      q[k] = run;
    }
    c = std::move(q);
    while (!c.empty() && c.back() == 0) c.pop_back();
    --n;
  }
  h.low = low;
  h.numerator = std::move(c);
  h.pole_order = n;
  return h;
}

// ---------------------------------------------------------------------------
// Syzygies and generators

template <class K>
std::vector<Vec<K>> syzygies_raw(const QuotientRing<K>& R, const std::vector<Vec<K>>& vectors, std::uint32_t rank,
                                 const std::vector<int>& shifts, bool use_criteria) {
  const PolyRing<K>& S = R.ambient();
  const auto n = static_cast<std::uint32_t>(vectors.size());
  EngineConfig<K> cfg;
  cfg.ring = &S;
  cfg.rank = rank;
  cfg.shifts = shifts;
  cfg.families = with_ring(R, rank, {});
  cfg.tracking = true;
  cfg.collect_syzygies = true;
  cfg.track_rank = n;
  cfg.track_families = with_ring(R, n, {});
  cfg.use_criteria = use_criteria;
  std::vector<EngineInput<K>> in;
  for (std::uint32_t k = 0; k < n; ++k) in.push_back({vectors[k], vec_unit(S, k), InputKind::Counted});
  auto res = run_engine(cfg, std::move(in));
  check_gb(cfg, res);
  return std::move(res.syzygies);
}

template <class K>
std::vector<std::size_t> minimal_generator_indices(const QuotientRing<K>& R, std::uint32_t rank,
                                                   const std::vector<int>& shifts,
                                                   const std::vector<Family<K>>& extra_families,
                                                   const std::vector<Vec<K>>& base,
                                                   const std::vector<Vec<K>>& counted) {
  const PolyRing<K>& S = R.ambient();
  for (const auto& v : counted)
    if (!vec_is_homogeneous(S, v, shifts)) throw AlgebraError("minimal generators need homogeneous input");
  if (rank == 0) return {};
  EngineConfig<K> cfg;
  cfg.ring = &S;
  cfg.rank = rank;
  cfg.shifts = shifts;
  cfg.families = with_ring(R, rank, extra_families);
  std::vector<EngineInput<K>> in;
  for (const auto& b : base) in.push_back({b, {}, InputKind::Base});
  for (const auto& c : counted) in.push_back({c, {}, InputKind::Counted});
  auto res = run_engine(cfg, std::move(in));
  check_gb(cfg, res);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < counted.size(); ++i)
    if (res.kept[base.size() + i]) out.push_back(i);
  return out;
}

template <class K>
std::vector<Vec<K>> syzygy_module(const QuotientRing<K>& R, const std::vector<Vec<K>>& vectors, std::uint32_t rank,
                                  const std::vector<int>& shifts) {
  auto raw = syzygies_raw(R, vectors, rank, shifts);
  std::vector<int> sh;
  for (const auto& v : vectors) sh.push_back(v.empty() ? 0 : vec_degree(R.ambient(), v, shifts));
  auto keep = minimal_generator_indices(R, static_cast<std::uint32_t>(vectors.size()), sh, {}, {}, raw);
  std::vector<Vec<K>> out;
  for (auto i : keep) out.push_back(std::move(raw[i]));
  return out;
}

template <class K>
Family<K> relation_family(const FPModule<K>& N, std::uint32_t nblocks, std::uint32_t first) {
  Family<K> f;
  f.width = std::max<std::uint32_t>(N.ngens(), 1);
  f.first = first;
  f.nblocks = nblocks;
  if (N.relations.empty()) return f;
  const std::uint64_t key = N.fingerprint();
  auto hit = N.ring->template memo<std::vector<Vec<K>>>(key, kSlotRelationGb);
  if (!hit) {
    const QuotientRing<K>& R = *N.ring;
    EngineConfig<K> cfg;
    cfg.ring = &R.ambient();
    cfg.rank = N.ngens();
    cfg.shifts = N.degrees;
    cfg.families = with_ring(R, N.ngens(), {});
    std::vector<EngineInput<K>> in;
    for (const auto& v : N.relations) in.push_back({v, {}, InputKind::Counted});
    auto res = run_engine(cfg, std::move(in));
    check_gb(cfg, res);
    hit = std::make_shared<std::vector<Vec<K>>>(std::move(res.gb));
    N.ring->template memo_store<std::vector<Vec<K>>>(key, kSlotRelationGb, hit);
  }
  f.gb = *hit;
  return f;
}

// ---------------------------------------------------------------------------
// Presentations

template <class K>
FPModule<K> minimize_relations(const FPModule<K>& M) {
  if (M.relations.empty()) return M;
  auto keep = minimal_generator_indices(*M.ring, M.ngens(), M.degrees, {}, {}, M.relations);
  FPModule<K> out{M.ring, M.degrees, {}};
  for (auto i : keep) out.relations.push_back(M.relations[i]);
  return out;
}

template <class K>
FPModule<K> minimal_presentation(const FPModule<K>& M) {
  const PolyRing<K>& S = M.S();
  const K& F = S.field();
  std::vector<int> degs = M.degrees;
  std::vector<Vec<K>> rels = M.relations;
  for (;;) {
    // A relation with a unit entry eliminates one generator.
    std::size_t j = rels.size();
    std::uint32_t k = 0;
    typename K::Element c{};
    for (std::size_t r = 0; r < rels.size() && j == rels.size(); ++r)
      for (const auto& t : rels[r])
        if (t.m.is_one()) {
          j = r;
          k = t.comp;
          c = t.c;
          break;
        }
    if (j == rels.size()) break;
    Vec<K> pivot = vec_scale(S, rels[j], F.inv(c));  // entry k is 1
    rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(j));
    const auto n = static_cast<std::uint32_t>(degs.size());
    Reducer<K> red(S, with_ring(*M.ring, n, {}), n);
    for (auto& v : rels) {
      Vec<K> coef;
      for (const auto& t : v)
        if (t.comp == k) coef.push_back(t);
      for (const auto& t : coef) v = vec_axpy(S, v, pivot, F.neg(t.c), t.m);
      red.reduce(v, true);
    }
    std::vector<Vec<K>> next;
    for (auto& v : rels) {
      if (v.empty()) continue;
      for (auto& t : v) {
        if (t.comp == k) throw AlgebraError("internal: pivot elimination left an entry");
        if (t.comp > k) --t.comp;
      }
      next.push_back(std::move(v));
    }
    rels = std::move(next);
    degs.erase(degs.begin() + k);
  }
  FPModule<K> out{M.ring, std::move(degs), std::move(rels)};
  return minimize_relations(out);
}

template <class K>
std::size_t beta0(const FPModule<K>& M) {
  return minimal_presentation(M).ngens();
}

template <class K>
bool is_zero_module(const FPModule<K>& M) {
  return beta0(M) == 0;
}

template <class K>
void audit_resolution_map(const QuotientRing<K>& R, const FreeResolution<K>& res, int i) {
  const PolyRing<K>& S = R.ambient();
  bool ok = true;
  for (const auto& col : res.maps[i])
    for (const auto& t : col) ok = ok && !t.m.is_one();
  if (i >= 2) {
    const auto& prev = res.maps[i - 1];
    const std::size_t rank = res.degrees[i - 2].size();
    for (const auto& col : res.maps[i]) {
      Vec<K> img;
      for (const auto& t : col) img = vec_axpy(S, img, prev[t.comp], t.c, t.m);
      for (const auto& f : vec_to_column(&S, img, rank)) ok = ok && R.is_zero(f);
    }
  }
  ++g_resolution_maps_audited;
  if (!ok) ++g_resolution_audit_failures;
}

template <class K>
FreeResolution<K> free_resolution(const FPModule<K>& M, int L) {
  if (L < 0) throw AlgebraError("negative resolution length");
  const QuotientRing<K>& R = *M.ring;
  const std::uint64_t key = M.fingerprint();
  auto cached = R.template memo<FreeResolution<K>>(key, kSlotResolution);
  FreeResolution<K> res;
  if (cached) {
    res = *cached;
  } else {
    FPModule<K> Mm = minimal_presentation(M);
    res.degrees.push_back(Mm.degrees);
    res.maps.emplace_back();
    if (Mm.ngens() == 0 || Mm.relations.empty()) {
      res.complete = true;
    } else {
      res.degrees.push_back(Mm.relation_degrees());
      res.maps.push_back(Mm.relations);
      if (g_audit_resolutions.load(std::memory_order_relaxed)) audit_resolution_map(R, res, 1);
    }
  }
  while (!res.complete && res.length() < L) {
    const int i = res.length() + 1;
    const auto& prev = res.maps[i - 1];
    auto Z = syzygy_module(R, prev, static_cast<std::uint32_t>(res.degrees[i - 2].size()), res.degrees[i - 2]);
    if (Z.empty()) {
      res.complete = true;
      break;
    }
    std::vector<int> d;
    for (const auto& z : Z) d.push_back(vec_degree(R.ambient(), z, res.degrees[i - 1]));
    res.degrees.push_back(std::move(d));
    res.maps.push_back(std::move(Z));
    if (g_audit_resolutions.load(std::memory_order_relaxed)) audit_resolution_map(R, res, i);
  }
  if (!cached || cached->length() < res.length() || (res.complete && !cached->complete))
    R.template memo_store<FreeResolution<K>>(key, kSlotResolution, std::make_shared<FreeResolution<K>>(res));
  if (res.length() > L) {
    res.degrees.resize(L + 1);
    res.maps.resize(L + 1);
    res.complete = false;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Hom, tensor, Ext

template <class K>
HomResult<K> hom(const FPModule<K>& M, const FPModule<K>& N, const std::vector<Vec<K>>& preferred) {
  const QuotientRing<K>& R = *M.ring;
  const PolyRing<K>& S = R.ambient();
  FPModule<K> Mm = minimal_presentation(M);
  FPModule<K> Nm = minimal_presentation(N);
  const std::uint32_t a = Mm.ngens(), c = Nm.ngens();
  if (a == 0 || c == 0) return {zero_module(M.ring), {}, Mm, Nm, std::vector<bool>(preferred.size(), false)};
  const std::uint32_t rank = a * c;
  std::vector<int> shifts(rank);
  for (std::uint32_t s = 0; s < a; ++s)
    for (std::uint32_t l = 0; l < c; ++l) shifts[s * c + l] = Nm.degrees[l] - Mm.degrees[s];
  std::vector<Family<K>> Bsrc;
  if (!Nm.relations.empty()) Bsrc.push_back(relation_family(Nm, a));

  std::vector<Vec<K>> kernel;
  if (Mm.relations.empty()) {
    for (std::uint32_t k = 0; k < rank; ++k) kernel.push_back(vec_unit(S, k));
  } else {
    const auto r1 = static_cast<std::uint32_t>(Mm.relations.size());
    auto rdeg = Mm.relation_degrees();
    std::vector<int> tshift(r1 * c);
    for (std::uint32_t j = 0; j < r1; ++j)
      for (std::uint32_t l = 0; l < c; ++l) tshift[j * c + l] = Nm.degrees[l] - rdeg[j];
    std::vector<Family<K>> Btgt;
    if (!Nm.relations.empty()) Btgt.push_back(relation_family(Nm, r1));
    kernel = preimage(R, dual_images(Mm.relations, a, c), r1 * c, tshift, Btgt, rank, Bsrc);
  }
  std::vector<Vec<K>> counted = preferred;
  counted.insert(counted.end(), kernel.begin(), kernel.end());
  auto keep = minimal_generator_indices(R, rank, shifts, Bsrc, {}, counted);
  std::vector<bool> pkept(preferred.size(), false);
  for (auto i : keep)
    if (i < preferred.size()) pkept[i] = true;
  std::vector<Vec<K>> reps;
  std::vector<int> degs;
  for (auto i : keep) {
    Vec<K> v = reduce_with(R, rank, Bsrc, counted[i]);
    if (v.empty()) throw AlgebraError("internal: kept Hom generator reduces to zero");
    degs.push_back(vec_degree(S, v, shifts));
    reps.push_back(std::move(v));
  }
  auto rels = relations_of(R, rank, shifts, Bsrc, reps, {});
  FPModule<K> H = minimize_relations(FPModule<K>::make(M.ring, std::move(degs), std::move(rels)));
  return {std::move(H), std::move(reps), std::move(Mm), std::move(Nm), std::move(pkept)};
}

template <class K>
FPModule<K> tensor(const FPModule<K>& M, const FPModule<K>& N) {
  FPModule<K> Mm = minimal_presentation(M);
  FPModule<K> Nm = minimal_presentation(N);
  const std::uint32_t a = Mm.ngens(), c = Nm.ngens();
  if (a == 0 || c == 0) return zero_module(M.ring);
  std::vector<int> degs(a * c);
  for (std::uint32_t i = 0; i < a; ++i)
    for (std::uint32_t l = 0; l < c; ++l) degs[i * c + l] = Mm.degrees[i] + Nm.degrees[l];
  std::vector<Vec<K>> rels;
  for (const auto& col : Mm.relations)
    for (std::uint32_t l = 0; l < c; ++l) {
      Vec<K> v;
      for (const auto& t : col) v.push_back({t.m, t.comp * c + l, t.c});
      rels.push_back(std::move(v));
    }
  for (std::uint32_t i = 0; i < a; ++i)
    for (const auto& col : Nm.relations) {
      Vec<K> v;
      for (const auto& t : col) v.push_back({t.m, i * c + t.comp, t.c});
      rels.push_back(std::move(v));
    }
  return minimal_presentation(FPModule<K>::make(M.ring, std::move(degs), std::move(rels)));
}

namespace {

template <class K>
struct ExtSetup {
  bool zero = false;
  std::uint32_t rank = 0;
  std::vector<int> shifts;
  std::vector<Family<K>> fams;
  std::vector<Vec<K>> cycles;
  std::vector<Vec<K>> boundaries;
};

template <class K>
ExtSetup<K> ext_setup(int i, const FPModule<K>& M, const FPModule<K>& N) {
  if (i < 0) throw AlgebraError("negative Ext index");
  const QuotientRing<K>& R = *M.ring;
  const PolyRing<K>& S = R.ambient();
  ExtSetup<K> st;
  FPModule<K> Nm = minimal_presentation(N);
  auto F = free_resolution(M, i + 1);
  const std::uint32_t c = Nm.ngens();
  if (F.length() < i || c == 0 || F.degrees[i].empty()) {
    st.zero = true;
    return st;
  }
  const auto ai = static_cast<std::uint32_t>(F.degrees[i].size());
  st.rank = ai * c;
  st.shifts.resize(st.rank);
  for (std::uint32_t s = 0; s < ai; ++s)
    for (std::uint32_t l = 0; l < c; ++l) st.shifts[s * c + l] = Nm.degrees[l] - F.degrees[i][s];
  if (!Nm.relations.empty()) st.fams.push_back(relation_family(Nm, ai));
  if (F.length() >= i + 1) {
    const auto an = static_cast<std::uint32_t>(F.degrees[i + 1].size());
    std::vector<int> tshift(an * c);
    for (std::uint32_t j = 0; j < an; ++j)
      for (std::uint32_t l = 0; l < c; ++l) tshift[j * c + l] = Nm.degrees[l] - F.degrees[i + 1][j];
    std::vector<Family<K>> Btgt;
    if (!Nm.relations.empty()) Btgt.push_back(relation_family(Nm, an));
    st.cycles = preimage(R, dual_images(F.maps[i + 1], ai, c), an * c, tshift, Btgt, st.rank, st.fams);
  } else {
    for (std::uint32_t k = 0; k < st.rank; ++k) st.cycles.push_back(vec_unit(S, k));
  }
  if (i >= 1) {
    const auto ap = static_cast<std::uint32_t>(F.degrees[i - 1].size());
    for (auto& v : dual_images(F.maps[i], ap, c))
      if (!v.empty()) st.boundaries.push_back(std::move(v));
  }
  return st;
}

}  // namespace

template <class K>
FPModule<K> ext(int i, const FPModule<K>& M, const FPModule<K>& N) {
  auto st = ext_setup(i, M, N);
  if (st.zero) return zero_module(M.ring);
  const QuotientRing<K>& R = *M.ring;
  auto keep = minimal_generator_indices(R, st.rank, st.shifts, st.fams, st.boundaries, st.cycles);
  std::vector<Vec<K>> gens;
  std::vector<int> degs;
  for (auto k : keep) {
    degs.push_back(vec_degree(R.ambient(), st.cycles[k], st.shifts));
    gens.push_back(std::move(st.cycles[k]));
  }
  auto rels = relations_of(R, st.rank, st.shifts, st.fams, gens, st.boundaries);
  return minimize_relations(FPModule<K>::make(M.ring, std::move(degs), std::move(rels)));
}

template <class K>
bool ext_vanishes(int i, const FPModule<K>& M, const FPModule<K>& N) {
  return ext_beta0(i, M, N) == 0;
}

template <class K>
std::size_t ext_beta0(int i, const FPModule<K>& M, const FPModule<K>& N) {
  auto st = ext_setup(i, M, N);
  if (st.zero) return 0;
  return minimal_generator_indices(*M.ring, st.rank, st.shifts, st.fams, st.boundaries, st.cycles).size();
}

namespace {

/// Subquotient data for H_i(F ⊗ N): cycles of F_i ⊗ N modulo boundaries and
/// the relations of N.
template <class K>
ExtSetup<K> tor_setup(int i, const FPModule<K>& M, const FPModule<K>& N) {
  if (i < 0) throw AlgebraError("negative Tor index");
  const QuotientRing<K>& R = *M.ring;
  const PolyRing<K>& S = R.ambient();
  ExtSetup<K> st;
  FPModule<K> Nm = minimal_presentation(N);
  auto F = free_resolution(M, i + 1);
  const std::uint32_t c = Nm.ngens();
  if (F.length() < i || c == 0 || F.degrees[i].empty()) {
    st.zero = true;
    return st;
  }
  auto tensored = [&](const Vec<K>& col, std::uint32_t l) {
    Vec<K> v;
    for (const auto& t : col) v.push_back({t.m, t.comp * c + l, t.c});
    return v;
  };
  const auto ai = static_cast<std::uint32_t>(F.degrees[i].size());
  st.rank = ai * c;
  st.shifts.resize(st.rank);
  for (std::uint32_t s = 0; s < ai; ++s)
    for (std::uint32_t l = 0; l < c; ++l) st.shifts[s * c + l] = F.degrees[i][s] + Nm.degrees[l];
  if (!Nm.relations.empty()) st.fams.push_back(relation_family(Nm, ai));
  if (i >= 1) {
    const auto ap = static_cast<std::uint32_t>(F.degrees[i - 1].size());
    std::vector<int> tshift(ap * c);
    for (std::uint32_t k = 0; k < ap; ++k)
      for (std::uint32_t l = 0; l < c; ++l) tshift[k * c + l] = F.degrees[i - 1][k] + Nm.degrees[l];
    std::vector<Vec<K>> images;
    for (std::uint32_t s = 0; s < ai; ++s)
      for (std::uint32_t l = 0; l < c; ++l) images.push_back(tensored(F.maps[i][s], l));
    std::vector<Family<K>> Btgt;
    if (!Nm.relations.empty()) Btgt.push_back(relation_family(Nm, ap));
    st.cycles = preimage(R, images, ap * c, tshift, Btgt, st.rank, st.fams);
  } else {
    for (std::uint32_t k = 0; k < st.rank; ++k) st.cycles.push_back(vec_unit(S, k));
  }
  if (F.length() >= i + 1)
    for (const auto& col : F.maps[i + 1])
      for (std::uint32_t l = 0; l < c; ++l) st.boundaries.push_back(tensored(col, l));
  return st;
}

}  // namespace

template <class K>
FPModule<K> tor(int i, const FPModule<K>& M, const FPModule<K>& N) {
  auto st = tor_setup(i, M, N);
  if (st.zero) return zero_module(M.ring);
  const QuotientRing<K>& R = *M.ring;
  auto keep = minimal_generator_indices(R, st.rank, st.shifts, st.fams, st.boundaries, st.cycles);
  std::vector<Vec<K>> gens;
  std::vector<int> degs;
  for (auto k : keep) {
    degs.push_back(vec_degree(R.ambient(), st.cycles[k], st.shifts));
    gens.push_back(std::move(st.cycles[k]));
  }
  auto rels = relations_of(R, st.rank, st.shifts, st.fams, gens, st.boundaries);
  return minimize_relations(FPModule<K>::make(M.ring, std::move(degs), std::move(rels)));
}

template <class K>
std::size_t tor_beta0(int i, const FPModule<K>& M, const FPModule<K>& N) {
  auto st = tor_setup(i, M, N);
  if (st.zero) return 0;
  return minimal_generator_indices(*M.ring, st.rank, st.shifts, st.fams, st.boundaries, st.cycles).size();
}

// ---------------------------------------------------------------------------
// Rank and depth

template <class K>
int module_rank(const FPModule<K>& M) {
  FPModule<K> Mm = minimal_presentation(M);
  const QuotientRing<K>& R = *M.ring;
  const std::size_t n = Mm.ngens();
  std::vector<std::vector<Polynomial<K>>> cols;
  for (const auto& v : Mm.relations) cols.push_back(vec_to_column(R.S(), v, n));
  // fraction-free elimination on columns; pivots are nonzero modulo the ring
  std::size_t rk = 0;
  for (std::size_t row = 0; row < n && rk < cols.size(); ++row) {
    std::size_t p = rk;
    while (p < cols.size() && R.is_zero(cols[p][row])) ++p;
    if (p == cols.size()) continue;
    std::swap(cols[rk], cols[p]);
    const Polynomial<K> piv = cols[rk][row];
    for (std::size_t q = rk + 1; q < cols.size(); ++q) {
      Polynomial<K> e = cols[q][row];
      if (R.is_zero(e)) continue;
      for (std::size_t r = 0; r < n; ++r) cols[q][r] = R.reduce(piv * cols[q][r] - e * cols[rk][r]);
    }
    ++rk;
  }
  return static_cast<int>(n - rk);
}

template <class K>
int generic_rank_by_minors(const QuotientRing<K>& R, const std::vector<Vec<K>>& columns, std::uint32_t rows) {
  std::vector<std::vector<Polynomial<K>>> A;
  for (const auto& v : columns) A.push_back(vec_to_column(R.S(), v, rows));
  const std::size_t ncols = A.size();
  std::function<Polynomial<K>(const std::vector<std::size_t>&, const std::vector<std::size_t>&)> det =
      [&](const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) -> Polynomial<K> {
    if (rs.size() == 1) return A[cs[0]][rs[0]];
    Polynomial<K> acc(R.S());
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const auto& e = A[cs[k]][rs[0]];
      if (e.is_zero()) continue;
      std::vector<std::size_t> r2(rs.begin() + 1, rs.end()), c2;
      for (std::size_t q = 0; q < cs.size(); ++q)
        if (q != k) c2.push_back(cs[q]);
      Polynomial<K> term = e * det(r2, c2);
      acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return R.reduce(acc);
  };
  auto subsets = [](std::size_t n, std::size_t t) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (cur.size() == t) {
        out.push_back(cur);
        return;
      }
      for (std::size_t j = i; j < n; ++j) {
        cur.push_back(j);
        go(j + 1);
        cur.pop_back();
      }
    };
    go(0);
    return out;
  };
  for (std::size_t t = std::min<std::size_t>(rows, ncols); t >= 1; --t) {
    auto rsets = subsets(rows, t);
    auto csets = subsets(ncols, t);
    for (const auto& rs : rsets)
      for (const auto& cs : csets)
        if (!R.is_zero(det(rs, cs))) return static_cast<int>(t);
  }
  return 0;
}

template <class K>
std::optional<int> depth(const FPModule<K>& M, int bound) {
  auto k = FPModule<K>::residue_field(M.ring);
  for (int i = 0; i <= bound; ++i)
    if (!ext_vanishes(i, k, M)) return i;
  return std::nullopt;
}

template <class K>
std::vector<std::size_t> bass_numbers(const FPModule<K>& M, int i_max) {
  auto k = FPModule<K>::residue_field(M.ring);
  std::vector<std::size_t> out;
  for (int i = 0; i <= i_max; ++i) out.push_back(ext_beta0(i, k, M));
  return out;
}

// ---------------------------------------------------------------------------
// Hilbert series

template <class K>
HilbertSeries hilbert_series(const FPModule<K>& M) {
  FPModule<K> Mm = minimal_presentation(M);
  const QuotientRing<K>& R = *M.ring;
  const int n = R.nvars();
  if (Mm.ngens() == 0) return {};
  QRingPtr<K> Sq = ambient_ring(R);
  FPModule<K> MS = Mm;
  if (Sq) {
    std::vector<Vec<K>> rels = Mm.relations;
    for (std::uint32_t j = 0; j < Mm.ngens(); ++j)
      for (const auto& f : R.gb()) {
        Vec<K> v;
        for (const auto& t : f.terms()) v.push_back({t.m, j, t.c});
        rels.push_back(std::move(v));
      }
    MS = FPModule<K>::make(Sq, Mm.degrees, std::move(rels));
  }
  auto F = free_resolution(MS, n + 1);
  if (!F.complete) throw AlgebraError("internal: resolution over the polynomial ring did not terminate");
  int low = 1 << 30, high = -(1 << 30);
  for (const auto& ds : F.degrees)
    for (int d : ds) {
      low = std::min(low, d);
      high = std::max(high, d);
    }
  std::vector<long long> c(high - low + 1, 0);
  for (std::size_t i = 0; i < F.degrees.size(); ++i)
    for (int d : F.degrees[i]) c[d - low] += (i % 2 == 0) ? 1 : -1;
  return HilbertSeries::from_raw(low, std::move(c), n);
}

namespace {

using Numer = std::vector<long long>;

Numer poly_mul_shift(const Numer& a, long long scale, int shift) {
  Numer out(a.size() + shift, 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i + shift] += scale * a[i];
  return out;
}

void poly_add_to(Numer& a, const Numer& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

std::vector<Monomial> minimalize(std::vector<Monomial> g) {
  std::sort(g.begin(), g.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.words() < b.words();
  });
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::vector<Monomial> out;
  for (const auto& m : g) {
    bool red = false;
    for (const auto& o : out)
      if (o.divides(m)) {
        red = true;
        break;
      }
    if (!red) out.push_back(m);
  }
  return out;
}

Numer monomial_numer(int nvars, std::vector<Monomial> gens) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {1};
  if (gens.front().is_one()) return {};
  // all generators pure powers: product of (1 - t^a)
  std::vector<int> count(nvars, 0);
  bool pure = true;
  for (const auto& m : gens) {
    int vars = 0;
    for (int i = 0; i < nvars; ++i)
      if (m.exponent(i)) {
        ++vars;
        ++count[i];
      }
    if (vars > 1) pure = false;
  }
  if (pure) {
    Numer acc{1};
    for (const auto& m : gens) {
      Numer f = poly_mul_shift(acc, -1, static_cast<int>(m.degree()));
      poly_add_to(acc, f);
    }
    return acc;
  }
  int x = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
  // N(J) = (1 - t) N(J without x-generators) + t N(J : x)
  std::vector<Monomial> without, quotient;
  Monomial xm;
  xm.set_exponent(x, 1);
  for (const auto& m : gens) {
    if (m.exponent(x) == 0) without.push_back(m);
    quotient.push_back(m.exponent(x) ? m / xm : m);
  }
  Numer a = monomial_numer(nvars, without);
  Numer out = a;
  poly_add_to(out, poly_mul_shift(a, -1, 1));
  poly_add_to(out, poly_mul_shift(monomial_numer(nvars, quotient), 1, 1));
  return out;
}

}  // namespace

std::vector<long long> monomial_hilbert_numerator(int nvars, std::vector<Monomial> gens) {
  auto r = monomial_numer(nvars, std::move(gens));
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

template <class K>
HilbertSeries hilbert_series_by_leading_terms(const FPModule<K>& M) {
  const QuotientRing<K>& R = *M.ring;
  const std::uint32_t n = M.ngens();
  if (n == 0) return {};
  std::vector<std::vector<Monomial>> leads(n);
  for (const auto& g : R.gb())
    for (auto& l : leads) l.push_back(g.lead_monomial());
  if (!M.relations.empty()) {
    auto fam = relation_family(M, 1);
    for (const auto& v : fam.gb) leads[v.front().comp].push_back(v.front().m);
  }
  int low = *std::min_element(M.degrees.begin(), M.degrees.end());
  std::vector<long long> c;
  for (std::uint32_t j = 0; j < n; ++j) {
    auto num = monomial_hilbert_numerator(R.nvars(), leads[j]);
    Numer shifted = poly_mul_shift(num, 1, M.degrees[j] - low);
    poly_add_to(c, shifted);
  }
  return HilbertSeries::from_raw(low, std::move(c), R.nvars());
}

template <class K>
long long multiplicity(const FPModule<K>& M) {
  return hilbert_series(M).multiplicity();
}

#define CANONICA_INSTANTIATE(K)                                                                                    \
  template struct FPModule<K>;                                                                                     \
  template struct FreeResolution<K>;                                                                               \
  template std::vector<Vec<K>> syzygy_module(const QuotientRing<K>&, const std::vector<Vec<K>>&, std::uint32_t,    \
                                             const std::vector<int>&);                                             \
  template std::vector<Vec<K>> syzygies_raw(const QuotientRing<K>&, const std::vector<Vec<K>>&, std::uint32_t,     \
                                            const std::vector<int>&, bool);                                        \
  template std::vector<std::size_t> minimal_generator_indices(const QuotientRing<K>&, std::uint32_t,               \
                                                              const std::vector<int>&,                             \
                                                              const std::vector<Family<K>>&,                       \
                                                              const std::vector<Vec<K>>&,                          \
                                                              const std::vector<Vec<K>>&);                         \
  template Family<K> relation_family(const FPModule<K>&, std::uint32_t, std::uint32_t);                            \
  template FPModule<K> minimal_presentation(const FPModule<K>&);                                                   \
  template FPModule<K> minimize_relations(const FPModule<K>&);                                                     \
  template std::size_t beta0(const FPModule<K>&);                                                                  \
  template bool is_zero_module(const FPModule<K>&);                                                                \
  template FreeResolution<K> free_resolution(const FPModule<K>&, int);                                             \
  template HomResult<K> hom(const FPModule<K>&, const FPModule<K>&, const std::vector<Vec<K>>&);                   \
  template FPModule<K> tensor(const FPModule<K>&, const FPModule<K>&);                                             \
  template FPModule<K> ext(int, const FPModule<K>&, const FPModule<K>&);                                           \
  template bool ext_vanishes(int, const FPModule<K>&, const FPModule<K>&);                                         \
  template std::size_t ext_beta0(int, const FPModule<K>&, const FPModule<K>&);                                     \
  template FPModule<K> tor(int, const FPModule<K>&, const FPModule<K>&);                                           \
  template std::size_t tor_beta0(int, const FPModule<K>&, const FPModule<K>&);                                     \
  template int module_rank(const FPModule<K>&);                                                                    \
  template int generic_rank_by_minors(const QuotientRing<K>&, const std::vector<Vec<K>>&, std::uint32_t);          \
  template std::optional<int> depth(const FPModule<K>&, int);                                                      \
  template std::vector<std::size_t> bass_numbers(const FPModule<K>&, int);                                         \
  template HilbertSeries hilbert_series(const FPModule<K>&);                                                       \
  template HilbertSeries hilbert_series_by_leading_terms(const FPModule<K>&);                                      \
  template long long multiplicity(const FPModule<K>&);

CANONICA_INSTANTIATE(PrimeField)
CANONICA_INSTANTIATE(RationalField)

}  // namespace canonica
