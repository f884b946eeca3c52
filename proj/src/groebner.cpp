#include "canonica/groebner.hpp"

#include <algorithm>
#include <queue>

namespace canonica {

std::uint64_t divisibility_mask(const Monomial& m) {
  std::uint64_t mask = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = m.exponent(i);
    if (e >= 1) mask |= 1ull << i;
    if (e >= 2) mask |= 1ull << (24 + i);
    if (e >= 3 && i < 16) mask |= 1ull << (48 + i);
  }
  return mask;
}

template <class K>
Family<K> scalar_family(const std::vector<Polynomial<K>>& gb, std::uint32_t rank) {
  Family<K> f;
  for (const auto& g : gb) {
    Vec<K> v;
    for (const auto& t : g.terms()) v.push_back({t.m, 0, t.c});
    f.gb.push_back(std::move(v));
  }
  f.width = 1;
  f.first = 0;
  f.nblocks = rank;
  f.scalar = true;
  return f;
}

// ---------------------------------------------------------------------------
// Reducer

template <class K>
Reducer<K>::Reducer(const PolyRing<K>& R, std::vector<Family<K>> families, std::uint32_t rank, std::vector<int> shifts)
    : R_(R), families_(std::move(families)), rank_(rank), shifts_(std::move(shifts)), by_comp_(rank) {
  for (const auto& f : families_) {
    if (f.width == 0) throw AlgebraError("family of width zero");
    if (f.first + f.width * f.nblocks > rank_) throw AlgebraError("family exceeds module rank");
    done_.emplace_back(f.nblocks, 0);
  }
}

template <class K>
int Reducer<K>::push(Vec<K> v, Vec<K> track, int sugar, bool is_virtual, bool scalar) {
  const K& F = R_.field();
  if (!F.is_one(v.front().c)) {
    auto inv = F.inv(v.front().c);
    for (auto& t : v) t.c = F.mul(t.c, inv);
    for (auto& t : track) t.c = F.mul(t.c, inv);
  }
  Elem e;
  e.lm = v.front().m;
  e.comp = v.front().comp;
  if (e.comp >= rank_) throw AlgebraError("vector component out of range");
  e.mask = divisibility_mask(e.lm);
  e.v = std::move(v);
  e.track = std::move(track);
  e.sugar = sugar;
  e.is_virtual = is_virtual;
  e.scalar = scalar;
  int id = static_cast<int>(elems_.size());
  by_comp_[e.comp].push_back(id);
  elems_.push_back(std::move(e));
  return id;
}

template <class K>
void Reducer<K>::materialize(std::uint32_t comp) {
  for (std::size_t fi = 0; fi < families_.size(); ++fi) {
    const Family<K>& f = families_[fi];
    if (comp < f.first || comp >= f.first + f.width * f.nblocks) continue;
    std::uint32_t b = (comp - f.first) / f.width;
    if (done_[fi][b]) continue;
    done_[fi][b] = 1;
    const std::uint32_t off = f.first + b * f.width;
    for (const auto& g : f.gb) {
      if (g.empty()) continue;
      Vec<K> v = g;
      for (auto& t : v) t.comp += off;
      int sugar = vec_degree(R_, v, shifts_);
      push(std::move(v), {}, sugar, true, f.scalar);
    }
  }
}

template <class K>
int Reducer<K>::add(Vec<K> v, Vec<K> track, int sugar) {
  if (v.empty()) throw AlgebraError("cannot add a zero reducer");
  materialize(v.front().comp);
  return push(std::move(v), std::move(track), sugar, false, false);
}

template <class K>
int Reducer<K>::find(std::uint32_t comp, const Monomial& m) {
  materialize(comp);
  const std::uint64_t mask = divisibility_mask(m);
  for (int id : by_comp_[comp]) {
    const Elem& e = elems_[id];
    if ((e.mask & ~mask) == 0 && e.lm.divides(m)) return id;
  }
  return -1;
}

template <class K>
void Reducer<K>::reduce(Vec<K>& v, bool full, Vec<K>* track, int* sugar) {
  const K& F = R_.field();
  Vec<K> out;
  std::size_t pos = 0;
  while (pos < v.size()) {
    const VTerm<K>& lt = v[pos];
    int id = find(lt.comp, lt.m);
    if (id < 0) {
      if (!full) break;
      out.push_back(lt);
      ++pos;
      continue;
    }
    const Elem& r = elems_[id];
    Monomial q = lt.m / r.lm;
    auto c = F.neg(lt.c);  // reducers are monic
    ++steps_;
    if (track && !r.track.empty()) *track = vec_axpy(R_, *track, r.track, c, q);
    if (sugar) *sugar = std::max(*sugar, R_.degree(q) + r.sugar);
    v = vec_axpy(R_, v, r.v, c, q, 0, pos + 1, 1);
    pos = 0;
  }
  if (full) {
    v = std::move(out);
  } else if (pos > 0) {
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(pos));
  }
}

// ---------------------------------------------------------------------------
// Engine

namespace {

template <class K>
struct Pair {
  int sugar;
  int klass;  // 0 = S-pair, 1 = base input, 2 = counted input
  Monomial lcm;
  std::uint32_t comp;
  int i;
  int j;  // -1 for inputs
  bool dead = false;
};

template <class K>
class Engine {
 public:
  Engine(const EngineConfig<K>& cfg, std::vector<EngineInput<K>>& inputs)
      : cfg_(cfg),
        R_(*cfg.ring),
        inputs_(inputs),
        main_(R_, cfg.families, cfg.rank, cfg.shifts),
        trk_(R_, cfg.track_families, std::max<std::uint32_t>(cfg.track_rank, 1)),
        heap_(PairGreater{this}),
        pairs_by_comp_(cfg.rank) {}

  EngineResult<K> run() {
    EngineResult<K> res;
    res.kept.assign(inputs_.size(), false);
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      auto& in = inputs_[i];
      if (in.v.empty()) {
        collect(res, std::move(in.track));
        continue;
      }
      Pair<K> p{vec_degree(R_, in.v, cfg_.shifts), in.kind == InputKind::Base ? 1 : 2, in.v.front().m,
                in.v.front().comp, static_cast<int>(i), -1};
      enqueue(std::move(p));
    }
    while (!heap_.empty()) {
      int pid = heap_.top();
      heap_.pop();
      Pair<K> p = pairs_[pid];
      if (p.dead) continue;
      Vec<K> v, track;
      int sugar = p.sugar;
      if (p.j < 0) {
        v = std::move(inputs_[p.i].v);
        track = std::move(inputs_[p.i].track);
      } else {
        ++res.pairs_processed;
        spoly(p, v, track);
      }
      main_.reduce(v, cfg_.tail_reduce, cfg_.tracking ? &track : nullptr, &sugar);
      if (v.empty()) {
        collect(res, std::move(track));
        continue;
      }
      if (p.j < 0) res.kept[p.i] = true;
      if (cfg_.tracking) trk_reduce(track);
      int h = main_.add(std::move(v), std::move(track), sugar);
      update(h, res);
    }
    finish(res);
    res.reduction_steps = main_.reduction_steps();
    return res;
  }

 private:
  struct PairGreater {
    Engine* e;
    bool operator()(int a, int b) const { return e->pair_less(b, a); }
  };

  bool pair_less(int a, int b) const {
    const Pair<K>& x = pairs_[a];
    const Pair<K>& y = pairs_[b];
    if (x.sugar != y.sugar) return x.sugar < y.sugar;
    if (x.klass != y.klass) return x.klass < y.klass;
    if (x.j < 0 && y.j < 0) return x.i < y.i;  // inputs keep their given order
    int c = pot_compare(R_.order(), x.comp, x.lcm, y.comp, y.lcm);
    if (c != 0) return c < 0;
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
  }

  void enqueue(Pair<K> p) {
    int id = static_cast<int>(pairs_.size());
    if (p.j >= 0) pairs_by_comp_[p.comp].push_back(id);
    pairs_.push_back(std::move(p));
    heap_.push(id);
  }

  void trk_reduce(Vec<K>& t) {
    if (!cfg_.track_families.empty() && !t.empty()) trk_.reduce(t, true);
  }

  void collect(EngineResult<K>& res, Vec<K> track) {
    if (!cfg_.tracking || !cfg_.collect_syzygies) return;
    trk_reduce(track);
    if (!track.empty()) res.syzygies.push_back(std::move(track));
  }

  void spoly(const Pair<K>& p, Vec<K>& v, Vec<K>& track) {
    const auto& a = main_.elem(p.i);
    const auto& b = main_.elem(p.j);
    const K& F = R_.field();
    Monomial la = p.lcm / a.lm, lb = p.lcm / b.lm;
    Vec<K> head;
    head.reserve(a.v.size());
    for (std::size_t k = 1; k < a.v.size(); ++k) head.push_back({a.v[k].m * la, a.v[k].comp, a.v[k].c});
    v = vec_axpy(R_, head, b.v, F.neg(F.one()), lb, 0, 0, 1);
    if (cfg_.tracking) {
      Vec<K> ta;
      if (!a.track.empty()) ta = vec_axpy(R_, Vec<K>{}, a.track, F.one(), la);
      track = b.track.empty() ? std::move(ta) : vec_axpy(R_, ta, b.track, F.neg(F.one()), lb);
    }
  }

  /// Tracks of the Koszul relation p_g * h - p_h * g for coprime leads.
  void koszul(int g, int h, EngineResult<K>& res) {
    if (!cfg_.tracking || !cfg_.collect_syzygies) return;
    const auto& eg = main_.elem(g);
    const auto& eh = main_.elem(h);
    const K& F = R_.field();
    Vec<K> t;
    if (!eh.track.empty())
      for (const auto& term : eg.v) t = vec_axpy(R_, t, eh.track, term.c, term.m);
    if (!eg.track.empty())
      for (const auto& term : eh.v) t = vec_axpy(R_, t, eg.track, F.neg(term.c), term.m);
    collect(res, std::move(t));
  }

  struct Cand {
    int g;
    Monomial lcm;
    bool coprime_ok;
    bool keep = true;
  };

  void update(int h, EngineResult<K>& res) {
    const auto& eh = main_.elem(h);
    const std::uint32_t comp = eh.comp;
    std::vector<int> partners = main_.at_comp(comp);
    std::vector<Cand> cands;
    for (int g : partners) {
      if (g == h) continue;
      const auto& eg = main_.elem(g);
      bool ok = (cfg_.rank == 1 || eg.scalar) && eg.lm.coprime(eh.lm);
      cands.push_back({g, eg.lm.lcm(eh.lm), ok});
    }
    const Monomial hlm = eh.lm;
    const int hsugar = eh.sugar;
    auto sugar_of = [&](int g, const Monomial& lcm) {
      const auto& eg = main_.elem(g);
      return std::max(eg.sugar + R_.degree(lcm / eg.lm), hsugar + R_.degree(lcm / hlm));
    };
    if (!cfg_.use_criteria) {
      for (auto& c : cands) enqueue(Pair<K>{sugar_of(c.g, c.lcm), 0, c.lcm, comp, c.g, h});
      return;
    }
    // Chain criterion among the new pairs: drop those whose lcm is a proper
    // multiple of another new lcm.
    for (auto& c : cands) {
      for (const auto& d : cands) {
        if (&c == &d) continue;
        if (d.lcm != c.lcm && d.lcm.divides(c.lcm)) {
          c.keep = false;
          break;
        }
      }
    }
    // Equal lcms: one representative; a coprime member discards the group.
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (!cands[a].keep) continue;
      std::vector<std::size_t> group{a};
      for (std::size_t b = a + 1; b < cands.size(); ++b)
        if (cands[b].keep && cands[b].lcm == cands[a].lcm) group.push_back(b);
      std::size_t coprime = group.size();
      for (std::size_t k = 0; k < group.size(); ++k)
        if (cands[group[k]].coprime_ok) {
          coprime = k;
          break;
        }
      for (std::size_t k = 1; k < group.size(); ++k) cands[group[k]].keep = false;
      if (coprime < group.size()) {
        cands[a].keep = false;
        koszul(cands[group[coprime]].g, h, res);
        ++res.pairs_skipped;
      }
    }
    // Old pairs made redundant by the new leading term.
    for (int pid : pairs_by_comp_[comp]) {
      Pair<K>& p = pairs_[pid];
      if (p.dead || !hlm.divides(p.lcm)) continue;
      const auto& a = main_.elem(p.i);
      const auto& b = main_.elem(p.j);
      if (a.lm.lcm(hlm) != p.lcm && b.lm.lcm(hlm) != p.lcm) {
        p.dead = true;
        ++res.pairs_skipped;
      }
    }
    auto& lst = pairs_by_comp_[comp];
    lst.erase(std::remove_if(lst.begin(), lst.end(), [&](int pid) { return pairs_[pid].dead; }), lst.end());
    for (auto& c : cands) {
      if (c.keep)
        enqueue(Pair<K>{sugar_of(c.g, c.lcm), 0, c.lcm, comp, c.g, h});
      else
        ++res.pairs_skipped;
    }
  }

  void finish(EngineResult<K>& res) {
    std::vector<int> chosen;
    for (int i = 0; i < main_.size(); ++i) {
      const auto& e = main_.elem(i);
      if (e.is_virtual) continue;
      bool redundant = false;
      if (cfg_.interreduce_output) {
        for (int j : main_.at_comp(e.comp)) {
          if (j == i) continue;
          const auto& f = main_.elem(j);
          if (f.is_virtual) continue;
          if (f.lm.divides(e.lm) && (f.lm != e.lm || j < i)) {
            redundant = true;
            break;
          }
        }
      }
      if (!redundant) chosen.push_back(i);
    }
    struct Out {
      Vec<K> v;
      Vec<K> t;
    };
    std::vector<Out> outs;
    for (int i : chosen) {
      const auto& e = main_.elem(i);
      Vec<K> v = e.v;
      Vec<K> t = cfg_.keep_gb_tracks ? e.track : Vec<K>{};
      if (cfg_.interreduce_output && v.size() > 1) {
        Vec<K> tail(v.begin() + 1, v.end());
        Vec<K> dt;
        main_.reduce(tail, true, cfg_.keep_gb_tracks ? &dt : nullptr);
        Vec<K> nv;
        nv.reserve(tail.size() + 1);
        nv.push_back(v.front());
        nv.insert(nv.end(), tail.begin(), tail.end());
        v = std::move(nv);
        if (cfg_.keep_gb_tracks) {
          t = vec_add(R_, t, dt);
          trk_reduce(t);
        }
      }
      outs.push_back({std::move(v), std::move(t)});
    }
    std::sort(outs.begin(), outs.end(),
              [&](const Out& a, const Out& b) { return pot_compare(R_.order(), a.v.front(), b.v.front()) > 0; });
    for (auto& o : outs) {
      res.gb.push_back(std::move(o.v));
      if (cfg_.keep_gb_tracks) res.gb_tracks.push_back(std::move(o.t));
    }
  }

  const EngineConfig<K>& cfg_;
  const PolyRing<K>& R_;
  std::vector<EngineInput<K>>& inputs_;
  Reducer<K> main_;
  Reducer<K> trk_;
  std::vector<Pair<K>> pairs_;
  std::priority_queue<int, std::vector<int>, PairGreater> heap_;
  std::vector<std::vector<int>> pairs_by_comp_;
};

}  // namespace

template <class K>
EngineResult<K> run_engine(const EngineConfig<K>& cfg, std::vector<EngineInput<K>> inputs) {
  if (cfg.ring == nullptr) throw AlgebraError("engine needs a ring");
  if (!cfg.shifts.empty() && cfg.shifts.size() != cfg.rank) throw AlgebraError("shift vector length mismatch");
  for (const auto& in : inputs)
    for (const auto& t : in.v)
      if (t.comp >= cfg.rank) throw AlgebraError("input vector exceeds module rank");
  Engine<K> e(cfg, inputs);
  return e.run();
}

template <class K>
bool satisfies_buchberger_criterion(const EngineConfig<K>& cfg, const std::vector<Vec<K>>& gb) {
  const PolyRing<K>& R = *cfg.ring;
  const K& F = R.field();
  Reducer<K> red(R, cfg.families, cfg.rank, cfg.shifts);
  std::vector<int> ids;
  for (const auto& g : gb) {
    if (g.empty()) return false;
    ids.push_back(red.add(g));
  }
  for (int a : ids) {
    std::vector<int> partners = red.at_comp(red.elem(a).comp);
    for (int b : partners) {
      if (b == a) continue;
      bool b_explicit = std::find(ids.begin(), ids.end(), b) != ids.end();
      if (b_explicit && b < a) continue;
      const auto& ea = red.elem(a);
      const auto& eb = red.elem(b);
      Monomial l = ea.lm.lcm(eb.lm);
      Vec<K> head;
      for (std::size_t k = 1; k < ea.v.size(); ++k) head.push_back({ea.v[k].m * (l / ea.lm), ea.v[k].comp, ea.v[k].c});
      Vec<K> s = vec_axpy(R, head, eb.v, F.neg(F.one()), l / eb.lm, 0, 0, 1);
      red.reduce(s, false);
      if (!s.empty()) return false;
    }
  }
  return true;
}

template <class K>
Vec<K> normal_form_vec(const PolyRing<K>& R, const std::vector<Vec<K>>& gb, const std::vector<Family<K>>& families,
                       std::uint32_t rank, const Vec<K>& v) {
  Reducer<K> red(R, families, rank);
  for (const auto& g : gb)
    if (!g.empty()) red.add(g);
  Vec<K> out = v;
  red.reduce(out, true);
  return out;
}

#define CANONICA_INSTANTIATE(K)                                                                                   \
  template Family<K> scalar_family(const std::vector<Polynomial<K>>&, std::uint32_t);                           \
  template class Reducer<K>;                                                                                      \
  template EngineResult<K> run_engine(const EngineConfig<K>&, std::vector<EngineInput<K>>);                     \
  template bool satisfies_buchberger_criterion(const EngineConfig<K>&, const std::vector<Vec<K>>&);             \
  template Vec<K> normal_form_vec(const PolyRing<K>&, const std::vector<Vec<K>>&, const std::vector<Family<K>>&, \
                                  std::uint32_t, const Vec<K>&);

CANONICA_INSTANTIATE(PrimeField)
CANONICA_INSTANTIATE(RationalField)

}  // namespace canonica
