#include "skeinlab/skein.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>

#include "skeinlab/tlcalc.hpp"

namespace skeinlab {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Classical: return "classical";
    case Variant::Q1: return "q1";
    case Variant::Quantum: return "quantum";
    case Variant::Equivariant: return "equivariant";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "classical") return Variant::Classical;
  if (s == "q1") return Variant::Q1;
  if (s == "quantum") return Variant::Quantum;
  if (s == "equivariant") return Variant::Equivariant;
  throw std::invalid_argument("unknown variant: " + s);
}

// ---------------------------------------------------------------- relation instances

namespace {

int region(int p, int a, int b, int c, int d) {
  if (p < a || p > d) return 0;
  if (p < b) return 1;
  if (p < c) return 2;
  return 3;
}

DottedMatching substitute(const RelationInstance& r, Arc x, Arc y, int dx, int dy) {
  std::vector<Arc> arcs;
  std::map<int, int> dots;
  for (auto [l, rr] : r.base.m.arcs()) {
    if (l == r.a || l == r.b || l == r.c || l == r.d) continue;
    arcs.emplace_back(l, rr);
    if (r.base.dots_on(l)) dots[l] = r.base.dots_on(l);
  }
  arcs.push_back(x);
  arcs.push_back(y);
  if (dx) dots[x.first] = dx;
  if (dy) dots[y.first] = dy;
  return DottedMatching(CrossinglessMatching(r.base.n(), arcs), dots);
}

}  // namespace

DottedMatching RelationInstance::alpha(int dot_ab, int dot_cd) const {
  return substitute(*this, {a, b}, {c, d}, dot_ab, dot_cd);
}

DottedMatching RelationInstance::beta(int dot_ad, int dot_bc) const {
  return substitute(*this, {a, d}, {b, c}, dot_ad, dot_bc);
}

std::vector<Arc> RelationInstance::containers() const {
  std::vector<Arc> out;
  for (auto [l, r] : base.m.arcs())
    if (l < a && r > d) out.emplace_back(l, r);
  return out;
}

bool relation_realizable(const DottedMatching& base, int a, int b, int c, int d) {
  if (!(1 <= a && a < b && b < c && c < d && d <= 2 * base.n())) return false;
  const auto& m = base.m;
  bool alpha = m.partner(a) == b && m.partner(c) == d;
  bool beta = m.partner(a) == d && m.partner(b) == c;
  if (!alpha && !beta) return false;
  for (auto [l, r] : m.arcs()) {
    if (l == a || l == b || l == c || l == d) continue;
    if (region(l, a, b, c, d) != region(r, a, b, c, d)) return false;
  }
  return true;
}

std::vector<RelationInstance> enumerate_relation_instances(int n, RelationKind kind, Variant v, int max_context_dots) {
  std::vector<RelationInstance> out;
  for (auto& m : enumerate_matchings(n)) {
    const auto& arcs = m.arcs();
    auto with_context = [&](const std::vector<Arc>& skip, const std::function<void(const DottedMatching&)>& emit) {
      std::vector<Arc> ctx;
      for (auto& x : arcs)
        if (std::find(skip.begin(), skip.end(), x) == skip.end()) ctx.push_back(x);
      std::map<int, int> dots;
      std::function<void(size_t)> rec = [&](size_t i) {
        if (i == ctx.size()) {
          emit(DottedMatching(m, dots));
          return;
        }
        for (int c = 0; c <= max_context_dots; ++c) {
          if (c) dots[ctx[i].first] = c;
          rec(i + 1);
          dots.erase(ctx[i].first);
        }
      };
      rec(0);
    };
    if (kind == RelationKind::DotReduction) {
      for (auto& x : arcs)
        with_context({x}, [&](const DottedMatching& base) {
          RelationInstance r;
          r.variant = v;
          r.kind = kind;
          r.a = x.first;
          r.b = x.second;
          r.base = base;
          out.push_back(r);
        });
      continue;
    }
    for (auto& x : arcs)
      for (auto& y : arcs) {
        if (x.second >= y.first) continue;
        if (!relation_realizable(DottedMatching(m), x.first, x.second, y.first, y.second)) continue;
        with_context({x, y}, [&](const DottedMatching& base) {
          RelationInstance r;
          r.variant = v;
          r.kind = kind;
          r.a = x.first;
          r.b = x.second;
          r.c = y.first;
          r.d = y.second;
          r.base = base;
          out.push_back(r);
        });
      }
  }
  return out;
}

ClassicalElement relation_element_classical(const RelationInstance& r) {
  ClassicalElement e(Variant::Classical, r.base.n());
  switch (r.kind) {
    case RelationKind::TypeI:
      e.add(r.alpha(1, 0), 1);
      e.add(r.alpha(0, 1), 1);
      e.add(r.beta(1, 0), -1);
      e.add(r.beta(0, 1), -1);
      break;
    case RelationKind::TypeII:
      e.add(r.beta(1, 1), 1);
      e.add(r.alpha(1, 1), -1);
      break;
    case RelationKind::DotReduction:
      e.add(r.base.with_dots(r.a, 2), 1);
      break;
  }
  return e;
}

EquivElement relation_element_equivariant(const RelationInstance& r) {
  EquivElement e(Variant::Equivariant, r.base.n());
  const PolyHT one(1L), h = PolyHT::h(), t = PolyHT::t();
  switch (r.kind) {
    case RelationKind::TypeI:
      e.add(r.alpha(1, 0), one);
      e.add(r.alpha(0, 1), one);
      e.add(r.alpha(0, 0), -h);
      e.add(r.beta(1, 0), -one);
      e.add(r.beta(0, 1), -one);
      e.add(r.beta(0, 0), h);
      break;
    case RelationKind::TypeII:
      e.add(r.beta(1, 1), one);
      e.add(r.beta(0, 0), t);
      e.add(r.alpha(1, 1), -one);
      e.add(r.alpha(0, 0), -t);
      break;
    case RelationKind::DotReduction:
      e.add(r.base.with_dots(r.a, 2), one);
      e.add(r.base.with_dots(r.a, 1), -h);
      e.add(r.base.with_dots(r.a, 0), -t);
      break;
  }
  return e;
}

int q1_sign(const DottedMatching& d) {
  int c = 0;
  for (auto [l, r] : d.m.arcs())
    for (auto [l2, r2] : d.m.arcs()) {
      if (!(l < l2 && r2 < r)) continue;
      ++c;
      if (d.dots_on(l2)) ++c;
    }
  return c % 2 ? -1 : 1;
}

int q1_sign_dotted_over_undotted(const DottedMatching& d) {
  int c = 0;
  for (auto [l, r] : d.m.arcs()) {
    if (!d.dots_on(l)) continue;
    for (auto [l2, r2] : d.m.arcs())
      if (l < l2 && r2 < r && !d.dots_on(l2)) ++c;
  }
  return c % 2 ? -1 : 1;
}

// ---------------------------------------------------------------- rewriting

namespace {

int depth(const DottedMatching& d, int left) {
  return static_cast<int>(containing_arcs(d.m, {left, d.m.partner(left)}).size());
}

Arc parent(const DottedMatching& d, int left) {
  auto c = containing_arcs(d.m, {left, d.m.partner(left)});
  if (c.empty()) throw std::logic_error("outer arc has no container");
  return c.front();
}

RelationInstance instance_for(const DottedMatching& d, const RewriteChoice& c) {
  RelationInstance r;
  r.base = d;
  r.a = c.container_left;
  r.d = d.m.partner(c.container_left);
  r.b = c.arc_left;
  r.c = d.m.partner(c.arc_left);
  if (!relation_realizable(d, r.a, r.b, r.c, r.d)) throw std::logic_error("rewrite not realizable");
  return r;
}

// Deterministic pivot: deepest dotted arc, smallest left endpoint on ties.
std::optional<int> pivot(const DottedMatching& d, bool multi) {
  std::optional<int> best;
  int best_depth = -1;
  for (auto& [l, c] : d.dots) {
    if (multi ? c < 2 : c != 1) continue;
    int dep = depth(d, l);
    if (!multi && dep == 0) continue;
    if (dep > best_depth) {
      best_depth = dep;
      best = l;
    }
  }
  return best;
}

// Termination measure: (dots beyond one per arc, containment statistic).
std::pair<int, int> measure(const DottedMatching& d) {
  int extra = 0;
  for (auto& [l, c] : d.dots) extra += std::max(0, c - 1);
  return {extra, containment_statistic(d)};
}

template <class C, class Step>
SkeinElement<C> normalize(const SkeinElement<C>& x, Step step) {
  SkeinElement<C> done(x.variant, x.n);
  std::map<DottedMatching, C> work = x.terms;
  while (!work.empty()) {
    // Largest measure first so each diagram is expanded once.
    auto it = std::max_element(work.begin(), work.end(), [](auto& p, auto& q) { return measure(p.first) < measure(q.first); });
    DottedMatching d = it->first;
    C c = it->second;
    work.erase(it);
    auto repl = step(d);
    if (!repl) {
      done.add(d, c);
      continue;
    }
    for (auto& [d2, c2] : repl->terms) {
      if (!(measure(d2) < measure(d))) throw std::logic_error("rewrite did not decrease the termination measure");
      auto [jt, fresh] = work.emplace(d2, c2 * c);
      if (!fresh) {
        jt->second = jt->second + c2 * c;
        if (is_zero(jt->second)) work.erase(jt);
      }
    }
  }
  return done;
}

}  // namespace

std::vector<RewriteChoice> admissible_rewrites(const DottedMatching& d) {
  std::vector<RewriteChoice> out;
  for (auto& [l, c] : d.dots) {
    if (c != 1 || depth(d, l) == 0) continue;
    Arc p = parent(d, l);
    if (d.dots_on(p.first) > 1) continue;
    out.push_back({l, p.first});
  }
  return out;
}

ClassicalElement rewrite_classical(const DottedMatching& d, const RewriteChoice& c) {
  auto r = instance_for(d, c);
  ClassicalElement e(Variant::Classical, d.n());
  if (d.dots_on(r.a) == 0) {
    e.add(r.alpha(1, 0), 1);
    e.add(r.alpha(0, 1), 1);
    e.add(r.beta(1, 0), -1);
  } else {
    e.add(r.alpha(1, 1), 1);
  }
  return e;
}

EquivElement rewrite_equivariant(const DottedMatching& d, const RewriteChoice& c) {
  auto r = instance_for(d, c);
  EquivElement e(Variant::Equivariant, d.n());
  const PolyHT one(1L), h = PolyHT::h(), t = PolyHT::t();
  if (d.dots_on(r.a) == 0) {
    e.add(r.alpha(1, 0), one);
    e.add(r.alpha(0, 1), one);
    e.add(r.beta(1, 0), -one);
    e.add(r.alpha(0, 0), -h);
    e.add(r.beta(0, 0), h);
  } else {
    e.add(r.alpha(1, 1), one);
    e.add(r.alpha(0, 0), t);
    e.add(r.beta(0, 0), -t);
  }
  return e;
}

EquivElement rewrite_dot_reduction(const DottedMatching& d, int arc_left) {
  int c = d.dots_on(arc_left);
  if (c < 2) throw std::invalid_argument("dot reduction needs two dots");
  EquivElement e(Variant::Equivariant, d.n());
  e.add(d.with_dots(arc_left, c - 1), PolyHT::h());
  e.add(d.with_dots(arc_left, c - 2), PolyHT::t());
  return e;
}

ClassicalElement reduce_classical(const ClassicalElement& x) {
  return normalize(x, [](const DottedMatching& d) -> std::optional<ClassicalElement> {
    if (d.max_dots_per_arc() > 1) return ClassicalElement(Variant::Classical, d.n());
    auto p = pivot(d, false);
    if (!p) return std::nullopt;
    return rewrite_classical(d, {*p, parent(d, *p).first});
  });
}

namespace {

ClassicalElement rescale(const ClassicalElement& x) {
  ClassicalElement r(x.variant, x.n);
  for (auto& [d, c] : x.terms) r.add(d, c * q1_sign(d));
  return r;
}

}  // namespace

ClassicalElement reduce_q1(const ClassicalElement& x) {
  auto r = rescale(reduce_classical(rescale(x)));
  r.variant = Variant::Q1;
  return r;
}

EquivElement reduce_equivariant(const EquivElement& x) {
  return normalize(x, [](const DottedMatching& d) -> std::optional<EquivElement> {
    if (auto m = pivot(d, true)) return rewrite_dot_reduction(d, *m);
    auto p = pivot(d, false);
    if (!p) return std::nullopt;
    return rewrite_equivariant(d, {*p, parent(d, *p).first});
  });
}

ClassicalElement reduce_classical_random(const ClassicalElement& x, std::mt19937_64& rng) {
  return normalize(x, [&](const DottedMatching& d) -> std::optional<ClassicalElement> {
    if (d.max_dots_per_arc() > 1) return ClassicalElement(Variant::Classical, d.n());
    auto opts = admissible_rewrites(d);
    if (opts.empty()) return std::nullopt;
    std::uniform_int_distribution<size_t> pick(0, opts.size() - 1);
    return rewrite_classical(d, opts[pick(rng)]);
  });
}

EquivElement reduce_equivariant_random(const EquivElement& x, std::mt19937_64& rng) {
  return normalize(x, [&](const DottedMatching& d) -> std::optional<EquivElement> {
    std::vector<int> multi;
    for (auto& [l, c] : d.dots)
      if (c > 1) multi.push_back(l);
    auto opts = admissible_rewrites(d);
    size_t total = multi.size() + opts.size();
    if (total == 0) return std::nullopt;
    std::uniform_int_distribution<size_t> pick(0, total - 1);
    size_t i = pick(rng);
    if (i < multi.size()) return rewrite_dot_reduction(d, multi[i]);
    return rewrite_equivariant(d, opts[i - multi.size()]);
  });
}

std::vector<ClassicalElement> derive_q1_relations(int n) {
  std::vector<ClassicalElement> out;
  for (auto kind : {RelationKind::TypeI, RelationKind::TypeII})
    for (auto& r : enumerate_relation_instances(n, kind, Variant::Quantum)) {
      auto e = specialize_q_one(derive_quantum_relation(r));
      e.variant = Variant::Q1;
      out.push_back(e);
    }
  return out;
}

// ---------------------------------------------------------------- presentations

namespace {

template <class C>
std::vector<C> coordinates(const std::map<DottedMatching, int>& index, const SkeinElement<C>& e) {
  std::vector<C> v(index.size(), C(0L));
  for (auto& [d, c] : e.terms) {
    auto it = index.find(d);
    if (it == index.end()) throw std::logic_error("relation leaves the ambient module");
    v[static_cast<size_t>(it->second)] = c;
  }
  return v;
}

}  // namespace

PresentationRank presentation_rank(int n, int k, Variant v, std::uint64_t) {
  if (v == Variant::Equivariant || v == Variant::Quantum)
    throw std::invalid_argument("presentation_rank: use the equivariant or quantum engines");
  auto ambient = enumerate_dotted(n, k, 1);
  std::map<DottedMatching, int> index;
  for (auto& d : ambient) index.emplace(d, static_cast<int>(index.size()));
  std::vector<ClassicalElement> rels;
  if (v == Variant::Classical) {
    for (auto kind : {RelationKind::TypeI, RelationKind::TypeII})
      for (auto& r : enumerate_relation_instances(n, kind, v)) {
        auto e = relation_element_classical(r);
        if (!e.is_zero() && e.terms.begin()->first.total_dots() == k) rels.push_back(e);
      }
  } else {
    for (auto& e : derive_q1_relations(n))
      if (!e.is_zero() && e.terms.begin()->first.total_dots() == k) rels.push_back(e);
  }
  PresentationRank res;
  res.ambient = static_cast<int>(ambient.size());
  res.relations = static_cast<int>(rels.size());
  Lattice lat(res.ambient);
  for (auto& e : rels) lat.insert(coordinates(index, e));
  res.rank = lat.cokernel_free_rank();
  for (auto& d : lat.cokernel_torsion())
    if (d > 1) res.torsion.push_back(d);
  return res;
}

PresentationRank presentation_rank_equivariant(int n, const Rat& h, const Rat& t) {
  std::vector<DottedMatching> ambient;
  for (int k = 0; k <= n; ++k) {
    auto part = enumerate_dotted(n, k, 1);
    ambient.insert(ambient.end(), part.begin(), part.end());
  }
  std::map<DottedMatching, int> index;
  for (auto& d : ambient) index.emplace(d, static_cast<int>(index.size()));
  std::vector<std::vector<Rat>> rows;
  for (auto kind : {RelationKind::TypeI, RelationKind::TypeII})
    for (auto& r : enumerate_relation_instances(n, kind, Variant::Equivariant)) {
      auto e = relation_element_equivariant(r);
      std::vector<Rat> row(index.size(), Rat(0));
      for (auto& [d, c] : e.terms) row[static_cast<size_t>(index.at(d))] = c.eval(h, t);
      rows.push_back(std::move(row));
    }
  PresentationRank res;
  res.ambient = static_cast<int>(ambient.size());
  res.relations = static_cast<int>(rows.size());
  res.rank = res.ambient - rank_of(rows, res.ambient);
  return res;
}

// ---------------------------------------------------------------- confluence

namespace {

DottedMatching random_diagram(int n, int max_dots, std::mt19937_64& rng) {
  auto ms = enumerate_matchings(n);
  std::uniform_int_distribution<size_t> pm(0, ms.size() - 1);
  const auto& m = ms[pm(rng)];
  std::uniform_int_distribution<int> pd(0, max_dots);
  std::map<int, int> dots;
  for (auto& a : m.arcs())
    if (int c = pd(rng)) dots[a.first] = c;
  return DottedMatching(m, dots);
}

}  // namespace

ConfluenceReport confluence_check(int n, Variant v, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ConfluenceReport rep;
  for (int i = 0; i < trials; ++i) {
    ++rep.trials;
    bool same = false;
    DottedMatching d;
    if (v == Variant::Equivariant) {
      d = random_diagram(n, 2, rng);
      auto x = EquivElement::single(v, d, PolyHT(1L));
      same = reduce_equivariant(x) == reduce_equivariant_random(x, rng);
    } else if (v == Variant::Classical || v == Variant::Q1) {
      d = random_diagram(n, 1, rng);
      auto x = ClassicalElement::single(Variant::Classical, d, Int(1));
      same = reduce_classical(x) == reduce_classical_random(x, rng);
    } else {
      throw std::invalid_argument("confluence_check: quantum reduction is not a rewriting system");
    }
    if (same)
      ++rep.agreements;
    else
      rep.failures.push_back(ascii(d));
  }
  return rep;
}

}  // namespace skeinlab
