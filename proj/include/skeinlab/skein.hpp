#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "skeinlab/diagrams.hpp"
#include "skeinlab/exactmath.hpp"

namespace skeinlab {

enum class Variant { Classical, Q1, Quantum, Equivariant };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);

template <class C>
struct SkeinElement {
  Variant variant = Variant::Classical;
  int n = 0;
  std::map<DottedMatching, C> terms;

  SkeinElement() = default;
  SkeinElement(Variant v, int nn) : variant(v), n(nn) {}
  static SkeinElement single(Variant v, const DottedMatching& d, const C& c = C(1L)) {
    SkeinElement e(v, d.n());
    e.add(d, c);
    return e;
  }

  bool is_zero() const { return terms.empty(); }
  C coeff(const DottedMatching& d) const {
    auto it = terms.find(d);
    return it == terms.end() ? C(0L) : it->second;
  }
  void add(const DottedMatching& d, const C& c) {
    if (skeinlab::is_zero(c)) return;
    if (d.n() != n) throw std::invalid_argument("skein element size mismatch");
    auto [it, fresh] = terms.emplace(d, c);
    if (!fresh) {
      it->second = it->second + c;
      if (skeinlab::is_zero(it->second)) terms.erase(it);
    }
  }
  SkeinElement& operator+=(const SkeinElement& o) {
    for (auto& [d, c] : o.terms) add(d, c);
    return *this;
  }
  SkeinElement& operator-=(const SkeinElement& o) {
    for (auto& [d, c] : o.terms) add(d, -c);
    return *this;
  }
  friend SkeinElement operator+(SkeinElement a, const SkeinElement& b) { return a += b; }
  friend SkeinElement operator-(SkeinElement a, const SkeinElement& b) { return a -= b; }
  SkeinElement scaled(const C& s) const {
    SkeinElement r(variant, n);
    for (auto& [d, c] : terms) r.add(d, c * s);
    return r;
  }
  friend bool operator==(const SkeinElement& a, const SkeinElement& b) { return a.terms == b.terms && a.n == b.n; }
};

using ClassicalElement = SkeinElement<Int>;
using QuantumElement = SkeinElement<LaurentHalfQ>;
using EquivElement = SkeinElement<PolyHT>;

enum class RelationKind { TypeI, TypeII, DotReduction };

// A relation instance: the arcs (a,b),(c,d) exist in `base`; its other arcs and their dots form the
// context. For DotReduction, the relation acts on the arc starting at `a`.
struct RelationInstance {
  Variant variant = Variant::Classical;
  RelationKind kind = RelationKind::TypeI;
  int a = 0, b = 0, c = 0, d = 0;
  DottedMatching base;

  DottedMatching alpha(int dot_ab, int dot_cd) const;  // arcs (a,b),(c,d)
  DottedMatching beta(int dot_ad, int dot_bc) const;   // arcs (a,d),(b,c)
  std::vector<Arc> containers() const;                 // context arcs containing [a,d]
};

bool relation_realizable(const DottedMatching& base, int a, int b, int c, int d);
// All instances on n points for the given kind; context dots per arc bounded by max_context_dots.
std::vector<RelationInstance> enumerate_relation_instances(int n, RelationKind kind, Variant v,
                                                           int max_context_dots = 1);

ClassicalElement relation_element_classical(const RelationInstance& r);
EquivElement relation_element_equivariant(const RelationInstance& r);

// Rescaling between the q=1 and classical relations: -1 per dotted arc nested in another arc,
// times -1 when the underlying matching has an odd number of nested pairs.
int q1_sign(const DottedMatching& d);
// The other candidate rescaling: -1 per nested pair with dotted outer arc and undotted inner arc.
int q1_sign_dotted_over_undotted(const DottedMatching& d);

ClassicalElement reduce_classical(const ClassicalElement& x);
ClassicalElement reduce_q1(const ClassicalElement& x);
EquivElement reduce_equivariant(const EquivElement& x);

// Single rewrite step with an explicit choice of dotted arc; used by the confluence checks.
struct RewriteChoice {
  int arc_left;        // dotted arc to move
  int container_left;  // containing arc to rewrite against
};
std::vector<RewriteChoice> admissible_rewrites(const DottedMatching& d);
ClassicalElement rewrite_classical(const DottedMatching& d, const RewriteChoice& c);
EquivElement rewrite_equivariant(const DottedMatching& d, const RewriteChoice& c);
EquivElement rewrite_dot_reduction(const DottedMatching& d, int arc_left);

ClassicalElement reduce_classical_random(const ClassicalElement& x, std::mt19937_64& rng);
EquivElement reduce_equivariant_random(const EquivElement& x, std::mt19937_64& rng);

// Machine-derived q=1 relations: specializations of derived quantum relations at q=1.
std::vector<ClassicalElement> derive_q1_relations(int n);

struct PresentationRank {
  int rank = 0;
  std::vector<Int> torsion;
  int ambient = 0;
  int relations = 0;
};
PresentationRank presentation_rank(int n, int k, Variant v, std::uint64_t seed = 1);
PresentationRank presentation_rank_equivariant(int n, const Rat& h, const Rat& t);

struct ConfluenceReport {
  int trials = 0;
  int agreements = 0;
  std::vector<std::string> failures;
  bool ok() const { return agreements == trials; }
};
ConfluenceReport confluence_check(int n, Variant v, int trials, std::uint64_t seed);

}  // namespace skeinlab
