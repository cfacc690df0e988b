#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skeinlab/diagrams.hpp"
#include "skeinlab/exactmath.hpp"
#include "skeinlab/skein.hpp"

namespace skeinlab {

// Planar pairing of b bottom and t top points. Bottom points are 0..b-1 left to right,
// top points are b..b+t-1 left to right.
struct TLPairing {
  int b = 0, t = 0;
  std::vector<int> partner;

  static TLPairing identity(int n);
  static TLPairing cup_diagram(const CrossinglessMatching& m);  // b = 0
  bool planar() const;
  int through_strands() const;
  // Top-side arcs as 1-indexed pairs (top point i is index b+i-1).
  std::vector<Arc> top_arcs() const;
  std::vector<Arc> bottom_arcs() const;

  friend bool operator==(const TLPairing& x, const TLPairing& y) {
    return x.b == y.b && x.t == y.t && x.partner == y.partner;
  }
  friend bool operator<(const TLPairing& x, const TLPairing& y) {
    if (x.b != y.b) return x.b < y.b;
    if (x.t != y.t) return x.t < y.t;
    return x.partner < y.partner;
  }
};

// Stack g on top of f; returns the glued pairing and the number of closed circles.
std::pair<TLPairing, int> glue(const TLPairing& f, const TLPairing& g);

template <class C>
struct TLElement {
  int b = 0, t = 0;
  std::map<TLPairing, C> terms;

  TLElement() = default;
  TLElement(int bb, int tt) : b(bb), t(tt) {}
  static TLElement identity(int n) {
    TLElement e(n, n);
    e.terms[TLPairing::identity(n)] = C(1L);
    return e;
  }
  static TLElement from_pairing(const TLPairing& p, const C& c = C(1L)) {
    TLElement e(p.b, p.t);
    e.add(p, c);
    return e;
  }

  bool is_zero() const { return terms.empty(); }
  void add(const TLPairing& p, const C& c) {
    if (skeinlab::is_zero(c)) return;
    auto [it, fresh] = terms.emplace(p, c);
    if (!fresh) {
      it->second = it->second + c;
      if (skeinlab::is_zero(it->second)) terms.erase(it);
    }
  }
  C coeff(const TLPairing& p) const {
    auto it = terms.find(p);
    return it == terms.end() ? C(0L) : it->second;
  }
  TLElement& operator+=(const TLElement& o) {
    for (auto& [p, c] : o.terms) add(p, c);
    return *this;
  }
  TLElement& operator-=(const TLElement& o) {
    for (auto& [p, c] : o.terms) add(p, -c);
    return *this;
  }
  friend TLElement operator+(TLElement x, const TLElement& y) { return x += y; }
  friend TLElement operator-(TLElement x, const TLElement& y) { return x -= y; }
  TLElement scaled(const C& s) const {
    TLElement r(b, t);
    for (auto& [p, c] : terms) r.add(p, c * s);
    return r;
  }
  friend bool operator==(const TLElement& x, const TLElement& y) {
    return x.b == y.b && x.t == y.t && x.terms == y.terms;
  }
};

// g stacked on top of f, closed circles weighted by delta.
template <class C>
TLElement<C> compose(const TLElement<C>& f, const TLElement<C>& g, const C& delta) {
  if (f.t != g.b) throw std::invalid_argument("compose: width mismatch");
  TLElement<C> r(f.b, g.t);
  for (auto& [pf, cf] : f.terms)
    for (auto& [pg, cg] : g.terms) {
      auto [p, circles] = glue(pf, pg);
      C c = cf * cg;
      for (int i = 0; i < circles; ++i) c = c * delta;
      r.add(p, c);
    }
  return r;
}

TLPairing tensor_pairing(const TLPairing& x, const TLPairing& y);

// Tensor product: x on the left, y on the right.
template <class C>
TLElement<C> tensor(const TLElement<C>& x, const TLElement<C>& y) {
  TLElement<C> r(x.b + y.b, x.t + y.t);
  for (auto& [px, cx] : x.terms)
    for (auto& [py, cy] : y.terms) r.add(tensor_pairing(px, py), cx * cy);
  return r;
}

TLPairing tl_u(int n, int i);    // U_i on n strands
TLPairing tl_cup(int w, int i);  // w -> w+2, new arc at top positions i, i+1
TLPairing tl_cap(int w, int i);  // w -> w-2, joins bottom positions i, i+1

enum class SliceKind { Cap, Cup, XP, XM };

struct Slice {
  SliceKind kind;
  int pos;
  friend bool operator==(const Slice& a, const Slice& b) { return a.kind == b.kind && a.pos == b.pos; }
};

struct SliceWord {
  int bottom = 0;
  std::vector<Slice> slices;
  int top() const;
};

// Crossing in which the strand entering at position i from the lower left passes over (or under).
Slice crossing_slice(int i, bool left_strand_over);

LaurentHalfQ delta_q();  // -q - q^-1
TLElement<LaurentHalfQ> apply_slice(const TLElement<LaurentHalfQ>& x, const Slice& s);
TLElement<LaurentHalfQ> expand_word(const SliceWord& w);

// Projector-box spaces.
struct SSpace {
  int n = 0, k = 0;
  int size() const { return 2 * (n + k); }
  bool in_left(int p) const { return p <= k; }
  bool in_right(int p) const { return p > 2 * n + k; }
};

using SElement = TLElement<LaurentHalfQ>;  // b = 0, t = 2(n+k)

SElement stilde_normal_form(const SSpace& s, const SElement& x);
SElement s_normal_form(const SSpace& s, const SElement& x);
bool is_s_basis(const SSpace& s, const TLPairing& p);
std::vector<TLPairing> enumerate_s_basis(const SSpace& s);

SliceWord psi_word(const DottedMatching& m, int k);
SElement psi(const DottedMatching& m, int k);
SElement psi(const QuantumElement& x, int k);
int nested_dotted_pairs(const DottedMatching& m);

struct PsiInverse {
  DottedMatching diagram;
  LaurentHalfQ coefficient;
};
PsiInverse psi_inverse(const SSpace& s, const TLPairing& d);

// Table over B_{n,k}: each basis element maps to its single surviving S-term.
struct PsiTable {
  SSpace space;
  std::map<TLPairing, std::pair<DottedMatching, LaurentHalfQ>> by_image;  // D -> (b, c_b)
  std::vector<std::pair<DottedMatching, std::pair<TLPairing, LaurentHalfQ>>> by_basis;
};
const PsiTable& psi_table(int n, int k);

QuantumElement pullback(const PsiTable& table, const SElement& x);
QuantumElement reduce_quantum(const QuantumElement& x);
QuantumElement derive_quantum_relation(const RelationInstance& r);
QuantumElement quantum_classical_relation(const RelationInstance& r);  // classical shape with q-coefficients

GaussRat eval_at_q_minus_one(const LaurentHalfQ& c);
ClassicalElement specialize_q_minus_one(const QuantumElement& x);  // requires even exponents
ClassicalElement specialize_q_one(const QuantumElement& x);

// Braid words: +i for sigma_i, -i for its inverse.
using BraidWord = std::vector<int>;
SElement braid_act(const SSpace& s, const BraidWord& w, const SElement& x);

enum class PullbackMode { BnkLocal, FullSemilocal };
struct PullbackResult {
  QuantumElement value;
  bool local = true;                 // support differs from input only on arcs touching {i, i+1}
  bool semilocal_vanish_at_pm1 = true;
  int semilocal_terms = 0;
};
PullbackResult pullback_act(const BraidWord& w, const DottedMatching& m, PullbackMode mode);

// Jones-Wenzl projectors.
TLElement<Rat> jones_wenzl_delta2(int n);
TLElement<RatFunc> jones_wenzl_generic(int n);             // recursion
TLElement<RatFunc> jones_wenzl_generic_definition(int n);  // sum over permutations
std::vector<RatFunc> jw_mu(int n);
TLElement<Rat> specialize_jw(const TLElement<RatFunc>& p);  // q = -1

// Quantum-group matrix model on V^{tensor n}; basis index bits: 0 = v^1, 1 = v^-1, first factor most significant.
struct Intertwiners {
  int n = 0;
  Matrix<LaurentHalfQ> eps1, delta1;
  std::vector<Matrix<LaurentHalfQ>> T, U;  // index 1..n-1 (entry 0 unused)
};
Intertwiners intertwiner_matrices(int n);
Matrix<LaurentHalfQ> identity_on(int tensor_power);
Matrix<LaurentHalfQ> tensor_place(int n, int i, const Matrix<LaurentHalfQ>& two_site);

std::string tl_str(const TLPairing& p);

}  // namespace skeinlab
