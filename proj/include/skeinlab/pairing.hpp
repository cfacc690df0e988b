#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skeinlab/diagrams.hpp"
#include "skeinlab/exactmath.hpp"
#include "skeinlab/skein.hpp"

namespace skeinlab {

enum class Mark { Dot, X };
using Circle = std::vector<Mark>;

struct ClosedDecoratedDiagram {
  std::vector<Circle> circles;
};

int evaluate_circle(const Circle& c);
Int evaluate(const ClosedDecoratedDiagram& d);

// Cap diagrams live in glued coordinates: cap endpoint p sits on cup endpoint p.
// A DottedMatching used as a cap diagram carries X's where a cup diagram carries dots.
using XCaps = DottedMatching;

XCaps rotate_to_caps(const DottedMatching& b);
ClosedDecoratedDiagram close_up(const DottedMatching& cups, const XCaps& caps);
Int pair_glued(const DottedMatching& cups, const XCaps& caps);
Int pair(const DottedMatching& a, const DottedMatching& b);
Int pair(const ClassicalElement& a, const DottedMatching& b);

// Cap diagram with Jones-Wenzl boxes still unexpanded; boxes listed in attachment order,
// each below the previous one. Boxes are (number of strands to the left, size).
struct XCapDiagram {
  XCaps caps;
  std::vector<std::pair<int, int>> projectors;
};

struct DualElement {
  int n = 0;
  std::map<XCaps, Rat> terms;

  DualElement() = default;
  explicit DualElement(int nn) : n(nn) {}
  void add(const XCaps& d, const Rat& c);
  DualElement scaled(const Rat& s) const;
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const DualElement& a, const DualElement& b) { return a.n == b.n && a.terms == b.terms; }
};

Rat pair(const DottedMatching& a, const DualElement& f);
// Values of f on enumerate_standard_basis_all(n).
std::vector<Rat> pairing_vector(const DualElement& f);

Matrix<Int> gram_matrix(int n);
DottedMatching mirror(const DottedMatching& d);  // left-right reflection
DualElement dual_via_gram(int n, int index);

// Attach a projector of `size` strands below the caps, with `left` strands to its left, and expand it.
DualElement attach_projector(const DualElement& e, int left, int size);
DualElement expand(const XCapDiagram& d);

struct DualStep {
  std::string rule;
  MatchingTuple from, to;
  int left = 0, size = 0;
  Rat coefficient;
};

struct DualConstruction {
  DottedMatching target;
  XCapDiagram builder;
  Rat coefficient;               // product of the step coefficients
  std::vector<DualStep> steps;
  Rat raw_pairing;               // <target, coefficient * expand(builder)>
  DualElement dual;              // normalized so that <target, dual> = sign(raw_pairing)
  int sign = 1;
  int projectors() const { return static_cast<int>(builder.projectors.size()); }
};

DualConstruction dual_via_projectors(const DottedMatching& m);
// Every recursion step applicable to a tuple that lowers r, in rule order; the first one is the default.
std::vector<DualStep> dual_candidate_steps(const MatchingTuple& t);
// Dual built by taking `first` as the outermost step and default steps below it.
DualConstruction dual_via_step(const DottedMatching& m, const DualStep& first);
DualConstruction dual_undotted(const CrossinglessMatching& m);

// Balanced quantum binomial at q = -1.
Rat binomial_at_minus_one(int n, int k);

struct PositivityReport {
  int n = 0;
  std::vector<Int> minors;  // leading principal minors of the Gram matrix
  bool positive_definite = false;
  // Same data for <a, mirror(b)>, the form composed with the left-right reflection of the basis.
  std::vector<Int> mirrored_minors;
  bool mirrored_positive_definite = false;
};
PositivityReport positivity_probe(int n);

std::string ascii(const XCapDiagram& d);

}  // namespace skeinlab
