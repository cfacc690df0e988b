#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "skeinlab/diagrams.hpp"
#include "skeinlab/exactmath.hpp"
#include "skeinlab/skein.hpp"

namespace skeinlab {

// Frobenius algebra attached to each circle: X^2 = 0, X^2 = hX + t, or X^2 = t.
enum class Frobenius { Classical, Equivariant, TwistedT };

std::string frobenius_name(Frobenius f);
Frobenius parse_frobenius(const std::string& s);

// The glued diagram W(b)a. circle_of[p] is the circle through center point p, numbered 1..k
// in the order in which the leftmost point of a circle is met.
struct CircleConfiguration {
  int n = 0;
  int k = 0;
  std::vector<int> circle_of;  // indexed 1..2n
};

CircleConfiguration glue_and_number(const CrossinglessMatching& b, const CrossinglessMatching& a);

// Basis element of _top(H^n)_bottom = F(W(top) bottom); bit i of labels puts X on circle i+1.
struct BasisKey {
  int top = 0, bottom = 0;
  std::uint32_t labels = 0;
  friend auto operator<=>(const BasisKey&, const BasisKey&) = default;
};

struct ArcRingElement {
  int n = 0;
  Frobenius variant = Frobenius::Classical;
  std::map<BasisKey, PolyHT> terms;

  ArcRingElement() = default;
  ArcRingElement(int nn, Frobenius f) : n(nn), variant(f) {}

  bool is_zero() const { return terms.empty(); }
  void add(const BasisKey& k, const PolyHT& c);
  ArcRingElement& operator+=(const ArcRingElement& o);
  ArcRingElement& operator-=(const ArcRingElement& o);
  friend ArcRingElement operator+(ArcRingElement a, const ArcRingElement& b) { return a += b; }
  friend ArcRingElement operator-(ArcRingElement a, const ArcRingElement& b) { return a -= b; }
  ArcRingElement scaled(const PolyHT& s) const;
  friend bool operator==(const ArcRingElement& a, const ArcRingElement& b) {
    return a.n == b.n && a.variant == b.variant && a.terms == b.terms;
  }
};

// Structure data of H^n (or its deformation); built once per (n, variant) and shared.
class ArcRing {
 public:
  static const ArcRing& get(int n, Frobenius f);

  int n() const { return n_; }
  Frobenius variant() const { return f_; }
  const std::vector<CrossinglessMatching>& matchings() const { return ms_; }
  int matching_index(const CrossinglessMatching& m) const;
  const CircleConfiguration& config(int top, int bottom) const { return cfg_[static_cast<size_t>(top * M() + bottom)]; }
  int dim() const { return dim_; }
  int index(const BasisKey& k) const { return offset_[static_cast<size_t>(k.top * M() + k.bottom)] + static_cast<int>(k.labels); }
  BasisKey key(int idx) const;
  // deg 1 = -1, deg X = 1 with shift n; equivalently 2 #X + n - k, which is also the doubled equivariant degree.
  int degree(const BasisKey& k) const;

  ArcRingElement basis(const BasisKey& k) const;
  ArcRingElement idempotent(int a) const;
  ArcRingElement unit() const;
  // X on the circle through center point p of _a(H)_a, signed (-1)^{p+1}, summed over a.
  ArcRingElement cbar(int p) const;

  // Product of two basis elements; cached.
  const std::vector<std::pair<int, PolyHT>>& product(int i, int j) const;

  std::vector<PolyHT> to_vector(const ArcRingElement& x) const;
  ArcRingElement from_vector(const std::vector<PolyHT>& v) const;

 private:
  ArcRing(int n, Frobenius f);
  int M() const { return static_cast<int>(ms_.size()); }
  int n_;
  Frobenius f_;
  std::vector<CrossinglessMatching> ms_;
  std::vector<CircleConfiguration> cfg_;
  std::vector<int> offset_;
  int dim_ = 0;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, std::vector<std::pair<int, PolyHT>>> cache_;
};

ArcRingElement multiply(const ArcRingElement& u, const ArcRingElement& v);

struct GradingReport {
  int n = 0;
  Frobenius variant = Frobenius::Classical;
  long products = 0;
  long terms_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
GradingReport grading_check(int n, Frobenius f);

// Square-free algebra Z[c_1..c_v]/(c_i^2) or, twisted, Z[t][c]/(c_i^2 - t).
struct SquareFreeElement {
  int vars = 0;
  bool twisted = false;
  std::map<std::uint32_t, PolyHT> terms;

  SquareFreeElement() = default;
  SquareFreeElement(int v, bool tw) : vars(v), twisted(tw) {}
  static SquareFreeElement constant(int v, bool tw, const PolyHT& c);
  static SquareFreeElement variable(int v, bool tw, int i);  // 1-based
  static SquareFreeElement monomial(int v, bool tw, std::uint32_t subset);

  bool is_zero() const { return terms.empty(); }
  void add(std::uint32_t s, const PolyHT& c);
  SquareFreeElement& operator+=(const SquareFreeElement& o);
  SquareFreeElement& operator-=(const SquareFreeElement& o);
  friend SquareFreeElement operator+(SquareFreeElement a, const SquareFreeElement& b) { return a += b; }
  friend SquareFreeElement operator-(SquareFreeElement a, const SquareFreeElement& b) { return a -= b; }
  friend SquareFreeElement operator*(const SquareFreeElement& a, const SquareFreeElement& b);
  SquareFreeElement scaled(const PolyHT& s) const;
  friend bool operator==(const SquareFreeElement& a, const SquareFreeElement& b) {
    return a.vars == b.vars && a.twisted == b.twisted && a.terms == b.terms;
  }
  std::string str() const;
};

// k-th elementary symmetric function of the listed variables (all variables when empty).
SquareFreeElement elementary(int vars, int k, bool twisted, std::vector<int> which = {});
bool polys_lemma_identity(int n, int k);
SquareFreeElement et_function(int k, int n);

struct CenterReport {
  int n = 0;
  Frobenius variant = Frobenius::Classical;
  Rat t_point;                        // value of t for the twisted rank comparison
  int rank = 0;                       // rank of Z(H^n), from the commutation system
  int presentation_rank = 0;          // rank of Z[x]/(x_i^2, e_1..e_n) (or its X^2 = t analogue at t_point)
  int presentation_rank_full = 0;     // with e_1..e_2n
  bool cbar_central = false;
  bool cbar_relations = false;        // x_i^2 and e_k (resp. e^t_k) vanish on the cbar's
  bool generated_by_cbar = false;     // cbar monomials span the center (over Z classically)
  std::vector<ArcRingElement> basis;  // rational basis, cleared to integers
};
CenterReport center(int n, Frobenius f, const Rat& t_point = Rat(3));

struct HH0Report {
  int n = 0;
  Frobenius variant = Frobenius::Classical;
  Rat h, t;  // evaluation point when the variant carries parameters
  int diagonal_dim = 0;
  long generators = 0;
  int rank = 0;
  std::vector<Int> torsion;  // classical only
  int skein_rank = 0;
  bool lemma_span_equal = false;  // classical: the _aX_b list spans the same lattice
  bool phi_bijective = false;     // phi on the standard basis is a basis of the quotient
};
HH0Report hh0(int n, Frobenius f, const Rat& h = Rat(0), const Rat& t = Rat(0));

// phi: diagram m with underlying matching a -> element of _a(H)_a with X^(dots) on each circle.
ArcRingElement phi_map(const DottedMatching& m, Frobenius f);

struct PhiRelationReport {
  int n = 0;
  Frobenius variant = Frobenius::Classical;
  int checked = 0;
  int in_commutator = 0;
  std::vector<std::string> failures;
  bool ok() const { return checked == in_commutator; }
};
// Images of the Type I, Type II (and, when deformed, dot reduction) relations lie in the commutator.
PhiRelationReport phi_relation_check(int n, Frobenius f);

struct KernelReport {
  int n = 0;
  bool twisted = false;
  int ambient = 0;                     // 2^(2n), or the graded dimension summed over checked degrees
  int intersection_rank = 0;
  int ideal_rank = 0;                  // rank of (e_1..e_n), resp. (e^t_1..e^t_n)
  bool ideal_in_intersection = false;
  bool intersection_in_ideal = false;
  bool saturated = false;              // classical: both lattices are pure in Z^(2^(2n))
  bool single_generator_over_q = false;
  int max_degree = 0;                  // twisted: degrees 0..max_degree checked
};
KernelReport kernel_vert(int n);
KernelReport kernel_vert_t(int n);

struct QuotientSkeinReport {
  int m = 0, n = 0;
  int ambient = 0;
  int skein_relations = 0;
  int kernel_generators = 0;
  int rank = 0;
  std::vector<Int> torsion;
  int rank_plain_generators = 0;  // using only e_k(a) without further dot multiples
  int arc_ring_rank = 0;          // same quotient computed inside H^(m+n)
  std::vector<Int> arc_ring_torsion;
  std::vector<std::pair<std::string, ClassicalElement>> generators;
};
// e_k of the dots on the through-strands of a, as a combination of dotted unbent diagrams.
ClassicalElement tangle_generator(const FlatTangle& a, int k);
QuotientSkeinReport quotient_skein(int m, int n);

struct HomRingReport {
  int m = 1, n = 1;
  int dim_h = 0;
  int kernel_rank = 0;
  int hom_dim = 0;
  bool idempotents_orthogonal = false;
  bool idempotents_complete = false;
  bool idempotents_nonzero = false;
  int center_h_rank = 0;
  int center_hom_rank = 0;
  int image_center_rank = 0;
  int tensor_rank = 0;  // rank Z(H^m) * rank Z(H^n)
  bool center_equals_image = false;
};
HomRingReport hom_ring_checks(int m = 1, int n = 1);

// Dimension of the (H^m, H^n)-bimodule maps F(T1) -> F(T2); classical, over Q.
int bimodule_hom_dim(const FlatTangle& t1, const FlatTangle& t2, int m, int n);

}  // namespace skeinlab
