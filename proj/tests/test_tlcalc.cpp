#include <gtest/gtest.h>

#include "skeinlab/skein.hpp"
#include "skeinlab/tlcalc.hpp"

using namespace skeinlab;

namespace {

using TL = TLElement<LaurentHalfQ>;

LaurentHalfQ v(int e) { return LaurentHalfQ::mono(e); }

DottedMatching dm(int n, std::vector<Arc> arcs, std::map<int, int> dots = {}) {
  return DottedMatching(CrossinglessMatching(n, std::move(arcs)), std::move(dots));
}

TLPairing cups(int n, std::vector<Arc> arcs) { return TLPairing::cup_diagram(CrossinglessMatching(n, std::move(arcs))); }

SElement single(const TLPairing& p, const LaurentHalfQ& c = LaurentHalfQ(1L)) { return SElement::from_pairing(p, c); }

// Binomial count of the standard basis.
long basis_count(int n, int k) {
  auto b = [](int a, int c) -> long { return c < 0 || c > a ? 0 : binomial(a, c).get_si(); };
  return b(2 * n, n + k) - b(2 * n, n + k + 1);
}

}  // namespace

TEST(Compose, CircleAndIdempotent) {
  auto d = delta_q();
  auto u = TL::from_pairing(tl_u(2, 1));
  EXPECT_EQ(compose(u, u, d), u.scaled(d));
  auto circle = compose(TL::from_pairing(tl_cup(0, 1)), TL::from_pairing(tl_cap(2, 1)), d);
  EXPECT_EQ(circle, TL::identity(0).scaled(parse_laurent("-q^-1 - q")));
  auto u13 = TL::from_pairing(tl_u(4, 1)) + TL::from_pairing(tl_u(4, 3)).scaled(v(3));
  EXPECT_EQ(compose(TL::identity(4), u13, d), u13);
  EXPECT_EQ(compose(u13, TL::identity(4), d), u13);
}

TEST(Compose, TemperleyLiebRelations) {
  auto d = delta_q();
  for (int n = 3; n <= 5; ++n)
    for (int i = 1; i + 1 < n; ++i) {
      auto a = TL::from_pairing(tl_u(n, i)), b = TL::from_pairing(tl_u(n, i + 1));
      EXPECT_EQ(compose(compose(a, b, d), a, d), a);
      EXPECT_EQ(compose(compose(b, a, d), b, d), b);
    }
  auto a = TL::from_pairing(tl_u(4, 1)), c = TL::from_pairing(tl_u(4, 3));
  EXPECT_EQ(compose(a, c, d), compose(c, a, d));
}

TEST(Compose, PlanarityPreserved) {
  for (int w = 1; w <= 5; ++w)
    for (int i = 1; i <= w + 1; ++i) EXPECT_TRUE(tl_cup(w, i).planar());
  auto [p, circles] = glue(tl_cup(2, 2), tl_u(4, 2));
  EXPECT_TRUE(p.planar());
  EXPECT_EQ(circles, 1);
}

TEST(ExpandWord, CrossingOnCup) {
  SliceWord w{0, {{SliceKind::Cup, 1}, {SliceKind::XP, 1}}};
  auto x = expand_word(w);
  EXPECT_EQ(x, TL::from_pairing(tl_cup(0, 1), parse_laurent("-q^3/2")));
}

TEST(ExpandWord, ReidemeisterTwoAndEmpty) {
  for (int w = 2; w <= 4; ++w)
    for (int i = 1; i < w; ++i) {
      EXPECT_EQ(expand_word({w, {{SliceKind::XP, i}, {SliceKind::XM, i}}}), TL::identity(w));
      EXPECT_EQ(expand_word({w, {{SliceKind::XM, i}, {SliceKind::XP, i}}}), TL::identity(w));
    }
  EXPECT_EQ(expand_word({3, {}}), TL::identity(3));
}

TEST(ExpandWord, ZigZag) {
  EXPECT_EQ(expand_word({1, {{SliceKind::Cup, 2}, {SliceKind::Cap, 1}}}), TL::identity(1));
  EXPECT_EQ(expand_word({1, {{SliceKind::Cup, 1}, {SliceKind::Cap, 2}}}), TL::identity(1));
}

TEST(ExpandWord, ReidemeisterThree) {
  auto lhs = expand_word({3, {{SliceKind::XP, 1}, {SliceKind::XP, 2}, {SliceKind::XP, 1}}});
  auto rhs = expand_word({3, {{SliceKind::XP, 2}, {SliceKind::XP, 1}, {SliceKind::XP, 2}}});
  EXPECT_EQ(lhs, rhs);
}

TEST(ExpandWord, CrossingSlicesAreMutuallyInverse) {
  auto over = crossing_slice(1, true), under = crossing_slice(1, false);
  EXPECT_NE(over.kind, under.kind);
  EXPECT_EQ(expand_word({2, {over, under}}), TL::identity(2));
}

TEST(SNormalForm, KillsProjectorArcs) {
  SSpace s{1, 1};
  EXPECT_TRUE(s_normal_form(s, single(cups(2, {{1, 4}, {2, 3}}))).is_zero());
  EXPECT_FALSE(stilde_normal_form(s, single(cups(2, {{1, 4}, {2, 3}}))).is_zero());
  EXPECT_TRUE(stilde_normal_form(SSpace{0, 2}, single(cups(2, {{1, 2}, {3, 4}}))).is_zero());
  SSpace s0{2, 0};
  auto x = single(cups(2, {{1, 4}, {2, 3}}), v(2));
  EXPECT_EQ(s_normal_form(s0, x), x);
}

TEST(SNormalForm, InterwovenArcGivesCorrection) {
  // L=1, undotted arc x=(2,3), R=4; the projector arc passes under the left leg of x and over its right leg.
  SliceWord w{0, {{SliceKind::Cup, 1}, {SliceKind::Cup, 3}, crossing_slice(2, false), crossing_slice(3, true)}};
  SSpace s{1, 1};
  auto got = s_normal_form(s, expand_word(w));
  EXPECT_EQ(got, single(cups(2, {{1, 2}, {3, 4}}), parse_laurent("1 - q^-2")));
}

TEST(SNormalForm, LinearAndIdempotent) {
  SSpace s{2, 1};
  auto x = psi(dm(2, {{1, 4}, {2, 3}}, {{2, 1}}), 1) + psi(dm(2, {{1, 2}, {3, 4}}, {{3, 1}}), 1).scaled(v(-2));
  auto y = s_normal_form(s, x);
  EXPECT_EQ(s_normal_form(s, y), y);
  EXPECT_EQ(s_normal_form(s, x + x), y + y);
}

TEST(SBasis, CountsMatchStandardBasis) {
  for (int n = 0; n <= 4; ++n)
    for (int k = 0; k <= std::min(n, 3); ++k) {
      SSpace s{n, k};
      auto basis = enumerate_s_basis(s);
      EXPECT_EQ(static_cast<long>(basis.size()), basis_count(n, k)) << n << "," << k;
      for (auto& p : basis) EXPECT_TRUE(is_s_basis(s, p));
    }
}

TEST(Psi, SingleDottedArc) {
  auto x = psi(dm(1, {{1, 2}}, {{1, 1}}), 1);
  EXPECT_EQ(x, single(cups(2, {{1, 2}, {3, 4}})));
  int crossings = 0;
  for (auto& sl : psi_word(dm(1, {{1, 2}}, {{1, 1}}), 1).slices)
    if (sl.kind == SliceKind::XP || sl.kind == SliceKind::XM) ++crossings;
  EXPECT_EQ(crossings, 0);
}

TEST(Psi, DottedInsideUndotted) {
  auto m = dm(2, {{1, 4}, {2, 3}}, {{2, 1}});
  int crossings = 0;
  for (auto& sl : psi_word(m, 1).slices)
    if (sl.kind == SliceKind::XP || sl.kind == SliceKind::XM) ++crossings;
  EXPECT_EQ(crossings, 2);
  // Three smoothings avoid a projector-to-projector arc, one per term of the classical Type I rewrite.
  auto img = s_normal_form(SSpace{2, 1}, psi(m, 1));
  EXPECT_EQ(img.terms.size(), 3u);
  auto red = reduce_quantum(QuantumElement::single(Variant::Quantum, m, LaurentHalfQ(1L)));
  EXPECT_EQ(red.terms.size(), 3u);
  EXPECT_EQ(s_normal_form(SSpace{2, 1}, psi(red, 1)), img);
}

TEST(Psi, UndottedIsItself) {
  for (auto& m : enumerate_matchings(3)) EXPECT_EQ(psi(DottedMatching(m), 0), single(TLPairing::cup_diagram(m)));
}

TEST(Psi, RejectsMultiDots) { EXPECT_THROW(psi(dm(1, {{1, 2}}, {{1, 2}}), 2), std::invalid_argument); }

TEST(Psi, CrossingCensus) {
  // Two crossings per undotted container of a dotted arc, one per unnested dotted pair, none otherwise.
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= n; ++k)
      for (auto& m : enumerate_dotted(n, k, 1)) {
        int expect = 0;
        for (auto [l, r] : m.m.arcs()) {
          if (!m.dots_on(l)) continue;
          for (auto [l2, r2] : m.m.arcs()) {
            if (l2 == l) continue;
            bool contains = l2 < l && r < r2, inside = l < l2 && r2 < r;
            if (!m.dots_on(l2) && contains) expect += 2;
            if (m.dots_on(l2) && l < l2 && !inside) expect += 1;
          }
        }
        int got = 0;
        for (auto& sl : psi_word(m, k).slices)
          if (sl.kind == SliceKind::XP || sl.kind == SliceKind::XM) ++got;
        EXPECT_EQ(got, expect) << ascii(m);
      }
}

TEST(PsiInverse, RoundTrip) {
  for (int n = 0; n <= 3; ++n)
    for (int k = 0; k <= std::min(n, 2); ++k) {
      SSpace s{n, k};
      for (auto& d : enumerate_s_basis(s)) {
        auto inv = psi_inverse(s, d);
        EXPECT_EQ(inv.diagram.total_dots(), k);
        EXPECT_EQ(s_normal_form(s, psi(inv.diagram, k)).scaled(inv.coefficient), single(d)) << n << "," << k;
      }
    }
  auto inv = psi_inverse(SSpace{1, 1}, cups(2, {{1, 2}, {3, 4}}));
  EXPECT_EQ(inv.diagram, dm(1, {{1, 2}}, {{1, 1}}));
  EXPECT_EQ(inv.coefficient, LaurentHalfQ(1L));
  auto inv0 = psi_inverse(SSpace{2, 0}, cups(2, {{1, 4}, {2, 3}}));
  EXPECT_EQ(inv0.diagram, dm(2, {{1, 4}, {2, 3}}));
  EXPECT_EQ(inv0.coefficient, LaurentHalfQ(1L));
}

TEST(PsiTable, InjectiveOnBasis) {
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto& t = psi_table(n, k);
      EXPECT_EQ(static_cast<long>(t.by_image.size()), basis_count(n, k));
    }
}

TEST(ReduceQuantum, FixesBasis) {
  for (int n = 1; n <= 3; ++n)
    for (auto& b : enumerate_standard_basis_all(n)) {
      auto x = QuantumElement::single(Variant::Quantum, b, LaurentHalfQ(1L));
      EXPECT_EQ(reduce_quantum(x), x);
    }
}

TEST(ReduceQuantum, EvenExponentsIdempotentAndClassicalAtMinusOne) {
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= n; ++k)
      for (auto& d : enumerate_dotted(n, k, 1)) {
        auto x = QuantumElement::single(Variant::Quantum, d, LaurentHalfQ(1L));
        auto r = reduce_quantum(x);
        for (auto& [b, c] : r.terms) {
          EXPECT_TRUE(is_standard(b));
          EXPECT_TRUE(c.even_exponents()) << ascii(d);
        }
        EXPECT_EQ(reduce_quantum(r), r);
        auto classical = reduce_classical(ClassicalElement::single(Variant::Classical, d, Int(1)));
        EXPECT_EQ(specialize_q_minus_one(r), classical) << ascii(d);
      }
}

TEST(ReduceQuantum, ClassicalTypeTwoVanishesAtMinusOne) {
  for (auto& r : enumerate_relation_instances(3, RelationKind::TypeII, Variant::Quantum)) {
    auto red = reduce_quantum(quantum_classical_relation(r));
    EXPECT_TRUE(specialize_q_minus_one(red).is_zero());
  }
}

TEST(DeriveRelation, VanishesAndSpecializes) {
  for (int n = 2; n <= 3; ++n)
    for (auto kind : {RelationKind::TypeI, RelationKind::TypeII})
      for (auto& r : enumerate_relation_instances(n, kind, Variant::Quantum)) {
        auto rel = derive_quantum_relation(r);
        EXPECT_TRUE(reduce_quantum(rel).is_zero());
        auto lead = kind == RelationKind::TypeI ? r.alpha(1, 0) : r.beta(1, 1);
        EXPECT_EQ(rel.coeff(lead), LaurentHalfQ(1L));
        EXPECT_EQ(specialize_q_minus_one(rel), relation_element_classical(r)) << ascii(r.base);
      }
}

TEST(DeriveRelation, NoCorrectionWithoutUndottedContainers) {
  for (int n = 2; n <= 4; ++n)
    for (auto kind : {RelationKind::TypeI, RelationKind::TypeII})
      for (auto& r : enumerate_relation_instances(n, kind, Variant::Quantum)) {
        bool has_undotted = false;
        for (auto [l, rr] : r.containers())
          if (!r.base.dots_on(l)) has_undotted = true;
        if (has_undotted) continue;
        auto rel = derive_quantum_relation(r);
        for (auto& [d, c] : rel.terms) {
          bool local = d == r.alpha(1, 0) || d == r.alpha(0, 1) || d == r.beta(1, 0) || d == r.beta(0, 1) ||
                       d == r.alpha(1, 1) || d == r.beta(1, 1);
          EXPECT_TRUE(local) << ascii(d);
        }
      }
}

TEST(DeriveRelation, CorrectionTermsCarryFactor) {
  // A container forces a semi-local term whose coefficient vanishes at q = 1 and q = -1.
  RelationInstance r;
  r.kind = RelationKind::TypeI;
  r.base = dm(3, {{1, 6}, {2, 3}, {4, 5}});
  r.a = 2, r.b = 3, r.c = 4, r.d = 5;
  auto rel = derive_quantum_relation(r);
  auto semi = r.alpha(0, 0).with_dots(1, 1);
  auto semi2 = r.beta(0, 0).with_dots(1, 1);
  bool found = false;
  for (auto& d : {semi, semi2}) {
    auto c = rel.coeff(d);
    if (is_zero(c)) continue;
    found = true;
    EXPECT_TRUE(is_zero(specialize_at_one(c)));
    EXPECT_TRUE(is_zero(specialize_at_minus_one(c)));
  }
  EXPECT_TRUE(found);
}

TEST(BraidAct, CrossingOnCup) {
  SSpace s{1, 0};
  auto x = single(cups(1, {{1, 2}}));
  EXPECT_EQ(braid_act(s, {1}, x), x.scaled(parse_laurent("-q^3/2")));
}

TEST(BraidAct, RejectsProjectorIndices) {
  SSpace s{1, 1};
  EXPECT_THROW(braid_act(s, {2}, single(cups(2, {{1, 2}, {3, 4}}))), std::invalid_argument);
}

TEST(BraidAct, InverseAndRelations) {
  for (int k = 0; k <= 2; ++k) {
    SSpace s{2, k};
    for (auto& d : enumerate_s_basis(s)) {
      auto x = single(d);
      for (int i = 1; i <= 3; ++i) {
        EXPECT_EQ(braid_act(s, {i, -i}, x), x);
        EXPECT_EQ(braid_act(s, {-i, i}, x), x);
      }
      EXPECT_EQ(braid_act(s, {1, 2, 1}, x), braid_act(s, {2, 1, 2}, x));
      EXPECT_EQ(braid_act(s, {2, 3, 2}, x), braid_act(s, {3, 2, 3}, x));
      EXPECT_EQ(braid_act(s, {1, 3}, x), braid_act(s, {3, 1}, x));
    }
  }
  for (int k = 0; k <= 3; ++k) {
    SSpace s{3, k};
    for (auto& d : enumerate_s_basis(s)) {
      auto x = single(d);
      EXPECT_EQ(braid_act(s, {3, 4, 3}, x), braid_act(s, {4, 3, 4}, x));
      EXPECT_EQ(braid_act(s, {1, 5}, x), braid_act(s, {5, 1}, x));
    }
  }
}

TEST(Pullback, LocalOnBasis) {
  for (int n = 1; n <= 3; ++n)
    for (auto& b : enumerate_standard_basis_all(n))
      for (int i = 1; i < 2 * n; ++i)
        for (int g : {i, -i}) {
          auto r = pullback_act({g}, b, PullbackMode::BnkLocal);
          EXPECT_TRUE(r.local) << ascii(b) << " s" << g;
        }
}

TEST(Pullback, InvolutionAtQOne) {
  for (int k = 0; k <= 2; ++k) {
    auto basis = enumerate_standard_basis(2, k);
    for (int i = 1; i <= 3; ++i)
      for (auto& b : basis) {
        auto once = specialize_q_one(pullback_act({i}, b, PullbackMode::BnkLocal).value);
        ClassicalElement twice(Variant::Classical, 2);
        for (auto& [d, c] : once.terms) twice += specialize_q_one(pullback_act({i}, d, PullbackMode::BnkLocal).value).scaled(c);
        EXPECT_EQ(twice, ClassicalElement::single(Variant::Classical, b, Int(1))) << ascii(b) << " s" << i;
        auto inv = specialize_q_one(pullback_act({-i}, b, PullbackMode::BnkLocal).value);
        EXPECT_EQ(inv, once);
      }
  }
}

TEST(Pullback, SemilocalCorrectionsVanishAtPlusMinusOne) {
  int semilocal_seen = 0;
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= n; ++k)
      for (auto& d : enumerate_dotted(n, k, 1))
        for (int i = 1; i < 2 * n; ++i) {
          auto r = pullback_act({i}, d, PullbackMode::FullSemilocal);
          EXPECT_TRUE(r.semilocal_vanish_at_pm1) << ascii(d) << " s" << i;
          semilocal_seen += r.semilocal_terms;
          // The pulled-back value has the same image as the braid action.
          SSpace s{n, k};
          EXPECT_EQ(s_normal_form(s, psi(r.value, k)), braid_act(s, {i}, psi(d, k)));
        }
  EXPECT_GT(semilocal_seen, 0);
}

TEST(JonesWenzl, DeltaTwo) {
  EXPECT_EQ(jones_wenzl_delta2(1), TLElement<Rat>::identity(1));
  auto p2 = jones_wenzl_delta2(2);
  TLElement<Rat> expect = TLElement<Rat>::identity(2);
  expect.add(tl_u(2, 1), Rat(-1, 2));
  EXPECT_EQ(p2, expect);
  const Rat two(2);
  for (int n = 2; n <= 5; ++n) {
    auto p = jones_wenzl_delta2(n);
    EXPECT_EQ(compose(p, p, two), p);
    for (int i = 1; i < n; ++i) {
      auto u = TLElement<Rat>::from_pairing(tl_u(n, i));
      EXPECT_TRUE(compose(p, u, two).is_zero());
      EXPECT_TRUE(compose(u, p, two).is_zero());
    }
  }
}

TEST(JonesWenzl, GenericAgreesWithDefinitionAndSpecialization) {
  RatFunc d(delta_q());
  auto mu = jw_mu(3);
  EXPECT_EQ(mu[0], RatFunc(1L) / d);
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(jones_wenzl_generic(n), jones_wenzl_generic_definition(n)) << n;
  for (int n = 1; n <= 4; ++n) {
    auto p = jones_wenzl_generic(n);
    EXPECT_EQ(specialize_jw(p), jones_wenzl_delta2(n)) << n;
    EXPECT_EQ(compose(p, p, d), p);
    for (int i = 1; i < n; ++i) EXPECT_TRUE(compose(p, TLElement<RatFunc>::from_pairing(tl_u(n, i)), d).is_zero());
  }
}

TEST(Intertwiners, ZigZagCircleAndBraid) {
  auto m = intertwiner_matrices(3);
  auto id2 = identity_on(1);
  EXPECT_EQ(kron(id2, m.eps1) * kron(m.delta1, id2), id2);
  EXPECT_EQ(kron(m.eps1, id2) * kron(id2, m.delta1), id2);
  EXPECT_EQ(m.eps1 * m.delta1, identity_on(0).scaled(parse_laurent("-q^-1 - q")));
  EXPECT_EQ(m.T[1] * m.T[2] * m.T[1], m.T[2] * m.T[1] * m.T[2]);
  EXPECT_EQ(m.U[1] * m.U[1], m.U[1].scaled(delta_q()));
  EXPECT_EQ(m.U[1] * m.U[2] * m.U[1], m.U[1]);
  auto m4 = intertwiner_matrices(4);
  EXPECT_EQ(m4.T[1] * m4.T[3], m4.T[3] * m4.T[1]);
  EXPECT_EQ(m4.T[2] * m4.T[3] * m4.T[2], m4.T[3] * m4.T[2] * m4.T[3]);
}
