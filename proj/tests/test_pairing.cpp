#include <gtest/gtest.h>

#include <set>

#include "skeinlab/pairing.hpp"
#include "support/random.hpp"

using namespace skeinlab;

namespace {

DottedMatching dm(int n, std::vector<Arc> arcs, std::map<int, int> dots = {}) {
  return DottedMatching(CrossinglessMatching(n, std::move(arcs)), std::move(dots));
}

DottedMatching random_diagram(int n) {
  auto ms = enumerate_matchings(n);
  const auto& m = ms[static_cast<size_t>(testgen::uniform(0, static_cast<int>(ms.size()) - 1))];
  std::map<int, int> dots;
  for (auto& a : m.arcs())
    if (testgen::uniform(0, 1)) dots[a.first] = 1;
  return DottedMatching(m, dots);
}

bool is_unit_vector(const std::vector<Rat>& v, size_t j, int sign) {
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != (i == j ? Rat(sign) : Rat(0))) return false;
  return true;
}

}  // namespace

TEST(Circle, EvaluationRules) {
  EXPECT_EQ(evaluate_circle({}), 2);
  EXPECT_EQ(evaluate_circle({Mark::Dot, Mark::X}), 1);
  EXPECT_EQ(evaluate_circle({Mark::Dot, Mark::X, Mark::Dot, Mark::X}), 1);
  EXPECT_EQ(evaluate_circle({Mark::Dot}), 0);
  EXPECT_EQ(evaluate_circle({Mark::X}), 0);
  EXPECT_EQ(evaluate_circle({Mark::Dot, Mark::Dot, Mark::X, Mark::X}), 0);
  EXPECT_EQ(evaluate_circle({Mark::Dot, Mark::X, Mark::X}), 0);
}

TEST(Pair, SingleArc) {
  auto u = dm(1, {{1, 2}}), d = dm(1, {{1, 2}}, {{1, 1}});
  EXPECT_EQ(pair(u, u), 2);
  EXPECT_EQ(pair(d, d), 1);
  EXPECT_EQ(pair(u, d), 0);
  EXPECT_EQ(pair(d, u), 0);
}

TEST(Pair, RotationLandsOnMirror) {
  auto b = dm(3, {{1, 2}, {3, 6}, {4, 5}}, {{3, 1}});
  auto caps = rotate_to_caps(b);
  EXPECT_EQ(caps, dm(3, {{1, 4}, {2, 3}, {5, 6}}, {{1, 1}}));
  auto closed = close_up(b, caps);
  EXPECT_EQ(closed.circles.size(), 1u);
}

TEST(Pair, SymmetricOnAllDiagrams) {
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= n; ++k) {
      auto ds = enumerate_dotted(n, k, 1);
      for (auto& a : ds)
        for (auto& b : ds) EXPECT_EQ(pair(a, b), pair(b, a));
    }
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_diagram(4), b = random_diagram(4);
    EXPECT_EQ(pair(a, b), pair(b, a));
    if (a.total_dots() != b.total_dots()) EXPECT_EQ(pair(a, b), 0);
  }
}

TEST(Pair, RelationsPairToZero) {
  for (int n = 2; n <= 4; ++n) {
    auto basis = enumerate_standard_basis_all(n);
    for (auto kind : {RelationKind::TypeI, RelationKind::TypeII})
      for (auto& r : enumerate_relation_instances(n, kind, Variant::Classical)) {
        auto e = relation_element_classical(r);
        for (auto& b : basis) EXPECT_EQ(pair(e, b), 0) << ascii(r.base) << " vs " << ascii(b);
      }
  }
}

TEST(Gram, SingleArcAndStructure) {
  auto g1 = gram_matrix(1);
  EXPECT_EQ(g1(0, 0), 2);
  EXPECT_EQ(g1(0, 1), 0);
  EXPECT_EQ(g1(1, 0), 0);
  EXPECT_EQ(g1(1, 1), 1);
  for (int n = 1; n <= 4; ++n) {
    auto g = gram_matrix(n);
    auto basis = enumerate_standard_basis_all(n);
    EXPECT_EQ(g, g.transpose());
    for (int i = 0; i < g.rows; ++i)
      for (int j = 0; j < g.cols; ++j)
        if (basis[static_cast<size_t>(i)].total_dots() != basis[static_cast<size_t>(j)].total_dots())
          EXPECT_EQ(g(i, j), 0);
    Matrix<Rat> gq(g.rows, g.cols);
    for (int i = 0; i < g.rows; ++i)
      for (int j = 0; j < g.cols; ++j) gq(i, j) = Rat(g(i, j));
    EXPECT_NE(determinant(gq), 0) << "n=" << n;
  }
}

TEST(DualGram, SingleArc) {
  auto u = dual_via_gram(1, 0);
  EXPECT_EQ(u.terms.size(), 1u);
  EXPECT_EQ(u.terms.at(dm(1, {{1, 2}})), Rat(1, 2));
  auto x = dual_via_gram(1, 1);
  EXPECT_EQ(x.terms.size(), 1u);
  EXPECT_EQ(x.terms.at(dm(1, {{1, 2}}, {{1, 1}})), Rat(1));
}

TEST(DualGram, PairingMatrixIsIdentity) {
  for (int n = 1; n <= 3; ++n) {
    auto basis = enumerate_standard_basis_all(n);
    for (size_t j = 0; j < basis.size(); ++j)
      EXPECT_TRUE(is_unit_vector(pairing_vector(dual_via_gram(n, static_cast<int>(j))), j, 1));
  }
}

TEST(Projector, SizeOneIsIdentity) {
  DualElement e(2);
  e.add(dm(2, {{1, 4}, {2, 3}}, {{2, 1}}), Rat(3));
  for (int l = 0; l < 4; ++l) EXPECT_EQ(attach_projector(e, l, 1), e);
}

TEST(Projector, TwoStrandsOnParallelCaps) {
  DualElement e(2);
  e.add(dm(2, {{1, 2}, {3, 4}}), Rat(1));
  DualElement expect(2);
  expect.add(dm(2, {{1, 2}, {3, 4}}), Rat(1));
  expect.add(dm(2, {{1, 4}, {2, 3}}), Rat(-1, 2));
  EXPECT_EQ(attach_projector(e, 1, 2), expect);
}

TEST(Projector, TurnbackVanishesAndXCircleDies) {
  DualElement nested(2);
  nested.add(dm(2, {{1, 4}, {2, 3}}), Rat(1));
  EXPECT_TRUE(attach_projector(nested, 1, 2).is_zero());
  // The cup term closes the X-cap into an X-circle, which evaluates to zero.
  DualElement xcap(1);
  xcap.add(dm(1, {{1, 2}}, {{1, 1}}), Rat(1));
  EXPECT_EQ(attach_projector(xcap, 0, 2), xcap);
  // Two X's brought onto one arc kill the term.
  DualElement two(2);
  two.add(dm(2, {{1, 2}, {3, 4}}, {{1, 1}, {3, 1}}), Rat(1));
  auto r = attach_projector(two, 1, 2);
  EXPECT_EQ(r.terms.size(), 1u);
  EXPECT_EQ(r.terms.begin()->first, dm(2, {{1, 2}, {3, 4}}, {{1, 1}, {3, 1}}));
}

TEST(DualProjectors, DottedSingleArc) {
  auto m = dm(1, {{1, 2}}, {{1, 1}});
  auto c = dual_via_projectors(m);
  EXPECT_EQ(c.projectors(), 1);
  EXPECT_EQ(c.raw_pairing, Rat(1));
  DualElement xcap(1);
  xcap.add(dm(1, {{1, 2}}, {{1, 1}}), Rat(1));
  EXPECT_EQ(c.dual, xcap);
  EXPECT_EQ(pair(m, c.dual), Rat(1));
}

TEST(DualProjectors, UndottedSingleArcMatchesOracle) {
  auto c = dual_via_projectors(dm(1, {{1, 2}}));
  EXPECT_EQ(c.dual, dual_via_gram(1, 0).scaled(Rat(c.sign)));
}

TEST(DualProjectors, PairingMatrixIsSignedIdentity) {
  for (int n = 1; n <= 3; ++n) {
    auto basis = enumerate_standard_basis_all(n);
    if (n == 3) EXPECT_EQ(basis.size(), 20u);
    for (size_t j = 0; j < basis.size(); ++j) {
      auto c = dual_via_projectors(basis[j]);
      EXPECT_TRUE(is_unit_vector(pairing_vector(c.dual), j, c.sign)) << ascii(basis[j]);
      auto oracle = pairing_vector(dual_via_gram(n, static_cast<int>(j)));
      auto raw = pairing_vector(expand(c.builder).scaled(c.coefficient));
      for (size_t i = 0; i < raw.size(); ++i) EXPECT_EQ(raw[i], oracle[i] * c.raw_pairing);
    }
  }
}

TEST(DualProjectors, ProjectorCountIsR) {
  for (int n = 1; n <= 3; ++n)
    for (auto& b : enumerate_standard_basis_all(n)) {
      auto c = dual_via_projectors(b);
      EXPECT_EQ(c.projectors(), r_statistic(to_tuple(b))) << ascii(b);
      int r = r_statistic(to_tuple(b));
      for (auto& s : c.steps) {
        EXPECT_EQ(r_statistic(s.to), r_statistic(s.from) - 1);
        EXPECT_LE(r_statistic(s.from), r);
      }
    }
}

TEST(DualProjectors, AbsorbsBlockProjectors) {
  for (int n = 1; n <= 3; ++n)
    for (auto& b : enumerate_standard_basis_all(n)) {
      auto c = dual_via_projectors(b);
      auto e = c.dual;
      int left = 0;
      for (auto& blk : to_tuple(b)) {
        e = attach_projector(e, left, blk.x);
        left += blk.x;
        e = attach_projector(e, left, blk.y);
        left += blk.y;
      }
      EXPECT_EQ(pairing_vector(e), pairing_vector(c.dual)) << ascii(b);
    }
}

TEST(DualProjectors, ApplicableStepsAndTheirFailures) {
  // Every rule yields correct duals somewhere; the peel-off rules misfire only when blocks sit on the far side
  // of the projector, which the default rule order never selects.
  std::set<std::string> rules;
  std::set<std::pair<std::string, std::string>> failures;
  for (int n = 2; n <= 4; ++n) {
    auto basis = enumerate_standard_basis_all(n);
    for (size_t j = 0; j < basis.size(); ++j)
      for (auto& st : dual_candidate_steps(to_tuple(basis[j]))) {
        auto c = dual_via_step(basis[j], st);
        if (is_unit_vector(pairing_vector(c.dual), j, c.sign))
          rules.insert(st.rule);
        else
          failures.emplace(ascii(basis[j]), st.rule);
      }
  }
  EXPECT_EQ(rules, (std::set<std::string>{"1", "2a", "2b", "3a", "3b"}));
  std::set<std::pair<std::string, std::string>> expect{{"((1 2) (3 4) (5 8)* (6 7))", "3a"},
                                                       {"((1 2)* (3 4) (5 8)* (6 7))", "3a"},
                                                       {"((1 4)* (2 3) (5 6) (7 8))", "3b"},
                                                       {"((1 4)* (2 3) (5 6) (7 8)*)", "3b"}};
  EXPECT_EQ(failures, expect);
}

TEST(DualProjectors, DefaultStepsExactThroughFourArcs) {
  auto basis = enumerate_standard_basis_all(4);
  for (size_t j = 0; j < basis.size(); ++j) {
    auto c = dual_via_projectors(basis[j]);
    EXPECT_TRUE(is_unit_vector(pairing_vector(c.dual), j, c.sign)) << ascii(basis[j]);
    EXPECT_EQ(c.projectors(), r_statistic(to_tuple(basis[j])));
  }
}

TEST(DualUndotted, WorkedExampleCoefficient) {
  // Cups (1 4)(2 3)(5 6) read as the canonical vector v(0,1; 1,2; 2,0).
  auto c = dual_undotted(CrossinglessMatching(3, {{1, 4}, {2, 3}, {5, 6}}));
  ASSERT_EQ(c.steps.size(), 1u);
  EXPECT_EQ(tuple_str(c.steps[0].from), "(0^0, 1^0; 1^0, 2^0; 2^0, 0^0)");
  EXPECT_EQ(c.steps[0].size, 3);
  // Balanced quantum binomial [3 choose 1] at q = -1.
  EXPECT_EQ(c.steps[0].coefficient, Rat(3));
  EXPECT_EQ(c.projectors(), 2);
}

TEST(DualUndotted, MatchesOracleUpToScalar) {
  for (int n = 1; n <= 4; ++n) {
    auto basis = enumerate_standard_basis_all(n);
    for (size_t j = 0; j < basis.size(); ++j) {
      if (basis[j].total_dots()) continue;
      auto c = dual_undotted(basis[j].m);
      EXPECT_TRUE(is_unit_vector(pairing_vector(c.dual), j, c.sign)) << ascii(basis[j]);
    }
  }
  EXPECT_EQ(dual_undotted(CrossinglessMatching(1, {{1, 2}})).dual, dual_via_gram(1, 0));
}

TEST(DualUndotted, AgreesWithDottedConstruction) {
  for (int n = 1; n <= 3; ++n)
    for (auto& m : enumerate_matchings(n)) {
      auto a = dual_undotted(m), b = dual_via_projectors(DottedMatching(m));
      EXPECT_EQ(pairing_vector(a.dual.scaled(Rat(a.sign))), pairing_vector(b.dual.scaled(Rat(b.sign))));
    }
}

TEST(Positivity, Probe) {
  auto p1 = positivity_probe(1);
  EXPECT_TRUE(p1.positive_definite);
  EXPECT_EQ(p1.minors, (std::vector<Int>{2, 2}));
  // With the rotated convention a dotted diagram can pair to zero with itself.
  EXPECT_EQ(pair(dm(2, {{1, 2}, {3, 4}}, {{1, 1}}), dm(2, {{1, 2}, {3, 4}}, {{1, 1}})), 0);
  EXPECT_FALSE(positivity_probe(2).positive_definite);
  for (int n = 1; n <= 3; ++n) EXPECT_TRUE(positivity_probe(n).mirrored_positive_definite);
}
