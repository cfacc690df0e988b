#include <gtest/gtest.h>

#include "skeinlab/exactmath.hpp"
#include "support/random.hpp"

using namespace skeinlab;

TEST(QuantumInteger, SmallValues) {
  EXPECT_EQ(quantum_integer(1), LaurentHalfQ(1L));
  EXPECT_EQ(quantum_integer(0), LaurentHalfQ());
  EXPECT_THROW(quantum_integer(-1), std::invalid_argument);
}

TEST(QuantumInteger, MatchesDefiningFraction) {
  // [n] (q - q^-1) = q^n - q^-n
  for (int n = 0; n <= 8; ++n) {
    auto lhs = quantum_integer(n) * (LaurentHalfQ::q(1) - LaurentHalfQ::q(-1));
    auto rhs = LaurentHalfQ::q(n) - LaurentHalfQ::q(-n);
    EXPECT_EQ(lhs, rhs) << n;
  }
  EXPECT_EQ(quantum_integer(3), LaurentHalfQ::q(1).pow(2) + LaurentHalfQ(1L) + LaurentHalfQ::q(-2));
}

TEST(QuantumInteger, Specializations) {
  for (int n = 1; n <= 9; ++n) {
    EXPECT_EQ(specialize_q(quantum_integer(n), Rat(1)), Rat(n));
    EXPECT_EQ(specialize_q(quantum_integer(n), Rat(-1)), Rat(n % 2 ? n : -n));
  }
  EXPECT_EQ(specialize_q(quantum_integer(2), Rat(-1)), Rat(-2));
}

TEST(QuantumBinomial, PascalAndSymmetry) {
  for (int n = 0; n <= 7; ++n)
    for (int k = 0; k <= n; ++k) {
      EXPECT_EQ(quantum_binomial(n, k), quantum_binomial(n, n - k));
      EXPECT_EQ(specialize_q(quantum_binomial(n, k), Rat(1)), Rat(binomial(n, k)));
      // [n choose k] [k]! [n-k]! = [n]!
      LaurentHalfQ a(1L), b(1L), c(1L);
      for (int i = 2; i <= n; ++i) a *= quantum_integer(i);
      for (int i = 2; i <= k; ++i) b *= quantum_integer(i);
      for (int i = 2; i <= n - k; ++i) c *= quantum_integer(i);
      EXPECT_EQ(quantum_binomial(n, k) * b * c, a);
    }
}

TEST(Specialize, Examples) {
  auto p = LaurentHalfQ::q(1) + LaurentHalfQ::q(-1);
  EXPECT_EQ(specialize_q(p, Rat(-1)), Rat(-2));
  GaussRat v = specialize_at_minus_one(LaurentHalfQ::mono(1));
  EXPECT_EQ(v * v, GaussRat(-1L));
  EXPECT_EQ(PolyHT::mono(2, 1).eval(Rat(5), Rat(7)), Rat(175));
  EXPECT_THROW(specialize_q(LaurentHalfQ::mono(1), Rat(2)), std::domain_error);
  EXPECT_THROW(specialize_q(LaurentHalfQ::q(-1), Rat(0)), std::domain_error);
}

TEST(Laurent, RingAxiomsRandom) {
  for (int it = 0; it < 300; ++it) {
    auto a = testgen::laurent(), b = testgen::laurent(), c = testgen::laurent();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    for (auto& [e, x] : (a * b).terms) EXPECT_NE(x, 0);
  }
}

TEST(Laurent, SpecializationIsHomomorphism) {
  for (int it = 0; it < 300; ++it) {
    auto a = testgen::laurent(), b = testgen::laurent();
    EXPECT_EQ(specialize_at_minus_one(a * b), specialize_at_minus_one(a) * specialize_at_minus_one(b));
    EXPECT_EQ(specialize_at_minus_one(a + b), specialize_at_minus_one(a) + specialize_at_minus_one(b));
    EXPECT_EQ(specialize_at_one(a * b), specialize_at_one(a) * specialize_at_one(b));
    LaurentHalfQ ae, be;
    for (auto& [e, x] : a.terms) ae.terms[2 * e] = x;
    for (auto& [e, x] : b.terms) be.terms[2 * e] = x;
    Rat qv(3, 2);
    EXPECT_EQ(specialize_q(ae * be, qv), specialize_q(ae, qv) * specialize_q(be, qv));
  }
}

TEST(Laurent, ParseRoundTrip) {
  for (int it = 0; it < 200; ++it) {
    auto a = testgen::laurent();
    EXPECT_EQ(parse_laurent(a.str()), a) << a.str();
  }
  EXPECT_EQ(parse_laurent("q^-1 + 2"), LaurentHalfQ::q(-1) + LaurentHalfQ(2L));
  EXPECT_EQ(parse_laurent("-q^3/2"), -LaurentHalfQ::mono(3));
  EXPECT_EQ((LaurentHalfQ::q(-1) + LaurentHalfQ(2L)).str(), "q^-1 + 2");
}

TEST(PolyHT, RingAxiomsAndParse) {
  for (int it = 0; it < 200; ++it) {
    auto a = testgen::poly_ht(), b = testgen::poly_ht(), c = testgen::poly_ht();
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(parse_polyht(a.str()), a) << a.str();
    Rat h(2, 3), t(-5, 7);
    EXPECT_EQ((a * b).eval(h, t), a.eval(h, t) * b.eval(h, t));
  }
  EXPECT_EQ((PolyHT::mono(2, 1) + PolyHT(3L)).str(), "h^2*t + 3");
  EXPECT_TRUE((PolyHT::h() * PolyHT::h() + PolyHT::t()).homogeneous());
}

TEST(RatFunc, FieldAxiomsRandom) {
  for (int it = 0; it < 150; ++it) {
    auto a = testgen::rat_func(), b = testgen::rat_func(), c = testgen::rat_func();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
  }
}

TEST(RatFunc, CanonicalForm) {
  LaurentQ vm1 = LaurentQ::mono(1) - LaurentQ(1L);
  LaurentQ v2m1 = LaurentQ::mono(2) - LaurentQ(1L);
  RatFunc f(v2m1, vm1);  // (v^2-1)/(v-1) = v+1
  EXPECT_TRUE(f.is_laurent());
  EXPECT_EQ(f, RatFunc(LaurentQ::mono(1) + LaurentQ(1L)));
  RatFunc g(LaurentQ(2L), LaurentQ::mono(3) * LaurentQ(Rat(4)) + LaurentQ::mono(1) * LaurentQ(Rat(2)));
  EXPECT_EQ(g.den().min_exp(), 0);
  EXPECT_EQ(g.den().coeff(0), 1);
  EXPECT_EQ(*g.eval_v(Rat(1)), Rat(1, 3));
}

TEST(SmithNormalForm, Examples) {
  Matrix<Int> a(2, 2);
  a(0, 0) = 2;
  a(1, 1) = 3;
  auto s = smith_normal_form(a);
  EXPECT_EQ(s.invariants, (std::vector<Int>{1, 6}));
  Matrix<Int> z(2, 2);
  auto sz = smith_normal_form(z);
  EXPECT_EQ(sz.invariants, (std::vector<Int>{0, 0}));
  EXPECT_EQ(sz.cokernel_free_rank(), 2);
  Matrix<Int> b(2, 2);
  b(0, 0) = 2;
  b(1, 1) = 4;
  EXPECT_EQ(smith_normal_form(b).invariants, (std::vector<Int>{2, 4}));
}

TEST(SmithNormalForm, RandomProperties) {
  for (int it = 0; it < 100; ++it) {
    int r = testgen::uniform(1, 5), c = testgen::uniform(1, 5);
    Matrix<Int> m(r, c);
    for (auto& x : m.a) x = testgen::small_int(6);
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(abs(determinant(Matrix<Rat>(0, 0))), 1);
    for (size_t i = 0; i + 1 < s.invariants.size(); ++i) {
      if (s.invariants[i + 1] == 0) continue;
      EXPECT_NE(s.invariants[i], 0);
      EXPECT_TRUE(mpz_divisible_p(s.invariants[i + 1].get_mpz_t(), s.invariants[i].get_mpz_t()));
    }
    if (r == c) {
      Matrix<Rat> mr(r, r);
      for (size_t i = 0; i < m.a.size(); ++i) mr.a[i] = Rat(m.a[i]);
      Rat det = abs(determinant(mr));
      Int prod = 1;
      for (auto& d : s.invariants) prod *= d;
      EXPECT_EQ(det, Rat(prod));
    }
    // Lattice path agrees with SNF on the row lattice.
    Lattice lat(c);
    for (int i = 0; i < r; ++i) lat.insert(m.row(i));
    EXPECT_EQ(lat.rank(), s.rank());
    auto ls = smith_normal_form(m.transpose(), false);
    EXPECT_EQ(lat.cokernel_torsion(), ls.torsion());
    for (int i = 0; i < r; ++i) EXPECT_TRUE(lat.contains(m.row(i)));
  }
}

TEST(LinearAlgebra, RankAndMembership) {
  std::vector<std::vector<Rat>> span{{1, 0}};
  auto res = rank_and_membership(span, std::vector<Rat>{0, 1});
  EXPECT_EQ(res.rank, 1);
  EXPECT_FALSE(res.is_member);
  auto res2 = rank_and_membership(std::vector<std::vector<Rat>>{{1, 0}, {0, 1}}, std::vector<Rat>{0, 1});
  EXPECT_TRUE(res2.is_member);
  EXPECT_EQ(res2.coordinates, (std::vector<Rat>{0, 1}));
  EXPECT_EQ(rank_of(std::vector<std::vector<Rat>>{{1, 1}, {2, 2}}, 2), 1);
  auto inter = span_intersection<Rat>({{1, 0, 0}, {0, 1, 0}}, {{0, 1, 0}, {0, 0, 1}}, 3);
  EXPECT_EQ(inter.size(), 1u);
  EXPECT_THROW(rank_and_membership(span, std::vector<Rat>{0, 1, 2}), std::invalid_argument);
}

TEST(LinearAlgebra, NullspaceRandom) {
  for (int it = 0; it < 50; ++it) {
    int r = testgen::uniform(1, 5), c = testgen::uniform(1, 6);
    Matrix<Rat> m(r, c);
    for (auto& x : m.a) x = testgen::small_rat();
    auto ns = nullspace(m);
    EXPECT_EQ(static_cast<int>(ns.size()) + rank_of(m), c);
    for (auto& v : ns) {
      Matrix<Rat> col(c, 1);
      for (int i = 0; i < c; ++i) col(i, 0) = v[i];
      EXPECT_TRUE((m * col).is_zero_matrix());
    }
  }
}
