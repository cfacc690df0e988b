#include <gtest/gtest.h>

#include "skeinlab/serialize.hpp"
#include "support/random.hpp"

using namespace skeinlab;

TEST(Scalars, RoundTrip) {
  for (int i = 0; i < 50; ++i) {
    Int a = testgen::small_int(1000);
    Rat r = testgen::small_rat();
    EXPECT_EQ(parse_int(int_str(a)), a);
    EXPECT_EQ(parse_rat(rat_str(r)), r);
  }
  EXPECT_EQ(rat_str(Rat(-3, 6)), "-1/2");
}

TEST(Diagram, JsonAndAsciiAgree) {
  for (int n = 0; n <= 4; ++n)
    for (auto& d : enumerate_standard_basis_all(n)) {
      EXPECT_EQ(diagram_from_json(diagram_to_json(d)), d);
      EXPECT_EQ(parse_diagram(diagram_to_json(d).dump()), d);
      EXPECT_EQ(diagram_from_json(json(ascii(d))), d);
    }
}

TEST(Diagram, AsciiForm) {
  auto d = parse_ascii_diagram("((1 4)* (2 3))");
  EXPECT_EQ(d.n(), 2);
  EXPECT_EQ(d.total_dots(), 1);
  EXPECT_EQ(d.dots_on(1), 1);
  EXPECT_THROW(parse_ascii_diagram("((1 3) (2 4))"), std::invalid_argument);
}

TEST(Element, RoundTripAllVariants) {
  auto basis = enumerate_standard_basis_all(3);
  for (int trial = 0; trial < 20; ++trial) {
    ClassicalElement c(Variant::Classical, 3);
    QuantumElement q(Variant::Quantum, 3);
    EquivElement e(Variant::Equivariant, 3);
    for (int i = 0; i < 4; ++i) {
      auto& d = basis[static_cast<size_t>(testgen::uniform(0, static_cast<int>(basis.size()) - 1))];
      c.add(d, testgen::small_int());
      q.add(d, testgen::laurent());
      e.add(d, testgen::poly_ht());
    }
    EXPECT_EQ(element_from_json(element_to_json(c)).integral, c);
    EXPECT_EQ(element_from_json(element_to_json(q)).quantum, q);
    EXPECT_EQ(element_from_json(element_to_json(e)).equivariant, e);
  }
}

TEST(Element, ReduceStandardIsIdentity) {
  for (auto& d : enumerate_standard_basis_all(3)) {
    AnyElement a = element_from_json(json{{"terms", json::array({json{{"diagram", ascii(d)}, {"coeff", "2"}}})}});
    EXPECT_EQ(reduce(a).integral, a.integral);
  }
}

TEST(Dual, RoundTrip) {
  for (int n = 1; n <= 3; ++n) {
    int size = static_cast<int>(enumerate_standard_basis_all(n).size());
    for (int i = 0; i < size; ++i) {
      auto f = dual_via_gram(n, i);
      EXPECT_EQ(dual_from_json(dual_to_json(f)), f);
    }
  }
}

TEST(SliceWord, RoundTrip) {
  SliceWord w{2, {{SliceKind::Cup, 1}, {SliceKind::XP, 2}, {SliceKind::XM, 1}, {SliceKind::Cap, 3}}};
  auto back = slice_word_from_json(slice_word_to_json(w));
  EXPECT_EQ(back.bottom, w.bottom);
  EXPECT_EQ(back.slices, w.slices);
}

TEST(MultiplicationTable, ShapeMatchesRing) {
  for (auto f : {Frobenius::Classical, Frobenius::TwistedT}) {
    auto t = multiplication_table(1, f);
    const auto& R = ArcRing::get(1, f);
    EXPECT_EQ(t["dim"].get<int>(), R.dim());
    EXPECT_EQ(t["basis"].size(), static_cast<size_t>(R.dim()));
    EXPECT_FALSE(t["products"].empty());
  }
}
