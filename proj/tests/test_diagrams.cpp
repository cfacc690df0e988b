#include <gtest/gtest.h>

#include <set>

#include "skeinlab/diagrams.hpp"
#include "skeinlab/exactmath.hpp"

using namespace skeinlab;

namespace {

// Catalan numbers by the convolution recurrence.
long catalan(int n) {
  std::vector<long> c(n + 1, 0);
  c[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
  return c[n];
}

// Brute force: all perfect matchings of 2n points, filtered for crossings.
int brute_noncrossing(int n) {
  std::vector<int> pts(2 * n);
  int count = 0;
  std::function<void(std::vector<int>&, std::vector<Arc>&)> rec = [&](std::vector<int>& free, std::vector<Arc>& arcs) {
    if (free.empty()) {
      for (auto& a : arcs)
        for (auto& b : arcs)
          if (a.first < b.first && b.first < a.second && a.second < b.second) return;
      ++count;
      return;
    }
    int p = free[0];
    for (size_t i = 1; i < free.size(); ++i) {
      std::vector<int> rest;
      for (size_t j = 1; j < free.size(); ++j)
        if (j != i) rest.push_back(free[j]);
      arcs.emplace_back(p, free[i]);
      rec(rest, arcs);
      arcs.pop_back();
    }
  };
  std::vector<int> free;
  for (int i = 1; i <= 2 * n; ++i) free.push_back(i);
  std::vector<Arc> arcs;
  rec(free, arcs);
  return count;
}

DottedMatching dm(int n, std::vector<Arc> arcs, std::map<int, int> dots = {}) {
  return DottedMatching(CrossinglessMatching(n, std::move(arcs)), std::move(dots));
}

}  // namespace

TEST(Matchings, CatalanCounts) {
  EXPECT_EQ(enumerate_matchings(0).size(), 1u);
  EXPECT_EQ(enumerate_matchings(3).size(), 5u);
  EXPECT_EQ(enumerate_matchings(5).size(), 42u);
  for (int n = 0; n <= 8; ++n) {
    auto ms = enumerate_matchings(n);
    EXPECT_EQ(static_cast<long>(ms.size()), catalan(n));
    std::set<std::vector<Arc>> distinct;
    for (auto& m : ms) {
      EXPECT_TRUE(CrossinglessMatching::valid(n, m.arcs()));
      distinct.insert(m.arcs());
    }
    EXPECT_EQ(distinct.size(), ms.size());
    EXPECT_TRUE(std::is_sorted(ms.begin(), ms.end()));
  }
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(static_cast<long>(brute_noncrossing(n)), catalan(n));
}

TEST(Matchings, RejectsCrossing) {
  EXPECT_THROW(CrossinglessMatching(2, {{1, 3}, {2, 4}}), std::invalid_argument);
  EXPECT_THROW(CrossinglessMatching(2, {{1, 2}, {2, 4}}), std::invalid_argument);
}

TEST(StandardBasis, Counts) {
  EXPECT_EQ(enumerate_standard_basis(1, 1).size(), 1u);
  EXPECT_EQ(enumerate_standard_basis(2, 1).size(), 3u);
  EXPECT_EQ(enumerate_standard_basis(3, 0).size(), 5u);
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      Int expect = binomial(2 * n, n + k) - binomial(2 * n, n + k + 1);
      EXPECT_EQ(Int(static_cast<long>(enumerate_standard_basis(n, k).size())), expect) << n << "," << k;
      EXPECT_EQ(Int(static_cast<long>(enumerate_paths(n, k).size())), expect);
    }
}

TEST(Containment, Examples) {
  CrossinglessMatching a(2, {{1, 4}, {2, 3}});
  EXPECT_EQ(containing_arcs(a, {2, 3}), (std::vector<Arc>{{1, 4}}));
  CrossinglessMatching b(2, {{1, 2}, {3, 4}});
  EXPECT_EQ(outer_arcs(b).size(), 2u);
  CrossinglessMatching c(3, {{1, 6}, {2, 5}, {3, 4}});
  EXPECT_EQ(containing_arcs(c, {3, 4}), (std::vector<Arc>{{2, 5}, {1, 6}}));
  EXPECT_THROW(containing_arcs(c, {1, 2}), std::invalid_argument);
  EXPECT_EQ(containment_statistic(dm(2, {{1, 4}, {2, 3}}, {{2, 1}})), 1);
  EXPECT_EQ(containment_statistic(dm(3, {{1, 6}, {2, 5}, {3, 4}}, {{3, 2}})), 4);
  for (auto& d : enumerate_standard_basis_all(4)) EXPECT_EQ(containment_statistic(d), 0);
}

TEST(Tuple, Examples) {
  auto t1 = to_tuple(dm(1, {{1, 2}}));
  EXPECT_EQ(t1, (MatchingTuple{{1, 0, 1, 0}}));
  auto t2 = to_tuple(dm(1, {{1, 2}}, {{1, 1}}));
  EXPECT_EQ(t2, (MatchingTuple{{1, 1, 1, 1}}));
  MatchingTuple tuple{{2, 0, 1, 0}, {1, 0, 2, 0}, {1, 1, 1, 1}, {2, 1, 2, 1}};
  auto d = from_tuple(tuple);
  EXPECT_EQ(d.n(), 6);
  EXPECT_EQ(to_tuple(d), tuple);
  EXPECT_EQ(d.m.arcs(), (std::vector<Arc>{{1, 6}, {2, 3}, {4, 5}, {7, 8}, {9, 12}, {10, 11}}));
  EXPECT_EQ(r_statistic(tuple), 3);
  EXPECT_EQ(r_statistic(t2), 1);
  EXPECT_EQ(r_statistic(t1), 1);
  EXPECT_THROW(to_tuple(dm(2, {{1, 4}, {2, 3}}, {{2, 1}})), std::invalid_argument);
}

TEST(Tuple, RoundTripAll) {
  for (int n = 0; n <= 5; ++n)
    for (auto& d : enumerate_standard_basis_all(n)) {
      auto t = to_tuple(d);
      EXPECT_EQ(from_tuple(t), d);
      EXPECT_TRUE(tuple_valid(t));
      EXPECT_GE(r_statistic(t), 1);
    }
}

TEST(LatticePath, Examples) {
  EXPECT_EQ(path_alpha(dm(1, {{1, 2}})), "RD");
  EXPECT_EQ(path_alpha(dm(1, {{1, 2}}, {{1, 1}})), "RR");
  EXPECT_THROW(path_beta("DR"), std::invalid_argument);
}

TEST(LatticePath, Bijection) {
  for (int n = 0; n <= 5; ++n)
    for (int k = 0; k <= n; ++k) {
      auto basis = enumerate_standard_basis(n, k);
      std::set<LatticePath> images;
      for (auto& d : basis) {
        auto p = path_alpha(d);
        EXPECT_EQ(path_beta(p), d);
        images.insert(p);
      }
      auto paths = enumerate_paths(n, k);
      EXPECT_EQ(images, std::set<LatticePath>(paths.begin(), paths.end()));
      for (auto& p : paths) EXPECT_EQ(path_alpha(path_beta(p)), p);
    }
}

TEST(Unbend, Examples) {
  auto id = identity_tangle(1);
  EXPECT_EQ(unbend(id).arcs(), (std::vector<Arc>{{1, 4}, {2, 3}}));
  EXPECT_EQ(id.width(), 2);
  FlatTangle cupcap;
  cupcap.m = cupcap.n = 1;
  cupcap.strands = {{{true, 1}, {true, 2}}, {{false, 1}, {false, 2}}};
  EXPECT_EQ(unbend(cupcap).arcs(), (std::vector<Arc>{{1, 2}, {3, 4}}));
  EXPECT_EQ(cupcap.width(), 0);
  FlatTangle empty;
  EXPECT_EQ(unbend(empty).n(), 0);
}

TEST(Unbend, WidthCountsStraddlingArcs) {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n + m <= 4; ++n)
      for (auto& t : enumerate_flat_tangles(m, n)) {
        auto c = unbend(t);
        int straddle = 0;
        for (auto [l, r] : c.arcs())
          if (l <= 2 * m && r > 2 * m) ++straddle;
        EXPECT_EQ(straddle, t.width());
        EXPECT_EQ(unbend(bend(m, n, c)), c);
      }
}

TEST(Ascii, Rendering) {
  EXPECT_EQ(ascii(dm(2, {{1, 4}, {2, 3}}, {{1, 1}})), "((1 4)* (2 3))");
}
