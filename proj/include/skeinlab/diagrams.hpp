#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace skeinlab {

using Arc = std::pair<int, int>;

// Non-crossing perfect matching of points 1..2n; arcs sorted by left endpoint.
class CrossinglessMatching {
 public:
  CrossinglessMatching() = default;
  CrossinglessMatching(int n, std::vector<Arc> arcs);  // validates

  int n() const { return n_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  int partner(int p) const { return partner_[p]; }
  bool is_left(int p) const { return partner_[p] > p; }
  Arc arc_at(int p) const { return is_left(p) ? Arc{p, partner_[p]} : Arc{partner_[p], p}; }

  friend bool operator==(const CrossinglessMatching& a, const CrossinglessMatching& b) { return a.arcs_ == b.arcs_; }
  friend bool operator<(const CrossinglessMatching& a, const CrossinglessMatching& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.arcs_ < b.arcs_;
  }

  static bool valid(int n, const std::vector<Arc>& arcs);
  // Matching from a partner table indexed 1..2n.
  static CrossinglessMatching from_partners(const std::vector<int>& partner);

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<int> partner_{0};
};

// Dots keyed by the left endpoint of the arc carrying them.
struct DottedMatching {
  CrossinglessMatching m;
  std::map<int, int> dots;

  DottedMatching() = default;
  explicit DottedMatching(CrossinglessMatching mm, std::map<int, int> d = {});

  int n() const { return m.n(); }
  int dots_on(int left) const {
    auto it = dots.find(left);
    return it == dots.end() ? 0 : it->second;
  }
  int total_dots() const;
  int max_dots_per_arc() const;
  // New diagram with the dot count on the arc starting at `left` changed by `delta`.
  DottedMatching with_dots(int left, int count) const;

  friend bool operator==(const DottedMatching& a, const DottedMatching& b) { return a.m == b.m && a.dots == b.dots; }
  friend bool operator<(const DottedMatching& a, const DottedMatching& b) {
    if (!(a.m == b.m)) return a.m < b.m;
    return a.dots < b.dots;
  }
};

std::vector<CrossinglessMatching> enumerate_matchings(int n);
std::vector<DottedMatching> enumerate_standard_basis(int n, int k);
std::vector<DottedMatching> enumerate_standard_basis_all(int n);  // union over k
// All diagrams with k dots, at most `max_per_arc` per arc.
std::vector<DottedMatching> enumerate_dotted(int n, int k, int max_per_arc = 1);

std::vector<Arc> containing_arcs(const CrossinglessMatching& m, Arc a);  // innermost first
std::vector<Arc> outer_arcs(const CrossinglessMatching& m);
bool is_outer(const CrossinglessMatching& m, Arc a);
int containment_statistic(const DottedMatching& d);
bool is_standard(const DottedMatching& d);

struct Block {
  int x = 0, ex = 0, y = 0, ey = 0;
  friend bool operator==(const Block& a, const Block& b) {
    return a.x == b.x && a.ex == b.ex && a.y == b.y && a.ey == b.ey;
  }
};
using MatchingTuple = std::vector<Block>;

MatchingTuple to_tuple(const DottedMatching& d);
DottedMatching from_tuple(const MatchingTuple& t);
bool tuple_valid(const MatchingTuple& t);
int r_statistic(const MatchingTuple& t);
std::string tuple_str(const MatchingTuple& t);

using LatticePath = std::string;  // letters 'R' and 'D'
LatticePath path_alpha(const DottedMatching& d);
DottedMatching path_beta(const LatticePath& p);
std::vector<LatticePath> enumerate_paths(int n, int k);

// Flat (2m, 2n)-tangle; top endpoints 1..2m, bottom endpoints 1..2n.
struct TangleEnd {
  bool top;
  int idx;
  friend bool operator==(const TangleEnd& a, const TangleEnd& b) { return a.top == b.top && a.idx == b.idx; }
};

struct FlatTangle {
  int m = 0, n = 0;
  std::vector<std::pair<TangleEnd, TangleEnd>> strands;
  int width() const;
};

CrossinglessMatching unbend(const FlatTangle& a);
FlatTangle bend(int m, int n, const CrossinglessMatching& c);
std::vector<FlatTangle> enumerate_flat_tangles(int m, int n);
FlatTangle identity_tangle(int m);

std::string ascii(const DottedMatching& d, char mark = '*');
std::string latex(const DottedMatching& d);

}  // namespace skeinlab
