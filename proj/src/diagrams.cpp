#include "skeinlab/diagrams.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace skeinlab {

bool CrossinglessMatching::valid(int n, const std::vector<Arc>& arcs) {
  if (n < 0 || static_cast<int>(arcs.size()) != n) return false;
  std::vector<int> partner(2 * n + 1, 0);
  for (auto [l, r] : arcs) {
    if (l < 1 || r > 2 * n || l >= r) return false;
    if (partner[l] || partner[r]) return false;
    partner[l] = r;
    partner[r] = l;
  }
  std::vector<int> stack;
  for (int p = 1; p <= 2 * n; ++p) {
    if (partner[p] > p) {
      stack.push_back(p);
    } else {
      if (stack.empty() || stack.back() != partner[p]) return false;
      stack.pop_back();
    }
  }
  return true;
}

CrossinglessMatching::CrossinglessMatching(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
  std::sort(arcs_.begin(), arcs_.end());
  if (!valid(n, arcs_)) throw std::invalid_argument("not a crossingless matching");
  partner_.assign(2 * n + 1, 0);
  for (auto [l, r] : arcs_) {
    partner_[l] = r;
    partner_[r] = l;
  }
}

CrossinglessMatching CrossinglessMatching::from_partners(const std::vector<int>& partner) {
  std::vector<Arc> arcs;
  for (size_t p = 1; p < partner.size(); ++p)
    if (partner[p] > static_cast<int>(p)) arcs.emplace_back(static_cast<int>(p), partner[p]);
  return CrossinglessMatching(static_cast<int>(partner.size() - 1) / 2, std::move(arcs));
}

DottedMatching::DottedMatching(CrossinglessMatching mm, std::map<int, int> d) : m(std::move(mm)), dots(std::move(d)) {
  for (auto it = dots.begin(); it != dots.end();) {
    if (it->first < 1 || it->first > 2 * m.n() || !m.is_left(it->first))
      throw std::invalid_argument("dot key is not a left endpoint");
    if (it->second < 0) throw std::invalid_argument("negative dot count");
    it = it->second == 0 ? dots.erase(it) : std::next(it);
  }
}

int DottedMatching::total_dots() const {
  int s = 0;
  for (auto& [l, c] : dots) s += c;
  return s;
}

int DottedMatching::max_dots_per_arc() const {
  int s = 0;
  for (auto& [l, c] : dots) s = std::max(s, c);
  return s;
}

DottedMatching DottedMatching::with_dots(int left, int count) const {
  DottedMatching r = *this;
  if (count == 0)
    r.dots.erase(left);
  else
    r.dots[left] = count;
  return r;
}

std::vector<CrossinglessMatching> enumerate_matchings(int n) {
  if (n < 0) throw std::invalid_argument("negative n");
  // Partner tables over points [lo, hi].
  std::function<std::vector<std::vector<Arc>>(int, int)> rec = [&](int lo, int hi) {
    std::vector<std::vector<Arc>> out;
    if (lo > hi) {
      out.push_back({});
      return out;
    }
    for (int p = lo + 1; p <= hi; p += 2) {
      auto inner = rec(lo + 1, p - 1);
      auto outer = rec(p + 1, hi);
      for (auto& a : inner)
        for (auto& b : outer) {
          std::vector<Arc> arcs{{lo, p}};
          arcs.insert(arcs.end(), a.begin(), a.end());
          arcs.insert(arcs.end(), b.begin(), b.end());
          out.push_back(std::move(arcs));
        }
    }
    return out;
  };
  std::vector<CrossinglessMatching> res;
  for (auto& arcs : rec(1, 2 * n)) res.emplace_back(n, arcs);
  std::sort(res.begin(), res.end());
  return res;
}

std::vector<DottedMatching> enumerate_standard_basis(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
  std::vector<DottedMatching> out;
  for (auto& m : enumerate_matchings(n)) {
    auto outs = outer_arcs(m);
    int o = static_cast<int>(outs.size());
    if (o < k) continue;
    std::vector<int> pick(o, 0);
    std::fill(pick.end() - k, pick.end(), 1);
    do {
      std::map<int, int> dots;
      for (int i = 0; i < o; ++i)
        if (pick[i]) dots[outs[i].first] = 1;
      out.emplace_back(m, dots);
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DottedMatching> enumerate_standard_basis_all(int n) {
  std::vector<DottedMatching> out;
  for (int k = 0; k <= n; ++k) {
    auto b = enumerate_standard_basis(n, k);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::vector<DottedMatching> enumerate_dotted(int n, int k, int max_per_arc) {
  std::vector<DottedMatching> out;
  for (auto& m : enumerate_matchings(n)) {
    const auto& arcs = m.arcs();
    std::map<int, int> dots;
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
      if (i == arcs.size()) {
        if (left == 0) out.emplace_back(m, dots);
        return;
      }
      for (int c = 0; c <= std::min(max_per_arc, left); ++c) {
        if (c) dots[arcs[i].first] = c;
        rec(i + 1, left - c);
        dots.erase(arcs[i].first);
      }
    };
    rec(0, k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Arc> containing_arcs(const CrossinglessMatching& m, Arc a) {
  if (a.first < 1 || a.first > 2 * m.n() || m.partner(a.first) != a.second)
    throw std::invalid_argument("arc not in matching");
  std::vector<Arc> out;
  for (auto& b : m.arcs())
    if (b.first < a.first && b.second > a.second) out.push_back(b);
  std::sort(out.begin(), out.end(), [](const Arc& x, const Arc& y) { return x.first > y.first; });
  return out;
}

std::vector<Arc> outer_arcs(const CrossinglessMatching& m) {
  std::vector<Arc> out;
  int p = 1;
  while (p <= 2 * m.n()) {
    out.emplace_back(p, m.partner(p));
    p = m.partner(p) + 1;
  }
  return out;
}

bool is_outer(const CrossinglessMatching& m, Arc a) { return containing_arcs(m, a).empty(); }

int containment_statistic(const DottedMatching& d) {
  int s = 0;
  for (auto& [l, c] : d.dots) s += c * static_cast<int>(containing_arcs(d.m, {l, d.m.partner(l)}).size());
  return s;
}

bool is_standard(const DottedMatching& d) {
  for (auto& [l, c] : d.dots)
    if (c > 1 || !is_outer(d.m, {l, d.m.partner(l)})) return false;
  return true;
}

MatchingTuple to_tuple(const DottedMatching& d) {
  if (!is_standard(d)) throw std::invalid_argument("dot on inner arc");
  const auto& m = d.m;
  int N = 2 * m.n();
  MatchingTuple t;
  int p = 1;
  while (p <= N) {
    Block b;
    int first_down = p;
    while (p <= N && m.is_left(p)) {
      ++b.x;
      ++p;
    }
    while (p <= N && !m.is_left(p)) {
      ++b.y;
      ++p;
    }
    int last_up = p - 1;
    b.ex = d.dots_on(first_down) > 0 ? 1 : 0;
    int l = m.partner(last_up);
    b.ey = d.dots_on(l) > 0 ? 1 : 0;
    t.push_back(b);
  }
  return t;
}

bool tuple_valid(const MatchingTuple& t) {
  try {
    auto d = from_tuple(t);
    return to_tuple(d) == t;
  } catch (const std::exception&) {
    return false;
  }
}

DottedMatching from_tuple(const MatchingTuple& t) {
  std::vector<bool> down;
  std::vector<int> first_down_of_dotted, last_up_of_dotted;
  for (auto& b : t) {
    if (b.x < 1 || b.y < 1) throw std::invalid_argument("tuple block sizes must be positive");
    if (b.ex < 0 || b.ex > 1 || b.ey < 0 || b.ey > 1) throw std::invalid_argument("tuple exponents must be 0 or 1");
    if (b.ex) first_down_of_dotted.push_back(static_cast<int>(down.size()) + 1);
    for (int i = 0; i < b.x; ++i) down.push_back(true);
    for (int i = 0; i < b.y; ++i) down.push_back(false);
    if (b.ey) last_up_of_dotted.push_back(static_cast<int>(down.size()));
  }
  int N = static_cast<int>(down.size());
  if (N % 2) throw std::invalid_argument("unbalanced tuple");
  std::vector<int> partner(N + 1, 0), stack;
  for (int p = 1; p <= N; ++p) {
    if (down[p - 1]) {
      stack.push_back(p);
    } else {
      if (stack.empty()) throw std::invalid_argument("unbalanced tuple");
      partner[p] = stack.back();
      partner[stack.back()] = p;
      stack.pop_back();
    }
  }
  if (!stack.empty()) throw std::invalid_argument("unbalanced tuple");
  CrossinglessMatching m = CrossinglessMatching::from_partners(partner);
  std::map<int, int> dots;
  for (int l : first_down_of_dotted) dots[l] = 1;
  std::vector<int> rights;
  for (int l : first_down_of_dotted) rights.push_back(m.partner(l));
  std::sort(rights.begin(), rights.end());
  if (rights != last_up_of_dotted) throw std::invalid_argument("tuple exponents inconsistent");
  DottedMatching d(m, dots);
  if (!is_standard(d)) throw std::invalid_argument("tuple dots an inner arc");
  return d;
}

int r_statistic(const MatchingTuple& t) {
  int k = static_cast<int>(t.size());
  if (k == 0) return 1;
  int gamma = 0;
  for (auto& b : t)
    if (b == Block{1, 1, 1, 1}) ++gamma;
  int ex1 = t.front().ex, eyk = t.back().ey;
  int delta = 0;
  if (ex1 == 1 && eyk == 1) {
    delta = 0;
  } else if (k == 1) {
    delta = 1;
  } else if (ex1 == 0 && eyk == 0) {
    bool balanced = false;
    int sx = 0, sy = 0;
    for (int j = 0; j < k - 1; ++j) {
      sx += t[j].x;
      sy += t[j].y;
      if (sx == sy) balanced = true;
    }
    delta = balanced ? 2 : 1;
  } else {
    delta = 1;
  }
  return k + 1 - gamma - delta;
}

std::string tuple_str(const MatchingTuple& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += "; ";
    s += std::to_string(t[i].x) + "^" + std::to_string(t[i].ex) + ", " + std::to_string(t[i].y) + "^" +
         std::to_string(t[i].ey);
  }
  return s + ")";
}

LatticePath path_alpha(const DottedMatching& d) {
  if (!is_standard(d)) throw std::invalid_argument("path_alpha needs a standard basis diagram");
  LatticePath p;
  for (int i = 1; i <= 2 * d.n(); ++i) {
    bool right_undotted = !d.m.is_left(i) && d.dots_on(d.m.partner(i)) == 0;
    p += right_undotted ? 'D' : 'R';
  }
  return p;
}

DottedMatching path_beta(const LatticePath& path) {
  int N = static_cast<int>(path.size());
  if (N % 2) throw std::invalid_argument("odd path length");
  std::vector<int> partner(N + 1, 0), stack;
  for (int p = 1; p <= N; ++p) {
    char c = path[p - 1];
    if (c == 'R') {
      stack.push_back(p);
    } else if (c == 'D') {
      if (stack.empty()) throw std::invalid_argument("path crosses the diagonal");
      partner[p] = stack.back();
      partner[stack.back()] = p;
      stack.pop_back();
    } else {
      throw std::invalid_argument("path letters must be R or D");
    }
  }
  if (stack.size() % 2) throw std::invalid_argument("path has wrong endpoint");
  std::map<int, int> dots;
  for (size_t i = 0; i < stack.size(); i += 2) {
    partner[stack[i]] = stack[i + 1];
    partner[stack[i + 1]] = stack[i];
    dots[stack[i]] = 1;
  }
  return DottedMatching(CrossinglessMatching::from_partners(partner), dots);
}

std::vector<LatticePath> enumerate_paths(int n, int k) {
  std::vector<LatticePath> out;
  std::string cur;
  std::function<void(int, int)> rec = [&](int r, int d) {
    if (r == n + k && d == n - k) {
      out.push_back(cur);
      return;
    }
    if (r < n + k) {
      cur.push_back('R');
      rec(r + 1, d);
      cur.pop_back();
    }
    if (d < n - k && d < r) {
      cur.push_back('D');
      rec(r, d + 1);
      cur.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

int FlatTangle::width() const {
  int w = 0;
  for (auto& [a, b] : strands)
    if (a.top != b.top) ++w;
  return w;
}

CrossinglessMatching unbend(const FlatTangle& a) {
  auto pt = [&](const TangleEnd& e) { return e.top ? 2 * a.m - e.idx + 1 : 2 * a.m + e.idx; };
  std::vector<Arc> arcs;
  for (auto& [x, y] : a.strands) {
    int p = pt(x), q = pt(y);
    arcs.emplace_back(std::min(p, q), std::max(p, q));
  }
  return CrossinglessMatching(a.m + a.n, arcs);
}

FlatTangle bend(int m, int n, const CrossinglessMatching& c) {
  if (c.n() != m + n) throw std::invalid_argument("bend: size mismatch");
  auto end = [&](int p) { return p <= 2 * m ? TangleEnd{true, 2 * m - p + 1} : TangleEnd{false, p - 2 * m}; };
  FlatTangle t;
  t.m = m;
  t.n = n;
  for (auto [l, r] : c.arcs()) t.strands.emplace_back(end(l), end(r));
  return t;
}

std::vector<FlatTangle> enumerate_flat_tangles(int m, int n) {
  std::vector<FlatTangle> out;
  for (auto& c : enumerate_matchings(m + n)) out.push_back(bend(m, n, c));
  return out;
}

FlatTangle identity_tangle(int m) {
  FlatTangle t;
  t.m = t.n = m;
  for (int i = 1; i <= 2 * m; ++i) t.strands.push_back({TangleEnd{true, i}, TangleEnd{false, i}});
  return t;
}

std::string ascii(const DottedMatching& d, char mark) {
  std::string s = "(";
  bool first = true;
  for (auto [l, r] : d.m.arcs()) {
    if (!first) s += " ";
    first = false;
    s += "(" + std::to_string(l) + " " + std::to_string(r) + ")";
    s += std::string(d.dots_on(l), mark);
  }
  return s + ")";
}

std::string latex(const DottedMatching& d) {
  std::string s = "\\{";
  bool first = true;
  for (auto [l, r] : d.m.arcs()) {
    if (!first) s += ", ";
    first = false;
    s += "(" + std::to_string(l) + "," + std::to_string(r) + ")";
    int c = d.dots_on(l);
    if (c == 1) s += "^{\\bullet}";
    if (c > 1) s += "^{\\bullet " + std::to_string(c) + "}";
  }
  return s + "\\}";
}

}  // namespace skeinlab
