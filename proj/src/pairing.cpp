#include "skeinlab/pairing.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <stdexcept>

#include "skeinlab/tlcalc.hpp"

namespace skeinlab {

int evaluate_circle(const Circle& c) {
  if (c.empty()) return 2;
  if (c.size() % 2) return 0;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] == c[(i + 1) % c.size()]) return 0;
  return 1;
}

Int evaluate(const ClosedDecoratedDiagram& d) {
  Int r = 1;
  for (auto& c : d.circles) {
    r *= evaluate_circle(c);
    if (r == 0) break;
  }
  return r;
}

// Turning a cup diagram upside down about the gluing line lands each arc on its mirror image.
XCaps rotate_to_caps(const DottedMatching& b) { return mirror(b); }

ClosedDecoratedDiagram close_up(const DottedMatching& cups, const XCaps& caps) {
  if (cups.n() != caps.n()) throw std::invalid_argument("pairing size mismatch");
  int w = 2 * cups.n();
  std::vector<bool> seen(static_cast<size_t>(w) + 1, false);
  ClosedDecoratedDiagram out;
  for (int start = 1; start <= w; ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    Circle c;
    int p = start;
    do {
      seen[static_cast<size_t>(p)] = true;
      int q = cups.m.partner(p);
      seen[static_cast<size_t>(q)] = true;
      c.insert(c.end(), static_cast<size_t>(cups.dots_on(std::min(p, q))), Mark::Dot);
      int r = caps.m.partner(q);
      c.insert(c.end(), static_cast<size_t>(caps.dots_on(std::min(q, r))), Mark::X);
      p = r;
    } while (p != start);
    out.circles.push_back(std::move(c));
  }
  return out;
}

Int pair_glued(const DottedMatching& cups, const XCaps& caps) { return evaluate(close_up(cups, caps)); }

Int pair(const DottedMatching& a, const DottedMatching& b) { return pair_glued(a, rotate_to_caps(b)); }

Int pair(const ClassicalElement& a, const DottedMatching& b) {
  auto caps = rotate_to_caps(b);
  Int r = 0;
  for (auto& [d, c] : a.terms) r += c * pair_glued(d, caps);
  return r;
}

void DualElement::add(const XCaps& d, const Rat& c) {
  if (skeinlab::is_zero(c)) return;
  auto [it, fresh] = terms.emplace(d, c);
  if (!fresh) {
    it->second += c;
    if (skeinlab::is_zero(it->second)) terms.erase(it);
  }
}

DualElement DualElement::scaled(const Rat& s) const {
  DualElement r(n);
  for (auto& [d, c] : terms) r.add(d, c * s);
  return r;
}

Rat pair(const DottedMatching& a, const DualElement& f) {
  Rat r = 0;
  for (auto& [d, c] : f.terms) r += c * Rat(pair_glued(a, d));
  return r;
}

std::vector<Rat> pairing_vector(const DualElement& f) {
  std::vector<Rat> v;
  for (auto& b : enumerate_standard_basis_all(f.n)) v.push_back(pair(b, f));
  return v;
}

Matrix<Int> gram_matrix(int n) {
  auto basis = enumerate_standard_basis_all(n);
  int s = static_cast<int>(basis.size());
  Matrix<Int> g(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) g(i, j) = pair(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
  return g;
}

DualElement dual_via_gram(int n, int index) {
  static std::mutex mu;
  static std::map<int, Matrix<Rat>> cache;
  Matrix<Rat> ginv;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
      auto g = gram_matrix(n);
      Matrix<Rat> gq(g.rows, g.cols);
      for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j) gq(i, j) = Rat(g(i, j));
      auto inv = inverse(gq);
      if (!inv) throw std::runtime_error("Gram matrix is singular");
      it = cache.emplace(n, *inv).first;
    }
    ginv = it->second;
  }
  auto basis = enumerate_standard_basis_all(n);
  if (index < 0 || index >= static_cast<int>(basis.size())) throw std::out_of_range("basis index");
  DualElement f(n);
  for (int l = 0; l < ginv.rows; ++l) f.add(rotate_to_caps(basis[static_cast<size_t>(l)]), ginv(l, index));
  return f;
}

namespace {

// Expand one Temperley-Lieb pairing of the projector window below a cap diagram.
// Returns false when the term vanishes; otherwise writes the new caps and the circle factor.
bool glue_below(const XCaps& caps, const TLPairing& d, int left, int size, XCaps& out, Int& factor) {
  int w = 2 * caps.n();
  auto in_window = [&](int p) { return p > left && p <= left + size; };
  std::vector<bool> used(static_cast<size_t>(w) + 1, false);  // cap endpoints already traversed
  std::vector<int> partner(static_cast<size_t>(w) + 1, 0);
  std::map<int, int> xs;
  auto cap_x = [&](int p) { return caps.dots_on(std::min(p, caps.m.partner(p))); };

  // Follow from cap endpoint c upward through caps and down through the window until a new endpoint.
  auto follow_cap = [&](int c, int& count) {
    while (true) {
      int c2 = caps.m.partner(c);
      used[static_cast<size_t>(c)] = used[static_cast<size_t>(c2)] = true;
      count += cap_x(c);
      if (!in_window(c2)) return c2;
      int idx = size + (c2 - left - 1);
      int to = d.partner[static_cast<size_t>(idx)];
      if (to < size) return left + 1 + to;
      c = left + 1 + (to - size);
    }
  };

  for (int p = 1; p <= w; ++p) {
    if (partner[static_cast<size_t>(p)]) continue;
    int count = 0, q;
    if (!in_window(p)) {
      q = follow_cap(p, count);
    } else {
      int to = d.partner[static_cast<size_t>(p - left - 1)];
      q = to < size ? left + 1 + to : follow_cap(left + 1 + (to - size), count);
    }
    if (count > 1) return false;
    partner[static_cast<size_t>(p)] = q;
    partner[static_cast<size_t>(q)] = p;
    if (count) xs[std::min(p, q)] = count;
  }
  factor = 1;
  for (int c = left + 1; c <= left + size; ++c) {
    if (used[static_cast<size_t>(c)]) continue;
    // Closed loop made of caps and top-to-top strands of the window.
    int count = 0, cur = c;
    do {
      int c2 = caps.m.partner(cur);
      used[static_cast<size_t>(cur)] = used[static_cast<size_t>(c2)] = true;
      count += cap_x(cur);
      int to = d.partner[static_cast<size_t>(size + (c2 - left - 1))];
      cur = left + 1 + (to - size);
    } while (cur != c);
    if (count) return false;
    factor *= 2;
  }
  out = DottedMatching(CrossinglessMatching::from_partners(partner), xs);
  return true;
}

}  // namespace

DualElement attach_projector(const DualElement& e, int left, int size) {
  if (left < 0 || size < 1 || left + size > 2 * e.n) throw std::invalid_argument("projector outside the diagram");
  if (size == 1) return e;
  const auto& jw = jones_wenzl_delta2(size);
  DualElement r(e.n);
  for (auto& [caps, c] : e.terms)
    for (auto& [d, cj] : jw.terms) {
      XCaps out;
      Int factor;
      if (glue_below(caps, d, left, size, out, factor)) r.add(out, c * cj * Rat(factor));
    }
  return r;
}

DualElement expand(const XCapDiagram& d) {
  DualElement e(d.caps.n());
  e.add(d.caps, Rat(1));
  for (auto [l, s] : d.projectors) e = attach_projector(e, l, s);
  return e;
}

Rat binomial_at_minus_one(int n, int k) {
  auto g = specialize_at_minus_one(quantum_binomial(n, k));
  if (!g.is_real()) throw std::logic_error("quantum binomial is not real at q = -1");
  return g.re;
}

namespace {

int total_points(const MatchingTuple& t) {
  int s = 0;
  for (auto& b : t) s += b.x + b.y;
  return s;
}

MatchingTuple without_empty(const MatchingTuple& t) {
  MatchingTuple r;
  for (auto& b : t)
    if (b.x || b.y) r.push_back(b);
  return r;
}

const Block kDotted{1, 1, 1, 1};

struct Move {
  std::string rule;
  MatchingTuple to;
  int left, size;
  Rat coefficient;
};

// Candidate recursion steps for the dotted dual construction, in rule order.
std::vector<Move> dual_moves(const MatchingTuple& t) {
  std::vector<Move> out;
  int k = static_cast<int>(t.size());
  auto prefix = [&](int upto) {  // points in blocks 1..upto (1-indexed)
    int s = 0;
    for (int i = 0; i < upto; ++i) s += t[static_cast<size_t>(i)].x + t[static_cast<size_t>(i)].y;
    return s;
  };
  // Rule 1: merge blocks i and i+1.
  for (int i = 1; i < k; ++i) {
    const Block& a = t[static_cast<size_t>(i - 1)];
    const Block& b = t[static_cast<size_t>(i)];
    if (a.ey || b.ex || a.x < a.y || b.x > b.y) continue;
    MatchingTuple to(t.begin(), t.begin() + (i - 1));
    to.push_back(Block{a.x + b.x, a.ex, a.y + b.y, b.ey});
    to.insert(to.end(), t.begin() + (i + 1), t.end());
    out.push_back({"1", to, prefix(i - 1) + a.x, a.y + b.x, binomial_at_minus_one(a.y + b.x, a.y)});
  }
  // Rules 2 and 3: block i, then alpha dotted single arcs, then block j = i + alpha + 1.
  // Blocks 0 and k+1 are empty placeholders.
  auto block = [&](int i) { return i < 1 || i > k ? Block{} : t[static_cast<size_t>(i - 1)]; };
  for (int i = 0; i <= k; ++i) {
    int alpha = 0;
    while (i + alpha + 1 <= k && block(i + alpha + 1) == kDotted) ++alpha;
    int j = i + alpha + 1;
    if (j > k + 1) continue;
    Block bi = block(i), bj = block(j);
    if (bi.x != bi.y || bj.x != bj.y) continue;
    int left = prefix(std::max(i - 1, 0)) + bi.x;
    int size = bi.y + 2 * alpha + bj.x;
    auto build = [&](Block merged, bool merged_first, int dotted) {
      MatchingTuple to(t.begin(), t.begin() + std::max(i - 1, 0));
      if (merged_first) to.push_back(merged);
      for (int a = 0; a < dotted; ++a) to.push_back(kDotted);
      if (!merged_first) to.push_back(merged);
      if (j < k) to.insert(to.end(), t.begin() + j, t.end());
      return without_empty(to);
    };
    bool ui = !bi.ex && !bi.ey, uj = !bj.ex && !bj.ey;
    if (ui && uj && alpha > 0) {
      Block merged{bi.x + bj.x, 0, bi.y + bj.y, 0};
      if (j <= k)
        out.push_back({"2a", build(merged, true, alpha), left, size,
                       binomial_at_minus_one(bi.x + 2 * alpha + bj.y, bi.x + 2 * alpha)});
      if (i >= 1)
        out.push_back({"2b", build(merged, false, alpha), left, size,
                       binomial_at_minus_one(bi.x + 2 * alpha + bj.y, bi.x)});
    }
    if (ui && bj.ex && bj.ey && bj.x >= 2) {
      Block merged{bi.x + bj.x - 1, 0, bi.y + bj.y - 1, 0};
      out.push_back({"3a", build(merged, true, alpha + 1), left, size,
                     binomial_at_minus_one(bi.x + 2 * alpha + bj.y, bj.y - 1)});
    }
    if (uj && bi.ex && bi.ey && bi.x >= 2) {
      Block merged{bi.x + bj.x - 1, 0, bi.y + bj.y - 1, 0};
      out.push_back({"3b", build(merged, false, alpha + 1), left, size,
                     binomial_at_minus_one(bi.x + 2 * alpha + bj.y, bi.x - 1)});
    }
  }
  return out;
}

void finish(DualConstruction& c) {
  auto raw = expand(c.builder).scaled(c.coefficient);
  c.raw_pairing = pair(c.target, raw);
  if (is_zero(c.raw_pairing)) throw std::logic_error("constructed dual pairs to zero with its target");
  c.sign = sgn(c.raw_pairing) > 0 ? 1 : -1;
  c.dual = raw.scaled(Rat(c.sign) / c.raw_pairing);
}

// Single projector on the caps of the target itself, spanning the middle interval.
XCapDiagram base_case(const MatchingTuple& t) {
  auto m = from_tuple(t);
  XCapDiagram b;
  b.caps = m;
  int lead = t.front() == kDotted ? 0 : t.front().x;
  int trail = t.size() > 1 && !(t.back() == kDotted) ? t.back().x : 0;
  b.projectors.emplace_back(lead, total_points(t) - lead - trail);
  return b;
}

}  // namespace

std::vector<DualStep> dual_candidate_steps(const MatchingTuple& t) {
  std::vector<DualStep> out;
  int r = r_statistic(t);
  for (auto& mv : dual_moves(t))
    if (r_statistic(mv.to) == r - 1) out.push_back({mv.rule, t, mv.to, mv.left, mv.size, mv.coefficient});
  return out;
}

DualConstruction dual_via_step(const DottedMatching& m, const DualStep& first) {
  DualConstruction c;
  c.target = m;
  auto inner = dual_via_projectors(from_tuple(first.to));
  c.builder = inner.builder;
  c.builder.projectors.emplace_back(first.left, first.size);
  c.steps = inner.steps;
  c.steps.push_back(first);
  c.coefficient = inner.coefficient * first.coefficient;
  finish(c);
  return c;
}

DualConstruction dual_via_projectors(const DottedMatching& m) {
  if (!is_standard(m)) throw std::invalid_argument("dual_via_projectors needs a standard basis diagram");
  auto t = to_tuple(m);
  if (r_statistic(t) == 1) {
    DualConstruction c;
    c.target = m;
    c.coefficient = 1;
    c.builder = base_case(t);
    finish(c);
    return c;
  }
  auto steps = dual_candidate_steps(t);
  if (steps.empty()) throw std::logic_error("no recursion step lowers r for " + tuple_str(t));
  return dual_via_step(m, steps.front());
}

DualConstruction dual_undotted(const CrossinglessMatching& m) {
  int n = m.n(), w = 2 * n;
  // Canonical-vector position i sits on glued position w + 1 - i; right endpoints read as v_{-1}.
  std::vector<std::pair<int, int>> v;  // (x_i, y_i): runs of v_1 then v_{-1}
  for (int i = 1; i <= w; ++i) {
    bool up = m.is_left(w + 1 - i);
    if (up) {
      if (v.empty() || v.back().second > 0) v.emplace_back(0, 0);
      ++v.back().first;
    } else {
      if (v.empty()) v.emplace_back(0, 0);
      ++v.back().second;
    }
  }
  auto to_tuple_str = [](const std::vector<std::pair<int, int>>& u) {
    MatchingTuple t;
    for (auto [x, y] : u) t.push_back(Block{x, 0, y, 0});
    return t;
  };
  DualConstruction c;
  c.target = DottedMatching(m);
  c.coefficient = 1;
  std::vector<DualStep> steps;
  while (!(v.size() == 2 && v[0].first == 0 && v[1].second == 0) && n > 0) {
    int k = static_cast<int>(v.size());
    auto before = v;
    int l = 0;
    DualStep st;
    bool done = false;
    for (int i = 1; i + 1 < k && !done; ++i) {
      auto [xi, yi] = v[static_cast<size_t>(i)];
      if (v[static_cast<size_t>(i - 1)].second >= xi && yi <= v[static_cast<size_t>(i + 1)].first) {
        for (int s = 0; s < i; ++s) l += v[static_cast<size_t>(s)].first + v[static_cast<size_t>(s)].second;
        st = {"1", {}, {}, l, xi + yi, binomial_at_minus_one(xi + yi, xi)};
        v[static_cast<size_t>(i - 1)].second += yi;
        v[static_cast<size_t>(i + 1)].first += xi;
        v.erase(v.begin() + i);
        done = true;
      }
    }
    if (!done && k >= 2 && v[0].first > 0 && v[0].second <= v[1].first) {
      auto [x1, y1] = v[0];
      st = {"2", {}, {}, 0, x1 + y1, binomial_at_minus_one(x1 + y1, x1)};
      v[1].first += x1;
      v[0].first = 0;
      done = true;
    }
    if (!done && k >= 2 && v[static_cast<size_t>(k - 1)].second > 0 &&
        v[static_cast<size_t>(k - 2)].second >= v[static_cast<size_t>(k - 1)].first) {
      auto [xk, yk] = v[static_cast<size_t>(k - 1)];
      st = {"3", {}, {}, w - xk - yk, xk + yk, binomial_at_minus_one(xk + yk, xk)};
      v[static_cast<size_t>(k - 2)].second += yk;
      v[static_cast<size_t>(k - 1)].second = 0;
      done = true;
    }
    if (!done) throw std::logic_error("canonical basis recursion is stuck");
    st.from = to_tuple_str(before);
    st.to = to_tuple_str(v);
    steps.push_back(st);
    c.coefficient *= st.coefficient;
  }
  // Invariant projection of v_{-1}^n (x) v_1^n: nested caps with a projector on one half.
  std::vector<Arc> nested;
  for (int i = 1; i <= n; ++i) nested.emplace_back(i, w + 1 - i);
  c.builder.caps = DottedMatching(CrossinglessMatching(n, nested));
  if (n > 0) c.builder.projectors.emplace_back(n, n);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) c.builder.projectors.emplace_back(w - it->left - it->size, it->size);
  for (auto& st : steps) st.left = w - st.left - st.size;
  c.steps = steps;
  finish(c);
  return c;
}

DottedMatching mirror(const DottedMatching& d) {
  int w = 2 * d.n() + 1;
  std::vector<Arc> arcs;
  std::map<int, int> dots;
  for (auto [i, j] : d.m.arcs()) {
    arcs.emplace_back(w - j, w - i);
    if (int c = d.dots_on(i)) dots[w - j] = c;
  }
  std::sort(arcs.begin(), arcs.end());
  return DottedMatching(CrossinglessMatching(d.n(), arcs), dots);
}

namespace {

std::vector<Int> leading_minors(const Matrix<Int>& g) {
  std::vector<Int> out;
  for (int s = 1; s <= g.rows; ++s) {
    Matrix<Rat> sub(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) sub(i, j) = Rat(g(i, j));
    out.emplace_back(determinant(sub));
  }
  return out;
}

bool all_positive(const std::vector<Int>& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) > 0; });
}

}  // namespace

PositivityReport positivity_probe(int n) {
  auto g = gram_matrix(n);
  auto basis = enumerate_standard_basis_all(n);
  Matrix<Int> h(g.rows, g.cols);
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) h(i, j) = pair(basis[static_cast<size_t>(i)], mirror(basis[static_cast<size_t>(j)]));
  PositivityReport r;
  r.n = n;
  r.minors = leading_minors(g);
  r.positive_definite = all_positive(r.minors);
  r.mirrored_minors = leading_minors(h);
  r.mirrored_positive_definite = all_positive(r.mirrored_minors);
  return r;
}

std::string ascii(const XCapDiagram& d) {
  std::string s = ascii(d.caps, 'x');
  for (auto [l, z] : d.projectors) s += " p" + std::to_string(z) + "@" + std::to_string(l);
  return s;
}

}  // namespace skeinlab
