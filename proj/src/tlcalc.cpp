#include "skeinlab/tlcalc.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace skeinlab {

namespace {

// A crossing whose lower-left strand passes over expands as XM.
constexpr bool kLeftOverIsXm = true;

LaurentHalfQ vpow(int e) { return LaurentHalfQ::mono(e); }

}  // namespace

// ---------------------------------------------------------------- pairings

TLPairing TLPairing::identity(int n) {
  TLPairing p{n, n, std::vector<int>(2 * n)};
  for (int i = 0; i < n; ++i) {
    p.partner[i] = n + i;
    p.partner[n + i] = i;
  }
  return p;
}

TLPairing TLPairing::cup_diagram(const CrossinglessMatching& m) {
  TLPairing p{0, 2 * m.n(), std::vector<int>(2 * m.n())};
  for (int i = 1; i <= 2 * m.n(); ++i) p.partner[i - 1] = m.partner(i) - 1;
  return p;
}

bool TLPairing::planar() const {
  int total = b + t;
  if (static_cast<int>(partner.size()) != total || total % 2) return false;
  // Walk the boundary counterclockwise: bottom left to right, then top right to left.
  std::vector<int> around(total);
  for (int j = 0; j < b; ++j) around[j] = j;
  for (int i = 0; i < t; ++i) around[b + t - 1 - i] = b + i;
  std::vector<int> where(total);
  for (int c = 0; c < total; ++c) where[around[c]] = c;
  std::vector<int> stack;
  for (int c = 0; c < total; ++c) {
    int p = around[c];
    int q = partner[p];
    if (q < 0 || q >= total || q == p || partner[q] != p) return false;
    if (where[q] > c) {
      stack.push_back(p);
    } else {
      if (stack.empty() || stack.back() != q) return false;
      stack.pop_back();
    }
  }
  return true;
}

int TLPairing::through_strands() const {
  int s = 0;
  for (int j = 0; j < b; ++j)
    if (partner[j] >= b) ++s;
  return s;
}

std::vector<Arc> TLPairing::top_arcs() const {
  std::vector<Arc> r;
  for (int i = b; i < b + t; ++i)
    if (partner[i] > i) r.emplace_back(i - b + 1, partner[i] - b + 1);
  return r;
}

std::vector<Arc> TLPairing::bottom_arcs() const {
  std::vector<Arc> r;
  for (int j = 0; j < b; ++j)
    if (partner[j] > j && partner[j] < b) r.emplace_back(j + 1, partner[j] + 1);
  return r;
}

std::pair<TLPairing, int> glue(const TLPairing& f, const TLPairing& g) {
  if (f.t != g.b) throw std::invalid_argument("glue: width mismatch");
  int m = f.t;
  TLPairing r{f.b, g.t, std::vector<int>(f.b + g.t, -1)};
  std::vector<char> seen(m, 0);
  auto result_of_f = [&](int p) { return p; };
  auto result_of_g = [&](int p) { return f.b + (p - g.b); };
  // Leaving f from point p (an end of f); returns the result point reached.
  auto run = [&](bool in_f, int p) {
    while (true) {
      if (in_f) {
        int q = f.partner[p];
        if (q < f.b) return result_of_f(q);
        int j = q - f.b;
        seen[j] = 1;
        in_f = false;
        p = j;
      } else {
        int q = g.partner[p];
        if (q >= g.b) return result_of_g(q);
        seen[q] = 1;
        in_f = true;
        p = f.b + q;
      }
    }
  };
  for (int p = 0; p < f.b; ++p) {
    if (r.partner[p] >= 0) continue;
    int q = run(true, p);
    r.partner[p] = q;
    r.partner[q] = p;
  }
  for (int p = g.b; p < g.b + g.t; ++p) {
    int rp = result_of_g(p);
    if (r.partner[rp] >= 0) continue;
    int q = run(false, p);
    r.partner[rp] = q;
    r.partner[q] = rp;
  }
  int circles = 0;
  for (int j = 0; j < m; ++j) {
    if (seen[j]) continue;
    ++circles;
    int p = j;
    do {
      seen[p] = 1;
      int q = g.partner[p];  // stays inside the interface
      seen[q] = 1;
      p = f.partner[f.b + q] - f.b;
    } while (p != j);
  }
  return {r, circles};
}

TLPairing tensor_pairing(const TLPairing& x, const TLPairing& y) {
  int b = x.b + y.b, t = x.t + y.t;
  auto mx = [&](int p) { return p < x.b ? p : b + (p - x.b); };
  auto my = [&](int p) { return p < y.b ? x.b + p : b + x.t + (p - y.b); };
  TLPairing r{b, t, std::vector<int>(b + t)};
  for (int p = 0; p < x.b + x.t; ++p) r.partner[mx(p)] = mx(x.partner[p]);
  for (int p = 0; p < y.b + y.t; ++p) r.partner[my(p)] = my(y.partner[p]);
  return r;
}

TLPairing tl_u(int n, int i) {
  if (i < 1 || i >= n) throw std::invalid_argument("U_i index out of range");
  TLPairing p = TLPairing::identity(n);
  p.partner[i - 1] = i;
  p.partner[i] = i - 1;
  p.partner[n + i - 1] = n + i;
  p.partner[n + i] = n + i - 1;
  return p;
}

TLPairing tl_cup(int w, int i) {
  if (i < 1 || i > w + 1) throw std::invalid_argument("cup position out of range");
  TLPairing p{w, w + 2, std::vector<int>(2 * w + 2)};
  for (int j = 0; j < w; ++j) {
    int top = w + (j < i - 1 ? j : j + 2);
    p.partner[j] = top;
    p.partner[top] = j;
  }
  p.partner[w + i - 1] = w + i;
  p.partner[w + i] = w + i - 1;
  return p;
}

TLPairing tl_cap(int w, int i) {
  if (i < 1 || i >= w) throw std::invalid_argument("cap position out of range");
  TLPairing p{w, w - 2, std::vector<int>(2 * w - 2)};
  p.partner[i - 1] = i;
  p.partner[i] = i - 1;
  for (int j = 0; j < w; ++j) {
    if (j == i - 1 || j == i) continue;
    int top = w + (j < i - 1 ? j : j - 2);
    p.partner[j] = top;
    p.partner[top] = j;
  }
  return p;
}

// ---------------------------------------------------------------- slices

int SliceWord::top() const {
  int w = bottom;
  for (auto& s : slices) {
    if (s.kind == SliceKind::Cup) w += 2;
    if (s.kind == SliceKind::Cap) w -= 2;
  }
  return w;
}

Slice crossing_slice(int i, bool left_strand_over) {
  bool xm = left_strand_over == kLeftOverIsXm;
  return {xm ? SliceKind::XM : SliceKind::XP, i};
}

LaurentHalfQ delta_q() { return circle_value(); }

TLElement<LaurentHalfQ> apply_slice(const TLElement<LaurentHalfQ>& x, const Slice& s) {
  int w = x.t;
  const LaurentHalfQ delta = delta_q();
  switch (s.kind) {
    case SliceKind::Cup:
      return compose(x, TLElement<LaurentHalfQ>::from_pairing(tl_cup(w, s.pos)), delta);
    case SliceKind::Cap:
      return compose(x, TLElement<LaurentHalfQ>::from_pairing(tl_cap(w, s.pos)), delta);
    case SliceKind::XP:
    case SliceKind::XM: {
      int eu = s.kind == SliceKind::XP ? 1 : -1;
      TLElement<LaurentHalfQ> g(w, w);
      g.add(tl_u(w, s.pos), vpow(eu));
      g.add(TLPairing::identity(w), vpow(-eu));
      return compose(x, g, delta);
    }
  }
  throw std::logic_error("unknown slice");
}

TLElement<LaurentHalfQ> expand_word(const SliceWord& w) {
  auto x = TLElement<LaurentHalfQ>::identity(w.bottom);
  for (auto& s : w.slices) x = apply_slice(x, s);
  return x;
}

// ---------------------------------------------------------------- projector spaces

namespace {

enum class ArcClass { Middle, LeftMiddle, MiddleRight, InsideLeft, InsideRight, LeftRight };

ArcClass classify(const SSpace& s, int p, int q) {
  if (p > q) std::swap(p, q);
  bool pl = s.in_left(p), pr = s.in_right(p), ql = s.in_left(q), qr = s.in_right(q);
  if (pl && ql) return ArcClass::InsideLeft;
  if (pr && qr) return ArcClass::InsideRight;
  if (pl && qr) return ArcClass::LeftRight;
  if (pl) return ArcClass::LeftMiddle;
  if (qr) return ArcClass::MiddleRight;
  return ArcClass::Middle;
}

bool survives(const SSpace& s, const TLPairing& p, bool drop_left_right) {
  if (p.b != 0 || p.t != s.size()) throw std::invalid_argument("element does not live in this projector space");
  for (int i = 0; i < p.t; ++i) {
    int j = p.partner[i];
    if (j < i) continue;
    auto c = classify(s, i + 1, j + 1);
    if (c == ArcClass::InsideLeft || c == ArcClass::InsideRight) return false;
    if (drop_left_right && c == ArcClass::LeftRight) return false;
  }
  return true;
}

SElement filter(const SSpace& s, const SElement& x, bool drop_left_right) {
  SElement r(0, s.size());
  for (auto& [p, c] : x.terms)
    if (survives(s, p, drop_left_right)) r.add(p, c);
  return r;
}

}  // namespace

SElement stilde_normal_form(const SSpace& s, const SElement& x) { return filter(s, x, false); }
SElement s_normal_form(const SSpace& s, const SElement& x) { return filter(s, x, true); }

bool is_s_basis(const SSpace& s, const TLPairing& p) { return p.planar() && survives(s, p, true); }

std::vector<TLPairing> enumerate_s_basis(const SSpace& s) {
  std::vector<TLPairing> r;
  for (auto& m : enumerate_matchings(s.n + s.k)) {
    auto p = TLPairing::cup_diagram(m);
    if (survives(s, p, true)) r.push_back(p);
  }
  return r;
}

// ---------------------------------------------------------------- psi

namespace {

struct Strand {
  int left, right;  // target positions, 1-indexed
  int layer;        // 0 = left expansion strand, 1 = undotted arc, 2 = right expansion strand
};

std::vector<Strand> psi_strands(const DottedMatching& m, int k) {
  if (m.max_dots_per_arc() > 1) throw std::invalid_argument("psi: arc with more than one dot");
  if (m.total_dots() != k) throw std::invalid_argument("psi: dot count differs from k");
  int n = m.n();
  std::vector<Strand> out;
  int next_left = k, next_right = 2 * n + 2 * k;
  std::vector<int> dotted_right;
  for (auto [l, r] : m.m.arcs()) {
    if (m.dots_on(l)) {
      out.push_back({next_left--, k + l, 0});
      dotted_right.push_back(r);
    } else {
      out.push_back({k + l, k + r, 1});
    }
  }
  std::sort(dotted_right.begin(), dotted_right.end());
  for (int r : dotted_right) out.push_back({k + r, next_right--, 2});
  return out;
}

}  // namespace

int nested_dotted_pairs(const DottedMatching& m) {
  std::vector<Arc> dotted;
  for (auto [l, r] : m.m.arcs())
    if (m.dots_on(l)) dotted.emplace_back(l, r);
  int c = 0;
  for (auto& x : dotted)
    for (auto& y : dotted)
      if (x.first < y.first && y.second < x.second) ++c;
  return c;
}

SliceWord psi_word(const DottedMatching& m, int k) {
  auto strands = psi_strands(m, k);
  // Containing strands first, so a new cup only ever passes strands it interleaves with.
  std::stable_sort(strands.begin(), strands.end(),
                   [](const Strand& a, const Strand& b) { return a.right - a.left > b.right - b.left; });
  SliceWord w;
  std::vector<int> target, layer;  // current top ends, left to right
  for (auto& st : strands) {
    int i = static_cast<int>(std::count_if(target.begin(), target.end(), [&](int t) { return t < st.left; }));
    w.slices.push_back({SliceKind::Cup, i + 1});
    target.insert(target.begin() + i, {st.left, st.right});
    layer.insert(layer.begin() + i, {st.layer, st.layer});
    for (int j = i + 1; j + 1 < static_cast<int>(target.size()) && target[j + 1] < st.right; ++j) {
      w.slices.push_back(crossing_slice(j + 1, st.layer > layer[j + 1]));
      std::swap(target[j], target[j + 1]);
      std::swap(layer[j], layer[j + 1]);
    }
  }
  return w;
}

SElement psi(const DottedMatching& m, int k) {
  auto x = expand_word(psi_word(m, k));
  return x.scaled(vpow(-nested_dotted_pairs(m)));
}

SElement psi(const QuantumElement& x, int k) {
  SSpace s{x.n, k};
  SElement r(0, s.size());
  for (auto& [d, c] : x.terms) r += psi(d, k).scaled(c);
  return r;
}

PsiInverse psi_inverse(const SSpace& s, const TLPairing& d) {
  if (!is_s_basis(s, d)) throw std::invalid_argument("psi_inverse: not an S-basis diagram");
  int n = s.n, k = s.k;
  std::vector<int> from_left, to_right;
  std::vector<int> partner(2 * n + 1, 0);
  for (int p = k + 1; p <= 2 * n + k; ++p) {
    int q = d.partner[p - 1] + 1;
    if (s.in_left(q))
      from_left.push_back(p - k);
    else if (s.in_right(q))
      to_right.push_back(p - k);
    else
      partner[p - k] = q - k;
  }
  if (static_cast<int>(from_left.size()) != k || static_cast<int>(to_right.size()) != k)
    throw std::logic_error("psi_inverse: unmatched projector points");
  std::map<int, int> dots;
  for (int j = 0; j < k; ++j) {
    int i = from_left[k - 1 - j], r = to_right[j];
    if (i > r) throw std::logic_error("psi_inverse: no admissible pair");
    partner[i] = r;
    partner[r] = i;
    dots[i] = 1;
  }
  DottedMatching m(CrossinglessMatching::from_partners(partner), dots);
  return {m, vpow(k * (k - 1) / 2)};
}

const PsiTable& psi_table(int n, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, PsiTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, k});
  if (it != cache.end()) return it->second;
  PsiTable t;
  t.space = SSpace{n, k};
  for (auto& b : enumerate_standard_basis(n, k)) {
    auto img = s_normal_form(t.space, psi(b, k));
    if (img.terms.size() != 1) throw std::logic_error("psi of a basis element has " + std::to_string(img.terms.size()) + " surviving terms");
    auto& [p, c] = *img.terms.begin();
    if (c.terms.size() != 1) throw std::logic_error("psi of a basis element has a non-monomial coefficient");
    if (!t.by_image.emplace(p, std::make_pair(b, c)).second) throw std::logic_error("psi not injective on the basis");
    t.by_basis.push_back({b, {p, c}});
  }
  return cache.emplace(std::make_pair(n, k), std::move(t)).first->second;
}

QuantumElement pullback(const PsiTable& table, const SElement& x) {
  QuantumElement r(Variant::Quantum, table.space.n);
  for (auto& [p, c] : x.terms) {
    auto it = table.by_image.find(p);
    if (it == table.by_image.end()) throw std::logic_error("pullback: diagram outside the image of the basis");
    auto& [b, cb] = it->second;
    auto [e, s] = *cb.terms.begin();
    // c / (s v^e) with s = +-1
    r.add(b, c.shift(-e) * LaurentHalfQ(s));
  }
  return r;
}

QuantumElement reduce_quantum(const QuantumElement& x) {
  std::map<int, QuantumElement> by_k;
  for (auto& [d, c] : x.terms) {
    auto [it, _] = by_k.try_emplace(d.total_dots(), Variant::Quantum, x.n);
    it->second.add(d, c);
  }
  QuantumElement r(Variant::Quantum, x.n);
  for (auto& [k, part] : by_k) {
    const auto& table = psi_table(x.n, k);
    r += pullback(table, s_normal_form(table.space, psi(part, k)));
  }
  return r;
}

GaussRat eval_at_q_minus_one(const LaurentHalfQ& c) { return specialize_at_minus_one(c); }

ClassicalElement specialize_q_minus_one(const QuantumElement& x) {
  ClassicalElement r(Variant::Classical, x.n);
  for (auto& [d, c] : x.terms) {
    GaussRat g = specialize_at_minus_one(c);
    if (!g.is_real() || g.re.get_den() != 1) throw std::domain_error("specialization at q=-1 is not an integer");
    r.add(d, g.re.get_num());
  }
  return r;
}

ClassicalElement specialize_q_one(const QuantumElement& x) {
  ClassicalElement r(Variant::Classical, x.n);
  for (auto& [d, c] : x.terms) r.add(d, specialize_at_one(c));
  return r;
}

// ---------------------------------------------------------------- derived relations

namespace {

struct Candidate {
  DottedMatching d;
  bool semilocal;
};

std::vector<std::vector<RatFunc>> image_vectors(const SSpace& s, const std::vector<Candidate>& cands,
                                                const SElement* extra, std::vector<TLPairing>& coords) {
  std::vector<SElement> imgs;
  std::map<TLPairing, int> index;
  auto note = [&](const SElement& e) {
    for (auto& [p, c] : e.terms)
      if (!index.count(p)) index.emplace(p, static_cast<int>(index.size()));
  };
  for (auto& c : cands) {
    imgs.push_back(s_normal_form(s, psi(c.d, s.k)));
    note(imgs.back());
  }
  if (extra) note(*extra);
  coords.assign(index.size(), TLPairing{});
  for (auto& [p, i] : index) coords[i] = p;
  std::vector<std::vector<RatFunc>> vs;
  for (auto& e : imgs) {
    std::vector<RatFunc> v(index.size(), RatFunc(0L));
    for (auto& [p, c] : e.terms) v[index[p]] = RatFunc(c);
    vs.push_back(std::move(v));
  }
  return vs;
}

LaurentHalfQ to_half_q(const RatFunc& f) {
  if (!f.is_laurent()) throw std::domain_error("coefficient is not a Laurent polynomial");
  auto z = to_integral(f.as_laurent());
  if (!z) throw std::domain_error("coefficient is not integral");
  return *z;
}

std::vector<Arc> undotted_containers(const DottedMatching& d, int lo, int hi) {
  std::vector<Arc> r;
  for (auto [l, rr] : d.m.arcs())
    if (l < lo && rr > hi && !d.dots_on(l)) r.emplace_back(l, rr);
  return r;
}

}  // namespace

QuantumElement derive_quantum_relation(const RelationInstance& r) {
  if (r.kind == RelationKind::DotReduction) throw std::invalid_argument("no quantum dot reduction");
  std::vector<Candidate> cands;
  if (r.kind == RelationKind::TypeI) {
    cands = {{r.alpha(0, 1), false}, {r.beta(1, 0), false}, {r.beta(0, 1), false}};
  } else {
    cands = {{r.alpha(1, 1), false}};
  }
  DottedMatching lead = r.kind == RelationKind::TypeI ? r.alpha(1, 0) : r.beta(1, 1);
  int k = lead.total_dots();
  SSpace s{lead.n(), k};
  std::vector<Candidate> semi;
  for (auto [xl, xr] : undotted_containers(r.base, r.a, r.d)) {
    std::vector<DottedMatching> local =
        r.kind == RelationKind::TypeI
            ? std::vector<DottedMatching>{r.alpha(0, 0), r.beta(0, 0)}
            : std::vector<DottedMatching>{r.alpha(1, 0), r.alpha(0, 1), r.beta(1, 0), r.beta(0, 1)};
    for (auto& d : local) semi.push_back({d.with_dots(xl, 1), true});
  }
  // Grow the candidate list until the lead diagram enters a relation.
  for (size_t extra = 0; extra <= semi.size(); ++extra) {
    std::vector<Candidate> all(semi.begin(), semi.begin() + static_cast<long>(extra));
    all.insert(all.end(), cands.begin(), cands.end());
    all.push_back({lead, false});
    std::vector<TLPairing> coords;
    auto vs = image_vectors(s, all, nullptr, coords);
    Matrix<RatFunc> a(static_cast<int>(coords.size()), static_cast<int>(all.size()));
    for (size_t j = 0; j < vs.size(); ++j)
      for (size_t i = 0; i < coords.size(); ++i) a(static_cast<int>(i), static_cast<int>(j)) = vs[j][i];
    for (auto& v : nullspace(a)) {
      if (is_zero(v.back())) continue;
      RatFunc norm = RatFunc(1L) / v.back();
      QuantumElement out(Variant::Quantum, lead.n());
      for (size_t j = 0; j < all.size(); ++j) out.add(all[j].d, to_half_q(v[j] * norm));
      return out;
    }
  }
  throw std::logic_error("derive_quantum_relation: no relation found");
}

QuantumElement quantum_classical_relation(const RelationInstance& r) {
  QuantumElement out(Variant::Quantum, r.base.n());
  if (r.kind == RelationKind::TypeI) {
    out.add(r.alpha(1, 0), 1L);
    out.add(r.alpha(0, 1), 1L);
    out.add(r.beta(1, 0), -1L);
    out.add(r.beta(0, 1), -1L);
  } else if (r.kind == RelationKind::TypeII) {
    out.add(r.beta(1, 1), 1L);
    out.add(r.alpha(1, 1), -1L);
  } else {
    throw std::invalid_argument("no quantum dot reduction");
  }
  return out;
}

// ---------------------------------------------------------------- braid actions

SElement braid_act(const SSpace& s, const BraidWord& w, const SElement& x) {
  SElement r = s_normal_form(s, x);
  for (int g : w) {
    int i = std::abs(g);
    if (i < 1 || i > 2 * s.n - 1) throw std::invalid_argument("braid generator touches a projector");
    r = s_normal_form(s, apply_slice(r, {g > 0 ? SliceKind::XP : SliceKind::XM, s.k + i}));
  }
  return r;
}

namespace {

std::set<std::pair<Arc, int>> arcs_away_from(const DottedMatching& d, int i) {
  std::set<std::pair<Arc, int>> r;
  for (auto [l, rr] : d.m.arcs())
    if (l != i && l != i + 1 && rr != i && rr != i + 1) r.insert({{l, rr}, d.dots_on(l)});
  return r;
}

// Re-pairings of the arcs touching {i, i+1}, keeping the rest fixed, with dots redistributed.
std::vector<Candidate> semilocal_candidates(const DottedMatching& m, int i) {
  std::vector<Arc> fixed;
  std::vector<int> ends;
  int local_dots = 0;
  for (auto [l, r] : m.m.arcs()) {
    if (l == i || l == i + 1 || r == i || r == i + 1) {
      ends.push_back(l);
      ends.push_back(r);
      local_dots += m.dots_on(l);
    } else {
      fixed.emplace_back(l, r);
    }
  }
  std::sort(ends.begin(), ends.end());
  std::vector<std::vector<Arc>> pairings;
  if (ends.size() == 2) {
    pairings.push_back({{ends[0], ends[1]}});
  } else {
    pairings.push_back({{ends[0], ends[1]}, {ends[2], ends[3]}});
    pairings.push_back({{ends[0], ends[3]}, {ends[1], ends[2]}});
  }
  int n = m.n();
  std::vector<Candidate> out;
  for (auto& pr : pairings) {
    std::vector<Arc> arcs = fixed;
    arcs.insert(arcs.end(), pr.begin(), pr.end());
    if (!CrossinglessMatching::valid(n, [&] { auto a = arcs; std::sort(a.begin(), a.end()); return a; }()))
      continue;
    CrossinglessMatching cm(n, arcs);
    std::map<int, int> base_dots;
    for (auto& [l, r] : fixed)
      if (m.dots_on(l)) base_dots[l] = 1;
    int np = static_cast<int>(pr.size());
    for (int mask = 0; mask < (1 << np); ++mask) {
      int cnt = __builtin_popcount(static_cast<unsigned>(mask));
      auto dots = base_dots;
      for (int j = 0; j < np; ++j)
        if (mask >> j & 1) dots[pr[j].first] = 1;
      if (cnt == local_dots) out.push_back({DottedMatching(cm, dots), false});
      // One dot traded with an arc containing every moving end.
      for (auto& [l, r] : fixed) {
        if (!(l < ends.front() && r > ends.back())) continue;
        if (cnt == local_dots - 1 && !m.dots_on(l)) {
          auto d2 = dots;
          d2[l] = 1;
          out.push_back({DottedMatching(cm, d2), true});
        }
        if (cnt == local_dots + 1 && m.dots_on(l)) {
          auto d2 = dots;
          d2.erase(l);
          out.push_back({DottedMatching(cm, d2), true});
        }
      }
    }
  }
  return out;
}

bool vanishes_at_pm1(const LaurentHalfQ& c) {
  return is_zero(specialize_at_one(c)) && is_zero(specialize_at_minus_one(c));
}

}  // namespace

PullbackResult pullback_act(const BraidWord& w, const DottedMatching& m, PullbackMode mode) {
  int n = m.n(), k = m.total_dots();
  SSpace s{n, k};
  SElement img = braid_act(s, w, psi(m, k));
  PullbackResult res;
  if (mode == PullbackMode::BnkLocal) {
    if (!is_standard(m)) throw std::invalid_argument("pullback_act: input is not a basis diagram");
    res.value = pullback(psi_table(n, k), img);
    if (w.size() == 1) {
      int i = std::abs(w[0]);
      auto keep = arcs_away_from(m, i);
      for (auto& [d, c] : res.value.terms) {
        auto other = arcs_away_from(d, i);
        if (!std::includes(other.begin(), other.end(), keep.begin(), keep.end())) res.local = false;
      }
    }
    return res;
  }
  if (w.size() != 1) throw std::invalid_argument("full_semilocal mode takes a single generator");
  if (m.max_dots_per_arc() > 1) throw std::invalid_argument("pullback_act: arc with more than one dot");
  int i = std::abs(w[0]);
  auto all = semilocal_candidates(m, i);
  std::stable_partition(all.begin(), all.end(), [](const Candidate& c) { return !c.semilocal; });
  size_t n_local = static_cast<size_t>(std::count_if(all.begin(), all.end(), [](auto& c) { return !c.semilocal; }));
  for (size_t use : {n_local, all.size()}) {
    std::vector<Candidate> cands(all.begin(), all.begin() + static_cast<long>(use));
    std::vector<TLPairing> coords;
    auto vs = image_vectors(s, cands, &img, coords);
    std::map<TLPairing, int> at;
    for (size_t j = 0; j < coords.size(); ++j) at[coords[j]] = static_cast<int>(j);
    std::vector<RatFunc> target(coords.size(), RatFunc(0L));
    for (auto& [p, c] : img.terms) target[at[p]] = RatFunc(c);
    auto mem = rank_and_membership(vs, target);
    if (!mem.is_member) continue;
    res.value = QuantumElement(Variant::Quantum, n);
    for (size_t j = 0; j < cands.size(); ++j) {
      auto c = to_half_q(mem.coordinates[j]);
      if (is_zero(c)) continue;
      res.value.add(cands[j].d, c);
      if (cands[j].semilocal) {
        ++res.semilocal_terms;
        if (!vanishes_at_pm1(c)) res.semilocal_vanish_at_pm1 = false;
      }
    }
    return res;
  }
  res.local = false;
  throw std::logic_error("pullback_act: image not spanned by semi-local candidates");
}

// ---------------------------------------------------------------- Jones-Wenzl

TLElement<Rat> jones_wenzl_delta2(int n) {
  if (n < 1) throw std::invalid_argument("projector size must be positive");
  static std::mutex mu;
  static std::map<int, TLElement<Rat>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  const Rat delta(2);
  auto p = TLElement<Rat>::identity(1);
  for (int k = 1; k < n; ++k) {
    auto big = tensor(p, TLElement<Rat>::identity(1));
    auto u = TLElement<Rat>::from_pairing(tl_u(k + 1, k));
    auto mid = compose(compose(big, u, delta), big, delta);
    Rat mu_k(k, k + 1);
    mu_k.canonicalize();
    p = big - mid.scaled(mu_k);
  }
  cache.emplace(n, p);
  return p;
}

std::vector<RatFunc> jw_mu(int n) {
  RatFunc delta(delta_q());
  std::vector<RatFunc> mu;
  for (int k = 1; k <= n; ++k) mu.push_back(k == 1 ? RatFunc(1L) / delta : RatFunc(1L) / (delta - mu.back()));
  return mu;
}

TLElement<RatFunc> jones_wenzl_generic(int n) {
  if (n < 1) throw std::invalid_argument("projector size must be positive");
  static std::mutex mu_lock;
  static std::map<int, TLElement<RatFunc>> cache;
  std::lock_guard<std::mutex> lock(mu_lock);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  RatFunc delta(delta_q());
  auto mu = jw_mu(n);
  auto p = TLElement<RatFunc>::identity(1);
  for (int k = 1; k < n; ++k) {
    auto big = tensor(p, TLElement<RatFunc>::identity(1));
    auto u = TLElement<RatFunc>::from_pairing(tl_u(k + 1, k));
    auto mid = compose(compose(big, u, delta), big, delta);
    p = big - mid.scaled(mu[k - 1]);
  }
  cache.emplace(n, p);
  return p;
}

TLElement<RatFunc> jones_wenzl_generic_definition(int n) {
  if (n < 1) throw std::invalid_argument("projector size must be positive");
  RatFunc delta(delta_q());
  std::vector<TLElement<RatFunc>> t(n);
  for (int i = 1; i < n; ++i) {
    t[i] = TLElement<RatFunc>(n, n);
    t[i].add(tl_u(n, i), RatFunc(vpow(1)));
    t[i].add(TLPairing::identity(n), RatFunc(vpow(-1)));
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  TLElement<RatFunc> sum(n, n);
  do {
    auto work = perm;
    auto term = TLElement<RatFunc>::identity(n);
    int len = 0;
    bool swapped = true;
    while (swapped) {
      swapped = false;
      for (int i = 0; i + 1 < n; ++i)
        if (work[i] > work[i + 1]) {
          std::swap(work[i], work[i + 1]);
          term = compose(term, t[i + 1], delta);
          ++len;
          swapped = true;
        }
    }
    sum += term.scaled(RatFunc(vpow(-3 * len)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum.scaled(RatFunc(1L) / RatFunc(quantum_minus_factorial(n)));
}

TLElement<Rat> specialize_jw(const TLElement<RatFunc>& p) {
  TLElement<Rat> r(p.b, p.t);
  for (auto& [d, c] : p.terms) {
    auto g = c.eval_v_i();
    if (!g || !g->is_real()) throw std::domain_error("projector coefficient not real at q=-1");
    r.add(d, g->re);
  }
  return r;
}

// ---------------------------------------------------------------- intertwiners

Matrix<LaurentHalfQ> identity_on(int tensor_power) { return Matrix<LaurentHalfQ>::identity(1 << tensor_power); }

Matrix<LaurentHalfQ> tensor_place(int n, int i, const Matrix<LaurentHalfQ>& two_site) {
  return kron(kron(identity_on(i - 1), two_site), identity_on(n - i - 1));
}

Intertwiners intertwiner_matrices(int n) {
  if (n < 2 || n > 6) throw std::invalid_argument("intertwiner_matrices: n out of range");
  Intertwiners r;
  r.n = n;
  r.eps1 = Matrix<LaurentHalfQ>(1, 4);
  r.eps1(0, 1) = -LaurentHalfQ::q(1);
  r.eps1(0, 2) = LaurentHalfQ(1L);
  r.delta1 = Matrix<LaurentHalfQ>(4, 1);
  r.delta1(1, 0) = LaurentHalfQ(1L);
  r.delta1(2, 0) = -LaurentHalfQ::q(-1);
  auto u = r.delta1 * r.eps1;
  auto t = u.scaled(vpow(1)) + identity_on(2).scaled(vpow(-1));
  r.T.resize(n);
  r.U.resize(n);
  for (int i = 1; i < n; ++i) {
    r.T[i] = tensor_place(n, i, t);
    r.U[i] = tensor_place(n, i, u);
  }
  return r;
}

std::string tl_str(const TLPairing& p) {
  auto name = [&](int x) { return x < p.b ? "b" + std::to_string(x + 1) : "t" + std::to_string(x - p.b + 1); };
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (int x = 0; x < p.b + p.t; ++x) {
    if (p.partner[x] < x) continue;
    os << (first ? "" : " ") << "(" << name(x) << " " << name(p.partner[x]) << ")";
    first = false;
  }
  os << "]";
  return os.str();
}

}  // namespace skeinlab
