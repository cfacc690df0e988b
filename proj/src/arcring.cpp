#include "skeinlab/arcring.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace skeinlab {

std::string frobenius_name(Frobenius f) {
  switch (f) {
    case Frobenius::Classical: return "classical";
    case Frobenius::Equivariant: return "equivariant";
    case Frobenius::TwistedT: return "x2t";
  }
  return "?";
}

Frobenius parse_frobenius(const std::string& s) {
  if (s == "classical") return Frobenius::Classical;
  if (s == "equivariant") return Frobenius::Equivariant;
  if (s == "x2t" || s == "twisted") return Frobenius::TwistedT;
  throw std::invalid_argument("unknown arc ring variant: " + s);
}

CircleConfiguration glue_and_number(const CrossinglessMatching& b, const CrossinglessMatching& a) {
  if (a.n() != b.n()) throw std::invalid_argument("glue_and_number: size mismatch");
  CircleConfiguration c;
  c.n = a.n();
  c.circle_of.assign(static_cast<size_t>(2 * c.n + 1), 0);
  for (int p = 1; p <= 2 * c.n; ++p) {
    if (c.circle_of[static_cast<size_t>(p)]) continue;
    ++c.k;
    int q = p;
    bool via_a = true;
    do {
      c.circle_of[static_cast<size_t>(q)] = c.k;
      q = via_a ? a.partner(q) : b.partner(q);
      via_a = !via_a;
    } while (q != p || !via_a);
  }
  return c;
}

namespace {

// Leftmost point of each circle, indexed 0..k-1.
std::vector<int> circle_reps(const CircleConfiguration& c) {
  std::vector<int> rep(static_cast<size_t>(c.k), 0);
  for (int p = 2 * c.n; p >= 1; --p) rep[static_cast<size_t>(c.circle_of[static_cast<size_t>(p)] - 1)] = p;
  return rep;
}

PolyHT h_of(Frobenius f) { return f == Frobenius::Equivariant ? PolyHT::h() : PolyHT(); }
PolyHT t_of(Frobenius f) { return f == Frobenius::Classical ? PolyHT() : PolyHT::t(); }

// Linear combinations of labelings of a planar 1-manifold, changed by saddles.
class Surgery {
 public:
  Surgery(int nodes, Frobenius f) : nodes_(nodes), h_(h_of(f)), t_(t_of(f)) {}

  int add_edge(int u, int v) {
    edges_.push_back({u, v, true});
    return static_cast<int>(edges_.size()) - 1;
  }

  void begin(const std::vector<std::pair<int, bool>>& marks, const PolyHT& c) {
    auto comp = components();
    std::uint64_t mask = 0;
    for (auto [node, x] : marks)
      if (x) mask |= std::uint64_t(1) << comp[static_cast<size_t>(node)];
    state_.clear();
    if (!c.is_zero()) state_[mask] = c;
  }

  // Edges (p,q) and (r,s) become (p,r) and (q,s).
  void saddle(int e1, int e2) {
    auto before = components();
    int p = edges_[static_cast<size_t>(e1)].u, q = edges_[static_cast<size_t>(e1)].v;
    int r = edges_[static_cast<size_t>(e2)].u, s = edges_[static_cast<size_t>(e2)].v;
    edges_[static_cast<size_t>(e1)].alive = edges_[static_cast<size_t>(e2)].alive = false;
    add_edge(p, r);
    add_edge(q, s);
    auto after = components();
    int A = before[static_cast<size_t>(p)], B = before[static_cast<size_t>(r)];
    int C1 = after[static_cast<size_t>(p)], C2 = after[static_cast<size_t>(q)];
    if (A == B && C1 == C2) throw std::logic_error("surgery: non-planar saddle");
    int old_count = *std::max_element(before.begin(), before.end()) + 1;
    std::vector<int> to_new(static_cast<size_t>(old_count), -1);
    for (int v = 0; v < nodes_; ++v) {
      int o = before[static_cast<size_t>(v)];
      if (o != A && o != B) to_new[static_cast<size_t>(o)] = after[static_cast<size_t>(v)];
    }
    auto bit = [](int i) { return std::uint64_t(1) << i; };
    std::map<std::uint64_t, PolyHT> next;
    auto put = [&](std::uint64_t m, const PolyHT& c) {
      if (c.is_zero()) return;
      auto& slot = next[m];
      slot += c;
      if (slot.is_zero()) next.erase(m);
    };
    for (auto& [mask, c] : state_) {
      std::uint64_t base = 0;
      for (int o = 0; o < old_count; ++o)
        if (o != A && o != B && (mask & bit(o))) base |= bit(to_new[static_cast<size_t>(o)]);
      if (A != B) {
        bool xa = mask & bit(A), xb = mask & bit(B);
        if (!xa && !xb) {
          put(base, c);
        } else if (xa != xb) {
          put(base | bit(C1), c);
        } else {
          put(base | bit(C1), c * h_);
          put(base, c * t_);
        }
      } else if (!(mask & bit(A))) {
        put(base | bit(C2), c);
        put(base | bit(C1), c);
        put(base, -(c * h_));
      } else {
        put(base | bit(C1) | bit(C2), c);
        put(base, c * t_);
      }
    }
    state_ = std::move(next);
  }

  // Labelings read on target circles; probes[i] is a node on circle i.
  std::map<std::uint32_t, PolyHT> read(const std::vector<int>& probes) const {
    auto comp = components();
    int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> seen(static_cast<size_t>(count), 0);
    for (int v : probes) seen[static_cast<size_t>(comp[static_cast<size_t>(v)])] = 1;
    if (std::count(seen.begin(), seen.end(), 1) != count || static_cast<int>(probes.size()) != count)
      throw std::logic_error("surgery: probes do not match the components");
    std::map<std::uint32_t, PolyHT> out;
    for (auto& [mask, c] : state_) {
      std::uint32_t m = 0;
      for (size_t i = 0; i < probes.size(); ++i)
        if (mask & (std::uint64_t(1) << comp[static_cast<size_t>(probes[i])])) m |= std::uint32_t(1) << i;
      out[m] += c;
    }
    std::erase_if(out, [](auto& kv) { return kv.second.is_zero(); });
    return out;
  }

 private:
  struct Edge {
    int u, v;
    bool alive;
  };
  int nodes_;
  PolyHT h_, t_;
  std::vector<Edge> edges_;
  std::map<std::uint64_t, PolyHT> state_;

  std::vector<int> components() const {
    std::vector<int> parent(static_cast<size_t>(nodes_));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      return x;
    };
    for (auto& e : edges_)
      if (e.alive) parent[static_cast<size_t>(find(e.u))] = find(e.v);
    std::vector<int> idx(static_cast<size_t>(nodes_), -1), comp(static_cast<size_t>(nodes_));
    int next = 0;
    for (int v = 0; v < nodes_; ++v) {
      int r = find(v);
      if (idx[static_cast<size_t>(r)] < 0) idx[static_cast<size_t>(r)] = next++;
      comp[static_cast<size_t>(v)] = idx[static_cast<size_t>(r)];
    }
    return comp;
  }
};

std::vector<int> arc_edges(Surgery& s, const CrossinglessMatching& m, int base) {
  std::vector<int> ids;
  for (auto [l, r] : m.arcs()) ids.push_back(s.add_edge(base + l - 1, base + r - 1));
  return ids;
}

void check_same(const ArcRingElement& u, const ArcRingElement& v) {
  if (u.n != v.n || u.variant != v.variant) throw std::invalid_argument("arc ring elements of different rings");
}

}  // namespace

// ---------------------------------------------------------------- elements

void ArcRingElement::add(const BasisKey& k, const PolyHT& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

ArcRingElement& ArcRingElement::operator+=(const ArcRingElement& o) {
  check_same(*this, o);
  for (auto& [k, c] : o.terms) add(k, c);
  return *this;
}

ArcRingElement& ArcRingElement::operator-=(const ArcRingElement& o) {
  check_same(*this, o);
  for (auto& [k, c] : o.terms) add(k, -c);
  return *this;
}

ArcRingElement ArcRingElement::scaled(const PolyHT& s) const {
  ArcRingElement r(n, variant);
  for (auto& [k, c] : terms) r.add(k, c * s);
  return r;
}

// ---------------------------------------------------------------- ring

const ArcRing& ArcRing::get(int n, Frobenius f) {
  static std::mutex mu;
  static std::map<std::pair<int, Frobenius>, std::unique_ptr<ArcRing>> rings;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = rings[{n, f}];
  if (!slot) slot.reset(new ArcRing(n, f));
  return *slot;
}

ArcRing::ArcRing(int n, Frobenius f) : n_(n), f_(f), ms_(enumerate_matchings(n)) {
  for (auto& top : ms_)
    for (auto& bottom : ms_) {
      cfg_.push_back(glue_and_number(top, bottom));
      offset_.push_back(dim_);
      dim_ += 1 << cfg_.back().k;
    }
}

int ArcRing::matching_index(const CrossinglessMatching& m) const {
  auto it = std::lower_bound(ms_.begin(), ms_.end(), m);
  if (it == ms_.end() || !(*it == m)) throw std::invalid_argument("matching not in B^n");
  return static_cast<int>(it - ms_.begin());
}

BasisKey ArcRing::key(int idx) const {
  auto it = std::upper_bound(offset_.begin(), offset_.end(), idx);
  int s = static_cast<int>(it - offset_.begin()) - 1;
  return BasisKey{s / M(), s % M(), static_cast<std::uint32_t>(idx - offset_[static_cast<size_t>(s)])};
}

int ArcRing::degree(const BasisKey& k) const {
  return 2 * std::popcount(k.labels) + n_ - config(k.top, k.bottom).k;
}

ArcRingElement ArcRing::basis(const BasisKey& k) const {
  ArcRingElement e(n_, f_);
  e.add(k, PolyHT(1L));
  return e;
}

ArcRingElement ArcRing::idempotent(int a) const { return basis(BasisKey{a, a, 0}); }

ArcRingElement ArcRing::unit() const {
  ArcRingElement e(n_, f_);
  for (int a = 0; a < M(); ++a) e.add(BasisKey{a, a, 0}, PolyHT(1L));
  return e;
}

ArcRingElement ArcRing::cbar(int p) const {
  ArcRingElement e(n_, f_);
  long sign = p % 2 == 1 ? 1 : -1;
  for (int a = 0; a < M(); ++a)
    e.add(BasisKey{a, a, std::uint32_t(1) << (config(a, a).circle_of[static_cast<size_t>(p)] - 1)}, PolyHT(sign));
  return e;
}

const std::vector<std::pair<int, PolyHT>>& ArcRing::product(int i, int j) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find({i, j});
    if (it != cache_.end()) return it->second;
  }
  BasisKey x = key(i), y = key(j);
  std::vector<std::pair<int, PolyHT>> out;
  if (x.bottom == y.top) {
    int w = 2 * n_;
    const auto &c = ms_[static_cast<size_t>(x.top)], &b = ms_[static_cast<size_t>(x.bottom)],
               &a = ms_[static_cast<size_t>(y.bottom)];
    Surgery s(2 * w, f_);
    arc_edges(s, c, 0);
    auto upper = arc_edges(s, b, 0);
    auto lower = arc_edges(s, b, w);
    arc_edges(s, a, w);
    std::vector<std::pair<int, bool>> marks;
    const auto& cx = config(x.top, x.bottom);
    auto rx = circle_reps(cx);
    for (size_t q = 0; q < rx.size(); ++q) marks.emplace_back(rx[q] - 1, (x.labels >> q) & 1);
    const auto& cy = config(y.top, y.bottom);
    auto ry = circle_reps(cy);
    for (size_t q = 0; q < ry.size(); ++q) marks.emplace_back(w + ry[q] - 1, (y.labels >> q) & 1);
    s.begin(marks, PolyHT(1L));
    for (size_t e = 0; e < upper.size(); ++e) s.saddle(upper[e], lower[e]);
    const auto& cz = config(x.top, y.bottom);
    std::vector<int> probes;
    for (int p : circle_reps(cz)) probes.push_back(p - 1);
    for (auto& [m, coef] : s.read(probes)) out.emplace_back(index(BasisKey{x.top, y.bottom, m}), coef);
  }
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(std::make_pair(i, j), std::move(out)).first->second;
}

std::vector<PolyHT> ArcRing::to_vector(const ArcRingElement& x) const {
  std::vector<PolyHT> v(static_cast<size_t>(dim_));
  for (auto& [k, c] : x.terms) v[static_cast<size_t>(index(k))] = c;
  return v;
}

ArcRingElement ArcRing::from_vector(const std::vector<PolyHT>& v) const {
  ArcRingElement e(n_, f_);
  for (int i = 0; i < dim_; ++i) e.add(key(i), v[static_cast<size_t>(i)]);
  return e;
}

ArcRingElement multiply(const ArcRingElement& u, const ArcRingElement& v) {
  check_same(u, v);
  const auto& R = ArcRing::get(u.n, u.variant);
  ArcRingElement r(u.n, u.variant);
  for (auto& [ku, cu] : u.terms)
    for (auto& [kv, cv] : v.terms) {
      if (ku.bottom != kv.top) continue;
      PolyHT c = cu * cv;
      for (auto& [idx, sc] : R.product(R.index(ku), R.index(kv))) r.add(R.key(idx), c * sc);
    }
  return r;
}

GradingReport grading_check(int n, Frobenius f) {
  const auto& R = ArcRing::get(n, f);
  GradingReport rep;
  rep.n = n;
  rep.variant = f;
  for (int i = 0; i < R.dim(); ++i)
    for (int j = 0; j < R.dim(); ++j) {
      auto& prod = R.product(i, j);
      if (prod.empty()) continue;
      ++rep.products;
      int want = R.degree(R.key(i)) + R.degree(R.key(j));
      for (auto& [idx, c] : prod)
        for (auto& [e, coef] : c.terms) {
          ++rep.terms_checked;
          if (R.degree(R.key(idx)) + PolyHT::degree(e) != want)
            rep.failures.push_back("basis " + std::to_string(i) + " * " + std::to_string(j) + " -> " +
                                   std::to_string(idx));
        }
    }
  return rep;
}

// ---------------------------------------------------------------- square-free algebra

SquareFreeElement SquareFreeElement::constant(int v, bool tw, const PolyHT& c) {
  SquareFreeElement e(v, tw);
  e.add(0, c);
  return e;
}

SquareFreeElement SquareFreeElement::variable(int v, bool tw, int i) { return monomial(v, tw, std::uint32_t(1) << (i - 1)); }

SquareFreeElement SquareFreeElement::monomial(int v, bool tw, std::uint32_t subset) {
  SquareFreeElement e(v, tw);
  e.add(subset, PolyHT(1L));
  return e;
}

void SquareFreeElement::add(std::uint32_t s, const PolyHT& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.emplace(s, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

SquareFreeElement& SquareFreeElement::operator+=(const SquareFreeElement& o) {
  for (auto& [s, c] : o.terms) add(s, c);
  return *this;
}

SquareFreeElement& SquareFreeElement::operator-=(const SquareFreeElement& o) {
  for (auto& [s, c] : o.terms) add(s, -c);
  return *this;
}

SquareFreeElement operator*(const SquareFreeElement& a, const SquareFreeElement& b) {
  if (a.vars != b.vars || a.twisted != b.twisted) throw std::invalid_argument("square-free algebras differ");
  SquareFreeElement r(a.vars, a.twisted);
  for (auto& [s1, c1] : a.terms)
    for (auto& [s2, c2] : b.terms) {
      std::uint32_t both = s1 & s2;
      if (both && !a.twisted) continue;
      r.add(s1 ^ s2, c1 * c2 * PolyHT::mono(0, std::popcount(both)));
    }
  return r;
}

SquareFreeElement SquareFreeElement::scaled(const PolyHT& s) const {
  SquareFreeElement r(vars, twisted);
  for (auto& [m, c] : terms) r.add(m, c * s);
  return r;
}

std::string SquareFreeElement::str() const {
  if (terms.empty()) return "0";
  std::string out;
  for (auto& [s, c] : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")";
    for (int i = 0; i < vars; ++i)
      if (s >> i & 1) out += "c" + std::to_string(i + 1);
  }
  return out;
}

SquareFreeElement elementary(int vars, int k, bool twisted, std::vector<int> which) {
  if (which.empty())
    for (int i = 1; i <= vars; ++i) which.push_back(i);
  SquareFreeElement e(vars, twisted);
  int w = static_cast<int>(which.size());
  if (k < 0 || k > w) return e;
  std::vector<int> pick(static_cast<size_t>(w), 0);
  std::fill(pick.end() - k, pick.end(), 1);
  do {
    std::uint32_t s = 0;
    for (int i = 0; i < w; ++i)
      if (pick[static_cast<size_t>(i)]) s |= std::uint32_t(1) << (which[static_cast<size_t>(i)] - 1);
    e.add(s, PolyHT(1L));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return e;
}

bool polys_lemma_identity(int n, int k) {
  int v = 2 * n;
  std::vector<int> tail;
  for (int i = n + k; i <= v; ++i) tail.push_back(i);
  SquareFreeElement rhs(v, false);
  for (int m = 1; m <= n - k + 1; ++m) {
    auto term = elementary(v, m, false, tail) * elementary(v, n + k - m, false);
    if (m % 2 == 1)
      rhs += term;
    else
      rhs -= term;
  }
  return rhs == elementary(v, n + k, false);
}

SquareFreeElement et_function(int k, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, SquareFreeElement> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({k, n});
    if (it != memo.end()) return it->second;
  }
  int v = 2 * n;
  if (k < 1) throw std::invalid_argument("et_function: k >= 1");
  SquareFreeElement e1 = elementary(v, 1, true);
  SquareFreeElement p = e1;
  for (int i = 1; i < k; ++i) p = p * e1;
  for (int i = 1; i < k; ++i) {
    if ((k - i) % 2 != 0) continue;
    auto it = p.terms.find((std::uint32_t(1) << i) - 1);
    if (it == p.terms.end()) continue;
    p -= et_function(i, n).scaled(it->second);
  }
  Int fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  SquareFreeElement r(v, true);
  for (auto& [s, c] : p.terms) {
    PolyHT q;
    for (auto& [e, x] : c.terms) {
      if (x % fact != 0) throw std::logic_error("et_function: inexact division by k!");
      q.add_term(e, Int(x / fact));
    }
    r.add(s, q);
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(k, n), r);
  return r;
}

// ---------------------------------------------------------------- linear algebra helpers

namespace {

Rat eval_at(const PolyHT& p, const Rat& h, const Rat& t) { return p.eval(h, t); }

std::vector<Rat> eval_vec(const std::vector<PolyHT>& v, const Rat& h, const Rat& t) {
  std::vector<Rat> r;
  r.reserve(v.size());
  for (auto& x : v) r.push_back(eval_at(x, h, t));
  return r;
}

std::vector<Int> int_vec(const std::vector<PolyHT>& v) {
  std::vector<Int> r;
  r.reserve(v.size());
  for (auto& x : v) {
    if (!x.is_zero() && !(x.terms.size() == 1 && x.terms.begin()->first == std::make_pair(0, 0)))
      throw std::logic_error("expected an integer coefficient");
    r.push_back(x.constant());
  }
  return r;
}

std::vector<Int> clear_denominators(const std::vector<Rat>& v) {
  Int l = 1;
  for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Int> r;
  Int g = 0;
  for (auto& x : v) {
    Int y = Int(x.get_num() * (l / x.get_den()));
    r.push_back(y);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_mpz_t());
  }
  if (g > 1)
    for (auto& y : r) y /= g;
  return r;
}

PolyHT specialize_h_zero(const PolyHT& p) {
  PolyHT r;
  for (auto& [e, c] : p.terms)
    if (e.first == 0) r.add_term(e, c);
  return r;
}

// Coordinates on the diagonal summands _a(H)_a, a * 2^n + labels.
struct Diagonal {
  const ArcRing& R;
  int dim;
  explicit Diagonal(const ArcRing& r) : R(r), dim(static_cast<int>(r.matchings().size()) << r.n()) {}
  int index(const BasisKey& k) const { return k.top == k.bottom ? (k.top << R.n()) + static_cast<int>(k.labels) : -1; }
  std::vector<PolyHT> vec(const ArcRingElement& x) const {
    std::vector<PolyHT> v(static_cast<size_t>(dim));
    for (auto& [k, c] : x.terms) {
      int i = index(k);
      if (i >= 0) v[static_cast<size_t>(i)] = c;
    }
    return v;
  }
};

using Sparse = std::vector<std::pair<int, PolyHT>>;

// Diagonal parts of xy - yx for basis x in _c H_b, y in _b H_c, c != b.
std::vector<Sparse> commutator_generators(const ArcRing& R, const Diagonal& D) {
  std::vector<Sparse> out;
  int M = static_cast<int>(R.matchings().size());
  for (int c = 0; c < M; ++c)
    for (int b = 0; b < M; ++b) {
      if (b == c) continue;
      int kx = R.config(c, b).k, ky = R.config(b, c).k;
      for (std::uint32_t lx = 0; lx < (1u << kx); ++lx)
        for (std::uint32_t ly = 0; ly < (1u << ky); ++ly) {
          int i = R.index({c, b, lx}), j = R.index({b, c, ly});
          std::map<int, PolyHT> acc;
          for (auto& [idx, co] : R.product(i, j)) acc[D.index(R.key(idx))] += co;
          for (auto& [idx, co] : R.product(j, i)) acc[D.index(R.key(idx))] -= co;
          Sparse s;
          for (auto& [idx, co] : acc)
            if (!co.is_zero()) s.emplace_back(idx, co);
          if (!s.empty()) out.push_back(std::move(s));
        }
    }
  return out;
}

std::vector<Int> dense_int(const Sparse& s, int dim) {
  std::vector<Int> v(static_cast<size_t>(dim), Int(0));
  for (auto& [i, c] : s) v[static_cast<size_t>(i)] = c.constant();
  return v;
}

std::vector<Rat> dense_rat(const Sparse& s, int dim, const Rat& h, const Rat& t) {
  std::vector<Rat> v(static_cast<size_t>(dim), Rat(0));
  for (auto& [i, c] : s) v[static_cast<size_t>(i)] = c.eval(h, t);
  return v;
}

std::pair<Rat, Rat> effective_point(Frobenius f, const Rat& h, const Rat& t) {
  switch (f) {
    case Frobenius::Classical: return {Rat(0), Rat(0)};
    case Frobenius::TwistedT: return {Rat(0), t};
    case Frobenius::Equivariant: return {h, t};
  }
  return {h, t};
}

// X^d = p X + q in the circle algebra.
std::pair<PolyHT, PolyHT> x_power(int d, Frobenius f) {
  PolyHT p(0L), q(1L);
  PolyHT h = h_of(f), t = t_of(f);
  for (int i = 0; i < d; ++i) {
    PolyHT np = p * h + q;
    PolyHT nq = p * t;
    p = np;
    q = nq;
  }
  return {p, q};
}

EquivElement relation_for(const RelationInstance& r, Frobenius f) {
  if (f == Frobenius::Classical) {
    auto c = relation_element_classical(r);
    EquivElement e(Variant::Equivariant, c.n);
    for (auto& [d, x] : c.terms) e.add(d, PolyHT(x));
    return e;
  }
  auto e = relation_element_equivariant(r);
  if (f == Frobenius::TwistedT) {
    EquivElement s(Variant::Equivariant, e.n);
    for (auto& [d, x] : e.terms) s.add(d, specialize_h_zero(x));
    return s;
  }
  return e;
}

ArcRingElement phi_linear(const EquivElement& e, Frobenius f) {
  ArcRingElement r(e.n, f);
  for (auto& [d, c] : e.terms) r += phi_map(d, f).scaled(c);
  return r;
}

const std::vector<std::pair<Rat, Rat>>& sample_points() {
  static const std::vector<std::pair<Rat, Rat>> pts{{Rat(5), Rat(7)}, {Rat(-2, 3), Rat(11, 5)}, {Rat(3), Rat(-1, 2)}};
  return pts;
}

}  // namespace

// ---------------------------------------------------------------- center

CenterReport center(int n, Frobenius f, const Rat& t_point) {
  if (f == Frobenius::Equivariant) throw std::invalid_argument("center: classical or x2t only");
  const auto& R = ArcRing::get(n, f);
  CenterReport rep;
  rep.n = n;
  rep.variant = f;
  rep.t_point = t_point;
  Rat hv(0), tv = f == Frobenius::Classical ? Rat(0) : t_point;
  int D = R.dim();

  // Unknown z = sum z_i e_i; rows are the coordinates of z v - v z for every basis v.
  EchelonBasis<Rat> rows(D);
  for (int j = 0; j < D; ++j) {
    std::vector<std::vector<Rat>> block(static_cast<size_t>(D), std::vector<Rat>(static_cast<size_t>(D), Rat(0)));
    bool any = false;
    for (int i = 0; i < D; ++i) {
      for (auto& [r, c] : R.product(i, j)) {
        block[static_cast<size_t>(r)][static_cast<size_t>(i)] += c.eval(hv, tv);
        any = true;
      }
      for (auto& [r, c] : R.product(j, i)) {
        block[static_cast<size_t>(r)][static_cast<size_t>(i)] -= c.eval(hv, tv);
        any = true;
      }
    }
    if (!any) continue;
    for (auto& row : block) rows.insert(row);
  }
  auto b = rows.basis();
  Matrix<Rat> A(static_cast<int>(b.size()), D);
  for (size_t r = 0; r < b.size(); ++r)
    for (int c = 0; c < D; ++c) A(static_cast<int>(r), c) = b[r][static_cast<size_t>(c)];
  auto ns = nullspace(A);
  rep.rank = static_cast<int>(ns.size());
  for (auto& v : ns) {
    auto iv = clear_denominators(v);
    ArcRingElement e(n, f);
    for (int i = 0; i < D; ++i) e.add(R.key(i), PolyHT(iv[static_cast<size_t>(i)]));
    rep.basis.push_back(e);
  }

  int vars = 2 * n;
  bool tw = f == Frobenius::TwistedT;
  std::vector<ArcRingElement> cb;
  for (int p = 1; p <= vars; ++p) cb.push_back(R.cbar(p));
  rep.cbar_central = true;
  for (auto& c : cb)
    for (int j = 0; j < D && rep.cbar_central; ++j) {
      auto v = R.basis(R.key(j));
      if (!(multiply(c, v) == multiply(v, c))) rep.cbar_central = false;
    }

  // Evaluate square-free polynomials at the cbar's.
  std::map<std::uint32_t, ArcRingElement> mono;
  std::function<const ArcRingElement&(std::uint32_t)> monomial = [&](std::uint32_t s) -> const ArcRingElement& {
    auto it = mono.find(s);
    if (it != mono.end()) return it->second;
    ArcRingElement e = R.unit();
    for (int i = 0; i < vars; ++i)
      if (s >> i & 1) e = multiply(e, cb[static_cast<size_t>(i)]);
    return mono.emplace(s, e).first->second;
  };
  auto at_cbar = [&](const SquareFreeElement& p) {
    ArcRingElement e(n, f);
    for (auto& [s, c] : p.terms) e += monomial(s).scaled(c);
    return e;
  };
  rep.cbar_relations = true;
  for (auto& c : cb) {
    ArcRingElement sq = multiply(c, c);
    ArcRingElement want = tw ? R.unit().scaled(PolyHT::t()) : ArcRingElement(n, f);
    if (!(sq == want)) rep.cbar_relations = false;
  }
  int top = tw ? n : vars;
  for (int k = 1; k <= top; ++k) {
    auto g = tw ? et_function(k, n) : elementary(vars, k, false);
    if (!at_cbar(g).is_zero()) rep.cbar_relations = false;
  }

  // Presentation side: dimension of Q[x]/(relations) with x_i^2 reduced.
  auto pres = [&](int kmax) {
    int N = 1 << vars;
    EchelonBasis<Rat> ideal(N);
    for (int k = 1; k <= kmax; ++k) {
      auto g = tw ? et_function(k, n) : elementary(vars, k, false);
      for (std::uint32_t s = 0; s < std::uint32_t(N); ++s) {
        auto prod = SquareFreeElement::monomial(vars, tw, s) * g;
        std::vector<Rat> v(static_cast<size_t>(N), Rat(0));
        for (auto& [m, c] : prod.terms) v[m] = c.eval(hv, tv);
        ideal.insert(v);
      }
    }
    return N - ideal.rank();
  };
  rep.presentation_rank = pres(n);
  rep.presentation_rank_full = tw ? rep.presentation_rank : pres(vars);

  // Span of cbar monomials against the center.
  if (f == Frobenius::Classical) {
    Lattice lat(D);
    for (std::uint32_t s = 0; s < (std::uint32_t(1) << vars); ++s) lat.insert(int_vec(R.to_vector(monomial(s))));
    rep.generated_by_cbar = lat.rank() == rep.rank && lat.cokernel_torsion().empty();
    for (auto& d : lat.cokernel_torsion())
      if (d > 1) rep.generated_by_cbar = false;
  } else {
    EchelonBasis<Rat> span(D);
    for (std::uint32_t s = 0; s < (std::uint32_t(1) << vars); ++s) span.insert(eval_vec(R.to_vector(monomial(s)), hv, tv));
    rep.generated_by_cbar = span.rank() == rep.rank;
  }
  return rep;
}

// ---------------------------------------------------------------- HH_0 and phi

ArcRingElement phi_map(const DottedMatching& m, Frobenius f) {
  const auto& R = ArcRing::get(m.n(), f);
  int a = R.matching_index(m.m);
  const auto& cfg = R.config(a, a);
  std::map<std::uint32_t, PolyHT> acc{{0, PolyHT(1L)}};
  for (auto [l, r] : m.m.arcs()) {
    auto [p, q] = x_power(m.dots_on(l), f);
    std::uint32_t bit = std::uint32_t(1) << (cfg.circle_of[static_cast<size_t>(l)] - 1);
    std::map<std::uint32_t, PolyHT> next;
    for (auto& [s, c] : acc) {
      if (!p.is_zero()) next[s | bit] += c * p;
      if (!q.is_zero()) next[s] += c * q;
    }
    acc = std::move(next);
  }
  ArcRingElement e(m.n(), f);
  for (auto& [s, c] : acc) e.add(BasisKey{a, a, s}, c);
  return e;
}

HH0Report hh0(int n, Frobenius f, const Rat& h, const Rat& t) {
  const auto& R = ArcRing::get(n, f);
  Diagonal D(R);
  HH0Report rep;
  rep.n = n;
  rep.variant = f;
  std::tie(rep.h, rep.t) = effective_point(f, h, t);
  rep.diagonal_dim = D.dim;
  auto gens = commutator_generators(R, D);
  rep.generators = static_cast<long>(gens.size());
  auto basis = enumerate_standard_basis_all(n);

  if (f == Frobenius::Classical) {
    Lattice comm(D.dim);
    for (auto& g : gens) comm.insert(dense_int(g, D.dim));
    rep.rank = comm.cokernel_free_rank();
    for (auto& d : comm.cokernel_torsion())
      if (d > 1) rep.torsion.push_back(d);
    for (int k = 0; k <= n; ++k) rep.skein_rank += presentation_rank(n, k, Variant::Classical).rank;

    // Arrow a -> b: arcs (i,j),(k,l) of a become (i,l),(j,k).
    Lattice lemma(D.dim);
    const auto& ms = R.matchings();
    for (size_t ai = 0; ai < ms.size(); ++ai) {
      const auto& a = ms[ai];
      for (auto [i, j] : a.arcs())
        for (auto [k, l] : a.arcs()) {
          if (!(j < k)) continue;
          std::vector<Arc> arcs;
          for (auto x : a.arcs())
            if (x != Arc{i, j} && x != Arc{k, l}) arcs.push_back(x);
          std::vector<Arc> others = arcs;
          arcs.emplace_back(i, l);
          arcs.emplace_back(j, k);
          std::sort(arcs.begin(), arcs.end());
          if (!CrossinglessMatching::valid(n, arcs)) continue;
          CrossinglessMatching b(n, arcs);
          int bi = R.matching_index(b);
          const auto& ca = R.config(static_cast<int>(ai), static_cast<int>(ai));
          const auto& cb = R.config(bi, bi);
          auto bit = [](const CircleConfiguration& c, int p) { return std::uint32_t(1) << (c.circle_of[static_cast<size_t>(p)] - 1); };
          int o = static_cast<int>(others.size());
          for (int s = 0; s < (1 << o); ++s) {
            std::uint32_t la = 0, lb = 0;
            for (int q = 0; q < o; ++q)
              if (s >> q & 1) la |= bit(ca, others[static_cast<size_t>(q)].first), lb |= bit(cb, others[static_cast<size_t>(q)].first);
            std::vector<Int> v1(static_cast<size_t>(D.dim), Int(0)), v2 = v1;
            auto at = [&](int m, std::uint32_t lab) { return static_cast<size_t>(D.index(BasisKey{m, m, lab})); };
            int A = static_cast<int>(ai);
            v1[at(A, la | bit(ca, i))] += 1;
            v1[at(A, la | bit(ca, k))] += 1;
            v1[at(bi, lb | bit(cb, i))] -= 1;
            v1[at(bi, lb | bit(cb, j))] -= 1;
            v2[at(A, la | bit(ca, i) | bit(ca, k))] += 1;
            v2[at(bi, lb | bit(cb, i) | bit(cb, j))] -= 1;
            lemma.insert(v1);
            lemma.insert(v2);
          }
        }
    }
    bool eq = lemma.rank() == comm.rank();
    for (auto& g : gens)
      if (eq && !lemma.contains(dense_int(g, D.dim))) eq = false;
    auto lb = lemma.basis_matrix();
    for (int r = 0; r < lb.rows && eq; ++r)
      if (!comm.contains(lb.row(r))) eq = false;
    rep.lemma_span_equal = eq;

    Lattice full = comm;
    for (auto& d : basis) full.insert(int_vec(D.vec(phi_map(d, f))));
    bool unimodular = full.cokernel_free_rank() == 0;
    for (auto& d : full.cokernel_torsion())
      if (d > 1) unimodular = false;
    rep.phi_bijective = unimodular && static_cast<int>(basis.size()) == rep.rank;
  } else {
    EchelonBasis<Rat> comm(D.dim);
    for (auto& g : gens) comm.insert(dense_rat(g, D.dim, rep.h, rep.t));
    rep.rank = D.dim - comm.rank();
    rep.skein_rank = presentation_rank_equivariant(n, rep.h, rep.t).rank;
    EchelonBasis<Rat> full = comm;
    for (auto& d : basis) full.insert(eval_vec(D.vec(phi_map(d, f)), rep.h, rep.t));
    rep.phi_bijective = full.rank() == D.dim && static_cast<int>(basis.size()) == rep.rank;
  }
  return rep;
}

PhiRelationReport phi_relation_check(int n, Frobenius f) {
  const auto& R = ArcRing::get(n, f);
  Diagonal D(R);
  auto gens = commutator_generators(R, D);
  PhiRelationReport rep;
  rep.n = n;
  rep.variant = f;
  std::vector<RelationKind> kinds{RelationKind::TypeI, RelationKind::TypeII};
  if (f != Frobenius::Classical) kinds.push_back(RelationKind::DotReduction);

  std::vector<EquivElement> rels;
  std::vector<std::string> names;
  for (auto kind : kinds)
    for (auto& r : enumerate_relation_instances(n, kind, f == Frobenius::Classical ? Variant::Classical : Variant::Equivariant)) {
      rels.push_back(relation_for(r, f));
      names.push_back(std::string(kind == RelationKind::TypeI ? "TypeI " : kind == RelationKind::TypeII ? "TypeII " : "DotReduction ") +
                      ascii(r.base));
    }

  if (f == Frobenius::Classical) {
    Lattice comm(D.dim);
    for (auto& g : gens) comm.insert(dense_int(g, D.dim));
    for (size_t i = 0; i < rels.size(); ++i) {
      ++rep.checked;
      if (comm.contains(int_vec(D.vec(phi_linear(rels[i], f)))))
        ++rep.in_commutator;
      else
        rep.failures.push_back(names[i]);
    }
    return rep;
  }
  std::vector<EchelonBasis<Rat>> spans;
  for (auto& pt : sample_points()) {
    auto [h, t] = effective_point(f, pt.first, pt.second);
    EchelonBasis<Rat> comm(D.dim);
    for (auto& g : gens) comm.insert(dense_rat(g, D.dim, h, t));
    spans.push_back(std::move(comm));
  }
  for (size_t i = 0; i < rels.size(); ++i) {
    ++rep.checked;
    auto v = D.vec(phi_linear(rels[i], f));
    bool ok = true;
    for (size_t p = 0; p < spans.size() && ok; ++p) {
      auto [h, t] = effective_point(f, sample_points()[p].first, sample_points()[p].second);
      ok = spans[p].contains(eval_vec(v, h, t));
    }
    if (ok)
      ++rep.in_commutator;
    else
      rep.failures.push_back(names[i]);
  }
  return rep;
}

// ---------------------------------------------------------------- kernels of the closure maps

KernelReport kernel_vert(int n) {
  KernelReport rep;
  rep.n = n;
  int vars = 2 * n, N = 1 << vars;
  rep.ambient = N;
  auto vec = [&](const SquareFreeElement& e) {
    std::vector<Int> v(static_cast<size_t>(N), Int(0));
    for (auto& [s, c] : e.terms) v[s] = c.constant();
    return v;
  };
  auto to_rat = [](const std::vector<Int>& v) { return std::vector<Rat>(v.begin(), v.end()); };
  auto ideal_of = [&](const std::vector<SquareFreeElement>& gens) {
    std::vector<std::vector<Int>> out;
    for (auto& g : gens)
      for (std::uint32_t s = 0; s < std::uint32_t(N); ++s) out.push_back(vec(SquareFreeElement::monomial(vars, false, s) * g));
    return out;
  };
  auto pure = [&](const std::vector<std::vector<Int>>& vs) {
    Lattice l(N);
    for (auto& v : vs) l.insert(v);
    for (auto& d : l.cokernel_torsion())
      if (d > 1) return false;
    return true;
  };

  bool saturated = true;
  std::vector<std::vector<Rat>> inter;
  bool first = true;
  for (auto& m : enumerate_matchings(n)) {
    std::vector<SquareFreeElement> gens;
    for (auto [i, j] : m.arcs())
      gens.push_back(SquareFreeElement::variable(vars, false, i) + SquareFreeElement::variable(vars, false, j));
    auto ia = ideal_of(gens);
    saturated = saturated && pure(ia);
    EchelonBasis<Rat> span(N);
    for (auto& v : ia) span.insert(to_rat(v));
    if (first) {
      inter = span.basis();
      first = false;
    } else {
      inter = span_intersection(inter, span.basis(), N);
    }
  }
  rep.intersection_rank = static_cast<int>(inter.size());

  std::vector<SquareFreeElement> es;
  for (int k = 1; k <= n; ++k) es.push_back(elementary(vars, k, false));
  auto ie = ideal_of(es);
  saturated = saturated && pure(ie);
  rep.saturated = saturated;
  EchelonBasis<Rat> espan(N), ispan(N);
  for (auto& v : ie) espan.insert(to_rat(v));
  for (auto& v : inter) ispan.insert(v);
  rep.ideal_rank = espan.rank();
  rep.ideal_in_intersection = true;
  for (auto& v : espan.basis())
    if (!ispan.contains(v)) rep.ideal_in_intersection = false;
  rep.intersection_in_ideal = true;
  for (auto& v : inter)
    if (!espan.contains(v)) rep.intersection_in_ideal = false;

  EchelonBasis<Rat> single(N);
  for (auto& v : ideal_of({elementary(vars, 1, false)})) single.insert(to_rat(v));
  rep.single_generator_over_q = single.rank() == espan.rank();
  for (auto& v : single.basis())
    if (!espan.contains(v)) rep.single_generator_over_q = false;
  return rep;
}

KernelReport kernel_vert_t(int n) {
  KernelReport rep;
  rep.n = n;
  rep.twisted = true;
  int vars = 2 * n;
  rep.max_degree = 4 * n + 1;
  rep.ideal_in_intersection = rep.intersection_in_ideal = true;
  std::vector<SquareFreeElement> es;
  for (int k = 1; k <= n; ++k) es.push_back(et_function(k, n));
  auto ms = enumerate_matchings(n);

  for (int d = 0; d <= rep.max_degree; ++d) {
    // Coordinates (S, j) with |S| + 2j = d.
    std::map<std::pair<std::uint32_t, int>, int> coord;
    for (std::uint32_t s = 0; s < (std::uint32_t(1) << vars); ++s) {
      int sz = std::popcount(s);
      if (sz <= d && (d - sz) % 2 == 0) coord.emplace(std::make_pair(s, (d - sz) / 2), static_cast<int>(coord.size()));
    }
    int N = static_cast<int>(coord.size());
    rep.ambient += N;
    auto vec = [&](const SquareFreeElement& e) {
      std::vector<Rat> v(static_cast<size_t>(N), Rat(0));
      for (auto& [s, c] : e.terms)
        for (auto& [ex, x] : c.terms) {
          auto it = coord.find({s, ex.second});
          if (it == coord.end() || ex.first != 0) throw std::logic_error("kernel_vert_t: inhomogeneous element");
          v[static_cast<size_t>(it->second)] = Rat(x);
        }
      return v;
    };
    // Degree-d piece of the ideal generated by homogeneous gens of the given degrees.
    auto ideal_piece = [&](const std::vector<std::pair<SquareFreeElement, int>>& gens) {
      EchelonBasis<Rat> span(N);
      for (auto& [g, deg] : gens) {
        int md = d - deg;
        if (md < 0) continue;
        for (std::uint32_t s = 0; s < (std::uint32_t(1) << vars); ++s) {
          int sz = std::popcount(s);
          if (sz > md || (md - sz) % 2) continue;
          auto mult = SquareFreeElement::monomial(vars, true, s).scaled(PolyHT::mono(0, (md - sz) / 2));
          span.insert(vec(mult * g));
        }
      }
      return span;
    };

    std::vector<std::vector<Rat>> inter;
    bool first = true;
    for (auto& m : ms) {
      std::vector<std::pair<SquareFreeElement, int>> gens;
      for (auto [i, j] : m.arcs())
        gens.emplace_back(SquareFreeElement::variable(vars, true, i) + SquareFreeElement::variable(vars, true, j), 1);
      auto span = ideal_piece(gens);
      if (first) {
        inter = span.basis();
        first = false;
      } else {
        inter = span_intersection(inter, span.basis(), N);
      }
    }
    std::vector<std::pair<SquareFreeElement, int>> eg;
    for (int k = 1; k <= n; ++k) eg.emplace_back(es[static_cast<size_t>(k - 1)], k);
    auto espan = ideal_piece(eg);
    EchelonBasis<Rat> ispan(N);
    for (auto& v : inter) ispan.insert(v);
    rep.intersection_rank += ispan.rank();
    rep.ideal_rank += espan.rank();
    for (auto& v : espan.basis())
      if (!ispan.contains(v)) rep.ideal_in_intersection = false;
    for (auto& v : inter)
      if (!espan.contains(v)) rep.intersection_in_ideal = false;
  }
  rep.saturated = true;
  return rep;
}

// ---------------------------------------------------------------- quotient skein modules

ClassicalElement tangle_generator(const FlatTangle& a, int k) {
  auto ab = unbend(a);
  struct Through {
    int left;
    int sign;
  };
  std::vector<Through> th;
  auto pt = [&](const TangleEnd& e) { return e.top ? 2 * a.m - e.idx + 1 : 2 * a.m + e.idx; };
  for (auto& [x, y] : a.strands) {
    if (x.top == y.top) continue;
    int top_idx = x.top ? x.idx : y.idx;
    th.push_back({std::min(pt(x), pt(y)), top_idx % 2 == 1 ? 1 : -1});
  }
  ClassicalElement e(Variant::Classical, ab.n());
  int w = static_cast<int>(th.size());
  if (k < 1 || k > w) return e;
  std::vector<int> pick(static_cast<size_t>(w), 0);
  std::fill(pick.end() - k, pick.end(), 1);
  do {
    std::map<int, int> dots;
    long sign = 1;
    for (int i = 0; i < w; ++i)
      if (pick[static_cast<size_t>(i)]) dots[th[static_cast<size_t>(i)].left] = 1, sign *= th[static_cast<size_t>(i)].sign;
    e.add(DottedMatching(ab, dots), Int(sign));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return e;
}

namespace {

// All multiples of g by extra dots on the arcs of its underlying matching (dots square to zero).
std::vector<ClassicalElement> dot_multiples(const ClassicalElement& g) {
  std::vector<ClassicalElement> out;
  if (g.is_zero()) return out;
  const auto& m = g.terms.begin()->first.m;
  int n = m.n();
  for (int s = 0; s < (1 << n); ++s) {
    ClassicalElement e(Variant::Classical, g.n);
    for (auto& [d, c] : g.terms) {
      std::map<int, int> dots = d.dots;
      bool dead = false;
      for (int i = 0; i < n; ++i)
        if (s >> i & 1) {
          int l = m.arcs()[static_cast<size_t>(i)].first;
          if (dots.count(l)) dead = true;
          dots[l] = 1;
        }
      if (!dead) e.add(DottedMatching(d.m, dots), c);
    }
    if (!e.is_zero()) out.push_back(e);
  }
  return out;
}

}  // namespace

QuotientSkeinReport quotient_skein(int m, int n) {
  QuotientSkeinReport rep;
  rep.m = m;
  rep.n = n;
  int N = m + n;
  std::vector<DottedMatching> ambient;
  for (int k = 0; k <= N; ++k) {
    auto part = enumerate_dotted(N, k, 1);
    ambient.insert(ambient.end(), part.begin(), part.end());
  }
  std::map<DottedMatching, int> index;
  for (auto& d : ambient) index.emplace(d, static_cast<int>(index.size()));
  rep.ambient = static_cast<int>(ambient.size());
  auto coords = [&](const ClassicalElement& e) {
    std::vector<Int> v(ambient.size(), Int(0));
    for (auto& [d, c] : e.terms) v[static_cast<size_t>(index.at(d))] = c;
    return v;
  };

  Lattice skein(rep.ambient);
  for (auto kind : {RelationKind::TypeI, RelationKind::TypeII})
    for (auto& r : enumerate_relation_instances(N, kind, Variant::Classical)) {
      auto e = relation_element_classical(r);
      if (e.is_zero()) continue;
      skein.insert(coords(e));
      ++rep.skein_relations;
    }

  std::vector<ClassicalElement> plain, full;
  for (auto& a : enumerate_flat_tangles(m, n))
    for (int k = 1; k <= a.width(); ++k) {
      auto g = tangle_generator(a, k);
      if (g.is_zero()) continue;
      rep.generators.emplace_back("e_" + std::to_string(k) + ascii(DottedMatching(unbend(a))), g);
      plain.push_back(g);
      for (auto& x : dot_multiples(g)) full.push_back(x);
    }
  rep.kernel_generators = static_cast<int>(full.size());

  Lattice with_plain = skein;
  for (auto& g : plain) with_plain.insert(coords(g));
  rep.rank_plain_generators = with_plain.cokernel_free_rank();

  Lattice with_full = skein;
  for (auto& g : full) with_full.insert(coords(g));
  rep.rank = with_full.cokernel_free_rank();
  for (auto& d : with_full.cokernel_torsion())
    if (d > 1) rep.torsion.push_back(d);

  // Same quotient inside H^{m+n}: commutators plus the phi-images of the kernel generators.
  const auto& R = ArcRing::get(N, Frobenius::Classical);
  Diagonal D(R);
  Lattice arc(D.dim);
  for (auto& g : commutator_generators(R, D)) arc.insert(dense_int(g, D.dim));
  for (auto& g : full) {
    EquivElement e(Variant::Equivariant, g.n);
    for (auto& [d, c] : g.terms) e.add(d, PolyHT(c));
    arc.insert(int_vec(D.vec(phi_linear(e, Frobenius::Classical))));
  }
  rep.arc_ring_rank = arc.cokernel_free_rank();
  for (auto& d : arc.cokernel_torsion())
    if (d > 1) rep.arc_ring_torsion.push_back(d);
  return rep;
}

// ---------------------------------------------------------------- Hom(m, n) for small m, n

HomRingReport hom_ring_checks(int m, int n) {
  HomRingReport rep;
  rep.m = m;
  rep.n = n;
  int N = m + n;
  const auto& R = ArcRing::get(N, Frobenius::Classical);
  int D = R.dim();
  rep.dim_h = D;
  auto rat = [&](const ArcRingElement& x) {
    std::vector<Rat> v(static_cast<size_t>(D), Rat(0));
    for (auto& [k, c] : x.terms) v[static_cast<size_t>(R.index(k))] = Rat(c.constant());
    return v;
  };

  std::vector<ArcRingElement> gens;
  for (auto& a : enumerate_flat_tangles(m, n))
    for (int k = 1; k <= a.width(); ++k) {
      auto g = tangle_generator(a, k);
      EquivElement e(Variant::Equivariant, g.n);
      for (auto& [d, c] : g.terms) e.add(d, PolyHT(c));
      gens.push_back(phi_linear(e, Frobenius::Classical));
    }
  EchelonBasis<Rat> K(D);
  for (auto& g : gens)
    for (int i = 0; i < D; ++i) {
      auto xg = multiply(R.basis(R.key(i)), g);
      if (xg.is_zero()) continue;
      for (int j = 0; j < D; ++j) K.insert(rat(multiply(xg, R.basis(R.key(j)))));
    }
  rep.kernel_rank = K.rank();
  rep.hom_dim = D - K.rank();

  int M = static_cast<int>(R.matchings().size());
  rep.idempotents_orthogonal = rep.idempotents_nonzero = true;
  ArcRingElement sum(N, Frobenius::Classical);
  for (int a = 0; a < M; ++a) {
    sum += R.idempotent(a);
    if (K.contains(rat(R.idempotent(a)))) rep.idempotents_nonzero = false;
    for (int b = 0; b < M; ++b) {
      auto p = multiply(R.idempotent(a), R.idempotent(b));
      if (!(p == (a == b ? R.idempotent(a) : ArcRingElement(N, Frobenius::Classical)))) rep.idempotents_orthogonal = false;
    }
  }
  rep.idempotents_complete = sum == R.unit();

  // Center of H/K: z with [z, v] in K for every basis v.
  EchelonBasis<Rat> rows(D);
  for (int j = 0; j < D; ++j) {
    std::vector<std::vector<Rat>> cols;
    for (int i = 0; i < D; ++i) {
      auto x = R.basis(R.key(i)), v = R.basis(R.key(j));
      cols.push_back(K.reduce(rat(multiply(x, v) - multiply(v, x))));
    }
    for (int r = 0; r < D; ++r) {
      std::vector<Rat> row(static_cast<size_t>(D));
      for (int i = 0; i < D; ++i) row[static_cast<size_t>(i)] = cols[static_cast<size_t>(i)][static_cast<size_t>(r)];
      rows.insert(row);
    }
  }
  int null_dim = D - rows.rank();
  rep.center_hom_rank = null_dim - K.rank();

  auto zh = center(N, Frobenius::Classical);
  rep.center_h_rank = zh.rank;
  EchelonBasis<Rat> img = K;
  for (auto& z : zh.basis) img.insert(rat(z));
  rep.image_center_rank = img.rank() - K.rank();
  rep.tensor_rank = center(m, Frobenius::Classical).rank * center(n, Frobenius::Classical).rank;
  rep.center_equals_image = rep.center_hom_rank == rep.image_center_rank;
  return rep;
}

// ---------------------------------------------------------------- bimodules of flat tangles

namespace {

// F(T) = sum over b in B^m, a in B^n of F(W(b) T a). Layout nodes: top points 0..2m-1, bottom 2m..2m+2n-1.
struct TangleBimodule {
  FlatTangle T;
  int m, n;
  std::vector<CrossinglessMatching> top, bottom;
  std::vector<int> k, offset, rep_first;  // per summand
  std::vector<std::vector<int>> reps;     // representative layout node of each circle
  int dim = 0;

  TangleBimodule(const FlatTangle& t, int mm, int nn)
      : T(t), m(mm), n(nn), top(enumerate_matchings(mm)), bottom(enumerate_matchings(nn)) {
    if (t.m != m || t.n != n) throw std::invalid_argument("tangle size mismatch");
    for (auto& b : top)
      for (auto& a : bottom) {
        auto comp = layout_components(b, a);
        int kk = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
        std::vector<int> r(static_cast<size_t>(kk), -1);
        for (int v = static_cast<int>(comp.size()) - 1; v >= 0; --v) r[static_cast<size_t>(comp[static_cast<size_t>(v)])] = v;
        k.push_back(kk);
        offset.push_back(dim);
        reps.push_back(r);
        dim += 1 << kk;
      }
  }
  int nodes() const { return 2 * m + 2 * n; }
  int node(const TangleEnd& e) const { return e.top ? e.idx - 1 : 2 * m + e.idx - 1; }
  int summand(int b, int a) const { return b * static_cast<int>(bottom.size()) + a; }

  std::vector<int> layout_components(const CrossinglessMatching& b, const CrossinglessMatching& a) const {
    int N = nodes();
    std::vector<int> parent(static_cast<size_t>(N));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]); };
    auto join = [&](int u, int v) { parent[static_cast<size_t>(find(u))] = find(v); };
    for (auto [l, r] : b.arcs()) join(l - 1, r - 1);
    for (auto [l, r] : a.arcs()) join(2 * m + l - 1, 2 * m + r - 1);
    for (auto& [x, y] : T.strands) join(node(x), node(y));
    std::vector<int> idx(static_cast<size_t>(N), -1), comp(static_cast<size_t>(N));
    int next = 0;
    for (int v = 0; v < N; ++v) {
      int r = find(v);
      if (idx[static_cast<size_t>(r)] < 0) idx[static_cast<size_t>(r)] = next++;
      comp[static_cast<size_t>(v)] = idx[static_cast<size_t>(r)];
    }
    return comp;
  }

  void add_layout(Surgery& s, int base, const CrossinglessMatching& b, const CrossinglessMatching& a,
                  std::vector<int>* top_ids, std::vector<int>* bottom_ids) const {
    for (auto [l, r] : b.arcs()) {
      int id = s.add_edge(base + l - 1, base + r - 1);
      if (top_ids) top_ids->push_back(id);
    }
    for (auto [l, r] : a.arcs()) {
      int id = s.add_edge(base + 2 * m + l - 1, base + 2 * m + r - 1);
      if (bottom_ids) bottom_ids->push_back(id);
    }
    for (auto& [x, y] : T.strands) s.add_edge(base + node(x), base + node(y));
  }

  // x in _c(H^m)_b times basis element (summand (b, a), labels) of F(T).
  std::map<int, Rat> left(const ArcRing& Hm, int xi, int b, int a, std::uint32_t labels) const {
    BasisKey x = Hm.key(xi);
    std::map<int, Rat> out;
    if (x.bottom != b) return out;
    int w = 2 * m;
    Surgery s(w + nodes(), Frobenius::Classical);
    const auto& c = Hm.matchings()[static_cast<size_t>(x.top)];
    arc_edges(s, c, 0);
    auto xb = arc_edges(s, top[static_cast<size_t>(b)], 0);
    std::vector<int> yb;
    add_layout(s, w, top[static_cast<size_t>(b)], bottom[static_cast<size_t>(a)], &yb, nullptr);
    std::vector<std::pair<int, bool>> marks;
    auto rx = circle_reps(Hm.config(x.top, x.bottom));
    for (size_t q = 0; q < rx.size(); ++q) marks.emplace_back(rx[q] - 1, (x.labels >> q) & 1);
    const auto& ry = reps[static_cast<size_t>(summand(b, a))];
    for (size_t q = 0; q < ry.size(); ++q) marks.emplace_back(w + ry[q], (labels >> q) & 1);
    s.begin(marks, PolyHT(1L));
    for (size_t e = 0; e < xb.size(); ++e) s.saddle(xb[e], yb[e]);
    int tgt = summand(x.top, a);
    std::vector<int> probes;
    for (int r : reps[static_cast<size_t>(tgt)]) probes.push_back(w + r);
    for (auto& [lab, co] : s.read(probes)) out[offset[static_cast<size_t>(tgt)] + static_cast<int>(lab)] += Rat(co.constant());
    return out;
  }

  // Basis element (summand (b, a), labels) of F(T) times z in _a(H^n)_d.
  std::map<int, Rat> right(const ArcRing& Hn, int zi, int b, int a, std::uint32_t labels) const {
    BasisKey z = Hn.key(zi);
    std::map<int, Rat> out;
    if (z.top != a) return out;
    int base = nodes();
    Surgery s(base + 2 * n, Frobenius::Classical);
    std::vector<int> ya;
    add_layout(s, 0, top[static_cast<size_t>(b)], bottom[static_cast<size_t>(a)], nullptr, &ya);
    auto za = arc_edges(s, bottom[static_cast<size_t>(a)], base);
    arc_edges(s, Hn.matchings()[static_cast<size_t>(z.bottom)], base);
    std::vector<std::pair<int, bool>> marks;
    const auto& ry = reps[static_cast<size_t>(summand(b, a))];
    for (size_t q = 0; q < ry.size(); ++q) marks.emplace_back(ry[q], (labels >> q) & 1);
    auto rz = circle_reps(Hn.config(z.top, z.bottom));
    for (size_t q = 0; q < rz.size(); ++q) marks.emplace_back(base + rz[q] - 1, (z.labels >> q) & 1);
    s.begin(marks, PolyHT(1L));
    for (size_t e = 0; e < ya.size(); ++e) s.saddle(ya[e], za[e]);
    int tgt = summand(b, z.bottom);
    std::vector<int> probes;
    for (int r : reps[static_cast<size_t>(tgt)]) probes.push_back(r);
    for (auto& [lab, co] : s.read(probes)) out[offset[static_cast<size_t>(tgt)] + static_cast<int>(lab)] += Rat(co.constant());
    return out;
  }

  std::tuple<int, int, std::uint32_t> locate(int idx) const {
    auto it = std::upper_bound(offset.begin(), offset.end(), idx);
    int s = static_cast<int>(it - offset.begin()) - 1;
    int nb = static_cast<int>(bottom.size());
    return {s / nb, s % nb, static_cast<std::uint32_t>(idx - offset[static_cast<size_t>(s)])};
  }
};

}  // namespace

int bimodule_hom_dim(const FlatTangle& t1, const FlatTangle& t2, int m, int n) {
  TangleBimodule F1(t1, m, n), F2(t2, m, n);
  const auto& Hm = ArcRing::get(m, Frobenius::Classical);
  const auto& Hn = ArcRing::get(n, Frobenius::Classical);
  int D1 = F1.dim, D2 = F2.dim, U = D1 * D2;
  auto var = [&](int p, int q) { return p * D1 + q; };
  EchelonBasis<Rat> rows(U);

  // f(x y) = x f(y) and f(y z) = f(y) z on basis elements.
  auto impose = [&](auto act1, auto act2, int count) {
    for (int g = 0; g < count; ++g)
      for (int q = 0; q < D1; ++q) {
        auto [b, a, lab] = F1.locate(q);
        auto lhs = act1(g, b, a, lab);
        std::vector<std::map<int, Rat>> img2(static_cast<size_t>(D2));
        for (int q2 = 0; q2 < D2; ++q2) {
          auto [b2, a2, lab2] = F2.locate(q2);
          img2[static_cast<size_t>(q2)] = act2(g, b2, a2, lab2);
        }
        for (int p = 0; p < D2; ++p) {
          std::vector<Rat> row(static_cast<size_t>(U), Rat(0));
          for (auto& [q1, c] : lhs) row[static_cast<size_t>(var(p, q1))] += c;
          for (int q2 = 0; q2 < D2; ++q2) {
            auto it = img2[static_cast<size_t>(q2)].find(p);
            if (it != img2[static_cast<size_t>(q2)].end()) row[static_cast<size_t>(var(q2, q))] -= it->second;
          }
          rows.insert(row);
        }
      }
  };
  impose([&](int g, int b, int a, std::uint32_t l) { return F1.left(Hm, g, b, a, l); },
         [&](int g, int b, int a, std::uint32_t l) { return F2.left(Hm, g, b, a, l); }, Hm.dim());
  impose([&](int g, int b, int a, std::uint32_t l) { return F1.right(Hn, g, b, a, l); },
         [&](int g, int b, int a, std::uint32_t l) { return F2.right(Hn, g, b, a, l); }, Hn.dim());
  return U - rows.rank();
}

}  // namespace skeinlab
