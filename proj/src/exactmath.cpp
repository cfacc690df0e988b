#include "skeinlab/exactmath.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace skeinlab {

namespace {

std::string exponent_str(int v_exp) {
  if (v_exp % 2 == 0) return std::to_string(v_exp / 2);
  return std::to_string(v_exp) + "/2";
}

template <class C>
std::string coeff_str(const C& c) {
  return c.get_str();
}

template <class C>
std::string laurent_str(const Laurent<C>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [e, c0] : p.terms) {
    C c = c0;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (e == 0) {
      out += coeff_str(c);
      continue;
    }
    if (c != 1) out += coeff_str(c) + "*";
    out += "q";
    if (e != 2) out += "^" + exponent_str(e);
  }
  return out;
}

std::string strip(const std::string& s) {
  std::string r;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) r += ch;
  return r;
}

// Splits "a+b-c" into signed terms.
std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    bool after_caret = i > 0 && s[i - 1] == '^';
    if ((ch == '+' || ch == '-') && !cur.empty() && !after_caret) {
      out.push_back(cur);
      cur.clear();
    }
    cur += ch;
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

using Poly = std::vector<Rat>;  // ascending coefficients

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly to_poly(const LaurentQ& p) {
  Poly r;
  if (p.is_zero()) return r;
  if (p.min_exp() < 0) throw std::logic_error("negative exponent in polynomial");
  r.assign(p.max_exp() + 1, Rat(0));
  for (auto& [e, c] : p.terms) r[e] = c;
  return r;
}

LaurentQ from_poly(const Poly& p, int shift) {
  LaurentQ r;
  for (size_t i = 0; i < p.size(); ++i)
    if (sgn(p[i]) != 0) r.terms[static_cast<int>(i) + shift] = p[i];
  return r;
}

void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rat(0));
  Rat lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    size_t d = r.size() - b.size();
    Rat f = r.back() / lead;
    q[d] = f;
    for (size_t i = 0; i < b.size(); ++i) r[d + i] -= f * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Poly poly_exact_div(const Poly& a, const Poly& b) {
  Poly q, r;
  poly_divmod(a, b, q, r);
  if (!r.empty()) throw std::logic_error("inexact polynomial division");
  return q;
}

}  // namespace

template <>
std::string Laurent<Int>::str() const {
  return laurent_str(*this);
}
template <>
std::string Laurent<Rat>::str() const {
  return laurent_str(*this);
}

LaurentQ to_rational(const LaurentHalfQ& p) {
  LaurentQ r;
  for (auto& [e, c] : p.terms) r.terms[e] = Rat(c);
  return r;
}

std::optional<LaurentHalfQ> to_integral(const LaurentQ& p) {
  LaurentHalfQ r;
  for (auto& [e, c] : p.terms) {
    if (c.get_den() != 1) return std::nullopt;
    r.terms[e] = c.get_num();
  }
  return r;
}

LaurentHalfQ parse_laurent(const std::string& s0) {
  std::string s = strip(s0);
  if (s.empty()) throw std::invalid_argument("empty coefficient");
  LaurentHalfQ out;
  for (std::string term : split_terms(s)) {
    int sign = 1;
    if (term[0] == '+' || term[0] == '-') {
      if (term[0] == '-') sign = -1;
      term = term.substr(1);
    }
    auto qpos = term.find('q');
    Int c = 1;
    int e = 0;
    if (qpos == std::string::npos) {
      c = Int(term);
    } else {
      std::string cs = term.substr(0, qpos);
      if (!cs.empty()) {
        if (cs.back() != '*') throw std::invalid_argument("bad term: " + term);
        cs.pop_back();
        c = Int(cs);
      }
      std::string rest = term.substr(qpos + 1);
      if (rest.empty()) {
        e = 2;
      } else {
        if (rest[0] != '^') throw std::invalid_argument("bad term: " + term);
        rest = rest.substr(1);
        if (!rest.empty() && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
        auto slash = rest.find('/');
        if (slash == std::string::npos) {
          e = 2 * std::stoi(rest);
        } else {
          if (rest.substr(slash + 1) != "2") throw std::invalid_argument("only half-integer exponents: " + term);
          e = std::stoi(rest.substr(0, slash));
        }
      }
    }
    out.add_term(e, sign * c);
  }
  return out;
}

std::string GaussRat::str() const {
  if (sgn(im) == 0) return re.get_str();
  std::string r = sgn(re) != 0 ? re.get_str() + (sgn(im) > 0 ? " + " : " - ") : (sgn(im) < 0 ? "-" : "");
  Rat a = abs(im);
  return r + (a == 1 ? "" : a.get_str() + "*") + "i";
}

GaussRat specialize_at_minus_one(const LaurentHalfQ& p) {
  GaussRat acc;
  for (auto& [e, c] : p.terms) {
    int m = ((e % 4) + 4) % 4;  // i^e
    Rat v(c);
    if (m == 0) acc.re += v;
    if (m == 1) acc.im += v;
    if (m == 2) acc.re -= v;
    if (m == 3) acc.im -= v;
  }
  return acc;
}

Int specialize_at_one(const LaurentHalfQ& p) {
  Int acc = 0;
  for (auto& [e, c] : p.terms) acc += c;
  return acc;
}

template <class C>
static Rat specialize_q_impl(const Laurent<C>& p, const Rat& qv) {
  if (!p.even_exponents()) throw std::domain_error("half-integer power of q in specialization");
  Rat acc = 0;
  for (auto& [e, c] : p.terms) {
    int k = e / 2;
    if (k < 0 && sgn(qv) == 0) throw std::domain_error("q=0 with negative exponent");
    Rat base = k >= 0 ? qv : Rat(1) / qv;
    Rat pw = 1;
    for (int i = 0; i < std::abs(k); ++i) pw *= base;
    acc += Rat(c) * pw;
  }
  return acc;
}

Rat specialize_q(const LaurentHalfQ& p, const Rat& qv) { return specialize_q_impl(p, qv); }
Rat specialize_q(const LaurentQ& p, const Rat& qv) { return specialize_q_impl(p, qv); }

// PolyHT

void PolyHT::add_term(std::pair<int, int> e, const Int& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

PolyHT& PolyHT::operator+=(const PolyHT& o) {
  for (auto& [e, c] : o.terms) add_term(e, c);
  return *this;
}

PolyHT& PolyHT::operator-=(const PolyHT& o) {
  for (auto& [e, c] : o.terms) add_term(e, -c);
  return *this;
}

PolyHT PolyHT::operator-() const {
  PolyHT r = *this;
  for (auto& [e, c] : r.terms) c = -c;
  return r;
}

PolyHT operator*(const PolyHT& a, const PolyHT& b) {
  PolyHT r;
  for (auto& [e1, c1] : a.terms)
    for (auto& [e2, c2] : b.terms) r.add_term({e1.first + e2.first, e1.second + e2.second}, c1 * c2);
  return r;
}

bool PolyHT::homogeneous() const {
  if (terms.empty()) return true;
  int d = degree(terms.begin()->first);
  for (auto& [e, c] : terms)
    if (degree(e) != d) return false;
  return true;
}

Rat PolyHT::eval(const Rat& hv, const Rat& tv) const {
  Rat acc = 0;
  for (auto& [e, c] : terms) {
    Rat m = c;
    for (int i = 0; i < e.first; ++i) m *= hv;
    for (int i = 0; i < e.second; ++i) m *= tv;
    acc += m;
  }
  return acc;
}

Int PolyHT::constant() const {
  auto it = terms.find({0, 0});
  return it == terms.end() ? Int(0) : it->second;
}

std::string PolyHT::str() const {
  if (terms.empty()) return "0";
  std::vector<std::pair<std::pair<int, int>, Int>> v(terms.begin(), terms.end());
  std::sort(v.begin(), v.end(), [](auto& x, auto& y) {
    int dx = degree(x.first), dy = degree(y.first);
    if (dx != dy) return dx > dy;
    return x.first.first > y.first.first;
  });
  std::string out;
  bool first = true;
  for (auto& [e, c0] : v) {
    Int c = c0;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string mono;
    auto var = [&](const char* name, int d) {
      if (d == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (d > 1) mono += "^" + std::to_string(d);
    };
    var("h", e.first);
    var("t", e.second);
    if (mono.empty())
      out += c.get_str();
    else if (c == 1)
      out += mono;
    else
      out += c.get_str() + "*" + mono;
  }
  return out;
}

PolyHT parse_polyht(const std::string& s0) {
  std::string s = strip(s0);
  if (s.empty()) throw std::invalid_argument("empty coefficient");
  PolyHT out;
  for (std::string term : split_terms(s)) {
    int sign = 1;
    if (term[0] == '+' || term[0] == '-') {
      if (term[0] == '-') sign = -1;
      term = term.substr(1);
    }
    Int c = 1;
    int dh = 0, dt = 0;
    std::stringstream ss(term);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
      if (factor.empty()) throw std::invalid_argument("bad term: " + term);
      if (factor[0] == 'h' || factor[0] == 't') {
        int d = 1;
        if (factor.size() > 1) {
          if (factor[1] != '^') throw std::invalid_argument("bad factor: " + factor);
          d = std::stoi(factor.substr(2));
        }
        (factor[0] == 'h' ? dh : dt) += d;
      } else {
        c *= Int(factor);
      }
    }
    out.add_term({dh, dt}, sign * c);
  }
  return out;
}

// RatFunc

RatFunc::RatFunc(const LaurentQ& n, const LaurentQ& d) : num_(n), den_(d) {
  if (d.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentQ(1L);
    return;
  }
  int s = den_.min_exp();
  num_ = num_.shift(-s);
  den_ = den_.shift(-s);
  int a = num_.min_exp();
  Poly np = to_poly(num_.shift(-a));
  Poly dp = to_poly(den_);
  Poly g = poly_gcd(np, dp);
  if (g.size() > 1) {
    np = poly_exact_div(np, g);
    dp = poly_exact_div(dp, g);
  }
  Rat c = dp[0];
  for (auto& x : np) x /= c;
  for (auto& x : dp) x /= c;
  num_ = from_poly(np, a);
  den_ = from_poly(dp, 0);
}

bool RatFunc::is_laurent() const { return den_.terms.size() == 1; }

LaurentQ RatFunc::as_laurent() const {
  if (!is_laurent()) throw std::domain_error("not a Laurent polynomial");
  return num_;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.is_laurent() && b.is_laurent()) {
    RatFunc r;
    r.num_ = a.num_ * b.num_;
    return r;
  }
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("division by zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

std::optional<Rat> RatFunc::eval_v(const Rat& vv) const {
  Rat inv = Rat(1) / vv;
  Rat d = den_.eval<Rat>(vv, inv);
  if (sgn(d) == 0) return std::nullopt;
  return num_.eval<Rat>(vv, inv) / d;
}

std::optional<GaussRat> RatFunc::eval_v_i() const {
  GaussRat i(Rat(0), Rat(1)), mi(Rat(0), Rat(-1));
  GaussRat d = den_.eval<GaussRat>(i, mi);
  if (skeinlab::is_zero(d)) return std::nullopt;
  return num_.eval<GaussRat>(i, mi) / d;
}

std::string RatFunc::str() const {
  if (is_laurent() && den_.min_exp() == 0 && den_.coeff(0) == 1) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// Quantum numbers

LaurentHalfQ quantum_integer(int n) {
  if (n < 0) throw std::invalid_argument("quantum_integer: negative argument");
  LaurentHalfQ r;
  for (int j = n - 1; j >= 1 - n; j -= 2) r.add_term(2 * j, Int(1));
  return r;
}

LaurentHalfQ quantum_minus_integer(int n) {
  if (n < 0) throw std::invalid_argument("quantum_minus_integer: negative argument");
  LaurentHalfQ r;
  for (int j = 0; j < n; ++j) r.add_term(-4 * j, Int(1));
  return r;
}

LaurentHalfQ quantum_minus_factorial(int n) {
  LaurentHalfQ r(1L);
  for (int i = 2; i <= n; ++i) r *= quantum_minus_integer(i);
  return r;
}

LaurentHalfQ quantum_binomial(int n, int k) {
  if (k < 0 || k > n) return LaurentHalfQ();
  std::vector<std::vector<LaurentHalfQ>> t(n + 1, std::vector<LaurentHalfQ>(n + 1));
  for (int m = 0; m <= n; ++m) {
    t[m][0] = LaurentHalfQ(1L);
    t[m][m] = LaurentHalfQ(1L);
    for (int j = 1; j < m; ++j)
      t[m][j] = LaurentHalfQ::q(j) * t[m - 1][j] + LaurentHalfQ::q(-(m - j)) * t[m - 1][j - 1];
  }
  return t[n][k];
}

LaurentHalfQ circle_value() { return -LaurentHalfQ::q(1) - LaurentHalfQ::q(-1); }

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Smith normal form

int SmithForm::rank() const {
  int r = 0;
  for (auto& d : invariants)
    if (sgn(d) != 0) ++r;
  return r;
}

std::vector<Int> SmithForm::torsion() const {
  std::vector<Int> t;
  for (auto& d : invariants)
    if (d > 1) t.push_back(d);
  return t;
}

SmithForm smith_normal_form(const Matrix<Int>& m, bool with_transforms) {
  SmithForm sf;
  sf.rows = m.rows;
  sf.cols = m.cols;
  Matrix<Int> d = m;
  Matrix<Int> u, v;
  if (with_transforms) {
    u = Matrix<Int>::identity(m.rows);
    v = Matrix<Int>::identity(m.cols);
  }
  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < d.cols; ++c) std::swap(d(i, c), d(j, c));
    if (with_transforms)
      for (int c = 0; c < u.cols; ++c) std::swap(u(i, c), u(j, c));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < d.rows; ++r) std::swap(d(r, i), d(r, j));
    if (with_transforms)
      for (int r = 0; r < v.rows; ++r) std::swap(v(r, i), v(r, j));
  };
  // row_i += f * row_j
  auto add_row = [&](int i, int j, const Int& f) {
    for (int c = 0; c < d.cols; ++c)
      if (sgn(d(j, c)) != 0) d(i, c) += f * d(j, c);
    if (with_transforms)
      for (int c = 0; c < u.cols; ++c)
        if (sgn(u(j, c)) != 0) u(i, c) += f * u(j, c);
  };
  auto add_col = [&](int i, int j, const Int& f) {
    for (int r = 0; r < d.rows; ++r)
      if (sgn(d(r, j)) != 0) d(r, i) += f * d(r, j);
    if (with_transforms)
      for (int r = 0; r < v.rows; ++r)
        if (sgn(v(r, j)) != 0) v(r, i) += f * v(r, j);
  };

  int lim = std::min(d.rows, d.cols);
  for (int t = 0; t < lim; ++t) {
    for (;;) {
      int bi = -1, bj = -1;
      for (int i = t; i < d.rows; ++i)
        for (int j = t; j < d.cols; ++j)
          if (sgn(d(i, j)) != 0 && (bi < 0 || abs(d(i, j)) < abs(d(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) goto done;
      swap_rows(t, bi);
      swap_cols(t, bj);
      bool clean = true;
      for (int i = t + 1; i < d.rows; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (sgn(d(i, t)) != 0) clean = false;
      }
      for (int j = t + 1; j < d.cols; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (sgn(d(t, j)) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < d.rows && bad < 0; ++i)
        for (int j = t + 1; j < d.cols; ++j)
          if (sgn(d(i, j)) != 0 && !mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(t, bad, Int(1));
    }
    if (sgn(d(t, t)) < 0) {
      for (int c = 0; c < d.cols; ++c) d(t, c) = -d(t, c);
      if (with_transforms)
        for (int c = 0; c < u.cols; ++c) u(t, c) = -u(t, c);
    }
  }
done:
  sf.invariants.assign(lim, Int(0));
  for (int t = 0; t < lim; ++t) sf.invariants[t] = d(t, t);
  sf.D = std::move(d);
  sf.U = std::move(u);
  sf.V = std::move(v);
  return sf;
}

// Lattice

void Lattice::insert(std::vector<Int> v) {
  if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("vector length mismatch");
  int j = 0;
  for (;;) {
    while (j < dim_ && sgn(v[j]) == 0) ++j;
    if (j == dim_) return;
    auto it = rows_.find(j);
    if (it == rows_.end()) {
      if (sgn(v[j]) < 0)
        for (auto& x : v) x = -x;
      rows_.emplace(j, std::move(v));
      return;
    }
    auto& r = it->second;
    if (mpz_divisible_p(v[j].get_mpz_t(), r[j].get_mpz_t())) {
      Int f = v[j] / r[j];
      for (int c = j; c < dim_; ++c)
        if (sgn(r[c]) != 0) v[c] -= f * r[c];
      continue;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), r[j].get_mpz_t(), v[j].get_mpz_t());
    Int a = v[j] / g, b = r[j] / g;
    std::vector<Int> nr(dim_), nv(dim_);
    for (int c = j; c < dim_; ++c) {
      nr[c] = s * r[c] + t * v[c];
      nv[c] = a * r[c] - b * v[c];
    }
    r = std::move(nr);
    v = std::move(nv);
  }
}

bool Lattice::contains(std::vector<Int> v) const {
  for (int j = 0; j < dim_; ++j) {
    if (sgn(v[j]) == 0) continue;
    auto it = rows_.find(j);
    if (it == rows_.end()) return false;
    auto& r = it->second;
    if (!mpz_divisible_p(v[j].get_mpz_t(), r[j].get_mpz_t())) return false;
    Int f = v[j] / r[j];
    for (int c = j; c < dim_; ++c)
      if (sgn(r[c]) != 0) v[c] -= f * r[c];
  }
  return true;
}

Matrix<Int> Lattice::basis_matrix() const {
  Matrix<Int> m(rank(), dim_);
  int i = 0;
  for (auto& [p, r] : rows_) {
    for (int c = 0; c < dim_; ++c) m(i, c) = r[c];
    ++i;
  }
  return m;
}

std::vector<Int> Lattice::cokernel_torsion() const {
  bool unit = true;
  for (auto& [p, r] : rows_)
    if (r[p] != 1) unit = false;
  if (unit) return {};
  return smith_normal_form(basis_matrix(), false).torsion();
}

}  // namespace skeinlab
