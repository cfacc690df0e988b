#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skeinlab {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_zero(const Int& x) { return sgn(x) == 0; }
inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

// Laurent polynomial in v, where v^2 = q.
template <class C>
class Laurent {
 public:
  std::map<int, C> terms;

  Laurent() = default;
  Laurent(long c) {
    if (c != 0) terms[0] = C(c);
  }
  Laurent(const C& c) {
    if (!skeinlab::is_zero(c)) terms[0] = c;
  }

  static Laurent mono(int e, const C& c = C(1)) {
    Laurent r;
    if (!skeinlab::is_zero(c)) r.terms[e] = c;
    return r;
  }
  static Laurent q(int e) { return mono(2 * e); }

  bool is_zero() const { return terms.empty(); }
  int min_exp() const { return terms.begin()->first; }
  int max_exp() const { return terms.rbegin()->first; }
  C coeff(int e) const {
    auto it = terms.find(e);
    return it == terms.end() ? C(0) : it->second;
  }
  bool even_exponents() const {
    for (auto& [e, c] : terms)
      if (e % 2 != 0) return false;
    return true;
  }
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms.begin()->first == 0); }

  Laurent& operator+=(const Laurent& o) {
    for (auto& [e, c] : o.terms) add_term(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (auto& [e, c] : o.terms) add_term(e, -c);
    return *this;
  }
  void add_term(int e, const C& c) {
    if (skeinlab::is_zero(c)) return;
    auto [it, fresh] = terms.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (skeinlab::is_zero(it->second)) terms.erase(it);
    }
  }
  Laurent operator-() const {
    Laurent r = *this;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (auto& [e1, c1] : a.terms)
      for (auto& [e2, c2] : b.terms) r.add_term(e1 + e2, C(c1 * c2));
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms == b.terms; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
  friend bool operator<(const Laurent& a, const Laurent& b) { return a.terms < b.terms; }

  Laurent shift(int s) const {
    Laurent r;
    for (auto& [e, c] : terms) r.terms[e + s] = c;
    return r;
  }
  // v -> v^-1
  Laurent bar() const {
    Laurent r;
    for (auto& [e, c] : terms) r.terms[-e] = c;
    return r;
  }
  Laurent pow(unsigned k) const {
    Laurent r(1L), b = *this;
    while (k) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  }

  // Ring homomorphism sending v to `v`; `vinv` must be its inverse.
  template <class R>
  R eval(const R& v, const R& vinv) const {
    R acc(0);
    for (auto& [e, c] : terms) {
      R p(1);
      const R& b = e >= 0 ? v : vinv;
      for (int i = 0; i < (e >= 0 ? e : -e); ++i) p = p * b;
      acc = acc + R(c) * p;
    }
    return acc;
  }

  std::string str() const;
};

template <class C>
bool is_zero(const Laurent<C>& p) {
  return p.is_zero();
}

using LaurentHalfQ = Laurent<Int>;
using LaurentQ = Laurent<Rat>;

LaurentQ to_rational(const LaurentHalfQ& p);
std::optional<LaurentHalfQ> to_integral(const LaurentQ& p);
LaurentHalfQ parse_laurent(const std::string& s);

// Gaussian rationals, used for v = i when q = -1.
struct GaussRat {
  Rat re, im;
  GaussRat() = default;
  GaussRat(long x) : re(x) {}
  GaussRat(const Int& x) : re(x) {}
  GaussRat(const Rat& x) : re(x) {}
  GaussRat(Rat a, Rat b) : re(std::move(a)), im(std::move(b)) {}
  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    Rat n = b.re * b.re + b.im * b.im;
    if (sgn(n) == 0) throw std::domain_error("division by zero");
    return a * GaussRat(b.re / n, -b.im / n);
  }
  GaussRat operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
  bool is_real() const { return sgn(im) == 0; }
  std::string str() const;
};
inline bool is_zero(const GaussRat& x) { return sgn(x.re) == 0 && sgn(x.im) == 0; }

GaussRat specialize_at_minus_one(const LaurentHalfQ& p);  // v = i
Int specialize_at_one(const LaurentHalfQ& p);              // v = 1
// q = value; requires even exponents unless value is a perfect square handled by caller.
Rat specialize_q(const LaurentHalfQ& p, const Rat& qv);
Rat specialize_q(const LaurentQ& p, const Rat& qv);

// Polynomials in h, t.
class PolyHT {
 public:
  std::map<std::pair<int, int>, Int> terms;

  PolyHT() = default;
  PolyHT(long c) {
    if (c != 0) terms[{0, 0}] = c;
  }
  PolyHT(const Int& c) {
    if (sgn(c) != 0) terms[{0, 0}] = c;
  }
  static PolyHT h() { return mono(1, 0); }
  static PolyHT t() { return mono(0, 1); }
  static PolyHT mono(int dh, int dt, const Int& c = 1) {
    PolyHT r;
    if (sgn(c) != 0) r.terms[{dh, dt}] = c;
    return r;
  }

  bool is_zero() const { return terms.empty(); }
  void add_term(std::pair<int, int> e, const Int& c);
  PolyHT& operator+=(const PolyHT& o);
  PolyHT& operator-=(const PolyHT& o);
  PolyHT operator-() const;
  friend PolyHT operator+(PolyHT a, const PolyHT& b) { return a += b; }
  friend PolyHT operator-(PolyHT a, const PolyHT& b) { return a -= b; }
  friend PolyHT operator*(const PolyHT& a, const PolyHT& b);
  PolyHT& operator*=(const PolyHT& o) { return *this = *this * o; }
  friend bool operator==(const PolyHT& a, const PolyHT& b) { return a.terms == b.terms; }
  friend bool operator!=(const PolyHT& a, const PolyHT& b) { return !(a == b); }
  friend bool operator<(const PolyHT& a, const PolyHT& b) { return a.terms < b.terms; }

  static int degree(std::pair<int, int> e) { return 2 * e.first + 4 * e.second; }
  bool homogeneous() const;
  Rat eval(const Rat& hv, const Rat& tv) const;
  Int constant() const;
  std::string str() const;
};
inline bool is_zero(const PolyHT& p) { return p.is_zero(); }

PolyHT parse_polyht(const std::string& s);

// Reduced quotient of v-Laurent polynomials over Q.
class RatFunc {
 public:
  RatFunc() : den_(1L) {}
  RatFunc(long c) : num_(LaurentQ(Rat(c))), den_(1L) {}
  RatFunc(const Rat& c) : num_(LaurentQ(c)), den_(1L) {}
  RatFunc(const LaurentQ& n) : num_(n), den_(1L) {}
  RatFunc(const LaurentHalfQ& n) : num_(to_rational(n)), den_(1L) {}
  RatFunc(const LaurentQ& n, const LaurentQ& d);

  const LaurentQ& num() const { return num_; }
  const LaurentQ& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const;
  LaurentQ as_laurent() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  // Value at v = vv (vv nonzero); nullopt on a pole.
  std::optional<Rat> eval_v(const Rat& vv) const;
  std::optional<GaussRat> eval_v_i() const;
  std::string str() const;

 private:
  LaurentQ num_, den_;
  void normalize();
};
inline bool is_zero(const RatFunc& x) { return x.is_zero(); }

// Quantum numbers.
LaurentHalfQ quantum_integer(int n);                  // [n] = (q^n - q^-n)/(q - q^-1)
LaurentHalfQ quantum_minus_integer(int n);            // [n]_- = (q^-2n - 1)/(q^-2 - 1)
LaurentHalfQ quantum_minus_factorial(int n);
LaurentHalfQ quantum_binomial(int n, int k);          // balanced form
LaurentHalfQ circle_value();                          // -q - q^-1
Int binomial(int n, int k);

// Dense matrices.
template <class T>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<T> a;
  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  std::vector<T> row(int i) const { return {a.begin() + static_cast<long>(i) * cols, a.begin() + static_cast<long>(i + 1) * cols}; }
  Matrix transpose() const {
    Matrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix dimension mismatch");
    Matrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        if (is_zero(x(i, k))) continue;
        for (int j = 0; j < y.cols; ++j) r(i, j) = r(i, j) + x(i, k) * y(k, j);
      }
    return r;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    Matrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    Matrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
    return r;
  }
  Matrix scaled(const T& s) const {
    Matrix r = *this;
    for (auto& x : r.a) x = x * s;
    return r;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
  bool is_zero_matrix() const {
    for (auto& x : a)
      if (!is_zero(x)) return false;
    return true;
  }
};

// Kronecker product.
template <class T>
Matrix<T> kron(const Matrix<T>& x, const Matrix<T>& y) {
  Matrix<T> r(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      if (is_zero(x(i, j))) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l) r(i * y.rows + k, j * y.cols + l) = x(i, j) * y(k, l);
    }
  return r;
}

// Incrementally maintained reduced echelon basis over a field.
template <class T>
class EchelonBasis {
 public:
  explicit EchelonBasis(int dim) : dim_(dim) {}
  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  std::vector<T> reduce(std::vector<T> v) const {
    check(v);
    for (auto& [p, r] : rows_) {
      if (is_zero(v[p])) continue;
      T f = v[p];
      for (int j = p; j < dim_; ++j)
        if (!is_zero(r[j])) v[j] = v[j] - f * r[j];
    }
    return v;
  }
  bool contains(const std::vector<T>& v) const {
    for (auto& x : reduce(v))
      if (!is_zero(x)) return false;
    return true;
  }
  bool insert(const std::vector<T>& v0) {
    std::vector<T> v = reduce(v0);
    int p = -1;
    for (int j = 0; j < dim_; ++j)
      if (!is_zero(v[j])) {
        p = j;
        break;
      }
    if (p < 0) return false;
    T inv = T(1) / v[p];
    for (int j = p; j < dim_; ++j)
      if (!is_zero(v[j])) v[j] = v[j] * inv;
    for (auto& [q, r] : rows_) {
      if (is_zero(r[p])) continue;
      T f = r[p];
      for (int j = p; j < dim_; ++j)
        if (!is_zero(v[j])) r[j] = r[j] - f * v[j];
    }
    rows_.emplace(p, std::move(v));
    return true;
  }
  std::vector<std::vector<T>> basis() const {
    std::vector<std::vector<T>> b;
    for (auto& [p, r] : rows_) b.push_back(r);
    return b;
  }
  std::vector<int> pivots() const {
    std::vector<int> ps;
    for (auto& [p, r] : rows_) ps.push_back(p);
    return ps;
  }

 private:
  int dim_;
  std::map<int, std::vector<T>> rows_;
  void check(const std::vector<T>& v) const {
    if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("vector length mismatch");
  }
};

template <class T>
int rank_of(const std::vector<std::vector<T>>& vs, int dim) {
  EchelonBasis<T> b(dim);
  for (auto& v : vs) b.insert(v);
  return b.rank();
}

template <class T>
int rank_of(const Matrix<T>& m) {
  EchelonBasis<T> b(m.cols);
  for (int i = 0; i < m.rows; ++i) b.insert(m.row(i));
  return b.rank();
}

// Null space of M (vectors x with M x = 0).
template <class T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& m) {
  Matrix<T> r = m;
  std::vector<int> piv;
  int row = 0;
  for (int c = 0; c < r.cols && row < r.rows; ++c) {
    int p = -1;
    for (int i = row; i < r.rows; ++i)
      if (!is_zero(r(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    for (int j = 0; j < r.cols; ++j) std::swap(r(row, j), r(p, j));
    T inv = T(1) / r(row, c);
    for (int j = c; j < r.cols; ++j) r(row, j) = r(row, j) * inv;
    for (int i = 0; i < r.rows; ++i) {
      if (i == row || is_zero(r(i, c))) continue;
      T f = r(i, c);
      for (int j = c; j < r.cols; ++j) r(i, j) = r(i, j) - f * r(row, j);
    }
    piv.push_back(c);
    ++row;
  }
  std::vector<bool> is_piv(r.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<T>> out;
  for (int f = 0; f < r.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<T> x(r.cols, T(0));
    x[f] = T(1);
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = -r(static_cast<int>(i), f);
    out.push_back(std::move(x));
  }
  return out;
}

template <class T>
struct RankMembership {
  int rank = 0;
  bool is_member = false;
  std::vector<T> coordinates;
};

template <class T>
RankMembership<T> rank_and_membership(const std::vector<std::vector<T>>& vs, const std::vector<T>& target) {
  int dim = static_cast<int>(target.size());
  for (auto& v : vs)
    if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("vector length mismatch");
  RankMembership<T> res;
  res.rank = rank_of(vs, dim);
  // Columns are the vectors followed by -target.
  int m = static_cast<int>(vs.size());
  Matrix<T> a(dim, m + 1);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < dim; ++i) a(i, j) = vs[j][i];
  for (int i = 0; i < dim; ++i) a(i, m) = -target[i];
  for (auto& x : nullspace(a)) {
    if (is_zero(x[m])) continue;
    T s = T(1) / x[m];
    res.is_member = true;
    res.coordinates.assign(m, T(0));
    for (int j = 0; j < m; ++j) res.coordinates[j] = x[j] * s;
    break;
  }
  return res;
}

template <class T>
std::vector<std::vector<T>> span_intersection(const std::vector<std::vector<T>>& a,
                                              const std::vector<std::vector<T>>& b, int dim) {
  int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  Matrix<T> m(dim, na + nb);
  for (int j = 0; j < na; ++j)
    for (int i = 0; i < dim; ++i) m(i, j) = a[j][i];
  for (int j = 0; j < nb; ++j)
    for (int i = 0; i < dim; ++i) m(i, na + j) = -b[j][i];
  EchelonBasis<T> out(dim);
  for (auto& x : nullspace(m)) {
    std::vector<T> v(dim, T(0));
    for (int j = 0; j < na; ++j)
      if (!is_zero(x[j]))
        for (int i = 0; i < dim; ++i) v[i] = v[i] + x[j] * a[j][i];
    out.insert(v);
  }
  return out.basis();
}

template <class T>
T determinant(Matrix<T> m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
  T det(1);
  for (int c = 0; c < m.cols; ++c) {
    int p = -1;
    for (int i = c; i < m.rows; ++i)
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p < 0) return T(0);
    if (p != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m(c, j), m(p, j));
      det = -det;
    }
    det = det * m(c, c);
    T inv = T(1) / m(c, c);
    for (int i = c + 1; i < m.rows; ++i) {
      if (is_zero(m(i, c))) continue;
      T f = m(i, c) * inv;
      for (int j = c; j < m.cols; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  int n = m.rows;
  Matrix<T> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(aug(i, c))) {
        p = i;
        break;
      }
    if (p < 0) return std::nullopt;
    for (int j = 0; j < 2 * n; ++j) std::swap(aug(c, j), aug(p, j));
    T inv = T(1) / aug(c, c);
    for (int j = 0; j < 2 * n; ++j) aug(c, j) = aug(c, j) * inv;
    for (int i = 0; i < n; ++i) {
      if (i == c || is_zero(aug(i, c))) continue;
      T f = aug(i, c);
      for (int j = 0; j < 2 * n; ++j) aug(i, j) = aug(i, j) - f * aug(c, j);
    }
  }
  Matrix<T> r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

// Smith normal form over Z: U * M * V = D.
struct SmithForm {
  std::vector<Int> invariants;  // min(rows, cols) entries, nonnegative, d_i | d_{i+1}
  Matrix<Int> U, V, D;
  int rows = 0, cols = 0;
  int rank() const;
  int cokernel_free_rank() const { return rows - rank(); }
  std::vector<Int> torsion() const;
};
SmithForm smith_normal_form(const Matrix<Int>& m, bool with_transforms = true);

// Z-lattice with incremental Hermite reduction; used for large relation sets.
class Lattice {
 public:
  explicit Lattice(int dim) : dim_(dim) {}
  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  void insert(std::vector<Int> v);
  bool contains(std::vector<Int> v) const;
  Matrix<Int> basis_matrix() const;
  // Invariants of the cokernel Z^dim / L.
  std::vector<Int> cokernel_torsion() const;
  int cokernel_free_rank() const { return dim_ - rank(); }

 private:
  int dim_;
  std::map<int, std::vector<Int>> rows_;  // pivot column -> row with positive pivot
};

}  // namespace skeinlab
