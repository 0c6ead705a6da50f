#pragma once

#include "quartic/linalg.hpp"
#include "quartic/numeric.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace quartic {

struct NotASquare : std::domain_error {
  NotASquare() : std::domain_error("binary form is not a square times a scalar") {}
};
struct SingularCurve : std::domain_error {
  SingularCurve() : std::domain_error("quartic is singular") {}
};

/// Exponent triples (a, b, c) with a + b + c = d, in lexicographic order
/// (a descending, then b descending).
inline const std::vector<std::array<int, 3>>& monomials(int d) {
  static std::map<int, std::vector<std::array<int, 3>>> cache;
  auto it = cache.find(d);
  if (it == cache.end()) {
    std::vector<std::array<int, 3>> m;
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) m.push_back({a, b, d - a - b});
    it = cache.emplace(d, std::move(m)).first;
  }
  return it->second;
}

inline std::size_t monomial_index(int d, int a, int b) {
  // count of (a', b') with a' > a, plus offset of b within a
  std::size_t skipped = 0;
  for (int aa = d; aa > a; --aa) skipped += d - aa + 1;
  return skipped + std::size_t(d - a - b);
}

/// Homogeneous binary form of fixed degree; coefficient i multiplies
/// s^(deg-i) t^i.
template <class T>
class BinaryForm {
 public:
  BinaryForm() = default;
  explicit BinaryForm(int deg) : c_(deg + 1, T(0)) {}
  BinaryForm(std::initializer_list<T> cs) : c_(cs) {}
  explicit BinaryForm(std::vector<T> cs) : c_(std::move(cs)) {}

  int degree() const { return int(c_.size()) - 1; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  T& operator[](std::size_t i) { return c_[i]; }
  const std::vector<T>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& e : c_)
      if (e != 0) return false;
    return true;
  }

  BinaryForm operator*(const BinaryForm& o) const {
    BinaryForm r(degree() + o.degree());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    return r;
  }
  BinaryForm operator+(const BinaryForm& o) const {
    BinaryForm r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  BinaryForm operator-() const {
    BinaryForm r = *this;
    for (auto& e : r.c_) e = -e;
    return r;
  }
  BinaryForm operator-(const BinaryForm& o) const { return *this + (-o); }
  BinaryForm operator*(const T& k) const {
    BinaryForm r = *this;
    for (auto& e : r.c_) e *= k;
    return r;
  }

  template <class V, class Lift>
  V evaluate(const V& s, const V& t, Lift lift) const {
    // Horner in s with powers of t
    V acc = lift(c_[0]);
    V tp = t;
    for (std::size_t i = 1; i < c_.size(); ++i) {
      acc = acc * s;
      acc = acc + lift(c_[i]) * tp;
      // keep tp = t^i for the next row by multiplying lazily
      if (i + 1 < c_.size()) tp = tp * t;
    }
    return acc;
  }

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;

 private:
  std::vector<T> c_;
};

/// Homogeneous ternary form of fixed degree over T (Int or Rat),
/// coefficients in the monomials(d) order.
template <class T>
class TernaryForm {
 public:
  TernaryForm() = default;
  explicit TernaryForm(int deg)
      : d_(deg), c_(monomials(deg).size(), T(0)) {}
  TernaryForm(int deg, std::vector<T> coeffs) : d_(deg), c_(std::move(coeffs)) {}

  int degree() const { return d_; }
  const std::vector<T>& coeffs() const { return c_; }
  std::vector<T>& coeffs() { return c_; }
  const T& coeff(int a, int b) const { return c_[monomial_index(d_, a, b)]; }
  T& coeff(int a, int b) { return c_[monomial_index(d_, a, b)]; }

  bool is_zero() const {
    for (const auto& e : c_)
      if (e != 0) return false;
    return true;
  }

  TernaryForm operator+(const TernaryForm& o) const {
    TernaryForm r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  TernaryForm operator-() const {
    TernaryForm r = *this;
    for (auto& e : r.c_) e = -e;
    return r;
  }
  TernaryForm operator-(const TernaryForm& o) const { return *this + (-o); }
  TernaryForm operator*(const T& k) const {
    TernaryForm r = *this;
    for (auto& e : r.c_) e *= k;
    return r;
  }
  TernaryForm operator*(const TernaryForm& o) const {
    TernaryForm r(d_ + o.d_);
    const auto& ma = monomials(d_);
    const auto& mb = monomials(o.d_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        if (o.c_[j] == 0) continue;
        r.c_[monomial_index(r.d_, ma[i][0] + mb[j][0], ma[i][1] + mb[j][1])] +=
            c_[i] * o.c_[j];
      }
    }
    return r;
  }

  TernaryForm derivative(int var) const {
    TernaryForm r(d_ - 1);
    const auto& ms = monomials(d_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      int e = ms[i][var];
      if (e == 0 || c_[i] == 0) continue;
      std::array<int, 3> m = ms[i];
      --m[var];
      r.c_[monomial_index(d_ - 1, m[0], m[1])] += c_[i] * T(e);
    }
    return r;
  }

  template <class V, class Lift>
  V evaluate(const std::array<V, 3>& P, Lift lift) const {
    const auto& ms = monomials(d_);
    std::array<std::vector<V>, 3> pows;
    for (int v = 0; v < 3; ++v) {
      pows[v].push_back(lift(T(1)));
      for (int e = 1; e <= d_; ++e) pows[v].push_back(pows[v].back() * P[v]);
    }
    V acc = lift(T(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      acc = acc + lift(c_[i]) * pows[0][ms[i][0]] * pows[1][ms[i][1]] *
                      pows[2][ms[i][2]];
    }
    return acc;
  }

  T evaluate(const std::array<T, 3>& P) const {
    return evaluate<T>(P, [](const T& x) { return x; });
  }

  friend bool operator==(const TernaryForm&, const TernaryForm&) = default;

 private:
  int d_ = 0;
  std::vector<T> c_;
};

using TernaryZ = TernaryForm<Int>;
using TernaryQ = TernaryForm<Rat>;
using BinaryZ = BinaryForm<Int>;
using BinaryQ = BinaryForm<Rat>;

/// Content-free, sign-normalized copy (first nonzero coefficient positive).
inline TernaryZ primitive_form(const TernaryZ& f) {
  return TernaryZ(f.degree(), primitive(f.coeffs()));
}
inline TernaryZ primitive_form(const TernaryQ& f) {
  return TernaryZ(f.degree(), primitive(f.coeffs()));
}
inline BinaryZ primitive_form(const BinaryZ& b) {
  return BinaryZ(primitive(b.coeffs()));
}
inline BinaryZ primitive_form(const BinaryQ& b) {
  return BinaryZ(primitive(b.coeffs()));
}

inline TernaryQ to_rational(const TernaryZ& f) {
  std::vector<Rat> c(f.coeffs().begin(), f.coeffs().end());
  return TernaryQ(f.degree(), std::move(c));
}

/// det of the matrix of partials of three cubics; alternating multilinear.
template <class T>
TernaryForm<T> jacobian_determinant(const TernaryForm<T>& f1,
                                    const TernaryForm<T>& f2,
                                    const TernaryForm<T>& f3) {
  std::array<std::array<TernaryForm<T>, 3>, 3> d;
  const TernaryForm<T>* fs[3] = {&f1, &f2, &f3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d[i][j] = fs[i]->derivative(j);
  auto minor2 = [&](int r1, int r2, int c1, int c2) {
    return d[r1][c1] * d[r2][c2] - d[r1][c2] * d[r2][c1];
  };
  return d[0][0] * minor2(1, 2, 1, 2) - d[0][1] * minor2(1, 2, 0, 2) +
         d[0][2] * minor2(1, 2, 0, 1);
}

/// A projective line given by two distinct spanning points whose cross
/// product is exactly the primitive defining form of the line.
struct LineParametrization {
  std::array<Int, 3> P, Q;

  std::array<Int, 3> point(const Int& s, const Int& t) const {
    return {s * P[0] + t * Q[0], s * P[1] + t * Q[1], s * P[2] + t * Q[2]};
  }
};

inline std::array<Int, 3> cross(const std::array<Int, 3>& a,
                                const std::array<Int, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

/// Parametrization of the zero line of a primitive linear form; the basis
/// of the kernel lattice of (l0 l1 l2) satisfies cross(P, Q) = ±l.
inline LineParametrization parametrize_line(const std::array<Int, 3>& l) {
  IntMatrix m(1, 3);
  for (int j = 0; j < 3; ++j) m.at(0, j) = l[j];
  auto K = linalg::kernel_lattice(m);
  if (K.size() != 2) throw std::invalid_argument("not a line form");
  LineParametrization L{{K[0][0], K[0][1], K[0][2]}, {K[1][0], K[1][1], K[1][2]}};
  auto c = cross(L.P, L.Q);
  if (c == std::array<Int, 3>{-l[0], -l[1], -l[2]}) std::swap(L.P, L.Q);
  return L;
}

/// F(s P + t Q) expanded exactly as a binary form in (s, t).
template <class T>
BinaryForm<T> restrict_to_line(const TernaryForm<T>& F,
                               const LineParametrization& L) {
  int d = F.degree();
  // powers of the three linear binaries (P_v s + Q_v t)
  std::array<std::vector<BinaryForm<T>>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].push_back(BinaryForm<T>{T(1)});
    BinaryForm<T> lin{T(L.P[v]), T(L.Q[v])};
    for (int e = 1; e <= d; ++e) pw[v].push_back(pw[v].back() * lin);
  }
  BinaryForm<T> out(d);
  const auto& ms = monomials(d);
  for (std::size_t i = 0; i < F.coeffs().size(); ++i) {
    const T& k = F.coeffs()[i];
    if (k == 0) continue;
    BinaryForm<T> term = pw[0][ms[i][0]] * pw[1][ms[i][1]] * pw[2][ms[i][2]];
    out = out + term * k;
  }
  return out;
}

/// F composed with the linear substitution x_i -> sum_j M[i][j] x_j.
template <class T>
TernaryForm<T> substitute_linear(const TernaryForm<T>& F,
                                 const std::array<std::array<Int, 3>, 3>& M) {
  int d = F.degree();
  std::array<std::vector<TernaryForm<T>>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].push_back(TernaryForm<T>(0, {T(1)}));
    TernaryForm<T> lin(1);
    for (int j = 0; j < 3; ++j) lin.coeffs()[j] = T(M[v][j]);
    for (int e = 1; e <= d; ++e) pw[v].push_back(pw[v].back() * lin);
  }
  TernaryForm<T> out(d);
  const auto& ms = monomials(d);
  for (std::size_t i = 0; i < F.coeffs().size(); ++i) {
    const T& k = F.coeffs()[i];
    if (k == 0) continue;
    out = out + pw[0][ms[i][0]] * pw[1][ms[i][1]] * pw[2][ms[i][2]] * k;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Univariate helpers over Q for the binary square root.
// ---------------------------------------------------------------------------
namespace unipoly {

using Poly = std::vector<Rat>;  // coefficient of u^k at index k

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int deg(const Poly& p) { return int(p.size()) - 1; }

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Poly derivative(const Poly& p) {
  Poly r;
  for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * Rat(i));
  trim(r);
  return r;
}

/// Exact division; throws if the remainder is nonzero.
inline Poly divexact(Poly a, const Poly& b) {
  trim(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  while (deg(a) >= deg(b) && !a.empty()) {
    Rat c = a.back() / b.back();
    int shift = deg(a) - deg(b);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  if (!a.empty()) throw std::domain_error("inexact polynomial division");
  return q;
}

inline Poly rem(Poly a, const Poly& b) {
  trim(a);
  while (deg(a) >= deg(b) && !a.empty()) {
    Rat c = a.back() / b.back();
    int shift = deg(a) - deg(b);
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return a;
}

inline Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  Rat lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Yun squarefree decomposition: p = lc * prod a_i^i with the a_i monic,
/// squarefree, pairwise coprime; only nonconstant a_i are reported.
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(Poly p) {
  std::vector<std::pair<Poly, int>> out;
  p = monic(std::move(p));
  if (deg(p) < 1) return out;
  Poly dp = derivative(p);
  Poly g = gcd(p, dp);
  Poly c = divexact(p, g);
  Poly d = [&] {
    Poly t = divexact(dp, g);
    Poly cd = derivative(c);
    Poly r(std::max(t.size(), cd.size()), Rat(0));
    for (std::size_t i = 0; i < t.size(); ++i) r[i] += t[i];
    for (std::size_t i = 0; i < cd.size(); ++i) r[i] -= cd[i];
    trim(r);
    return r;
  }();
  for (int i = 1; deg(c) > 0; ++i) {
    Poly a = gcd(c, d);
    if (deg(a) > 0) out.emplace_back(a, i);
    c = divexact(c, a);
    Poly t = divexact(d, a);
    Poly cd = derivative(c);
    Poly r(std::max(t.size(), cd.size()), Rat(0));
    for (std::size_t i2 = 0; i2 < t.size(); ++i2) r[i2] += t[i2];
    for (std::size_t i2 = 0; i2 < cd.size(); ++i2) r[i2] -= cd[i2];
    trim(r);
    d = std::move(r);
  }
  return out;
}

}  // namespace unipoly

/// Exact decomposition b = a * q^2 with q primitive integral; NotASquare
/// if some irreducible factor of b has odd multiplicity.  Hyperflex
/// contacts (q a repeated linear form) come out of the squarefree
/// decomposition like any other repeated factor.
template <class T>
std::pair<Rat, BinaryZ> binary_square_root(const BinaryForm<T>& b) {
  if (b.is_zero()) throw std::domain_error("zero form");
  int n = b.degree();
  if (n % 2) throw NotASquare{};
  std::vector<Rat> c(b.coeffs().begin(), b.coeffs().end());
  int first = 0, last = n;
  while (c[first] == 0) ++first;  // power of t divides
  while (c[last] == 0) --last;    // power of s divides
  int tpow = first, spow = n - last;
  if (tpow % 2 || spow % 2) throw NotASquare{};
  // dehomogenize the middle part: chat(u) = sum c[first+i] u^(m-i)
  int m = last - first;
  if (m % 2) throw NotASquare{};
  unipoly::Poly chat(m + 1, Rat(0));
  for (int i = 0; i <= m; ++i) chat[m - i] = c[first + i];
  unipoly::Poly qhat = {Rat(1)};
  for (auto& [f, mult] : unipoly::squarefree_decomposition(chat)) {
    if (mult % 2) throw NotASquare{};
    for (int i = 0; i < mult / 2; ++i) qhat = unipoly::mul(qhat, f);
  }
  if (2 * unipoly::deg(qhat) != m) throw NotASquare{};
  // rebuild the binary form: q = s^(spow/2) t^(tpow/2) * homog(qhat)
  int qdeg = n / 2;
  std::vector<Rat> qc(qdeg + 1, Rat(0));
  for (int i = 0; i <= m / 2; ++i) qc[tpow / 2 + i] = qhat[m / 2 - i];
  BinaryZ q = primitive_form(BinaryQ(std::move(qc)));
  // scalar from any nonzero coefficient, then verify the identity exactly
  BinaryZ q2 = q * q;
  int k = 0;
  while (q2[k] == 0) ++k;
  Rat a = Rat(c[k]) / Rat(q2[k]);
  for (int i = 0; i <= n; ++i)
    if (Rat(b.coeffs()[i]) != a * Rat(q2[i])) throw NotASquare{};
  return {a, q};
}

// ---------------------------------------------------------------------------
// Resultants over Z (formal degrees) and the bad-prime support chain.
// ---------------------------------------------------------------------------
namespace resultants {

/// Determinant by fraction-free elimination (Bareiss).
inline Int bareiss_det(std::vector<std::vector<Int>> m) {
  std::size_t n = m.size();
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return n ? Int(sign) * m[n - 1][n - 1] : Int(1);
}

/// Sylvester resultant with formal degrees (sizes of the coefficient
/// vectors minus one); index 0 holds the formally-leading coefficient.
inline Int formal_resultant(const std::vector<Int>& A, const std::vector<Int>& B) {
  int m = int(A.size()) - 1, n = int(B.size()) - 1;
  std::size_t N = std::size_t(m + n);
  if (N == 0) return 1;
  std::vector<std::vector<Int>> M(N, std::vector<Int>(N, Int(0)));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) M[r][r + j] = A[j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) M[n + r][r + j] = B[j];
  return bareiss_det(std::move(M));
}

}  // namespace resultants

/// An integer whose prime support contains every prime at which the
/// quartic degenerates: Res(B_x, B_y) for B = Res_z(g, g_z) with g a
/// sheared copy of f.  Zero for every admissible shear means f is
/// singular; for smooth f a shear from the deterministic parabola family
/// (k, k^2) always succeeds because the bad centers lie on finitely many
/// lines plus the curve itself.
inline Int discriminant_multiple(const TernaryZ& f) {
  if (f.degree() != 4) throw std::invalid_argument("quartic expected");
  for (int k = 0; k < 150; ++k) {
    Int a = k, b = Int(k) * k;
    TernaryZ g = substitute_linear(
        f, {{{1, 0, a}, {0, 1, b}, {0, 0, 1}}});
    TernaryZ gz = g.derivative(2);
    // z-coefficient vectors of g (formal degree 4) and g_z (formal 3),
    // specialized at (x, y) = (t, 1) for t = 0..12, then interpolated.
    auto z_coeff_at = [&](const TernaryZ& h, int dz, const Int& t) {
      // returns coefficients [z^dz, ..., z^0] of h(t, 1, z)
      std::vector<Int> out(dz + 1, Int(0));
      const auto& ms = monomials(h.degree());
      for (std::size_t i = 0; i < h.coeffs().size(); ++i) {
        if (h.coeffs()[i] == 0) continue;
        out[dz - ms[i][2]] += h.coeffs()[i] * quartic::pow(t, unsigned(ms[i][0]));
      }
      return out;
    };
    std::vector<Int> values;
    for (int t = 0; t <= 12; ++t)
      values.push_back(resultants::formal_resultant(z_coeff_at(g, 4, Int(t)),
                                                    z_coeff_at(gz, 3, Int(t))));
    // interpolate B(t, 1) = sum b_i t^(12-i), a polynomial of degree <= 12
    IntMatrix V(13, 13);
    for (int r = 0; r <= 12; ++r)
      for (int j = 0; j <= 12; ++j) V.at(r, j) = quartic::pow(Int(r), unsigned(12 - j));
    auto sol = linalg::solve(V, values);
    if (!sol) throw std::logic_error("Vandermonde solve failed");
    std::vector<Rat> bc = *sol;  // coefficients of x^(12-i) y^i
    // derivatives as binary forms of degree 11 (coefficient index 0 is the
    // formally-leading x^11 term)
    std::vector<Int> bx(12), by(12);
    std::vector<Int> bz = primitive(bc);
    bool zero = true;
    for (const auto& e : bz) zero &= e == 0;
    if (zero) continue;
    for (int i = 0; i < 12; ++i) {
      bx[i] = bz[i] * (12 - i);
      by[i] = bz[i + 1] * (i + 1);
    }
    Int r = resultants::formal_resultant(bx, by);
    if (r != 0) return r;
  }
  throw SingularCurve{};
}

struct FactorizationIncomplete : std::runtime_error {
  FactorizationIncomplete()
      : std::runtime_error("cofactor too large to factor responsibly") {}
};

/// Prime support of a discriminant multiple, always including 2.  Sound:
/// every prime of bad reduction of the labelled configuration divides the
/// returned chain value (extraneous primes merely enlarge the answer).
inline std::vector<Int> bad_prime_support(
    const TernaryZ& f, const std::vector<std::array<Int, 3>>& lines = {}) {
  for (const auto& l : lines) {
    if (content({l[0], l[1], l[2]}) != 1)
      throw std::invalid_argument("bitangent forms must be primitive");
  }
  Int r = abs(discriminant_multiple(primitive_form(f)));
  std::vector<Int> out{2};
  for (Int p = 2; p <= 1000000 && r > 1; p == 2 ? p = 3 : p += 2) {
    if (r % p) continue;
    while (r % p == 0) r /= p;
    if (p != 2) out.push_back(p);
  }
  if (r > 1) {
    if (is_prime(r)) {
      out.push_back(r);
    } else if (boost::multiprecision::msb(r) < 140) {
      for (auto& [p, e] : factor(r))
        if (p != 2) out.push_back(p);
    } else {
      throw FactorizationIncomplete{};
    }
  }
  return out;
}

}  // namespace quartic
