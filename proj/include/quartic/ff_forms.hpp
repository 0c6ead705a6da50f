#pragma once

#include "quartic/finite_field.hpp"
#include "quartic/forms.hpp"

#include <vector>

namespace quartic {

/// Homogeneous ternary form with coefficients in a finite field F,
/// same monomial order as TernaryForm.
template <class F>
struct FFTernary {
  const F* field;
  int deg;
  std::vector<typename F::Elem> c;

  static FFTernary reduce(const F& k, const TernaryZ& f) {
    FFTernary out{&k, f.degree(), {}};
    out.c.reserve(f.coeffs().size());
    for (const auto& e : f.coeffs()) out.c.push_back(k.from_int(e));
    return out;
  }

  bool is_zero() const {
    for (const auto& e : c)
      if (!field->is_zero(e)) return false;
    return true;
  }

  typename F::Elem evaluate(const std::array<typename F::Elem, 3>& P) const {
    const F& k = *field;
    const auto& ms = monomials(deg);
    std::array<std::vector<typename F::Elem>, 3> pw;
    for (int v = 0; v < 3; ++v) {
      pw[v].push_back(k.one());
      for (int e = 1; e <= deg; ++e) pw[v].push_back(k.mul(pw[v].back(), P[v]));
    }
    auto acc = k.zero();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (k.is_zero(c[i])) continue;
      acc = k.add(acc, k.mul(c[i], k.mul(pw[0][ms[i][0]],
                                         k.mul(pw[1][ms[i][1]], pw[2][ms[i][2]]))));
    }
    return acc;
  }

  FFTernary derivative(int var) const {
    const F& k = *field;
    FFTernary out{field, deg - 1,
                  std::vector<typename F::Elem>(monomials(deg - 1).size(), k.zero())};
    const auto& ms = monomials(deg);
    for (std::size_t i = 0; i < c.size(); ++i) {
      int e = ms[i][var];
      if (e == 0 || k.is_zero(c[i])) continue;
      std::array<int, 3> m = ms[i];
      --m[var];
      std::size_t j = monomial_index(deg - 1, m[0], m[1]);
      out.c[j] = k.add(out.c[j], k.mul(c[i], k.from_int(Int(e))));
    }
    return out;
  }
};

/// Visits all of P^2(F) once via normalized representatives.
template <class F, class Fn>
void for_each_projective_point(const F& k, Fn&& fn) {
  std::vector<typename F::Elem> elems;
  k.enumerate(elems);
  for (const auto& y : elems)
    for (const auto& z : elems)
      fn(std::array<typename F::Elem, 3>{k.one(), y, z});
  for (const auto& z : elems)
    fn(std::array<typename F::Elem, 3>{k.zero(), k.one(), z});
  fn(std::array<typename F::Elem, 3>{k.zero(), k.zero(), k.one()});
}

/// Exact number of projective F-points on the plane curve f = 0.
template <class F>
long count_points_Fq(const F& k, const TernaryZ& f) {
  auto ff = FFTernary<F>::reduce(k, f);
  long n = 0;
  for_each_projective_point(k, [&](const std::array<typename F::Elem, 3>& P) {
    if (k.is_zero(ff.evaluate(P))) ++n;
  });
  return n;
}

namespace ffdetail {

template <class F>
std::vector<typename F::Elem> poly_mul(const F& k,
                                       const std::vector<typename F::Elem>& u,
                                       const std::vector<typename F::Elem>& v) {
  std::vector<typename F::Elem> w(u.size() + v.size() - 1, k.zero());
  for (std::size_t p = 0; p < u.size(); ++p)
    for (std::size_t q = 0; q < v.size(); ++q)
      w[p + q] = k.add(w[p + q], k.mul(u[p], v[q]));
  return w;
}

/// Resultant of two formal-degree univariate polynomials over a field
/// (coefficient index 0 = formally-leading), Sylvester + Gaussian.
template <class F>
typename F::Elem formal_resultant(const F& k,
                                  const std::vector<typename F::Elem>& A,
                                  const std::vector<typename F::Elem>& B) {
  int m = int(A.size()) - 1, n = int(B.size()) - 1;
  std::size_t N = std::size_t(m + n);
  std::vector<std::vector<typename F::Elem>> M(
      N, std::vector<typename F::Elem>(N, k.zero()));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) M[r][r + j] = A[j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) M[n + r][r + j] = B[j];
  auto det = k.one();
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    while (piv < N && k.is_zero(M[piv][c])) ++piv;
    if (piv == N) return k.zero();
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = k.neg(det);
    }
    det = k.mul(det, M[c][c]);
    auto inv = k.inv(M[c][c]);
    for (std::size_t i = c + 1; i < N; ++i) {
      if (k.is_zero(M[i][c])) continue;
      auto factor = k.mul(M[i][c], inv);
      for (std::size_t j = c; j < N; ++j)
        M[i][j] = k.sub(M[i][j], k.mul(factor, M[c][j]));
    }
  }
  return det;
}

/// One center (a : b : 1) of the discriminant chain over a field: true iff
/// Res(B_x, B_y) != 0 for B = Res_z(f(x+az, y+bz, z), d/dz of same).
/// A nonzero value proves the curve nonsingular; a singular curve gives
/// zero for every center.  The z-derivative of the sheared polynomial is
/// (a f_x + b f_y + f_z) composed with the shear.
template <class F>
bool chain_attempt(const F& k, const FFTernary<F>& g,
                   const std::array<FFTernary<F>, 3>& grad,
                   const typename F::Elem& a, const typename F::Elem& b,
                   const std::vector<typename F::Elem>& sample_pts) {
  using E = typename F::Elem;
  FFTernary<F> gz{&k, 3, std::vector<E>(monomials(3).size(), k.zero())};
  for (std::size_t i = 0; i < gz.c.size(); ++i)
    gz.c[i] = k.add(k.add(k.mul(a, grad[0].c[i]), k.mul(b, grad[1].c[i])),
                    grad[2].c[i]);
  auto z_coeffs = [&](const FFTernary<F>& h, int dz, const E& t) {
    std::vector<std::vector<E>> px(h.deg + 1), py(h.deg + 1), pz(h.deg + 1);
    auto lin_pows = [&](const E& c0, const E& c1, std::vector<std::vector<E>>& dst) {
      dst[0] = {k.one()};
      for (int e = 1; e <= h.deg; ++e)
        dst[e] = poly_mul(k, dst[e - 1], std::vector<E>{c0, c1});
    };
    lin_pows(t, a, px);
    lin_pows(k.one(), b, py);
    lin_pows(k.zero(), k.one(), pz);
    std::vector<E> out(dz + 1, k.zero());
    const auto& ms = monomials(h.deg);
    for (std::size_t i = 0; i < h.c.size(); ++i) {
      if (k.is_zero(h.c[i])) continue;
      auto term = poly_mul(k, px[ms[i][0]], py[ms[i][1]]);
      term = poly_mul(k, term, pz[ms[i][2]]);
      for (std::size_t p = 0; p < term.size(); ++p)
        out[dz - p] = k.add(out[dz - p], k.mul(h.c[i], term[p]));
    }
    return out;
  };
  std::vector<E> samples;
  for (int t = 0; t < 13; ++t)
    samples.push_back(formal_resultant(k, z_coeffs(g, 4, sample_pts[t]),
                                       z_coeffs(gz, 3, sample_pts[t])));
  // Lagrange interpolation of B(u) = B(u, 1), degree <= 12
  std::vector<E> poly(13, k.zero());
  for (int t = 0; t < 13; ++t) {
    if (k.is_zero(samples[t])) continue;
    std::vector<E> basis = {k.one()};
    E denom = k.one();
    for (int u = 0; u < 13; ++u) {
      if (u == t) continue;
      basis = poly_mul(k, basis, std::vector<E>{k.neg(sample_pts[u]), k.one()});
      denom = k.mul(denom, k.sub(sample_pts[t], sample_pts[u]));
    }
    E w = k.mul(samples[t], k.inv(denom));
    for (std::size_t i = 0; i < basis.size(); ++i)
      poly[i] = k.add(poly[i], k.mul(basis[i], w));
  }
  bool all_zero = true;
  for (const auto& e : poly) all_zero = all_zero && k.is_zero(e);
  if (all_zero) return false;
  // B(x, y) = sum_i b_i x^(12-i) y^i with b_i = poly[12-i]
  std::vector<E> bx(12), by(12);
  for (int i = 0; i < 12; ++i) {
    bx[i] = k.mul(poly[12 - i], k.from_int(Int(12 - i)));
    by[i] = k.mul(poly[11 - i], k.from_int(Int(i + 1)));
  }
  return !k.is_zero(formal_resultant(k, bx, by));
}

template <class F>
bool chain_search(const F& k, const TernaryZ& f, std::size_t cap) {
  auto g = FFTernary<F>::reduce(k, f);
  std::array<FFTernary<F>, 3> grad{g.derivative(0), g.derivative(1),
                                   g.derivative(2)};
  std::vector<typename F::Elem> elems;
  k.enumerate(elems);
  std::vector<typename F::Elem> sample_pts(elems.begin(), elems.begin() + 13);
  std::size_t n = elems.size(), tried = 0;
  // mixed enumeration (i, i^2 + j) to avoid structured runs of bad centers
  for (std::size_t j = 0; j < n && tried < cap; ++j) {
    for (std::size_t i = 0; i < n && tried < cap; ++i, ++tried) {
      const auto& a = elems[i];
      const auto& b = elems[(i * i + j) % n];
      if (chain_attempt(k, g, grad, a, b, sample_pts)) return true;
    }
  }
  return false;
}

}  // namespace ffdetail

/// Nonsingularity of the quartic f over F_q, q odd >= 5.  A successful
/// chain center is a proof of smoothness; singular curves are usually
/// caught by the rational singular-point scan, and otherwise by the
/// center search coming up empty (the bad centers lie on at most 52 lines
/// plus the curve itself, so over F_{q^4} the search is exhaustive).
inline bool quartic_is_smooth_mod_q(std::uint64_t q, const TernaryZ& f) {
  if (q < 5 || q % 2 == 0) throw std::invalid_argument("odd q >= 5 required");
  PrimeField fp(q);
  auto fbar = FFTernary<PrimeField>::reduce(fp, f);
  if (fbar.is_zero()) return false;
  // quick reject: singular point rational over F_q
  std::array<FFTernary<PrimeField>, 3> d{fbar.derivative(0), fbar.derivative(1),
                                         fbar.derivative(2)};
  bool found_singular = false;
  for_each_projective_point(fp, [&](const std::array<std::uint64_t, 3>& P) {
    if (found_singular) return;
    if (fp.is_zero(fbar.evaluate(P)) && fp.is_zero(d[0].evaluate(P)) &&
        fp.is_zero(d[1].evaluate(P)) && fp.is_zero(d[2].evaluate(P)))
      found_singular = true;
  });
  if (found_singular) return false;

  QuadField k2 = make_Fq2(q);
  if (ffdetail::chain_search(k2, f, 4000)) return true;
  QuarticField k4 = make_Fq4(q);
  // enough centers that exhausting them certifies singularity
  std::size_t cap = 60 * (std::size_t(q) * q * q * q + 1);
  return ffdetail::chain_search(k4, f, cap);
}

}  // namespace quartic
