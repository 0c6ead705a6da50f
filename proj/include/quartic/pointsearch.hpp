#pragma once

#include "quartic/curve.hpp"
#include "quartic/local.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

namespace quartic {

namespace pointsearch_detail {

/// Real roots of sum c[i] z^i (degree <= 4) to a few digits, by Newton
/// with derivative-root bracketing; approximation quality only needs to
/// land within 1 of any integer root.
inline int real_roots(const std::array<double, 5>& c, int deg,
                      std::array<double, 8>& out) {
  // trim true degree
  while (deg > 0 && c[deg] == 0.0) --deg;
  if (deg <= 0) return 0;
  if (deg == 1) {
    out[0] = -c[0] / c[1];
    return 1;
  }
  // critical points recursively, then bisect between/beyond them
  std::array<double, 5> dc{};
  for (int i = 1; i <= deg; ++i) dc[i - 1] = c[i] * i;
  std::array<double, 8> crit;
  int nc = real_roots(dc, deg - 1, crit);
  std::sort(crit.begin(), crit.begin() + nc);
  auto eval = [&](double z) {
    double acc = 0;
    for (int i = deg; i >= 0; --i) acc = acc * z + c[i];
    return acc;
  };
  // Cauchy bound on root magnitude
  double lead = std::fabs(c[deg]), bound = 0;
  for (int i = 0; i < deg; ++i) bound = std::max(bound, std::fabs(c[i]) / lead);
  bound += 1.0;
  std::array<double, 12> pts;
  int np = 0;
  pts[np++] = -bound;
  for (int i = 0; i < nc && np < 11; ++i)
    if (crit[i] > -bound && crit[i] < bound) pts[np++] = crit[i];
  pts[np++] = bound;
  int n = 0;
  for (int i = 0; i + 1 < np && n < 7; ++i) {
    double a = pts[i], b = pts[i + 1], fa = eval(a), fb = eval(b);
    if (fa == 0.0) out[n++] = a;
    if (fa * fb > 0) continue;
    for (int it = 0; it < 80; ++it) {
      double m = 0.5 * (a + b), fm = eval(m);
      if (fm == 0.0) {
        a = b = m;
        break;
      }
      if (fa * fm < 0)
        b = m, fb = fm;
      else
        a = m, fa = fm;
    }
    out[n++] = 0.5 * (a + b);
  }
  if (n < 8 && eval(pts[np - 1]) == 0.0) out[n++] = pts[np - 1];
  return n;
}

inline std::uint64_t wrap64(const Int& n) {
  static const Int two64 = Int(1) << 64;
  Int m = n % two64;
  if (m < 0) m += two64;
  return m.convert_to<std::uint64_t>();
}

}  // namespace pointsearch_detail

/// All primitive projective points of height <= H on the quartic f = 0.
/// Exact verification for every reported point; sign convention: first
/// nonzero coordinate > 0.
inline std::vector<std::array<Int, 3>> point_search_form(const TernaryZ& f,
                                                         const Int& H,
                                                         unsigned threads = 2) {
  std::set<std::array<Int, 3>> found;
  auto normalize = [](std::array<Int, 3> P) {
    auto v = primitive(std::vector<Int>{P[0], P[1], P[2]});
    return std::array<Int, 3>{v[0], v[1], v[2]};
  };
  auto on_curve = [&](const std::array<Int, 3>& P) {
    return !(P[0] == 0 && P[1] == 0 && P[2] == 0) && f.evaluate(P) == 0;
  };

  if (H >= 1) {
    long h = H.convert_to<long>();
    // z-coefficients of f as polynomials in (x, y): grid[j][a][b] is the
    // coefficient of x^a y^b z^j
    std::array<std::array<std::array<Int, 5>, 5>, 5> grid{};
    const auto& ms = monomials(4);
    for (std::size_t t = 0; t < ms.size(); ++t) {
      if (f.coeffs()[t] == 0) continue;
      grid[ms[t][2]][ms[t][0]][ms[t][1]] = f.coeffs()[t];
    }
    // scale for double conversion
    unsigned maxbits = 0;
    for (const auto& e : f.coeffs())
      if (e != 0) maxbits = std::max(maxbits, unsigned(boost::multiprecision::msb(abs(e))));
    unsigned shift = maxbits > 600 ? maxbits - 600 : 0;
    auto to_dbl = [&](const Int& n) {
      return (n >> shift).convert_to<double>();
    };
    std::array<std::array<std::array<double, 5>, 5>, 5> dgrid{};
    std::array<std::array<std::array<std::uint64_t, 5>, 5>, 5> wgrid{};
    for (int j = 0; j <= 4; ++j)
      for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) {
          dgrid[j][a][b] = to_dbl(grid[j][a][b]);
          wgrid[j][a][b] = pointsearch_detail::wrap64(grid[j][a][b]);
        }

    std::mutex mu;
    auto worker = [&](long x_lo, long x_hi) {
      std::vector<std::array<Int, 3>> local;
      std::array<double, 5> cd;
      std::array<double, 8> roots;
      for (long x = x_lo; x < x_hi; ++x) {
        for (long y = 0; y <= h; ++y) {
          double dx = double(x), dy = double(y);
          // z-coefficients at (x, y), double and wrapped
          std::array<double, 5> xp{1, dx, dx * dx, dx * dx * dx, dx * dx * dx * dx};
          std::array<double, 5> yp{1, dy, dy * dy, dy * dy * dy, dy * dy * dy * dy};
          for (int j = 0; j <= 4; ++j) {
            double acc = 0;
            for (int a = 0; a + j <= 4; ++a)
              for (int b = 0; a + b + j <= 4; ++b)
                if (dgrid[j][a][b] != 0.0) acc += dgrid[j][a][b] * xp[a] * yp[b];
            cd[j] = acc;
          }
          int n = pointsearch_detail::real_roots(cd, 4, roots);
          std::uint64_t wx = std::uint64_t(x), wy = std::uint64_t(y);
          std::array<std::uint64_t, 5> wxp{1, wx, wx * wx, wx * wx * wx,
                                           wx * wx * wx * wx};
          std::array<std::uint64_t, 5> wyp{1, wy, wy * wy, wy * wy * wy,
                                           wy * wy * wy * wy};
          auto wrap_at = [&](std::uint64_t wz) {
            std::uint64_t acc = 0, wzp = 1;
            for (int j = 0; j <= 4; ++j) {
              std::uint64_t cj = 0;
              for (int a = 0; a + j <= 4; ++a)
                for (int b = 0; a + b + j <= 4; ++b)
                  if (wgrid[j][a][b]) cj += wgrid[j][a][b] * wxp[a] * wyp[b];
              acc += cj * wzp;
              wzp *= wz;
            }
            return acc;
          };
          for (int r = 0; r < n; ++r) {
            long z0 = std::lround(roots[r]);
            for (long z = z0 - 1; z <= z0 + 1; ++z) {
              if (z < -h || z > h) continue;
              if (x == 0 && y == 0 && z == 0) continue;
              if (wrap_at(std::uint64_t(z)) != 0) continue;
              std::array<Int, 3> P{Int(x), Int(y), Int(z)};
              if (f.evaluate(P) == 0) local.push_back(normalize(P));
            }
          }
        }
      }
      std::lock_guard<std::mutex> lock(mu);
      for (auto& P : local)
        if (on_curve(P)) found.insert(P);
    };

    if (threads <= 1) {
      worker(-h, h + 1);
    } else {
      std::vector<std::thread> pool;
      long span = (2 * h + 1 + long(threads) - 1) / long(threads);
      for (unsigned t = 0; t < threads; ++t) {
        long lo = -h + long(t) * span;
        long hi = std::min(h + 1, lo + span);
        if (lo >= hi) break;
        pool.emplace_back(worker, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
  }
  return {found.begin(), found.end()};
}

/// Point search on a labelled curve: the raw height search plus every
/// rational bitangent contact point (any height, even H = 0).
inline std::vector<std::array<Int, 3>> point_search(const LabelledQuartic& curve,
                                                    const Int& H,
                                                    unsigned threads = 2) {
  auto pts = point_search_form(curve.f, H, threads);
  std::set<std::array<Int, 3>> found(pts.begin(), pts.end());
  for (int li = 0; li < 28; ++li) {
    ContactRoots roots = contact_roots(curve.contacts[li]);
    if (!roots.rational) continue;
    for (const auto& st : {roots.r1, roots.r2}) {
      const Rat &s = st[0], &t = st[1];
      std::array<Int, 3> P;
      Int ds = num(s) * den(t), dt = num(t) * den(s);
      for (int k = 0; k < 3; ++k)
        P[k] = ds * curve.contacts[li].param.P[k] + dt * curve.contacts[li].param.Q[k];
      auto v = primitive(std::vector<Int>{P[0], P[1], P[2]});
      std::array<Int, 3> N{v[0], v[1], v[2]};
      if (!(N[0] == 0 && N[1] == 0 && N[2] == 0) && curve.f.evaluate(N) == 0)
        found.insert(N);
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace quartic
