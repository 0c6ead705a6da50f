#pragma once

#include "quartic/curve.hpp"
#include "quartic/ff_forms.hpp"
#include "quartic/linalg.hpp"

#include <optional>
#include <set>
#include <string>

namespace quartic {

struct DegenerateConfiguration : std::invalid_argument {
  explicit DegenerateConfiguration(const std::string& what)
      : std::invalid_argument(what) {}
};
struct ReconstructionFailed : std::runtime_error {
  explicit ReconstructionFailed(const std::string& what)
      : std::runtime_error(what) {}
};
struct SingularBranch : std::runtime_error {
  SingularBranch() : std::runtime_error("branch quartic is singular") {}
};
struct NotBitangent : std::logic_error {
  NotBitangent() : std::logic_error("constructed line fails the bitangency check") {}
};

/// Seven labelled points of P^2: the standard simplex followed by three
/// affine points (u_i : v_i : 1).
struct PointConfiguration {
  std::array<std::array<Int, 3>, 7> pts;
  std::array<Int, 6> moduli;

  static PointConfiguration from_moduli(const std::array<Int, 6>& m) {
    PointConfiguration c;
    c.moduli = m;
    c.pts = {{{1, 0, 0},
              {0, 1, 0},
              {0, 0, 1},
              {1, 1, 1},
              {m[0], m[1], 1},
              {m[2], m[3], 1},
              {m[4], m[5], 1}}};
    return c;
  }
};

namespace detail {

template <class T>
T det3(const std::array<std::array<T, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Int det6(std::array<std::array<Int, 6>, 6> m) {
  // Bareiss on a fixed-size matrix
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < 6; ++k) {
    if (m[k][k] == 0) {
      int sw = k + 1;
      while (sw < 6 && m[sw][k] == 0) ++sw;
      if (sw == 6) return 0;
      std::swap(m[k], m[sw]);
      sign = -sign;
    }
    for (int i = k + 1; i < 6; ++i)
      for (int j = k + 1; j < 6; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return Int(sign) * m[5][5];
}

inline std::array<Int, 6> conic_column(const std::array<Int, 3>& p) {
  return {p[0] * p[0], p[1] * p[1], p[2] * p[2],
          p[0] * p[1], p[0] * p[2], p[1] * p[2]};
}

}  // namespace detail

/// Names the first vanishing minor, or nullopt when the configuration is
/// in general position (no 3 collinear, no 6 on a conic).
inline std::optional<std::string> degeneracy_witness(const PointConfiguration& c) {
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int d = b + 1; d < 7; ++d) {
        std::array<std::array<Int, 3>, 3> m{c.pts[a], c.pts[b], c.pts[d]};
        if (detail::det3(m) == 0)
          return "collinear points p" + std::to_string(a + 1) + ", p" +
                 std::to_string(b + 1) + ", p" + std::to_string(d + 1);
      }
  for (int skip = 0; skip < 7; ++skip) {
    std::array<std::array<Int, 6>, 6> m;
    int col = 0;
    for (int p = 0; p < 7; ++p) {
      if (p == skip) continue;
      auto cc = detail::conic_column(c.pts[p]);
      for (int r = 0; r < 6; ++r) m[r][col] = cc[r];
      ++col;
    }
    if (detail::det6(m) == 0)
      return "six points on a conic (omitting p" + std::to_string(skip + 1) + ")";
  }
  return std::nullopt;
}

inline bool general_position(const PointConfiguration& c) {
  return !degeneracy_witness(c).has_value();
}

/// All 42 general-position minors (35 of size 3, 7 of size 6); every prime
/// of bad reduction of the construction divides one of them.
inline std::vector<Int> general_position_minors(const PointConfiguration& c) {
  std::vector<Int> out;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int d = b + 1; d < 7; ++d) {
        std::array<std::array<Int, 3>, 3> m{c.pts[a], c.pts[b], c.pts[d]};
        out.push_back(detail::det3(m));
      }
  for (int skip = 0; skip < 7; ++skip) {
    std::array<std::array<Int, 6>, 6> m;
    int col = 0;
    for (int p = 0; p < 7; ++p) {
      if (p == skip) continue;
      auto cc = detail::conic_column(c.pts[p]);
      for (int r = 0; r < 6; ++r) m[r][col] = cc[r];
      ++col;
    }
    out.push_back(detail::det6(m));
  }
  return out;
}

/// Basis of the net of cubics through the seven points, as a saturated
/// integer lattice basis (so the reduction mod every prime of good
/// configuration stays a basis of the mod-p net).
inline std::array<TernaryZ, 3> cubic_net(const PointConfiguration& c) {
  if (auto w = degeneracy_witness(c)) throw DegenerateConfiguration(*w);
  const auto& ms = monomials(3);
  IntMatrix M(7, 10);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 10; ++j)
      M.at(i, j) = quartic::pow(c.pts[i][0], unsigned(ms[j][0])) *
                   quartic::pow(c.pts[i][1], unsigned(ms[j][1])) *
                   quartic::pow(c.pts[i][2], unsigned(ms[j][2]));
  auto K = linalg::kernel_lattice(M);
  if (K.size() != 3)
    throw DegenerateConfiguration("cubic net has dimension " +
                                  std::to_string(K.size()));
  std::array<TernaryZ, 3> net;
  for (int k = 0; k < 3; ++k) net[k] = TernaryZ(3, K[k]);
  return net;
}

/// The branch quartic of the anticanonical double cover: the unique
/// (f, lambda) with f(phi_1, phi_2, phi_3) = lambda * J^2, J the Jacobian
/// determinant of the net.  Returned as the primitive integral kernel
/// vector, f nonsingular.
struct BranchQuartic {
  TernaryZ f;
  Int lambda;
  TernaryZ jacobian;
};

inline BranchQuartic branch_quartic(const std::array<TernaryZ, 3>& net) {
  TernaryZ J = jacobian_determinant(net[0], net[1], net[2]);
  if (J.is_zero()) throw ReconstructionFailed("degenerate net (dependent cubics)");
  TernaryZ J2 = J * J;
  // powers of the net cubics up to 4
  std::array<std::vector<TernaryZ>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].push_back(TernaryZ(0, {Int(1)}));
    for (int e = 1; e <= 4; ++e) pw[v].push_back(pw[v].back() * net[v]);
  }
  const auto& m4 = monomials(4);
  IntMatrix M(91, 16);
  for (int col = 0; col < 15; ++col) {
    TernaryZ prod = pw[0][m4[col][0]] * pw[1][m4[col][1]] * pw[2][m4[col][2]];
    for (int r = 0; r < 91; ++r) M.at(r, col) = prod.coeffs()[r];
  }
  for (int r = 0; r < 91; ++r) M.at(r, 15) = -J2.coeffs()[r];
  auto K = linalg::nullspace(M);
  if (K.size() != 1)
    throw ReconstructionFailed("matching system has kernel dimension " +
                               std::to_string(K.size()));
  const auto& v = K[0];
  Int lambda = v[15];
  if (lambda == 0) throw ReconstructionFailed("lambda vanishes");
  TernaryZ f(4, std::vector<Int>(v.begin(), v.begin() + 15));
  if (lambda < 0) {
    // normalize so lambda > 0 (the kernel vector is unique up to sign)
    lambda = -lambda;
    f = -f;
  }
  return {std::move(f), std::move(lambda), std::move(J)};
}

/// Certifies nonsingularity of f over Q by exhibiting a prime of smooth
/// reduction; falls back to the characteristic-zero resultant chain.
inline void certify_smooth(const TernaryZ& f, const std::vector<Int>& avoid) {
  for (Int p = 5; p < 200; p += 2) {
    if (!is_prime(p)) continue;
    bool divides_minor = false;
    for (const auto& m : avoid)
      if (m % p == 0) divides_minor = true;
    if (divides_minor) continue;
    if (quartic_is_smooth_mod_q(p.convert_to<std::uint64_t>(), f)) return;
    break;  // smooth reduction fails at a good prime: settle it over Q
  }
  try {
    discriminant_multiple(f);
  } catch (const SingularCurve&) {
    throw SingularBranch{};
  }
}

/// The 28 labelled bitangent forms of the branch quartic, each verified
/// bitangent via the exact contact identity.
struct BitangentSet {
  std::array<std::array<Int, 3>, 28> lines;
  std::array<Contact, 28> contacts;
};

inline BitangentSet bitangent_lines(const std::array<TernaryZ, 3>& net,
                                    const PointConfiguration& cfg,
                                    const TernaryZ& f) {
  BitangentSet out;
  auto grad_at = [&](const TernaryZ& phi, const std::array<Int, 3>& P) {
    return std::array<Int, 3>{phi.derivative(0).evaluate(P),
                              phi.derivative(1).evaluate(P),
                              phi.derivative(2).evaluate(P)};
  };
  auto phi_at = [&](const std::array<Int, 3>& P) {
    return std::array<Int, 3>{net[0].evaluate(P), net[1].evaluate(P),
                              net[2].evaluate(P)};
  };

  // l_{0i}: image line of the tangent directions at p_i under the net's
  // differential; the column space of the Jacobian matrix at p_i is the
  // line (Euler kills the p_i direction, rank is 2 in general position).
  for (int i = 0; i < 7; ++i) {
    std::array<std::array<Int, 3>, 3> Jm;  // rows: gradients of the phis
    for (int k = 0; k < 3; ++k) Jm[k] = grad_at(net[k], cfg.pts[i]);
    std::array<std::array<Int, 3>, 3> col;
    for (int c = 0; c < 3; ++c) col[c] = {Jm[0][c], Jm[1][c], Jm[2][c]};
    std::array<Int, 3> l{0, 0, 0};
    for (int a = 0; a < 3 && l == std::array<Int, 3>{0, 0, 0}; ++a)
      for (int b = a + 1; b < 3 && l == std::array<Int, 3>{0, 0, 0}; ++b)
        l = cross(col[a], col[b]);
    if (l == std::array<Int, 3>{0, 0, 0})
      throw ReconstructionFailed("degenerate differential at a base point");
    auto lp = primitive(std::vector<Int>{l[0], l[1], l[2]});
    out.lines[label_index(Label(0, i + 1))] = {lp[0], lp[1], lp[2]};
  }

  // l_{ij}: the line p_i p_j maps to a line; take images of two sample
  // points p_i + t p_j (never base points since no three are collinear).
  for (int i = 0; i < 7; ++i) {
    for (int j = i + 1; j < 7; ++j) {
      std::array<Int, 3> im1{0, 0, 0}, im2{0, 0, 0};
      bool have1 = false;
      for (Int t = 1; t < 100; ++t) {
        std::array<Int, 3> A{cfg.pts[i][0] + t * cfg.pts[j][0],
                             cfg.pts[i][1] + t * cfg.pts[j][1],
                             cfg.pts[i][2] + t * cfg.pts[j][2]};
        auto im = phi_at(A);
        if (im == std::array<Int, 3>{0, 0, 0}) continue;  // base point hit
        if (!have1) {
          im1 = im;
          have1 = true;
          continue;
        }
        if (cross(im1, im) != std::array<Int, 3>{0, 0, 0}) {
          im2 = im;
          break;
        }
      }
      if (im2 == std::array<Int, 3>{0, 0, 0})
        throw ReconstructionFailed("could not find two distinct images on a line");
      auto l = cross(im1, im2);
      auto lp = primitive(std::vector<Int>{l[0], l[1], l[2]});
      out.lines[label_index(Label(i + 1, j + 1))] = {lp[0], lp[1], lp[2]};
    }
  }

  // verify bitangency and store contact data
  for (int li = 0; li < 28; ++li) {
    LineParametrization param = parametrize_line(out.lines[li]);
    BinaryZ b = restrict_to_line(f, param);
    if (b.is_zero()) throw NotBitangent{};
    try {
      auto [a, q] = binary_square_root(b);
      out.contacts[li] = Contact{a, q, param};
    } catch (const NotASquare&) {
      throw NotBitangent{};
    }
  }

  // pairwise distinct
  for (int a = 0; a < 28; ++a)
    for (int b = a + 1; b < 28; ++b)
      if (out.lines[a] == out.lines[b]) throw NotBitangent{};
  return out;
}

/// Full construction: points -> net -> branch quartic -> labelled
/// bitangents (syzygy table is filled separately).
inline LabelledQuartic construct_curve(const std::array<Int, 6>& moduli) {
  PointConfiguration cfg = PointConfiguration::from_moduli(moduli);
  auto net = cubic_net(cfg);
  auto bq = branch_quartic(net);
  certify_smooth(bq.f, general_position_minors(cfg));
  auto bits = bitangent_lines(net, cfg, bq.f);
  LabelledQuartic curve;
  curve.moduli = moduli;
  curve.f = std::move(bq.f);
  curve.lambda = std::move(bq.lambda);
  curve.net = net;
  curve.lines = bits.lines;
  curve.contacts = bits.contacts;
  return curve;
}

/// Number of unordered triples of affine points (u : v : 1) over F_q that
/// complete the standard simplex to seven points in general position.
template <class F>
long count_general_position_completions(const F& k) {
  using E = typename F::Elem;
  std::vector<E> elems;
  k.enumerate(elems);
  std::vector<std::array<E, 3>> affine;
  for (const auto& u : elems)
    for (const auto& v : elems) affine.push_back({u, v, k.one()});

  std::array<std::array<E, 3>, 7> pts;
  pts[0] = {k.one(), k.zero(), k.zero()};
  pts[1] = {k.zero(), k.one(), k.zero()};
  pts[2] = {k.zero(), k.zero(), k.one()};
  pts[3] = {k.one(), k.one(), k.one()};

  auto det3f = [&](const std::array<E, 3>& a, const std::array<E, 3>& b,
                   const std::array<E, 3>& c) {
    auto m2 = [&](const E& p, const E& q, const E& r, const E& s) {
      return k.sub(k.mul(p, s), k.mul(q, r));
    };
    E d = k.mul(a[0], m2(b[1], b[2], c[1], c[2]));
    d = k.sub(d, k.mul(a[1], m2(b[0], b[2], c[0], c[2])));
    return k.add(d, k.mul(a[2], m2(b[0], b[1], c[0], c[1])));
  };
  auto conic_col = [&](const std::array<E, 3>& p) {
    return std::array<E, 6>{k.mul(p[0], p[0]), k.mul(p[1], p[1]),
                            k.mul(p[2], p[2]), k.mul(p[0], p[1]),
                            k.mul(p[0], p[2]), k.mul(p[1], p[2])};
  };
  auto det6f = [&](std::array<std::array<E, 6>, 6>& m) {
    E det = k.one();
    for (int c = 0; c < 6; ++c) {
      int piv = c;
      while (piv < 6 && k.is_zero(m[piv][c])) ++piv;
      if (piv == 6) return k.zero();
      if (piv != c) {
        std::swap(m[piv], m[c]);
        det = k.neg(det);
      }
      det = k.mul(det, m[c][c]);
      E inv = k.inv(m[c][c]);
      for (int i = c + 1; i < 6; ++i) {
        if (k.is_zero(m[i][c])) continue;
        E factor = k.mul(m[i][c], inv);
        for (int j = c; j < 6; ++j) m[i][j] = k.sub(m[i][j], k.mul(factor, m[c][j]));
      }
    }
    return det;
  };

  auto general = [&]() {
    for (int a = 0; a < 7; ++a)
      for (int b = a + 1; b < 7; ++b)
        for (int c = b + 1; c < 7; ++c)
          if (k.is_zero(det3f(pts[a], pts[b], pts[c]))) return false;
    for (int skip = 0; skip < 7; ++skip) {
      std::array<std::array<E, 6>, 6> m;
      int col = 0;
      for (int p = 0; p < 7; ++p) {
        if (p == skip) continue;
        auto cc = conic_col(pts[p]);
        for (int r = 0; r < 6; ++r) m[r][col] = cc[r];
        ++col;
      }
      if (k.is_zero(det6f(m))) return false;
    }
    return true;
  };

  long count = 0;
  std::size_t n = affine.size();
  for (std::size_t a = 0; a < n; ++a) {
    pts[4] = affine[a];
    for (std::size_t b = a + 1; b < n; ++b) {
      pts[5] = affine[b];
      for (std::size_t c = b + 1; c < n; ++c) {
        pts[6] = affine[c];
        if (general()) ++count;
      }
    }
  }
  return count;
}

}  // namespace quartic
