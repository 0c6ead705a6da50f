#pragma once

#include "quartic/ff_forms.hpp"
#include "quartic/theta.hpp"

#include <deque>
#include <set>

namespace quartic {

struct DepthExceeded : std::runtime_error {
  DepthExceeded() : std::runtime_error("Hensel ball refinement depth cap hit") {}
};
struct ComponentDeficit : std::logic_error {
  ComponentDeficit()
      : std::logic_error("fewer than four real classes from contact points") {}
};
struct BadReduction : std::invalid_argument {
  BadReduction() : std::invalid_argument("residue scan needs good odd reduction") {}
};

/// Dense bivariate integer polynomial of total degree <= 4 (an affine
/// patch of the quartic).
struct BiPoly {
  std::array<std::array<Int, 5>, 5> c{};  // c[i][j] * x^i y^j

  Int evaluate(const Int& x, const Int& y) const {
    Int acc = 0;
    std::array<Int, 5> xp{1, x, x * x, x * x * x, x * x * x * x};
    std::array<Int, 5> yp{1, y, y * y, y * y * y, y * y * y * y};
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j)
        if (c[i][j] != 0) acc += c[i][j] * xp[i] * yp[j];
    return acc;
  }

  BiPoly dx() const {
    BiPoly r;
    for (int i = 1; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j) r.c[i - 1][j] = c[i][j] * i;
    return r;
  }
  BiPoly dy() const {
    BiPoly r;
    for (int i = 0; i <= 4; ++i)
      for (int j = 1; i + j <= 4; ++j) r.c[i][j - 1] = c[i][j] * j;
    return r;
  }

  /// f(x0 + s x, y0 + s y)
  BiPoly shift_scale(const Int& x0, const Int& y0, const Int& s) const {
    BiPoly r;
    // binomial tables: (x0 + s x)^i expanded in x
    std::array<std::array<Int, 5>, 5> bx{}, by{};
    for (int i = 0; i <= 4; ++i) {
      Int binom = 1;
      for (int k = 0; k <= i; ++k) {
        bx[i][k] = binom * quartic::pow(x0, unsigned(i - k)) * quartic::pow(s, unsigned(k));
        by[i][k] = binom * quartic::pow(y0, unsigned(i - k)) * quartic::pow(s, unsigned(k));
        binom = binom * (i - k) / (k + 1);
      }
    }
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j) {
        if (c[i][j] == 0) continue;
        for (int a = 0; a <= i; ++a)
          for (int b = 0; b <= j; ++b) r.c[a][b] += c[i][j] * bx[i][a] * by[j][b];
      }
    return r;
  }

  Int content() const {
    Int g = 0;
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j) g = gcd(g, c[i][j]);
    return g;
  }
  void divide(const Int& d) {
    for (auto& row : c)
      for (auto& e : row) e /= d;
  }
};

/// Affine patch data: the dehomogenized quartic (content-free) and the
/// 28 line forms as affine-linear functions of the patch coordinates.
struct Patch {
  BiPoly f;
  std::array<std::array<Int, 3>, 28> lines;  // value = L[0] x + L[1] y + L[2]

  Int line_value(int li, const Int& x, const Int& y) const {
    return lines[li][0] * x + lines[li][1] * y + lines[li][2];
  }
};

/// The three standard patches (x:y:1), (x:1:py), (1:px:py) that cover
/// C(Q_p) by integral representatives.
inline std::array<Patch, 3> make_patches(const LabelledQuartic& curve, const Int& p) {
  std::array<Patch, 3> out;
  const auto& ms = monomials(4);
  // substitution exponents: patch k maps (x, y) to the listed projective
  // coordinates; each monomial contributes x^a y^b times a power of p
  auto build = [&](int patch) {
    BiPoly f;
    for (std::size_t t = 0; t < ms.size(); ++t) {
      const Int& co = curve.f.coeffs()[t];
      if (co == 0) continue;
      int a = ms[t][0], b = ms[t][1], cc = ms[t][2];
      int xi = 0, yi = 0;
      Int scale = co;
      switch (patch) {
        case 0: xi = a; yi = b; break;                                  // (x:y:1)
        case 1: xi = a; yi = cc; scale *= quartic::pow(Int(p), unsigned(cc)); break;  // (x:1:py)
        case 2: xi = b; yi = cc; scale *= quartic::pow(Int(p), unsigned(b + cc)); break;  // (1:px:py)
      }
      f.c[xi][yi] += scale;
    }
    Int g = f.content();
    if (g != 0) f.divide(g < 0 ? -g : g);
    Patch P;
    P.f = f;
    for (int li = 0; li < 28; ++li) {
      const auto& l = curve.lines[li];
      switch (patch) {
        case 0: P.lines[li] = {l[0], l[1], l[2]}; break;
        case 1: P.lines[li] = {l[0], l[2] * p, l[1]}; break;
        case 2: P.lines[li] = {l[1] * p, l[2] * p, l[0]}; break;
      }
    }
    return P;
  };
  for (int k = 0; k < 3; ++k) out[k] = build(k);
  return out;
}

struct HenselBall {
  Int x, y;    // center, canonical mod p^depth
  long depth;  // e
};

/// Algorithm: cover the Z_p-solutions of f = 0 with Hensel-liftable
/// balls, recursing with content division where the gradient vanishes.
inline std::vector<HenselBall> hensel_balls(const BiPoly& f, const Int& p,
                                            long depth_cap = 40) {
  std::vector<HenselBall> out;
  BiPoly fx = f.dx(), fy = f.dy();
  struct Item {
    BiPoly g;
    Int x0, y0;  // accumulated center
    long e;      // depth of the accumulated center
  };
  std::deque<Item> work;
  work.push_back({f, 0, 0, 0});
  while (!work.empty()) {
    Item it = work.front();
    work.pop_front();
    if (it.e >= depth_cap) throw DepthExceeded{};
    BiPoly gx = it.g.dx(), gy = it.g.dy();
    for (Int x0 = 0; x0 < p; ++x0) {
      for (Int y0 = 0; y0 < p; ++y0) {
        if (it.g.evaluate(x0, y0) % p != 0) continue;
        bool unit_grad =
            gx.evaluate(x0, y0) % p != 0 || gy.evaluate(x0, y0) % p != 0;
        Int cx = it.x0 + x0 * quartic::pow(Int(p), unsigned(it.e));
        Int cy = it.y0 + y0 * quartic::pow(Int(p), unsigned(it.e));
        if (unit_grad) {
          out.push_back({cx, cy, it.e + 1});
        } else {
          BiPoly g2 = it.g.shift_scale(x0, y0, p);
          Int ct = g2.content();
          if (ct != 0) g2.divide(ct < 0 ? -ct : ct);
          work.push_back({g2, cx, cy, it.e + 1});
        }
      }
    }
  }
  return out;
}

/// Explicit local image of gamma on one patch (Algorithm: LocalImage),
/// with ball refinement until every coordinate is provably constant.
inline void local_image_patch(const LabelledQuartic& curve, const Patch& patch,
                              const Int& p, std::set<F2Vec>& out,
                              long depth_cap = 40) {
  long ord4 = p == 2 ? 2 : 0;
  Place v = Place::prime(p);
  std::deque<HenselBall> work;
  for (auto& b : hensel_balls(patch.f, p, depth_cap)) work.push_back(b);
  while (!work.empty()) {
    HenselBall ball = work.front();
    work.pop_front();
    if (ball.depth >= depth_cap) throw DepthExceeded{};
    std::array<Int, 28> L;
    for (int li = 0; li < 28; ++li) L[li] = patch.line_value(li, ball.x, ball.y);
    auto stable = [&](const Int& val) {
      return val != 0 && valuation(val, p) < ball.depth - ord4;
    };
    std::array<F2Vec, 8> raw;
    bool need_refine = false;
    for (int i = 1; i <= 7 && !need_refine; ++i) {
      int li = label_index(Label(0, i));
      if (stable(L[li])) {
        raw[i] = square_class(Rat(L[li]), v).bits;
        continue;
      }
      bool found = false;
      for (int qi : quadruples_by_label()[li]) {
        const SyzygeticData& sd = curve.syzygies[qi];
        bool ok = true;
        Rat prod = sd.delta;
        for (int other : sd.labels) {
          if (other == li) continue;
          if (!stable(L[other])) {
            ok = false;
            break;
          }
          prod *= Rat(L[other]);
        }
        if (!ok) continue;
        raw[i] = square_class(prod, v).bits;
        found = true;
        break;
      }
      if (!found) need_refine = true;
    }
    if (!need_refine) {
      out.insert(normalize_diagonal(v, raw).bits);
      continue;
    }
    // refine: recenter at depth e, enumerate residue solutions
    Int pe = quartic::pow(Int(p), unsigned(ball.depth));
    BiPoly g = patch.f.shift_scale(ball.x, ball.y, pe);
    Int ct = g.content();
    if (ct != 0) g.divide(ct < 0 ? -ct : ct);
    for (Int x1 = 0; x1 < p; ++x1)
      for (Int y1 = 0; y1 < p; ++y1)
        if (g.evaluate(x1, y1) % p == 0)
          work.push_back({ball.x + pe * x1, ball.y + pe * y1, ball.depth + 1});
  }
}

/// Finite set of local twist values at a place, with a completeness flag
/// (an incomplete set is only usable as "no information").
struct LocalImageSet {
  Place place;
  std::set<F2Vec> values;
  bool complete = true;
};

/// gamma_p(C(Q_p)) by the three-patch ball subdivision; mandatory route
/// for p = 2 and bad primes, valid for every p.
inline LocalImageSet local_image_padic(const LabelledQuartic& curve, const Int& p,
                                       long depth_cap = 40) {
  LocalImageSet out{Place::prime(p), {}, true};
  auto patches = make_patches(curve, p);
  try {
    for (const auto& patch : patches)
      local_image_patch(curve, patch, p, out.values, depth_cap);
  } catch (const DepthExceeded&) {
    out.complete = false;
  }
  return out;
}

/// gamma_p(C(Q_p)) at an odd prime of good reduction, by scanning the
/// residue curve: the class of a lifted point is determined by its
/// reduction.  Throws BadReduction if the fallback table cannot settle a
/// residue point (the caller escalates to the p-adic route).
inline LocalImageSet local_image_good_odd(const LabelledQuartic& curve,
                                          std::uint64_t p) {
  if (p == 2) throw BadReduction{};
  PrimeField fp(p);
  ResiduePointCtx ctx{fp};
  Place v = Place::prime(Int(p));
  auto fbar = FFTernary<PrimeField>::reduce(fp, curve.f);
  LocalImageSet out{v, {}, true};
  bool failed = false;
  for_each_projective_point(fp, [&](const std::array<std::uint64_t, 3>& P) {
    if (failed || !fp.is_zero(fbar.evaluate(P))) return;
    try {
      out.values.insert(gamma(curve, ctx, P, v).bits);
    } catch (const NoUsableQuadruple&) {
      failed = true;
    }
  });
  if (failed) throw BadReduction{};
  return out;
}

/// Image at an odd prime: residue scan when possible, else ball
/// subdivision.
inline LocalImageSet local_image_odd(const LabelledQuartic& curve,
                                     std::uint64_t p, bool good_reduction,
                                     long depth_cap = 40) {
  if (good_reduction) {
    try {
      return local_image_good_odd(curve, p);
    } catch (const BadReduction&) {
    }
  }
  return local_image_padic(curve, Int(p), depth_cap);
}

// ---------------------------------------------------------------------------
// Contact points over R and Q_p.
// ---------------------------------------------------------------------------

/// The two contact points of one bitangent as (s : t) roots of the
/// contact quadratic, in the splitting field.
struct ContactRoots {
  bool rational;         // both roots rational (includes hyperflex)
  std::array<Rat, 2> r1, r2;  // (s, t) pairs when rational
  Int disc = 0;          // discriminant when irrational
};

inline ContactRoots contact_roots(const Contact& ct) {
  const Int &qa = ct.q[0], &qb = ct.q[1], &qc = ct.q[2];
  ContactRoots out;
  if (qa == 0) {
    out.rational = true;
    out.r1 = {Rat(1), Rat(0)};
    if (qb == 0) {
      out.r2 = {Rat(0), Rat(1)};  // q = c t^2 would be degenerate; qa=qb=0 => q = qc t^2
      out.r1 = {Rat(1), Rat(0)};
      out.r2 = {Rat(1), Rat(0)};
    } else {
      out.r2 = {Rat(-qc), Rat(qb)};
    }
    return out;
  }
  Int D = qb * qb - 4 * qa * qc;
  if (is_square(D >= 0 ? D : Int(0)) && D >= 0) {
    Int r = isqrt(D);
    out.rational = true;
    out.r1 = {Rat(-qb + r), Rat(2 * qa)};
    out.r2 = {Rat(-qb - r), Rat(2 * qa)};
    return out;
  }
  out.rational = false;
  out.disc = D;
  return out;
}

/// Real contact points of one bitangent as RealQuadratic coordinate
/// triples; empty when the contact points are complex conjugate.
inline std::vector<std::array<RealQuadratic, 3>> real_contact_points(
    const Contact& ct) {
  std::vector<std::array<RealQuadratic, 3>> out;
  auto mk_rational = [&](const Rat& s, const Rat& t) {
    std::array<RealQuadratic, 3> P;
    for (int k = 0; k < 3; ++k)
      P[k] = RealQuadratic(s * Rat(ct.param.P[k]) + t * Rat(ct.param.Q[k]));
    return P;
  };
  ContactRoots roots = contact_roots(ct);
  if (roots.rational) {
    out.push_back(mk_rational(roots.r1[0], roots.r1[1]));
    out.push_back(mk_rational(roots.r2[0], roots.r2[1]));
    return out;
  }
  if (roots.disc < 0) return out;
  // (s, t) = (-qb ± sqrt(D), 2 qa)
  const Int &qa = ct.q[0], &qb = ct.q[1];
  for (int sign : {1, -1}) {
    std::array<RealQuadratic, 3> P;
    for (int k = 0; k < 3; ++k) {
      // (-qb ± sqrt D) P_k + 2 qa Q_k
      P[k] = RealQuadratic(Rat(-qb * ct.param.P[k] + 2 * qa * ct.param.Q[k]),
                           Rat(sign * ct.param.P[k]), roots.disc);
    }
    out.push_back(P);
  }
  return out;
}

/// Q_p-rational contact points of one bitangent to the given precision;
/// empty when the contact quadratic does not split over Q_p.
inline std::vector<std::array<Padic, 3>> padic_contact_points(const Contact& ct,
                                                              const Int& p,
                                                              long prec) {
  std::vector<std::array<Padic, 3>> out;
  auto mk = [&](const Padic& s, const Padic& t) {
    std::array<Padic, 3> P;
    for (int k = 0; k < 3; ++k)
      P[k] = s * Padic::from_int(ct.param.P[k], p, prec) +
             t * Padic::from_int(ct.param.Q[k], p, prec);
    return P;
  };
  ContactRoots roots = contact_roots(ct);
  if (roots.rational) {
    out.push_back(mk(Padic::from_rat(roots.r1[0], p, prec),
                     Padic::from_rat(roots.r1[1], p, prec)));
    out.push_back(mk(Padic::from_rat(roots.r2[0], p, prec),
                     Padic::from_rat(roots.r2[1], p, prec)));
    return out;
  }
  Padic D = Padic::from_int(roots.disc, p, prec);
  if (!D.square_class().is_trivial()) return out;
  Padic r = D.sqrt();
  const Int &qa = ct.q[0], &qb = ct.q[1];
  Padic mb = Padic::from_int(-qb, p, prec);
  Padic qa2 = Padic::from_int(2 * qa, p, prec);
  out.push_back(mk(mb + r, qa2));
  out.push_back(mk(mb - r, qa2));
  return out;
}

// ---------------------------------------------------------------------------
// Local spans W_v.
// ---------------------------------------------------------------------------

/// F2-span of local gamma-tilde values at a place, with parity slices.
struct LocalSpan {
  Place place;
  F2Subspace W;      // subspace of F2^(1 + 6 b)
  bool lemma_exact;  // difference span hit the Jacobian dimension bound

  std::size_t parity_dim() const { return 1 + TwistCoordinates::dim(place); }

  /// Kernel of the parity projection.
  F2Subspace W0() const {
    F2Subspace out(W.ambient());
    const auto& basis = W.basis();
    // any basis vector with parity bit set clears the others
    const F2Vec* odd = nullptr;
    for (const auto& b : basis)
      if (b.get(0)) {
        odd = &b;
        break;
      }
    for (const auto& b : basis) {
      if (&b == odd) continue;
      out.add(b.get(0) && odd ? b ^ *odd : b);
    }
    return out;
  }

  /// Parity-1 slice as an affine set (empty when W is parity-pure).
  F2Affine W1() const {
    const F2Vec* odd = nullptr;
    for (const auto& b : W.basis())
      if (b.get(0)) {
        odd = &b;
        break;
      }
    if (!odd) return F2Affine::empty_set(W.ambient());
    return F2Affine::of(*odd, W0());
  }
};

/// The unramified subgroup of L'(2, Q_p) in normalized coordinates: all
/// valuation-parity bits zero (64 elements, dimension 6).
inline F2Subspace unramified_subgroup(const Int& p) {
  Place v = Place::prime(p);
  if (v.is_two()) throw std::invalid_argument("odd p required");
  std::size_t b = v.class_bits();
  F2Subspace s(6 * b);
  for (int k = 0; k < 6; ++k) {
    F2Vec e(6 * b);
    e.set(k * b + 1, true);  // unit bit of block k
    s.add(e);
  }
  return s;
}

inline std::size_t lemma_threshold(const Place& v) {
  if (v.is_real()) return 3;
  if (v.is_two()) return 9;
  return 6;
}

/// Exactly four sign-vector classes from real bitangent contact points.
inline LocalImageSet local_image_real(const LabelledQuartic& curve) {
  LocalImageSet out{Place::infinite(), {}, true};
  RealPointCtx ctx;
  for (int li = 0; li < 28 && out.values.size() < 4; ++li) {
    for (const auto& P : real_contact_points(curve.contacts[li])) {
      out.values.insert(gamma(curve, ctx, P, Place::infinite()).bits);
      if (out.values.size() >= 4) break;
    }
  }
  if (out.values.size() != 4) throw ComponentDeficit{};
  return out;
}

struct LocalOptions {
  long padic_start_prec_extra = 12;  // working precision ord_p(4) + this
  long padic_prec_cap = 400;
  long depth_cap = 40;
  std::uint64_t scan_bound = 997;    // residue scans for odd good p up to this
  std::uint64_t enum_bound = 1500;   // ball subdivision affordable up to this
};

/// W_v from contact points when Lemma's difference bound is reached,
/// else from the full local image, else a sound upper bound.
/// good_reduction: caller's knowledge about the place (false for v in S).
inline LocalSpan local_span(const LabelledQuartic& curve, const Place& v,
                            bool good_reduction, const LocalOptions& opt = {}) {
  std::size_t dim = 1 + TwistCoordinates::dim(v);
  std::vector<F2Vec> vecs;  // gamma-tilde values (parity 1)

  if (v.is_real()) {
    RealPointCtx ctx;
    for (int li = 0; li < 28; ++li)
      for (const auto& P : real_contact_points(curve.contacts[li]))
        vecs.push_back(with_parity(true, gamma(curve, ctx, P, v).bits));
  } else {
    long ord4 = v.p == 2 ? 2 : 0;
    long prec = ord4 + opt.padic_start_prec_extra;
    while (true) {
      try {
        vecs.clear();
        PadicPointCtx ctx{v.p, prec};
        for (int li = 0; li < 28; ++li)
          for (const auto& P : padic_contact_points(curve.contacts[li], v.p, prec))
            vecs.push_back(with_parity(true, gamma(curve, ctx, P, v).bits));
        break;
      } catch (const InsufficientPrecision&) {
        prec *= 2;
        if (prec > opt.padic_prec_cap) {
          vecs.clear();
          break;
        }
      }
    }
  }

  auto span_of = [&](const std::vector<F2Vec>& vs) {
    F2Subspace W(dim);
    for (const auto& x : vs) W.add(x);
    return W;
  };
  auto diff_dim = [&](const std::vector<F2Vec>& vs) {
    F2Subspace D(dim);
    for (std::size_t i = 1; i < vs.size(); ++i) D.add(vs[i] ^ vs[0]);
    return D.dim();
  };

  if (!vecs.empty() && diff_dim(vecs) >= lemma_threshold(v))
    return {v, span_of(vecs), true};

  if (v.is_real()) {
    // the four component classes always generate (and the contact points
    // hit all components), so reaching this line means too few contacts
    // were real; the image route below cannot do better
    throw ComponentDeficit{};
  }

  // full-image fallback for affordable residue size
  if (v.p <= Int(opt.enum_bound)) {
    LocalImageSet img = local_image_odd(curve, v.p.convert_to<std::uint64_t>(),
                                        good_reduction, opt.depth_cap);
    if (img.complete && !img.values.empty()) {
      std::vector<F2Vec> ivecs;
      for (const auto& x : img.values) ivecs.push_back(with_parity(true, x));
      return {v, span_of(ivecs), diff_dim(ivecs) >= lemma_threshold(v)};
    }
    if (img.complete && img.values.empty()) {
      // local obstruction: the span of the empty set
      return {v, F2Subspace(dim), true};
    }
  }

  // sound upper bounds: unramified at certified good odd places, the full
  // group otherwise
  if (!v.is_two() && good_reduction) {
    F2Subspace W(dim);
    F2Vec par(dim);
    par.set(0, true);
    W.add(par);
    for (const auto& b : unramified_subgroup(v.p).basis())
      W.add(with_parity(false, b));
    return {v, W, false};
  }
  return {v, F2Subspace::full(dim), false};
}

}  // namespace quartic
