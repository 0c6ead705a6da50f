#pragma once

#include "quartic/curve.hpp"
#include "quartic/finite_field.hpp"
#include "quartic/linalg.hpp"
#include "quartic/padic.hpp"
#include "quartic/real_quadratic.hpp"
#include "quartic/square_class.hpp"

#include <optional>

namespace quartic {

struct NotSyzygetic : std::logic_error {
  NotSyzygetic() : std::logic_error("contact conic system has trivial kernel") {}
};
struct DegenerateIdentity : std::runtime_error {
  DegenerateIdentity() : std::runtime_error("syzygy identity degenerates") {}
};
struct NoUsableQuadruple : std::runtime_error {
  NoUsableQuadruple()
      : std::runtime_error("no syzygetic quadruple evaluates to units") {}
};

/// Element of F2 x L'(2, Q_v): bit 0 is the degree parity, then six
/// blocks of v.class_bits() bits, block k holding the class of the
/// gamma-coordinate k+1 minus coordinate 7 (the canonical diagonal-
/// quotient representative normalizes coordinate 7 to the trivial class).
struct TwistCoordinates {
  Place place;
  F2Vec bits;  // length 6 * class_bits, no parity

  static std::size_t dim(const Place& v) { return 6 * v.class_bits(); }

  friend bool operator==(const TwistCoordinates&, const TwistCoordinates&) = default;
  friend bool operator<(const TwistCoordinates& a, const TwistCoordinates& b) {
    return a.bits < b.bits;
  }
};

inline F2Vec with_parity(bool parity, const F2Vec& coords) {
  F2Vec out(coords.size() + 1);
  out.set(0, parity);
  for (std::size_t i = 0; i < coords.size(); ++i) out.set(i + 1, coords.get(i));
  return out;
}

/// Assembles the diagonal-quotient representative from the seven raw
/// square classes.
inline TwistCoordinates normalize_diagonal(const Place& v,
                                           const std::array<F2Vec, 8>& raw) {
  // raw[1..7] are the classes of l_1(P), ..., l_7(P)
  std::size_t b = v.class_bits();
  TwistCoordinates t{v, F2Vec(6 * b)};
  for (int k = 0; k < 6; ++k) {
    F2Vec block = raw[k + 1] ^ raw[7];
    for (std::size_t s = 0; s < b; ++s) t.bits.set(k * b + s, block.get(s));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Syzygetic data: solve for the contact conic and the identity scalars.
// ---------------------------------------------------------------------------

/// Exact (delta, c, Q) for one syzygetic quadruple of the curve: the
/// conic is pinned by proportionality of its restriction to each line
/// with that line's contact quadratic.
inline SyzygeticData syzygy_data(const LabelledQuartic& curve,
                                 const std::array<int, 4>& quad) {
  const auto& m2 = monomials(2);
  // rows: 4 lines x 3 binary-quadratic coefficients; cols: 6 conic
  // coefficients then 4 proportionality scalars
  RationalMatrix M(12, 10);
  for (int t = 0; t < 4; ++t) {
    const Contact& ct = curve.contacts[quad[t]];
    for (std::size_t mi = 0; mi < 6; ++mi) {
      TernaryZ mono(2);
      mono.coeffs()[mi] = 1;
      BinaryZ r = restrict_to_line(mono, ct.param);
      for (int k = 0; k < 3; ++k) M.at(3 * t + k, mi) = Rat(r[k]);
    }
    for (int k = 0; k < 3; ++k) M.at(3 * t + k, 6 + t) = -Rat(ct.q[k]);
  }
  auto K = rational_nullspace(M);
  if (K.empty()) throw NotSyzygetic{};
  if (K.size() > 1) throw DegenerateIdentity{};
  TernaryZ conic = primitive_form(
      TernaryZ(2, std::vector<Int>(K[0].begin(), K[0].begin() + 6)));

  // delta, c from l1 l2 l3 l4 = delta Q^2 + c f: kernel of [Q^2 | f | -L]
  TernaryZ Q2 = conic * conic;
  TernaryZ L(0, {Int(1)});
  for (int t = 0; t < 4; ++t) {
    TernaryZ lin(1);
    for (int k = 0; k < 3; ++k) lin.coeffs()[k] = curve.lines[quad[t]][k];
    L = L * lin;
  }
  IntMatrix A(15, 3);
  for (int r = 0; r < 15; ++r) {
    A.at(r, 0) = Q2.coeffs()[r];
    A.at(r, 1) = curve.f.coeffs()[r];
    A.at(r, 2) = -L.coeffs()[r];
  }
  auto K2 = linalg::nullspace(A);
  if (K2.size() != 1 || K2[0][2] == 0) throw DegenerateIdentity{};
  Rat delta = Rat(K2[0][0]) / Rat(K2[0][2]);
  Rat c = Rat(K2[0][1]) / Rat(K2[0][2]);
  if (delta == 0 || c == 0) throw DegenerateIdentity{};
  // verify the identity exactly
  TernaryQ resid = to_rational(L) - to_rational(Q2) * delta - to_rational(curve.f) * c;
  if (!resid.is_zero()) throw DegenerateIdentity{};
  return SyzygeticData{quad, delta, c, conic};
}

/// Fills the full 315-entry table, aligned with syzygetic_quadruples().
inline void compute_syzygies(LabelledQuartic& curve) {
  curve.syzygies.clear();
  curve.syzygies.reserve(syzygetic_quadruples().size());
  for (const auto& q : syzygetic_quadruples())
    curve.syzygies.push_back(syzygy_data(curve, q));
}

// ---------------------------------------------------------------------------
// gamma: evaluation contexts over the supported coefficient domains.
// Each context provides Value, eval of an integral linear form at the
// point, lift of a rational scalar, a usability test, and square classes.
// ---------------------------------------------------------------------------

/// Exact rational point, classes taken at a chosen place.
struct RationalPointCtx {
  Place v;
  using Value = Rat;

  static Value eval(const std::array<Int, 3>& l, const std::array<Rat, 3>& P) {
    return Rat(l[0]) * P[0] + Rat(l[1]) * P[1] + Rat(l[2]) * P[2];
  }
  std::optional<Value> lift(const Rat& r) const { return r; }
  bool usable(const Value& w) const { return w != 0; }
  F2Vec cls(const Value& w) const { return square_class(w, v).bits; }
};

/// Point with coordinates in Q(sqrt(d)) under the real embedding.
struct RealPointCtx {
  using Value = RealQuadratic;

  static Value eval(const std::array<Int, 3>& l,
                    const std::array<RealQuadratic, 3>& P) {
    return P[0] * Rat(l[0]) + P[1] * Rat(l[1]) + P[2] * Rat(l[2]);
  }
  std::optional<Value> lift(const Rat& r) const { return RealQuadratic(r); }
  bool usable(const Value& w) const { return !w.is_zero(); }
  F2Vec cls(const Value& w) const {
    F2Vec b(1);
    b.set(0, w.sign() < 0);
    return b;
  }
};

/// p-adic point known to finite precision.
struct PadicPointCtx {
  Int p;
  long prec;

  using Value = Padic;

  Value eval(const std::array<Int, 3>& l, const std::array<Padic, 3>& P) const {
    Padic acc = Padic::zero(p);
    for (int k = 0; k < 3; ++k)
      acc = acc + Padic::from_int(l[k], p, prec) * P[k];
    return acc;
  }
  std::optional<Value> lift(const Rat& r) const {
    if (r == 0) return std::nullopt;
    return Padic::from_rat(r, p, prec);
  }
  bool usable(const Value& w) const {
    long ord4 = p == 2 ? 2 : 0;
    return !w.exact_zero() && !w.indistinguishable_from_zero() &&
           w.precision() >= ord4 + 1;
  }
  F2Vec cls(const Value& w) const { return w.square_class().bits; }
};

/// Residue point over F_p at a prime of good reduction (odd p): classes
/// of the lifted values are determined by the reduction.
struct ResiduePointCtx {
  PrimeField fp;

  using Value = std::uint64_t;

  Value eval(const std::array<Int, 3>& l,
             const std::array<std::uint64_t, 3>& P) const {
    std::uint64_t acc = 0;
    for (int k = 0; k < 3; ++k)
      acc = fp.add(acc, fp.mul(fp.from_int(l[k]), P[k]));
    return acc;
  }
  std::optional<Value> lift(const Rat& r) const {
    if (valuation(r, Int(fp.p)) != 0) return std::nullopt;
    Int pp(fp.p);
    Int u = ((num(r) % pp) + pp) % pp * Padic::inv_mod(den(r), pp) % pp;
    return fp.from_int(u);
  }
  bool usable(const Value& w) const { return w != 0; }
  F2Vec cls(const Value& w) const {
    F2Vec b(2);  // valuation parity 0, unit bit from the Legendre symbol
    b.set(1, !fp.is_square(w));
    return b;
  }
};

/// gamma(P): the seven coordinate classes, with the syzygetic fallback
/// for a vanishing (or precision-starved) Aronhold line, reduced to the
/// canonical diagonal-quotient representative.
template <class Ctx, class Pt>
TwistCoordinates gamma(const LabelledQuartic& curve, const Ctx& ctx,
                       const Pt& P, const Place& v) {
  std::array<F2Vec, 8> raw;
  bool precision_starved = false;
  for (int i = 1; i <= 7; ++i) {
    int li = label_index(Label(0, i));
    auto w = ctx.eval(curve.lines[li], P);
    if (ctx.usable(w)) {
      raw[i] = ctx.cls(w);
      continue;
    }
    bool found = false;
    for (int qi : quadruples_by_label()[li]) {
      const SyzygeticData& sd = curve.syzygies[qi];
      auto d = ctx.lift(sd.delta);
      if (!d) continue;
      typename Ctx::Value prod = *d;
      bool ok = true;
      for (int other : sd.labels) {
        if (other == li) continue;
        auto wv = ctx.eval(curve.lines[other], P);
        if (!ctx.usable(wv)) {
          ok = false;
          break;
        }
        prod = prod * wv;
      }
      if (!ok || !ctx.usable(prod)) continue;
      raw[i] = ctx.cls(prod);
      found = true;
      break;
    }
    if (!found) {
      precision_starved = true;
      break;
    }
  }
  if (precision_starved) {
    // distinguish "retry deeper" from a genuine failure: exact contexts
    // cannot recover by precision
    if constexpr (std::is_same_v<Ctx, PadicPointCtx>)
      throw InsufficientPrecision{};
    else
      throw NoUsableQuadruple{};
  }
  return normalize_diagonal(v, raw);
}

/// gamma-tilde on a formal sum of points: degree parity plus the F2 sum
/// of coordinates.
template <class Ctx, class Pt>
std::pair<bool, TwistCoordinates> gamma_tilde(
    const LabelledQuartic& curve, const Ctx& ctx,
    const std::vector<std::pair<Pt, long>>& divisor, const Place& v) {
  bool parity = false;
  TwistCoordinates acc{v, F2Vec(TwistCoordinates::dim(v))};
  for (const auto& [P, mult] : divisor) {
    if (mult % 2 == 0) continue;
    parity = !parity;
    acc.bits ^= gamma(curve, ctx, P, v).bits;
  }
  return {parity, acc};
}

}  // namespace quartic
