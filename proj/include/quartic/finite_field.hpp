#pragma once

#include "quartic/numeric.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace quartic {

struct EvenCharacteristic : std::domain_error {
  EvenCharacteristic() : std::domain_error("odd characteristic required") {}
};

/// F_p for word-sized p (residue enumeration only happens at small p).
struct PrimeField {
  std::uint64_t p;

  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t p_) : p(p_) {}

  std::uint64_t order() const { return p; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem from_int(const Int& n) const {
    Int r = n % Int(p);
    if (r < 0) r += p;
    return r.convert_to<std::uint64_t>();
  }
  Elem add(Elem a, Elem b) const { return (a + b) % p; }
  Elem sub(Elem a, Elem b) const { return (a + p - b) % p; }
  Elem neg(Elem a) const { return a ? p - a : 0; }
  Elem mul(Elem a, Elem b) const {
    return (Elem)((unsigned __int128)a * b % p);
  }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem inv(Elem a) const { return pow(a, p - 2); }

  void enumerate(std::vector<Elem>& out) const {
    out.clear();
    for (Elem a = 0; a < p; ++a) out.push_back(a);
  }

  /// Legendre symbol as a bit: true iff a is a nonzero square.
  bool is_square(Elem a) const {
    if (p == 2) throw EvenCharacteristic{};
    if (a == 0) throw ZeroValue{};
    return pow(a, (p - 1) / 2) == 1;
  }

  /// Smallest quadratic non-residue.
  Elem nonresidue() const {
    for (Elem a = 2; a < p; ++a)
      if (!is_square(a)) return a;
    throw std::logic_error("no nonresidue found");
  }

  /// Tonelli-Shanks square root; a must be a nonzero square.
  Elem sqrt(Elem a) const {
    if (p % 4 == 3) return pow(a, (p + 1) / 4);
    std::uint64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) q /= 2, ++s;
    Elem z = nonresidue();
    std::uint64_t m = s;
    Elem c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
    while (t != 1) {
      Elem tt = t;
      std::uint64_t i = 0;
      while (tt != 1) tt = mul(tt, tt), ++i;
      Elem b = pow(c, std::uint64_t(1) << (m - i - 1));
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
    return r;
  }
};

/// Quadratic extension Base[t]/(t^2 - s) with s the first non-square of
/// Base in enumeration order.  Stacking two of these on PrimeField gives
/// the degree-4 extension used for smoothness certification at small p.
template <class Base>
struct QuadExt {
  Base base;
  typename Base::Elem s;

  struct Elem {
    typename Base::Elem a, b;
    friend bool operator==(const Elem&, const Elem&) = default;
  };

  explicit QuadExt(Base base_) : base(std::move(base_)), s(find_nonresidue()) {}

  std::uint64_t order() const { return base.order() * base.order(); }
  Elem zero() const { return {base.zero(), base.zero()}; }
  Elem one() const { return {base.one(), base.zero()}; }
  bool is_zero(const Elem& x) const {
    return base.is_zero(x.a) && base.is_zero(x.b);
  }

  Elem from_int(const Int& n) const { return {base.from_int(n), base.zero()}; }
  Elem embed(typename Base::Elem a) const { return {a, base.zero()}; }
  Elem add(const Elem& x, const Elem& y) const {
    return {base.add(x.a, y.a), base.add(x.b, y.b)};
  }
  Elem sub(const Elem& x, const Elem& y) const {
    return {base.sub(x.a, y.a), base.sub(x.b, y.b)};
  }
  Elem neg(const Elem& x) const { return {base.neg(x.a), base.neg(x.b)}; }
  Elem mul(const Elem& x, const Elem& y) const {
    // (a + bt)(c + dt) = ac + s bd + (ad + bc) t
    return {base.add(base.mul(x.a, y.a), base.mul(s, base.mul(x.b, y.b))),
            base.add(base.mul(x.a, y.b), base.mul(x.b, y.a))};
  }
  Elem pow(Elem x, std::uint64_t e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  Elem inv(const Elem& x) const {
    // 1/(a + bt) = (a - bt) / (a^2 - s b^2)
    auto n = base.sub(base.mul(x.a, x.a), base.mul(s, base.mul(x.b, x.b)));
    auto ni = base.inv(n);
    return {base.mul(x.a, ni), base.mul(base.neg(x.b), ni)};
  }

  void enumerate(std::vector<Elem>& out) const {
    out.clear();
    std::vector<typename Base::Elem> be;
    base.enumerate(be);
    for (const auto& a : be)
      for (const auto& b : be) out.push_back({a, b});
  }

  bool is_square(const Elem& x) const {
    if (is_zero(x)) throw ZeroValue{};
    return pow(x, (order() - 1) / 2) == one();
  }

  /// Deterministic generator: first element of full multiplicative order
  /// in enumeration order.
  Elem generator() const {
    std::uint64_t n = order() - 1;
    auto facs = factor(Int(n));
    std::vector<Elem> elems;
    enumerate(elems);
    for (const auto& g : elems) {
      if (is_zero(g)) continue;
      bool ok = true;
      for (const auto& [q, e] : facs) {
        if (pow(g, n / q.template convert_to<std::uint64_t>()) == one()) {
          ok = false;
          break;
        }
      }
      if (ok) return g;
    }
    throw std::logic_error("no generator found");
  }

 private:
  typename Base::Elem find_nonresidue() const {
    std::vector<typename Base::Elem> elems;
    base.enumerate(elems);
    for (const auto& a : elems) {
      if (base.is_zero(a)) continue;
      if (!base.is_square(a)) return a;
    }
    throw std::logic_error("no nonresidue in base field");
  }
};

using QuadField = QuadExt<PrimeField>;     // F_{p^2}
using QuarticField = QuadExt<QuadField>;   // F_{p^4}

inline QuadField make_Fq2(std::uint64_t p) { return QuadField(PrimeField(p)); }
inline QuarticField make_Fq4(std::uint64_t p) {
  return QuarticField(make_Fq2(p));
}

}  // namespace quartic
