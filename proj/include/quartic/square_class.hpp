#pragma once

#include "quartic/f2.hpp"
#include "quartic/numeric.hpp"

#include <compare>

namespace quartic {

/// A place of Q: the real place or a finite prime.
struct Place {
  bool real = false;
  Int p = 0;

  static Place infinite() { return {true, 0}; }
  static Place prime(Int q) { return {false, std::move(q)}; }

  bool is_real() const { return real; }
  bool is_two() const { return !real && p == 2; }

  /// Number of F2 coordinates of Q_v^x / squares.
  std::size_t class_bits() const { return real ? 1 : (p == 2 ? 3 : 2); }

  friend bool operator==(const Place& a, const Place& b) {
    return a.real == b.real && a.p == b.p;
  }
  friend bool operator<(const Place& a, const Place& b) {
    if (a.real != b.real) return a.real;  // real place sorts first
    return a.p < b.p;
  }

  std::string str() const { return real ? "inf" : p.str(); }
};

/// Element of Q_v^x / (Q_v^x)^2 as an F2 vector:
///   real place: [sign]
///   odd p:      [valuation parity, unit non-residue bit]
///   p = 2:      [valuation parity, unit bits on the basis {-1, 5} mod 8]
struct SquareClass {
  Place place;
  F2Vec bits;

  static SquareClass trivial(const Place& v) { return {v, F2Vec(v.class_bits())}; }

  SquareClass operator+(const SquareClass& o) const {
    return {place, bits ^ o.bits};
  }
  SquareClass& operator+=(const SquareClass& o) {
    bits ^= o.bits;
    return *this;
  }
  bool is_trivial() const { return bits.is_zero(); }
  friend bool operator==(const SquareClass&, const SquareClass&) = default;
};

namespace classes {

inline F2Vec unit_bits_mod8(const Int& u) {
  // u odd; class of u mod 8 on the basis {-1, 5}
  F2Vec b(2);
  switch ((u % 8 + 8).convert_to<int>() % 8) {
    case 1: break;
    case 5: b.set(1, true); break;
    case 7: b.set(0, true); break;
    case 3: b.set(0, true); b.set(1, true); break;
  }
  return b;
}

inline bool legendre_is_square(const Int& a, const Int& p) {
  // p odd prime, a a unit mod p
  Int r = boost::multiprecision::powm(((a % p) + p) % p, (p - 1) / 2, p);
  return r == 1;
}

}  // namespace classes

/// Exact square class of a nonzero rational at a place.
inline SquareClass square_class(const Rat& x, const Place& v) {
  if (x == 0) throw ZeroValue{};
  SquareClass c = SquareClass::trivial(v);
  if (v.is_real()) {
    c.bits.set(0, x < 0);
    return c;
  }
  long val = valuation(x, v.p);
  Rat u = x / quartic::pow(Rat(v.p), unsigned(std::abs(val)));
  if (val < 0) u = x * quartic::pow(Rat(v.p), unsigned(-val));
  // unit part as an integer mod p^3 (enough for both cases)
  Int mod = v.p * v.p * v.p;
  Int un = ((num(u) % mod) + mod) % mod;
  Int ud = ((den(u) % mod) + mod) % mod;
  // inverse of the unit ud via Euler: phi(p^3) = p^2 (p - 1)
  Int ud_inv = boost::multiprecision::powm(ud, mod / v.p * (v.p - 1) - 1, mod);
  Int uint_mod = un * ud_inv % mod;
  c.bits.set(0, val & 1);
  if (v.is_two()) {
    F2Vec ub = classes::unit_bits_mod8(uint_mod);
    c.bits.set(1, ub.get(0));
    c.bits.set(2, ub.get(1));
  } else {
    c.bits.set(1, !classes::legendre_is_square(uint_mod, v.p));
  }
  return c;
}

inline SquareClass square_class(const Int& x, const Place& v) {
  return square_class(Rat(x), v);
}

}  // namespace quartic
