#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quartic {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

struct ZeroValue : std::runtime_error {
  ZeroValue() : std::runtime_error("operation undefined at zero") {}
};

/// gcd of a vector, 0 for the empty/zero vector.
inline Int content(const std::vector<Int>& v) {
  Int g = 0;
  for (const auto& e : v) {
    g = gcd(g, e);
    if (g == 1) break;
  }
  return g;
}

/// Divides by the content and fixes the sign of the first nonzero entry
/// to be positive.  The zero vector stays zero.
inline std::vector<Int> primitive(std::vector<Int> v) {
  Int g = content(v);
  if (g == 0) return v;
  for (const auto& e : v) {
    if (e != 0) {
      if (e < 0) g = -g;
      break;
    }
  }
  for (auto& e : v) e /= g;
  return v;
}

/// Clears denominators and makes the result primitive.
inline std::vector<Int> primitive(const std::vector<Rat>& v) {
  Int d = 1;
  for (const auto& e : v) d = lcm(d, den(e));
  std::vector<Int> w;
  w.reserve(v.size());
  for (const auto& e : v) w.push_back(num(e) * (d / den(e)));
  return primitive(std::move(w));
}

inline Int isqrt(const Int& n) { return boost::multiprecision::sqrt(n); }

inline bool is_square(const Int& n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

/// Exact integer power of a rational.
inline Rat pow(const Rat& b, unsigned e) {
  Rat r = 1;
  Rat x = b;
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

inline Int pow(Int b, unsigned e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

/// ord_p(n) for n != 0.
inline long valuation(Int n, const Int& p) {
  if (n == 0) throw ZeroValue{};
  long v = 0;
  n = abs(n);
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline long valuation(const Rat& r, const Int& p) {
  return valuation(num(r), p) - valuation(den(r), p);
}

// ---------------------------------------------------------------------------
// Deterministic primality testing and factoring.  Sizes here stay modest
// (general-position minors, contact discriminants), so Miller-Rabin plus
// Pollard's rho with Brent cycling is plenty.
// ---------------------------------------------------------------------------

namespace detail {

inline Int mulm(const Int& a, const Int& b, const Int& m) { return a * b % m; }

inline Int powm(Int b, Int e, const Int& m) {
  return boost::multiprecision::powm(b, e, m);
}

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, int r) {
  Int x = powm(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; ++i) {
    x = mulm(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace detail

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  // Deterministic for n < 3.3e24; larger inputs get a strong probable test,
  // which is fine for bad-place detection (a pseudoprime in S is still sound).
  for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (detail::miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

namespace detail {

inline Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  if (n % 3 == 0) return 3;
  for (Int c = 1;; ++c) {
    auto step = [&](const Int& v) { return (mulm(v, v, n) + c) % n; };
    Int x = 2, y = 2, d = 1, prod = 1, xs = x, ys = y;
    while (d == 1) {
      xs = x, ys = y;
      for (int i = 0; i < 128; ++i) {
        x = step(x);
        y = step(step(y));
        prod = mulm(prod, abs(x - y), n);
      }
      d = gcd(prod, n);
    }
    if (d == n) {
      // batched past the collision; replay one step at a time
      x = xs, y = ys, d = 1;
      while (d == 1) {
        x = step(x);
        y = step(step(y));
        d = gcd(abs(x - y), n);
      }
    }
    if (d != n) return d;
  }
}

inline void factor_into(Int n, std::map<Int, unsigned>& out) {
  if (n <= 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Full factorization of |n|.  Throws on n == 0.
inline std::map<Int, unsigned> factor(Int n) {
  if (n == 0) throw ZeroValue{};
  n = abs(n);
  std::map<Int, unsigned> out;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  detail::factor_into(n, out);
  return out;
}

/// Largest square divisor pulled out: n = s^2 * d with d squarefree
/// (sign kept on d).  Intended for small/factorable n.
inline std::pair<Int, Int> square_decompose(const Int& n) {
  if (n == 0) return {1, 0};
  Int s = 1, d = n < 0 ? -1 : 1;
  for (auto& [p, e] : factor(n)) {
    if (e % 2) d *= p;
    for (unsigned i = 0; i < e / 2; ++i) s *= p;
  }
  return {s, d};
}

/// Best-effort variant that never attempts to factor a hard cofactor:
/// square part found by trial division up to 10^5 plus a perfect-square
/// check on what remains.  The returned d may fail to be squarefree if it
/// hides a large square factor; callers that only need correctness of
/// a + b*sqrt(d) arithmetic are unaffected.
inline std::pair<Int, Int> square_decompose_bounded(const Int& n) {
  if (n == 0) return {1, 0};
  Int s = 1, d = n < 0 ? -1 : 1, m = abs(n);
  for (Int p = 2; p <= 100000 && p * p <= m; p == 2 ? p = 3 : p += 2) {
    if (m % p) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2) d *= p;
    for (unsigned i = 0; i < e / 2; ++i) s *= p;
  }
  if (is_square(m)) {
    s *= isqrt(m);
  } else {
    d *= m;
  }
  return {s, d};
}

}  // namespace quartic
