#pragma once

#include "quartic/numeric.hpp"
#include "quartic/square_class.hpp"

#include <stdexcept>

namespace quartic {

struct InsufficientPrecision : std::runtime_error {
  InsufficientPrecision()
      : std::runtime_error("p-adic precision too low for a provable answer") {}
};

/// p-adic number as p^val * unit with the unit known modulo p^prec
/// (relative precision, in digits).  An exact zero carries a flag; a value
/// whose digits all cancelled keeps a valuation lower bound with prec 0.
class Padic {
 public:
  Padic() = default;

  static Padic zero(Int p) {
    Padic x;
    x.p_ = std::move(p);
    x.exact_zero_ = true;
    return x;
  }

  static Padic from_int(const Int& n, const Int& p, long prec) {
    if (n == 0) return zero(p);
    long v = valuation(n, p);
    Int u = n / quartic::pow(p, unsigned(v));
    return make(p, v, u, prec);
  }

  static Padic from_rat(const Rat& r, const Int& p, long prec) {
    if (r == 0) return zero(p);
    Padic a = from_int(num(r), p, prec + 2);
    Padic b = from_int(den(r), p, prec + 2);
    a.val_ -= b.val_;
    a.unit_ = a.unit_ * inv_mod(b.unit_, quartic::pow(p, unsigned(prec))) %
              quartic::pow(p, unsigned(prec));
    a.prec_ = prec;
    return a;
  }

  const Int& prime() const { return p_; }
  bool exact_zero() const { return exact_zero_; }
  /// True when no digit of the unit survives; val() is then a lower bound.
  bool indistinguishable_from_zero() const { return !exact_zero_ && prec_ <= 0; }
  long val() const { return val_; }
  long precision() const { return prec_; }
  const Int& unit() const { return unit_; }

  Padic operator*(const Padic& o) const {
    if (exact_zero_ || o.exact_zero_) return zero(p_);
    long prec = std::min(prec_, o.prec_);
    if (prec <= 0) {
      Padic z;
      z.p_ = p_;
      z.val_ = val_ + o.val_;
      z.prec_ = 0;
      z.exact_zero_ = false;
      return z;
    }
    Int m = quartic::pow(p_, unsigned(prec));
    return make(p_, val_ + o.val_, unit_ * o.unit_ % m, prec);
  }

  Padic operator+(const Padic& o) const {
    if (exact_zero_) return o;
    if (o.exact_zero_) return *this;
    const Padic& lo = val_ <= o.val_ ? *this : o;
    const Padic& hi = val_ <= o.val_ ? o : *this;
    long shift = hi.val_ - lo.val_;
    // absolute known precision (digits beyond p^lo.val)
    long abs_prec = std::min(lo.prec_, hi.prec_ + shift);
    if (abs_prec <= 0) {
      Padic z;
      z.p_ = p_;
      z.val_ = lo.val_;
      z.prec_ = 0;
      z.exact_zero_ = false;
      return z;
    }
    Int m = quartic::pow(p_, unsigned(abs_prec));
    Int s = (lo.unit_ + (shift >= abs_prec
                             ? Int(0)
                             : hi.unit_ * quartic::pow(p_, unsigned(shift)))) %
            m;
    if (s == 0) {
      // everything cancelled at the known precision
      Padic z;
      z.p_ = p_;
      z.val_ = lo.val_ + abs_prec;
      z.prec_ = 0;
      z.exact_zero_ = false;
      return z;
    }
    long drop = 0;
    while (s % p_ == 0) {
      s /= p_;
      ++drop;
    }
    return make(p_, lo.val_ + drop, s, abs_prec - drop);
  }

  Padic operator-() const {
    if (exact_zero_) return *this;
    Padic z = *this;
    if (z.prec_ > 0) {
      Int m = quartic::pow(p_, unsigned(z.prec_));
      z.unit_ = (m - z.unit_ % m) % m;
    }
    return z;
  }
  Padic operator-(const Padic& o) const { return *this + (-o); }

  /// Square class; throws unless the unit is known beyond ord_p(4).
  SquareClass square_class() const {
    if (exact_zero_) throw ZeroValue{};
    long ord4 = p_ == 2 ? 2 : 0;
    if (prec_ < ord4 + 1) throw InsufficientPrecision{};
    Place v = Place::prime(p_);
    SquareClass c = SquareClass::trivial(v);
    c.bits.set(0, val_ & 1);
    if (p_ == 2) {
      F2Vec ub = classes::unit_bits_mod8(unit_);
      c.bits.set(1, ub.get(0));
      c.bits.set(2, ub.get(1));
    } else {
      c.bits.set(1, !classes::legendre_is_square(unit_, p_));
    }
    return c;
  }

  /// True if the class of *this is provably a square (even valuation,
  /// square unit).
  bool is_square() const { return square_class().is_trivial(); }

  /// sqrt of a value with trivial square class; result precision follows
  /// the usual Hensel loss (one digit at p = 2).
  Padic sqrt() const {
    if (exact_zero_) return *this;
    if (!is_square()) throw std::domain_error("p-adic sqrt of a non-square");
    long ord4 = p_ == 2 ? 2 : 0;
    long out_prec = prec_ - ord4;
    Int root = unit_sqrt(unit_, p_, out_prec + ord4);
    return make(p_, val_ / 2, root % quartic::pow(p_, unsigned(out_prec)),
                out_prec);
  }

  static Int inv_mod(const Int& a, const Int& m) {
    Int old_r = ((a % m) + m) % m, r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
      Int q = old_r / r;
      Int t = old_r - q * r;
      old_r = r, r = t;
      t = old_s - q * s;
      old_s = s, s = t;
    }
    if (old_r != 1) throw std::domain_error("not invertible");
    return ((old_s % m) + m) % m;
  }

 private:
  static Padic make(Int p, long val, Int unit, long prec) {
    Padic x;
    x.p_ = std::move(p);
    x.val_ = val;
    x.prec_ = prec;
    if (prec > 0) {
      Int m = quartic::pow(x.p_, unsigned(prec));
      x.unit_ = ((unit % m) + m) % m;
    }
    x.exact_zero_ = false;
    return x;
  }

  /// Digit-by-digit square root of a unit u mod p^k.
  static Int unit_sqrt(const Int& u, const Int& p, long k) {
    if (p == 2) {
      // u = 1 mod 8; lift bit by bit: from y^2 = u mod 2^j pick y or
      // y + 2^(j-1) to match mod 2^(j+1)
      Int y = 1;
      for (long j = 3; j < k; ++j) {
        Int m = quartic::pow(Int(2), unsigned(j + 1));
        if ((y * y - u) % m != 0) y += quartic::pow(Int(2), unsigned(j - 1));
      }
      return y;
    }
    // Tonelli-Shanks mod p, then linear Hensel digits
    Int y = sqrt_mod_p(u % p, p);
    Int pk = p;
    for (long j = 1; j < k; ++j) {
      Int next = pk * p;
      Int err = ((u - y * y) % next + next) % next;
      if (err != 0) {
        Int c = err / pk % p;
        Int fix = c * inv_mod(2 * y % p, p) % p;
        y = (y + fix * pk) % next;
      }
      pk = next;
    }
    return ((y % pk) + pk) % pk;
  }

  static Int sqrt_mod_p(Int a, const Int& p) {
    a = ((a % p) + p) % p;
    using boost::multiprecision::powm;
    if (p % 4 == 3) return powm(a, (p + 1) / 4, p);
    Int q = p - 1;
    long s = 0;
    while (q % 2 == 0) q /= 2, ++s;
    Int z = 2;
    while (classes::legendre_is_square(z, p)) ++z;
    Int m = s, c = powm(z, q, p), t = powm(a, q, p), r = powm(a, (q + 1) / 2, p);
    while (t != 1) {
      Int tt = t;
      long i = 0;
      while (tt != 1) tt = tt * tt % p, ++i;
      Int b = powm(c, quartic::pow(Int(2), unsigned(m.convert_to<long>() - i - 1)), p);
      m = i;
      c = b * b % p;
      t = t * c % p;
      r = r * b % p;
    }
    return r;
  }

  Int p_ = 2;
  long val_ = 0;
  Int unit_ = 0;
  long prec_ = 0;
  bool exact_zero_ = true;
};

/// Spec-facing helper: square class of a p-adic value.
inline SquareClass padic_square_class(const Padic& x) { return x.square_class(); }

}  // namespace quartic
