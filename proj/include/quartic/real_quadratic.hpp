#pragma once

#include "quartic/numeric.hpp"

namespace quartic {

/// a + b sqrt(d) with d >= 0, evaluated under the real embedding with
/// sqrt(d) >= 0.  All comparisons are exact rational arithmetic; no
/// floating point anywhere.  d is square-reduced on construction (fully
/// squarefree whenever the square part is found by the bounded search).
class RealQuadratic {
 public:
  RealQuadratic() = default;
  RealQuadratic(Rat a) : a_(std::move(a)) {}

  RealQuadratic(Rat a, Rat b, const Int& d) : a_(std::move(a)), b_(std::move(b)) {
    if (d < 0) throw std::domain_error("negative radicand");
    auto [s, df] = square_decompose_bounded(d);
    d_ = df;
    b_ *= s;
    if (d_ <= 1) {  // sqrt(0) = 0, sqrt(1) = 1
      a_ += b_ * d_;
      b_ = 0;
      d_ = 0;
    }
    if (b_ == 0) d_ = 0;
  }

  const Rat& rational_part() const { return a_; }
  const Rat& radical_part() const { return b_; }
  const Int& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  RealQuadratic conjugate() const {
    RealQuadratic x = *this;
    x.b_ = -x.b_;
    return x;
  }
  /// a^2 - d b^2, the field norm.
  Rat norm() const { return a_ * a_ - Rat(d_) * b_ * b_; }

  RealQuadratic operator-() const {
    RealQuadratic x = *this;
    x.a_ = -x.a_;
    x.b_ = -x.b_;
    return x;
  }
  RealQuadratic operator+(const RealQuadratic& o) const {
    check_compatible(o);
    RealQuadratic x = *this;
    x.a_ += o.a_;
    x.b_ += o.b_;
    x.merge(o.d_);
    return x;
  }
  RealQuadratic operator-(const RealQuadratic& o) const { return *this + (-o); }
  RealQuadratic operator*(const RealQuadratic& o) const {
    check_compatible(o);
    Int d = d_ != 0 ? d_ : o.d_;
    RealQuadratic x;
    x.a_ = a_ * o.a_ + Rat(d) * b_ * o.b_;
    x.b_ = a_ * o.b_ + b_ * o.a_;
    x.d_ = x.b_ == 0 ? Int(0) : d;
    return x;
  }
  RealQuadratic operator*(const Rat& c) const {
    RealQuadratic x = *this;
    x.a_ *= c;
    x.b_ *= c;
    if (x.b_ == 0 && x.a_ == 0) x.d_ = 0;
    return x;
  }

  /// Exact sign under the real embedding; throws on zero.
  int sign() const {
    if (is_zero()) throw ZeroValue{};
    if (b_ == 0) return a_ > 0 ? 1 : -1;
    if (a_ == 0) return b_ > 0 ? 1 : -1;
    int sa = a_ > 0 ? 1 : -1, sb = b_ > 0 ? 1 : -1;
    if (sa == sb) return sa;
    // sign(a + b sqrt d) with a, b of opposite sign: compare a^2 vs d b^2
    Rat lhs = a_ * a_, rhs = Rat(d_) * b_ * b_;
    if (lhs == rhs) throw ZeroValue{};  // value is exactly zero
    return lhs > rhs ? sa : sb;
  }

  friend bool operator==(const RealQuadratic& x, const RealQuadratic& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }

 private:
  void check_compatible(const RealQuadratic& o) const {
    if (d_ != 0 && o.d_ != 0 && d_ != o.d_)
      throw std::domain_error("mixed radicands");
  }
  void merge(const Int& od) {
    if (d_ == 0) d_ = od;
    if (b_ == 0) d_ = 0;
  }

  Rat a_ = 0, b_ = 0;
  Int d_ = 0;
};

inline int real_sign(const RealQuadratic& x) { return x.sign(); }

}  // namespace quartic
