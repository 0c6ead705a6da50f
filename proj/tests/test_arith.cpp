#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace quartic;

TEST_CASE("p-adic square classes match unit-square enumeration", "[arith]") {
  // 9 = 3^2: even valuation, trivial unit
  auto c9 = Padic::from_int(9, 3, 10).square_class();
  CHECK_FALSE(c9.bits.get(0));
  CHECK_FALSE(c9.bits.get(1));

  // 18 = 2 * 3^2: oracle says 2 is not a square of a unit mod 27
  std::set<long> unit_squares;
  for (long u = 1; u < 27; ++u)
    if (u % 3 != 0) unit_squares.insert(u * u % 27);
  REQUIRE_FALSE(unit_squares.count(2));
  auto c18 = Padic::from_int(18, 3, 10).square_class();
  CHECK_FALSE(c18.bits.get(0));
  CHECK(c18.bits.get(1));

  // 5 at p = 2 on the basis {-1, 5}: odd squares are 1 mod 8
  auto c5 = Padic::from_int(5, 2, 10).square_class();
  CHECK(c5.bits.str() == "001");

  CHECK_THROWS_AS(Padic::zero(3).square_class(), ZeroValue);
}

TEST_CASE("p-adic classes are precision-stable and multiplicative", "[arith][property]") {
  std::mt19937_64 rng(7);
  for (Int p : {Int(2), Int(3), Int(5), Int(13)}) {
    long ord4 = p == 2 ? 2 : 0;
    for (int trial = 0; trial < 200; ++trial) {
      Int u = Int(rng() % 100000) + 1;
      while (u % p == 0) ++u;
      // class(u v^2) = class(u)
      Int v = Int(rng() % 1000) + 1;
      while (v % p == 0) ++v;
      auto a = Padic::from_int(u, p, 12).square_class();
      auto b = Padic::from_int(u * v * v, p, 12).square_class();
      REQUIRE(a == b);
      // stability under lifts agreeing mod p^(ord4+1)
      Int shift = quartic::pow(p, unsigned(ord4 + 1)) * Int(rng() % 50);
      auto c = Padic::from_int(u + shift, p, 12).square_class();
      REQUIRE(a == c);
    }
  }
}

TEST_CASE("square classes form a homomorphism at every place", "[arith][property]") {
  std::mt19937_64 rng(11);
  std::vector<Place> places{Place::infinite(), Place::prime(2), Place::prime(3),
                            Place::prime(17)};
  for (const auto& v : places) {
    for (int trial = 0; trial < 200; ++trial) {
      Rat x(Int(rng() % 2000) + 1, Int(rng() % 2000) + 1);
      Rat y(Int(rng() % 2000) + 1, Int(rng() % 2000) + 1);
      if (rng() & 1) x = -x;
      if (rng() & 1) y = -y;
      REQUIRE(square_class(x * y, v).bits ==
              (square_class(x, v) + square_class(y, v)).bits);
    }
  }
}

TEST_CASE("real quadratic signs are exact", "[arith]") {
  CHECK(RealQuadratic(Rat(1), Rat(1), Int(2)).sign() == 1);
  CHECK(RealQuadratic(Rat(1), Rat(-1), Int(2)).sign() == -1);
  CHECK(RealQuadratic(Rat(-3)).sign() == -1);
  CHECK_THROWS_AS(RealQuadratic(Rat(0)).sign(), ZeroValue);

  // sign(x^2 y) = sign(y)
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    RealQuadratic x(Rat(long(rng() % 19) - 9), Rat(long(rng() % 19) - 9), Int(5));
    if (x.is_zero()) continue;
    RealQuadratic y(Rat(long(rng() % 19) - 9), Rat(long(rng() % 19) - 9), Int(5));
    if (y.is_zero()) continue;
    REQUIRE((x * x * y).sign() == y.sign());
  }
}

TEST_CASE("finite field squares", "[arith]") {
  PrimeField f7(7);
  std::set<std::uint64_t> sq7;
  for (std::uint64_t x = 1; x < 7; ++x) sq7.insert(f7.mul(x, x));
  REQUIRE(sq7.count(2));
  CHECK(f7.is_square(2));
  CHECK(f7.is_square(1));
  CHECK_THROWS_AS(f7.is_square(0), ZeroValue);
  CHECK_THROWS_AS(PrimeField(2).is_square(1), EvenCharacteristic);

  QuadField f9 = make_Fq2(3);
  CHECK_FALSE(f9.is_square(f9.generator()));
  CHECK(f9.is_square(f9.one()));
}

TEST_CASE("F_q has (q-1)/2 nonzero squares for odd q <= 49", "[arith][property]") {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    PrimeField k(p);
    long n = 0;
    for (std::uint64_t x = 1; x < p; ++x) n += k.is_square(x);
    REQUIRE(n == long((p - 1) / 2));
  }
  for (std::uint64_t p : {3, 5, 7}) {
    QuadField k = make_Fq2(p);
    std::vector<QuadField::Elem> elems;
    k.enumerate(elems);
    long n = 0;
    for (const auto& x : elems)
      if (!k.is_zero(x) && k.is_square(x)) ++n;
    REQUIRE(n == long((p * p - 1) / 2));
  }
}

TEST_CASE("p-adic sqrt round trip and precision guard", "[arith]") {
  for (Int p : {Int(2), Int(7), Int(13)}) {
    std::mt19937_64 rng(p.convert_to<unsigned>());
    for (int trial = 0; trial < 50; ++trial) {
      Int u = Int(rng() % 10000) + 1;
      Padic x = Padic::from_int(u * u, p, 16);
      Padic r = x.sqrt();
      REQUIRE((r * r - x).indistinguishable_from_zero());
    }
  }
  // precision too low for a class at p = 2
  Padic shallow = Padic::from_int(5, 2, 2);
  CHECK_THROWS_AS(shallow.square_class(), InsufficientPrecision);
}
