#include <catch_amalgamated.hpp>

#include <cstdint>
#include <random>

#include "cltlab/rational.hpp"

using cltlab::rational;
using cltlab::rational_gcd;

TEST_CASE("construction reduces to lowest terms") {
  auto r = rational::make(6, 4);
  REQUIRE(r.has_value());
  CHECK(r->num() == 3);
  CHECK(r->den() == 2);

  auto neg = rational::make(5, -10);
  REQUIRE(neg.has_value());
  CHECK(neg->num() == -1);
  CHECK(neg->den() == 2);

  CHECK_FALSE(rational::make(1, 0).has_value());
  CHECK(rational::make(0, 7)->num() == 0);
  CHECK(rational::make(0, 7)->den() == 1);
}

TEST_CASE("parse accepts p and p/q forms") {
  CHECK(rational::parse("3")->num() == 3);
  CHECK(rational::parse("-3/9") == rational::make(-1, 3));
  CHECK(rational::parse("+2/4") == rational::make(1, 2));
  CHECK_FALSE(rational::parse("").has_value());
  CHECK_FALSE(rational::parse("1/").has_value());
  CHECK_FALSE(rational::parse("/2").has_value());
  CHECK_FALSE(rational::parse("1.5").has_value());
  CHECK_FALSE(rational::parse("2/3x").has_value());
  CHECK_FALSE(rational::parse("1/0").has_value());
  CHECK_FALSE(rational::parse("99999999999999999999").has_value());
}

TEST_CASE("from_double is exact on dyadics and rejects the rest") {
  CHECK(rational::from_double(0.25) == rational::make(1, 4));
  CHECK(rational::from_double(-1.5) == rational::make(-3, 2));
  CHECK(rational::from_double(3.0) == rational(3));
  CHECK(rational::from_double(0.0) == rational(0));
  // 0.1 rounds to the dyadic 3602879701896397 / 2^55, which int64 still holds.
  CHECK(rational::from_double(0.1) == rational::make(3602879701896397LL, std::int64_t(1) << 55));
  // Far outside the representable band: the exponent alone sinks these.
  CHECK_FALSE(rational::from_double(1e-300).has_value());
  CHECK_FALSE(rational::from_double(1e300).has_value());
  double inf = HUGE_VAL;
  CHECK_FALSE(rational::from_double(inf).has_value());
  CHECK_FALSE(rational::from_double(inf - inf).has_value());

  // Round trip: any rational with a power-of-two denominator survives.
  auto r = rational::make(-1234567, 4096);
  CHECK(rational::from_double(r->to_double()) == r);
}

TEST_CASE("arithmetic matches integer cross-multiplication") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  for (int i = 0; i < 2000; ++i) {
    rational a = *rational::make(num(gen), den(gen));
    rational b = *rational::make(num(gen), den(gen));
    auto sum = a.add(b);
    REQUIRE(sum.has_value());
    // a/b + c/d = (ad + cb) / bd, checked without reduction.
    __int128 lhs = __int128(sum->num()) * (__int128(a.den()) * b.den());
    __int128 rhs = (__int128(a.num()) * b.den() + __int128(b.num()) * a.den()) * sum->den();
    CHECK(lhs == rhs);

    auto prod = a.mul(b);
    REQUIRE(prod.has_value());
    __int128 pl = __int128(prod->num()) * (__int128(a.den()) * b.den());
    __int128 pr = (__int128(a.num()) * b.num()) * prod->den();
    CHECK(pl == pr);

    auto diff = a.sub(b);
    REQUIRE(diff.has_value());
    CHECK(diff->add(b) == a);

    if (!b.is_zero()) {
      auto q = a.div(b);
      REQUIRE(q.has_value());
      CHECK(q->mul(b) == a);
    }
  }
}

TEST_CASE("overflow is reported, not wrapped") {
  rational big = *rational::make(INT64_MAX, 1);
  CHECK_FALSE(big.add(rational(1)).has_value());
  CHECK_FALSE(big.mul(rational(2)).has_value());
  CHECK(big.sub(rational(1)).has_value());
  rational tiny = *rational::make(1, INT64_MAX);
  CHECK_FALSE(tiny.div(*rational::make(INT64_MAX, 1)).has_value());
  CHECK(rational(0).div(rational(3)) == rational(0));
  CHECK_FALSE(rational(1).div(rational(0)).has_value());
  // INT64_MIN would have no representable negation; make128 rejects it.
  CHECK_FALSE(rational::make(INT64_MIN, 1).has_value());
}

TEST_CASE("ordering by cross-multiplication") {
  // b is barely above 1/3; naive double comparison cannot see the gap.
  rational a = *rational::make(1, 3);
  rational b = *rational::make(333333333333333333, 999999999999999998);
  CHECK(a.order(b) == std::strong_ordering::less);
  CHECK(b.order(a) == std::strong_ordering::greater);
  CHECK(a.order(a) == std::strong_ordering::equal);
  CHECK(rational(-2).order(rational(1)) == std::strong_ordering::less);
}

TEST_CASE("gcd of rationals refines a lattice") {
  CHECK(rational_gcd(*rational::make(1, 2), *rational::make(1, 3)) == rational::make(1, 6));
  CHECK(rational_gcd(rational(4), rational(6)) == rational(2));
  CHECK(rational_gcd(rational(0), *rational::make(-3, 7)) == rational::make(3, 7));
  CHECK(rational_gcd(*rational::make(2, 5), rational(0)) == rational::make(2, 5));
  CHECK(rational_gcd(*rational::make(3, 4), *rational::make(3, 4)) == rational::make(3, 4));

  // Every input is an integer multiple of the gcd.
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<std::int64_t> num(-50, 50);
  std::uniform_int_distribution<std::int64_t> den(1, 50);
  for (int i = 0; i < 500; ++i) {
    rational a = *rational::make(num(gen), den(gen));
    rational b = *rational::make(num(gen), den(gen));
    if (a.is_zero() && b.is_zero()) continue;
    auto g = rational_gcd(a, b);
    REQUIRE(g.has_value());
    CHECK(g->positive());
    CHECK(a.div(*g)->is_integer());
    CHECK(b.div(*g)->is_integer());
  }
}

TEST_CASE("string forms") {
  CHECK(rational::make(3, 2)->str() == "3/2");
  CHECK(rational(-7).str() == "-7");
  CHECK(rational(0).str() == "0");
  CHECK(rational::parse(rational::make(-5, 8)->str()) == rational::make(-5, 8));
}
