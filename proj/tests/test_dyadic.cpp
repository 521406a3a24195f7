#include <doctest.h>

#include <random>

#include "cantorvort/dyadic.hpp"
#include "cantorvort/errors.hpp"

using namespace cantorvort;

TEST_CASE("dyadic arithmetic agrees with plain rationals") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> m(-100000, 100000);
  std::uniform_int_distribution<int> e(-70, 70);
  for (int i = 0; i < 500; ++i) {
    const DyadicScalar a(BigInt(m(rng)), e(rng));
    const DyadicScalar b(BigInt(m(rng)), e(rng));
    const Rational qa = a.to_rational();
    const Rational qb = b.to_rational();
    CHECK((a + b).to_rational() == Rational(qa + qb));
    CHECK((a - b).to_rational() == Rational(qa - qb));
    CHECK((a * b).to_rational() == Rational(qa * qb));
    CHECK(((a < b) == (qa < qb)));
    CHECK(((a == b) == (qa == qb)));
  }
}

TEST_CASE("canonical form") {
  const DyadicScalar a(BigInt(12), 4);  // 12/16 = 3/4
  CHECK(a.mantissa() == 3);
  CHECK(a.exp2() == 2);
  CHECK(DyadicScalar(BigInt(0), 9).exp2() == 0);
  CHECK(DyadicScalar::pow2(-3).to_rational() == Rational(1, 8));
  CHECK(DyadicScalar::pow2(5).to_rational() == Rational(32));
}

TEST_CASE("grid conversions") {
  const DyadicScalar x = DyadicScalar::grid(BigInt(5), 4);  // 5/16
  CHECK(x.to_grid(6) == 20);
  CHECK_THROWS_AS((void)x.to_grid(3), DomainError);
  CHECK(x.floor_grid(3) == 2);
  CHECK((-x).floor_grid(2) == -2);
  CHECK_THROWS_AS((void)DyadicScalar::from_rational(Rational(1, 3)), DomainError);
}

TEST_CASE("huge exponents stay exact") {
  const DyadicScalar tiny = DyadicScalar::pow2(-131072);
  const DyadicScalar sum = tiny + tiny;
  CHECK(sum == DyadicScalar::pow2(-131071));
  CHECK(floor_log2(tiny.to_rational()) == -131072);
}

TEST_CASE("formatting") {
  CHECK(rational_string(Rational(3, 16)) == "3/16");
  CHECK(rational_string(Rational(-7)) == "-7");
  CHECK(decimal_string(Rational(3, 16)) == "0.1875");
  CHECK(decimal_string(Rational(-5, 2)) == "-2.5");
  CHECK(decimal_string(Rational(9, 4)) == "2.25");
  CHECK(decimal_string(Rational(1, 3)).substr(0, 8) == "0.333333");
}

TEST_CASE("parsing") {
  CHECK(parse_rational("3/16") == Rational(3, 16));
  CHECK(parse_rational("6/32") == Rational(3, 16));
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("42") == Rational(42));
  CHECK_THROWS_AS((void)parse_rational("1/0"), DomainError);
  CHECK_THROWS((void)parse_rational("abc"));
}

TEST_CASE("long double round trips") {
  for (long double v : {1.0L, 0.1L, 3.5e-300L, -2.75L, 1e300L}) {
    CHECK(to_long_double(rational_from(v)) == v);
  }
  CHECK(to_long_double(Rational(1, 3)) == doctest::Approx(1.0 / 3.0));
  CHECK(floor_log2(Rational(3, 16)) == -3);
  CHECK(floor_log2(Rational(1, 8)) == -3);
  CHECK(floor_log2(Rational(-9)) == 3);
}
