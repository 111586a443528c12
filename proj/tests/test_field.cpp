#include <doctest.h>

#include "dopkit/field.hpp"

using dopkit::PrimeField;
using dopkit::Rationals;

TEST_CASE("rationals: canonical arithmetic") {
  Rationals Q;
  CHECK(Q.characteristic() == 0);
  auto half = Q.from_ratio(2, 4);
  CHECK(Q.str(half) == "1/2");
  CHECK(Q.str(Q.add(half, Q.from_ratio(1, 3))) == "5/6");
  CHECK(Q.str(Q.from_ratio(1, -3)) == "-1/3");
  CHECK(Q.is_one(Q.mul(half, Q.from_long(2))));
  CHECK(Q.is_zero(Q.sub(half, half)));
  CHECK(Q.str(Q.inv(Q.from_ratio(-3, 7))) == "-7/3");
  CHECK_THROWS_AS((void)Q.inv(Q.zero()), std::domain_error);
  CHECK_THROWS_AS((void)Q.from_ratio(1, 0), std::domain_error);
  CHECK(Q.str(Q.from_long(-12)) == "-12");
}

TEST_CASE("prime field: axioms at p = 7") {
  PrimeField F(7);
  CHECK(F.characteristic() == 7);
  for (std::uint32_t a = 1; a < 7; ++a) {
    CHECK(F.is_one(F.mul(a, F.inv(a))));
    CHECK(F.is_zero(F.add(a, F.neg(a))));
  }
  CHECK(F.from_long(-3) == 4);
  CHECK(F.from_long(21) == 0);
  CHECK(F.from_ratio(1, 2) == 4);  // 2*4 = 8 = 1 mod 7
  CHECK(F.sub(2, 5) == 4);
}

TEST_CASE("prime field: p = 2 and rejection of composites") {
  PrimeField F2(2);
  CHECK(F2.add(1, 1) == 0);
  CHECK(F2.neg(1) == 1);
  CHECK_THROWS_AS(PrimeField(6), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
  CHECK(PrimeField::is_prime(101));
  CHECK_FALSE(PrimeField::is_prime(1001));  // 7 * 11 * 13
}
