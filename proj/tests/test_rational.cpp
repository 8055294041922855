#include "causeway/rational.hpp"

#include "doctest.h"

using causeway::Rational;

TEST_CASE("rational arithmetic and normalization") {
  CHECK(Rational(6, 8) == Rational(3, 4));
  CHECK(Rational(-6, 8) == Rational(-3, 4));
  CHECK(Rational(6, -8) == Rational(-3, 4));
  CHECK(Rational(0, 5) == Rational(0));

  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK((Rational(1) - Rational(1, 3)).str() == "2/3");
}

TEST_CASE("rational comparisons are exact") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational(7, 8) > Rational(6, 7));
  // close fractions that double arithmetic would conflate
  CHECK(Rational(1000000000000000001, 3) > Rational(1000000000000000000, 3));
}

TEST_CASE("rational error paths") {
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational string form") {
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(Rational(0).str() == "0");
  CHECK(Rational(1, 2).abs() == Rational(1, 2));
  CHECK(Rational(-1, 2).abs() == Rational(1, 2));
}
