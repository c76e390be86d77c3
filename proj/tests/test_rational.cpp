#include <catch2/catch_amalgamated.hpp>

#include "heunspec/rational.hpp"

using namespace heunspec;

TEST_CASE("rationals are canonical after every operation") {
  Rational a(6, 4);
  CHECK(a == Rational(3, 2));
  CHECK(a.denominator() == 2);
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(3, -6).denominator() == 2);  // positive denominator
  CHECK((Rational(1, 3) + Rational(2, 3)).denominator() == 1);
  CHECK(Rational(2, 3) * Rational(3, 2) == Rational(1));
}

TEST_CASE("parsing") {
  CHECK(Rational::from_string("-7/3") == Rational(-7, 3));
  CHECK(Rational::from_string("5") == Rational(5));
  CHECK_THROWS_AS(Rational::from_string("1/0"), contract_error);
  CHECK_THROWS_AS(Rational::from_string("abc"), contract_error);
  CHECK_THROWS_AS(Rational::from_string(""), contract_error);
}

TEST_CASE("arithmetic and ordering") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
  CHECK(Rational(-2, 5) * Rational(5, 2) == Rational(-1));
  CHECK(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), division_by_zero);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-5) < Rational(-4));
  CHECK(Rational(7, 2).abs() == Rational(7, 2));
  CHECK(Rational(-7, 2).abs() == Rational(7, 2));
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(0).pow(0) == Rational(1));
}

TEST_CASE("decimal rendering") {
  CHECK(Rational(1, 2).decimal_string(4) == "0.5000");
  CHECK(Rational(-1, 3).decimal_string(6) == "-0.333333");
  CHECK(Rational(2, 3).decimal_string(3) == "0.667");  // round to nearest
  CHECK(Rational(5).decimal_string(0) == "5");
  CHECK(Rational(10, 4).decimal_string(2) == "2.50");
}

TEST_CASE("pochhammer and factorial") {
  CHECK(pochhammer(Rational(3), 0) == Rational(1));
  CHECK(pochhammer(Rational(-2), 3) == Rational(0));  // truncation mechanism
  CHECK(pochhammer(Rational(1, 2), 3) == Rational(1, 2) * Rational(3, 2) * Rational(5, 2));
  CHECK(factorial(5) == Rational(120));
  CHECK(Rational::pow_of_ten(-3) == Rational(1, 1000));
}
