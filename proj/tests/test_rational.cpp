#include <vector>

#include "doctest.h"
#include "helpers.hpp"

#include "conecalc/error.hpp"

using namespace conecalc;
using testing::Q;

TEST_CASE("rational parsing and printing") {
  CHECK(Q("3/6") == Rational(1, 2));
  CHECK(Q("-4") == Rational(-4));
  CHECK(Q("+2/3") == Rational(2, 3));
  CHECK(to_fraction_string(Rational(5)) == "5/1");
  CHECK(to_fraction_string(Rational(-7, 2)) == "-7/2");
  CHECK(to_compact_string(Rational(5)) == "5");
  CHECK(to_compact_string(Rational(1, 3)) == "1/3");
  CHECK(to_decimal_string(Rational(7, 2)) == "3.5");
  CHECK(to_decimal_string(Rational(1, 3)) == "0.333333333333");
  CHECK(to_decimal_string(Rational(2, 3)) == "0.666666666667");
  CHECK(to_decimal_string(Rational(0)) == "0");

  CHECK_THROWS_AS(Q("1/0"), ParseError);
  CHECK_THROWS_AS(Q("1/-2"), ParseError);
  CHECK_THROWS_AS(Q("x"), ParseError);
  CHECK_THROWS_AS(Q(""), ParseError);
}

TEST_CASE("truncation rounds toward zero") {
  CHECK(trunc_toward_zero(Rational(9, 2)) == 4);
  CHECK(trunc_toward_zero(Rational(-9, 2)) == -4);
  CHECK(trunc_toward_zero(Rational(-4)) == -4);
  CHECK(trunc_toward_zero(Rational(1, 3)) == 0);
}

TEST_CASE("lcm of denominators") {
  std::vector<Rational> v = {Rational(1, 4), Rational(5, 6), Rational(3)};
  CHECK(lcm_of_denominators(v) == 12);
  CHECK(lcm_of_denominators(std::vector<Rational>{}) == 1);
  CHECK(to_int64(Integer(42)) == 42);
  CHECK_THROWS_AS(to_int64(Integer(1) << 70), BudgetExceeded);
}
