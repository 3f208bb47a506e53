#include <doctest.h>

#include "slopelab/rational.hpp"

using namespace slopelab;

TEST_CASE("rational parsing accepts p, -p and p/q") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-7/14") == Rational(-1, 2));
  CHECK(parse_rational("0") == 0);
  CHECK(fraction_string(parse_rational("4/6")) == "2/3");
  CHECK(fraction_string(Rational(0)) == "0/1");
}

TEST_CASE("rational parsing rejects garbage and zero denominators") {
  CHECK_THROWS_AS(parse_rational("1/0"), input_error);
  CHECK_THROWS_AS(parse_rational(""), input_error);
  CHECK_THROWS_AS(parse_rational("1.5"), input_error);
  CHECK_THROWS_AS(parse_rational("x"), input_error);
}

TEST_CASE("decimal rendering: 15 significant digits, half-even") {
  CHECK(decimal_string(Rational(1, 2)) == "0.500000000000000");
  CHECK(decimal_string(Rational(0)) == "0");
  CHECK(decimal_string(Rational(-11, 5)) == "-2.20000000000000");
  CHECK(decimal_string(Rational(1, 3)) == "0.333333333333333");
  CHECK(decimal_string(Rational(2, 3)) == "0.666666666666667");
  // exact half on the 16th digit rounds to the even 15th
  CHECK(decimal_string(Rational(Integer("1000000000000005"), Integer("10000000000000000"))) ==
        "0.100000000000000");
  CHECK(decimal_string(Rational(Integer("1000000000000015"), Integer("10000000000000000"))) ==
        "0.100000000000002");
  CHECK(decimal_string(Rational(1000000)) == "1000000.00000000");
  CHECK(decimal_string(Rational(1, 10000)) == "0.000100000000000000");
  CHECK(decimal_string(Rational(1, 100000)) == "1.00000000000000e-05");
}

TEST_CASE("floor, ceil, factorial") {
  CHECK(rational_floor(Rational(7, 2)) == 3);
  CHECK(rational_floor(Rational(-7, 2)) == -4);
  CHECK(rational_ceil(Rational(7, 2)) == 4);
  CHECK(rational_ceil(Rational(-7, 2)) == -3);
  CHECK(factorial(0) == 1);
  CHECK(factorial(3) == 6);
}

TEST_CASE("ln upper bound brackets the logarithm") {
  const Rational l2 = ln_upper_bound(Integer(2));
  CHECK(l2 >= Rational(693147, 1000000));
  CHECK(l2 <= Rational(693148, 1000000));
  const Rational l10 = ln_upper_bound(Integer(10));
  CHECK(l10 >= Rational(2302585, 1000000));
  CHECK(l10 <= Rational(2302587, 1000000));
  CHECK(ln_upper_bound(Integer(1)) == 0);
}

TEST_CASE("extended rationals order with infinities") {
  const ExtRational inf = ExtRational::pos_inf();
  const ExtRational ninf = ExtRational::neg_inf();
  const ExtRational one{Rational(1)};
  CHECK(ninf < one);
  CHECK(one < inf);
  CHECK(min(inf, one) == one);
  CHECK(max(ninf, one) == one);
  CHECK(inf.to_string() == "inf");
  CHECK(one.to_string() == "1/1");
}
