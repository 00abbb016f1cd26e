#include <cmath>

#include "doctest.h"
#include "lct/constants.hpp"
#include "lct/expression.hpp"

using namespace lct;

TEST_CASE("expression evaluation") {
  CHECK(Expression::parse("1")(0, 1, 1) == 1.0);
  CHECK(Expression::parse("-t/m")(3.0, 2.0, 1.0) == -1.5);
  CHECK(Expression::parse("2 + 3 * 4")(0, 1, 1) == 14.0);
  CHECK(Expression::parse("(2 + 3) * 4")(0, 1, 1) == 20.0);
  CHECK(Expression::parse("8 / 2 / 2")(0, 1, 1) == 2.0);
  CHECK(Expression::parse("1 - 2 - 3")(0, 1, 1) == -4.0);
  CHECK(Expression::parse("-sin(omega*t)/(m*omega)")(0.5, 2.0, 3.0) ==
        doctest::Approx(-std::sin(1.5) / 6.0));
  CHECK(Expression::parse("cos(pi)")(0, 1, 1) == doctest::Approx(-1.0));
  CHECK(Expression::parse("exp(ln(2.5e0))")(0, 1, 1) == doctest::Approx(2.5));
  CHECK(Expression::parse("tan(t) - -1")(0.3, 1, 1) == doctest::Approx(std::tan(0.3) + 1.0));
  CHECK(Expression::parse(" 1.5e-1 ").text() == " 1.5e-1 ");
}

TEST_CASE("expression errors") {
  CHECK_THROWS_AS(Expression::parse(""), ConfigError);
  CHECK_THROWS_AS(Expression::parse("1 +"), ConfigError);
  CHECK_THROWS_AS(Expression::parse("(1"), ConfigError);
  CHECK_THROWS_AS(Expression::parse("x"), ConfigError);
  CHECK_THROWS_AS(Expression::parse("sqrt(2)"), ConfigError);
  CHECK_THROWS_AS(Expression::parse("sin 2"), ConfigError);
  CHECK_THROWS_AS(Expression::parse("1 2"), ConfigError);
  CHECK_THROWS_AS(Expression::parse("2^3"), ConfigError);
}
