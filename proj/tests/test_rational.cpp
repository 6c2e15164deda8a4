#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fraczeta/rational.hpp"

#include <cmath>

using fraczeta::Rational;
using fraczeta::rational_log;

TEST_CASE("normalization and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
    CHECK(-Rational(1, 2) == Rational(-1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(1, 3));
    CHECK(Rational(3, 2) > Rational(1));
    CHECK(Rational(1, 2) <= Rational(1, 2));
    CHECK(Rational(1, 2) >= Rational(1, 2));
}

TEST_CASE("value and integer detection") {
    CHECK(Rational(3, 2).value() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(Rational(4, 2).isInteger());
    CHECK_FALSE(Rational(1, 2).isInteger());
}

TEST_CASE("string round trip") {
    CHECK(Rational(3, 2).str() == "3/2");
    CHECK(Rational(-3, 2).str() == "-3/2");
    CHECK(Rational(5).str() == "5");
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-3/2") == Rational(-3, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x/y"), std::invalid_argument);
}

TEST_CASE("rational_log certifies exact power relations") {
    auto r = rational_log(2.0, 4.0);
    REQUIRE(r.has_value());
    CHECK(*r == Rational(1, 2));

    r = rational_log(0.125, 4.0);
    REQUIRE(r.has_value());
    CHECK(*r == Rational(-3, 2));

    r = rational_log(8.0, 4.0);
    REQUIRE(r.has_value());
    CHECK(*r == Rational(3, 2));

    r = rational_log(1.0, 4.0);
    REQUIRE(r.has_value());
    CHECK(*r == Rational(0));

    r = rational_log(0.25, 4.0);
    REQUIRE(r.has_value());
    CHECK(*r == Rational(-1));
}

TEST_CASE("rational_log rejects non-power and over-cap relations") {
    CHECK_FALSE(rational_log(3.0, 2.0).has_value());
    CHECK_FALSE(rational_log(2.0 * (1.0 + 1e-9), 4.0).has_value());
    // Exponent 1/25 needs denominator 25 > default cap 24.
    CHECK_FALSE(rational_log(std::pow(2.0, 1.0 / 25.0), 2.0).has_value());
    CHECK(rational_log(std::pow(2.0, 1.0 / 25.0), 2.0, 30).has_value());
    CHECK_FALSE(rational_log(-1.0, 2.0).has_value());
}
