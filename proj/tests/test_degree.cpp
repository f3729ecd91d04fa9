#include "doctest.h"

#include "pcsp/degree.hpp"
#include "pcsp/error.hpp"

using pcsp::Degree;

TEST_CASE("parse accepts the closed unit interval") {
    CHECK(Degree::parse("0") == Degree::zero());
    CHECK(Degree::parse("1") == Degree::one());
    CHECK(Degree::parse("0.5").raw() == Degree::scale / 2);
    CHECK(Degree::parse("0.000000001").raw() == 1);
    CHECK(Degree::parse("1.0") == Degree::one());
    CHECK(Degree::parse("0.80") == Degree::parse("0.8"));
    CHECK(Degree::parse(".5") == Degree::parse("0.5"));
    CHECK(Degree::parse("0.1230000000000") == Degree::parse("0.123"));
}

TEST_CASE("parse rejects junk and out-of-range values") {
    CHECK_THROWS_AS(Degree::parse(""), pcsp::Error);
    CHECK_THROWS_AS(Degree::parse("0."), pcsp::Error);
    CHECK_THROWS_AS(Degree::parse("-0.1"), pcsp::Error);
    CHECK_THROWS_AS(Degree::parse("1.5"), pcsp::Error);
    CHECK_THROWS_AS(Degree::parse("2"), pcsp::Error);
    CHECK_THROWS_AS(Degree::parse("0.5x"), pcsp::Error);
    CHECK_THROWS_AS(Degree::parse("x"), pcsp::Error);
    CHECK_THROWS_AS(Degree::parse("0.0000000005"), pcsp::Error);
    CHECK_THROWS_AS(Degree::parse("1.000000001"), pcsp::Error);
}

TEST_CASE("complement is exact and involutive") {
    CHECK(Degree::parse("0.8").complement() == Degree::parse("0.2"));
    CHECK(Degree::parse("0.3").complement() == Degree::parse("0.7"));
    CHECK(Degree::zero().complement() == Degree::one());
    for (const char* text : {"0", "0.1", "0.25", "0.5", "0.999999999", "1"}) {
        const Degree value = Degree::parse(text);
        CHECK(value.complement().complement() == value);
    }
}

TEST_CASE("min and max follow the order") {
    const Degree a = Degree::parse("0.2");
    const Degree b = Degree::parse("0.7");
    CHECK(min(a, b) == a);
    CHECK(max(a, b) == b);
    CHECK(a < b);
    CHECK(Degree::zero() < a);
    CHECK(b < Degree::one());
}

TEST_CASE("str renders the shortest decimal form") {
    CHECK(Degree::parse("0").str() == "0");
    CHECK(Degree::parse("1").str() == "1");
    CHECK(Degree::parse("1.0").str() == "1");
    CHECK(Degree::parse("0.8").str() == "0.8");
    CHECK(Degree::parse("0.80").str() == "0.8");
    CHECK(Degree::parse("0.25").str() == "0.25");
    CHECK(Degree::parse("0.000000001").str() == "0.000000001");
}

TEST_CASE("str round trips") {
    for (const char* text : {"0", "0.2", "0.5", "0.123456789", "0.999999999", "1"}) {
        const Degree value = Degree::parse(text);
        CHECK(Degree::parse(value.str()) == value);
    }
}

TEST_CASE("from_double lands on the grid") {
    CHECK(Degree::from_double(0.8) == Degree::parse("0.8"));
    CHECK(Degree::from_double(1.0 - 0.8) == Degree::parse("0.2"));
    CHECK(Degree::from_double(0.0) == Degree::zero());
    CHECK(Degree::from_double(1.0) == Degree::one());
    CHECK_THROWS_AS(Degree::from_double(-0.1), pcsp::Error);
    CHECK_THROWS_AS(Degree::from_double(1.1), pcsp::Error);
}

TEST_CASE("to_double is exact for grid values") {
    CHECK(Degree::parse("0.8").to_double() == 0.8);
    CHECK(Degree::parse("0.2").to_double() == 0.2);
    CHECK(Degree::parse("0.8").complement().to_double() == 0.2);
}
