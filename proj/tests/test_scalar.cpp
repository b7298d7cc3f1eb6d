#include <catch2/catch_amalgamated.hpp>

#include "dgkit/scalar.hpp"

using namespace dgkit;

TEST_CASE("rational arithmetic stays in lowest terms") {
    Field q = Field::Q();
    Scalar a = Scalar::parse("2/4", q);
    REQUIRE(a.str() == "1/2");
    Scalar b = Scalar::parse("-3/-6", q);
    REQUIRE(b.str() == "1/2");
    REQUIRE((a + b).str() == "1");
    REQUIRE((a - b).is_zero());
    REQUIRE((a * Scalar::from_int(4, q)).str() == "2");
    REQUIRE((Scalar::from_int(1, q) / Scalar::from_int(3, q)).str() == "1/3");
    REQUIRE((-Scalar::parse("5/7", q)).str() == "-5/7");
}

TEST_CASE("rationals have no precision ceiling") {
    Field q = Field::Q();
    Scalar x = Scalar::one(q);
    for (int i = 2; i <= 40; ++i) x *= Scalar::from_int(i, q);
    Scalar y = x;
    for (int i = 2; i <= 40; ++i) y = y / Scalar::from_int(i, q);
    REQUIRE(y.is_one());
}

TEST_CASE("prime field residues") {
    Field f7 = Field::Fp(7);
    Scalar a = Scalar::from_int(10, f7);
    REQUIRE(a.str() == "3");
    REQUIRE(Scalar::from_int(-1, f7).str() == "6");
    REQUIRE((a * a).str() == "2");
    REQUIRE((a / a).is_one());
    Scalar half = Scalar::parse("1/2", f7);
    REQUIRE((half * Scalar::from_int(2, f7)).is_one());
    REQUIRE_THROWS_AS(Field::Fp(6), Error);
    REQUIRE_THROWS_AS(Field::Fp(1), Error);
    REQUIRE_NOTHROW(Field::Fp(2147483647u));  // 2^31 - 1 is prime
    REQUIRE_THROWS_AS(Scalar::parse("1/7", f7), Error);
}

TEST_CASE("mixed-field arithmetic is rejected") {
    Scalar a = Scalar::one(Field::Q());
    Scalar b = Scalar::one(Field::Fp(5));
    REQUIRE_THROWS_AS(a + b, Error);
}

TEST_CASE("coefficient parsing errors carry ParseError") {
    try {
        Scalar::parse("3/4x", Field::Q());
        FAIL("expected throw");
    } catch (const Error& e) {
        REQUIRE(e.kind == ErrorKind::ParseError);
    }
}
