#include <doctest.h>

#include <random>

#include "degdet/exactfield.hpp"

using namespace degdet;

TEST_CASE("prime field arithmetic") {
    Field f = Field::prime(7);
    CHECK((f.from_int(5) + f.from_int(4)).residue() == 2);
    CHECK((f.from_int(3) - f.from_int(3)).is_zero());
    CHECK(f.from_int(3).inv().residue() == 5);
    CHECK(f.from_int(-1).residue() == 6);
    CHECK_THROWS_AS(f.zero().inv(), FieldError);
}

TEST_CASE("rational arithmetic") {
    Field f = Field::rational();
    CHECK((f.parse("1/2") * f.parse("2/3")).str() == "1/3");
    CHECK(f.parse("-2/3").inv().str() == "-3/2");
    CHECK(f.parse("4/6").str() == "2/3");
    CHECK_THROWS_AS(f.parse("1/0"), FieldError);
    CHECK_THROWS_AS(f.zero().inv(), FieldError);
}

TEST_CASE("field construction and parsing") {
    CHECK_THROWS_AS(Field::prime(8), FieldError);
    CHECK_NOTHROW(Field::prime(kDefaultPrime));
    Field f = Field::prime(7);
    CHECK(f.parse("10").residue() == 3);
    CHECK(f.parse("1/2").residue() == 4);
    CHECK_THROWS_AS(f.parse("x"), FieldError);
    CHECK_THROWS_AS(f.from_int(1) + Field::prime(11).from_int(1), FieldError);
}

TEST_CASE("randomized algebraic identities") {
    std::mt19937_64 rng(11);
    for (Field f : {Field::prime(kDefaultPrime), Field::prime(101), Field::rational()}) {
        std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
        for (int i = 0; i < 200; ++i) {
            Scalar a = f.from_int(d(rng)), b = f.from_int(d(rng)), c = f.from_int(d(rng));
            CHECK((a + b) - b == a);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inv() == f.one());
        }
    }
}

TEST_CASE("modular helpers stay in range") {
    std::uint64_t q = kDefaultPrime;
    CHECK(modp::add(q - 1, q - 1, q) == q - 2);
    CHECK(modp::sub(0, 1, q) == q - 1);
    CHECK(modp::mul(q - 1, q - 1, q) == 1);
    CHECK(modp::mul(modp::inv(12345, q), 12345, q) == 1);
    CHECK(is_prime(kDefaultPrime));
    CHECK_FALSE(is_prime(1));
}
