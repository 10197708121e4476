#include <doctest.h>

#include <random>

#include "degdet/generate.hpp"
#include "degdet/oracle.hpp"
#include "helpers.hpp"
#include "reference.hpp"

using namespace degdet;

TEST_CASE("oracle on small fixtures") {
    Instance id = th::make(1, 1, {{0, 0, 1, 0, 0, 1, 5}});
    CHECK(oracle_sequence(id) == DeltaSeq{0, 5, 10});
    Instance r1 = th::make(1, 1, {{0, 0, 1, 2, 2, 4, 3}});
    CHECK(oracle_sequence(r1) == DeltaSeq{0, 3, std::nullopt});
    CHECK(oracle_delta(r1, 0) == 0);
    CHECK_FALSE(oracle_delta(r1, 2).has_value());
    Instance empty(Field::prime(kDefaultPrime), 1, 2);
    CHECK(oracle_sequence(empty) == DeltaSeq{0, std::nullopt, std::nullopt});
    Instance grid = th::make(2, 2, {{0, 0, 1, 0, 0, 1, 4}, {0, 1, 1, 0, 0, 1, 1}, {1, 0, 1, 0, 0, 1, 1}, {1, 1, 1, 0, 0, 1, 4}});
    CHECK(oracle_sequence(grid) == DeltaSeq{0, 4, 8, 12, 16});
}

TEST_CASE("negative weights") {
    Instance inst = th::make(1, 2, {{0, 0, 1, 0, 0, 1, -7}, {0, 1, 1, 0, 0, 0, -2}});
    CHECK(oracle_sequence(inst) == DeltaSeq{0, -2, -9});
}

TEST_CASE("oracle range and size guard") {
    Instance inst = th::make(1, 1, {{0, 0, 1, 0, 0, 1, 5}});
    CHECK_THROWS_AS(oracle_delta(inst, 3), OracleError);
    CHECK_THROWS_AS(oracle_sequence(th::make(1, 1, {{0, 0, 1, 0, 0, 1, 5}}, Field::rational())), OracleError);
    Instance big(Field::prime(kDefaultPrime), 5, 5);
    CHECK_THROWS_AS(oracle_sequence(big), OracleError);
}

TEST_CASE("cofactor expansion agrees with fraction-free elimination") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint64_t> coeff(0, 12);
    std::uniform_int_distribution<std::int64_t> exp(-3, 3);
    const std::uint64_t q = 13;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 5;
        TMatrix m(n, std::vector<TPoly>(n, TPoly(q)));
        for (auto& row : m)
            for (auto& e : row)
                for (int t = 0; t < 2; ++t) e = e + TPoly::monomial(q, coeff(rng), exp(rng));
        CHECK(det_cofactor(m, q) == det_fraction_free(m, q));
    }
}

TEST_CASE("cross-checked oracle matches the default oracle") {
    for (int i = 0; i < 40; ++i) {
        Instance inst = generate(ref::oracle_corpus_params(i));
        OracleOptions cc;
        cc.cross_check = true;
        CHECK(oracle_sequence(inst, cc) == oracle_sequence(inst));
    }
}

TEST_CASE("TPoly arithmetic") {
    const std::uint64_t q = 7;
    TPoly a = TPoly::monomial(q, 3, 2) + TPoly::monomial(q, 1, -1);
    TPoly b = TPoly::monomial(q, 2, 1);
    TPoly p = a * b;
    CHECK(p.degree() == 3);
    CHECK(p.low_degree() == 0);
    CHECK(p.coeff(3) == 6);
    CHECK(p.exact_div(b) == a);
    CHECK((a - a).is_zero());
    CHECK_FALSE(TPoly(q).degree().has_value());
    CHECK(a.shifted(2).degree() == 4);
}
