#include <doctest.h>

#include "degdet/potential.hpp"
#include "helpers.hpp"

using namespace degdet;

TEST_CASE("eval_p follows the labeled values") {
    Labeling v = Labeling::canonical(Field::prime(kDefaultPrime), 1, 1);
    PotentialState ps(1, 1, 0);
    ps.pr[0] = {2, 5};
    CHECK(eval_p(ps, v, {false, 0}, th::span(1, 0)) == 2);
    CHECK(eval_p(ps, v, {false, 0}, th::span(0, 1)) == 5);
    CHECK(eval_p(ps, v, {false, 0}, th::span(1, 3)) == 5);
    PotentialState zero(1, 1, 0);
    CHECK(eval_p(zero, v, {true, 0}, th::span(4, 1)) == 0);
}

TEST_CASE("c-potentials") {
    Instance inst = th::make(1, 2, {{0, 0, 1, 0, 0, 1, 4}, {0, 1, 1, 0, 0, 0, 2}});
    Labeling v = Labeling::canonical(inst.field(), 1, 2);
    CHECK(is_c_potential(inst, v, PotentialState(1, 2, 4)));
    CHECK_FALSE(is_c_potential(inst, v, PotentialState(1, 2, 3)));
    Instance empty(Field::prime(kDefaultPrime), 2, 2);
    PotentialState any(2, 2, -5);
    any.pr[0] = {3, 1};
    CHECK(is_c_potential(empty, Labeling::canonical(empty.field(), 2, 2), any));
    PotentialState neg(1, 2, 10);
    neg.pc[1][kMinus] = -1;
    CHECK_FALSE(is_c_potential(inst, v, neg));
}

TEST_CASE("tightness") {
    Instance inst = th::make(1, 1, {{0, 0, 1, 0, 0, 1, 5}});
    Labeling v = Labeling::canonical(inst.field(), 1, 1);
    MatchingState s(1, 1);
    CHECK(check_tight(inst, s, v, PotentialState(1, 1, 0)));
    s.m.add(0, 0, kPlus);
    CHECK(check_tight(inst, s, v, PotentialState(1, 1, 5)));
    CHECK_FALSE(check_tight(inst, s, v, PotentialState(1, 1, 4)));
}

TEST_CASE("zero and its relaxation") {
    Labeling v = Labeling::canonical(Field::prime(kDefaultPrime), 1, 1);
    MatchingState s(1, 1);
    PotentialState ps(1, 1, 0);
    CHECK(check_zero(s, v, ps));
    CHECK(check_zero_prime(s, v, ps, {false, 0, kPlus}));
    ps.pr[0][kPlus] = 1;
    CHECK_FALSE(check_zero(s, v, ps));
    CHECK(check_zero_prime(s, v, ps, {false, 0, kPlus}));
    CHECK_FALSE(check_zero_prime(s, v, ps, {false, 0, kMinus}));
    MatchingState full(1, 1);
    full.m.add(0, 0, kPlus);
    full.add_i(0, 0);
    PotentialState big(1, 1, 0);
    big.pr[0] = {3, 4};
    big.pc[0] = {1, 9};
    CHECK(check_zero(full, v, big));
}

TEST_CASE("dual value") {
    Labeling v = Labeling::canonical(Field::prime(kDefaultPrime), 1, 1);
    CHECK(dual_value(v, PotentialState(1, 1, 7), 2) == 14);
    PotentialState ones(1, 1, 0);
    ones.pr[0] = {1, 1};
    ones.pc[0] = {1, 1};
    CHECK(dual_value(v, ones, 0) == 4);
}
