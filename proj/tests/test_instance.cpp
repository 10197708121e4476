#include <doctest.h>

#include "degdet/generate.hpp"
#include "degdet/instance.hpp"
#include "helpers.hpp"

using namespace degdet;

TEST_CASE("minimal document") {
    Instance inst = parse_instance(R"({"field":{"prime":2147483647},"rows":1,"cols":1,
        "blocks":[{"row":1,"col":1,"a":[["1","0"],["0","1"]],"d":5}]})");
    CHECK(inst.mu() == 1);
    CHECK(inst.nu() == 1);
    REQUIRE(inst.has(0, 0));
    CHECK(inst.block(0, 0)->d == 5);
    CHECK(inst.block(0, 0)->rank == 2);
    CHECK(inst.max_weight() == 5);
}

TEST_CASE("integer entries and rational fields parse") {
    Instance a = parse_instance(R"({"field":{"prime":7},"rows":1,"cols":1,
        "blocks":[{"row":1,"col":1,"a":[[1,2],[2,4]],"d":-3}]})");
    CHECK(a.block(0, 0)->rank == 1);
    Instance b = parse_instance(R"({"field":"rational","rows":1,"cols":2,
        "blocks":[{"row":1,"col":2,"a":[["1/2","0"],["0","-3"]],"d":1}]})");
    CHECK(b.field().is_rational());
    CHECK(b.has(0, 1));
    CHECK_FALSE(b.has(0, 0));
}

TEST_CASE("malformed documents are rejected") {
    const char* bad[] = {
        R"({"field":{"prime":2147483647},"rows":1,"cols":1,"blocks":[
            {"row":1,"col":1,"a":[["1","0"],["0","1"]],"d":5},{"row":1,"col":1,"a":[["1","0"],["0","1"]],"d":2}]})",
        R"({"field":{"prime":2147483647},"rows":1,"cols":1,"blocks":[{"row":2,"col":1,"a":[["1","0"],["0","1"]],"d":5}]})",
        R"({"field":{"prime":2147483647},"rows":1,"cols":1,"blocks":[{"row":1,"col":1,"a":[["0","0"],["0","0"]],"d":5}]})",
        R"({"field":{"prime":12},"rows":1,"cols":1,"blocks":[]})",
        R"({"field":{"prime":2147483647},"rows":1,"cols":1,"blocks":[{"row":1,"col":1,"a":[["1","0"]],"d":5}]})",
        R"({"field":{"prime":2147483647},"rows":1,"cols":1,"blocks":[{"row":1,"col":1,"a":[["1","0"],["0","1"]],"d":1.5}]})",
        R"({"rows":1})",
        "not json",
    };
    for (const char* doc : bad) CHECK_THROWS_AS(parse_instance(doc), InstanceError);
}

TEST_CASE("serialize then parse is the identity") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenParams g;
        g.rows = g.cols = 3;
        g.density = 0.8;
        g.dmax = 50;
        g.rank1_prob = 0.4;
        g.seed = seed;
        Instance inst = generate(g);
        CHECK(parse_instance(serialize_instance(inst)) == inst);
    }
    Instance r = th::make(1, 1, {{0, 0, 1, 2, 3, 4, 7}}, Field::rational());
    CHECK(parse_instance(serialize_instance(r)) == r);
}

TEST_CASE("submatrix support") {
    Instance inst = th::make(2, 2, {{0, 0, 1, 0, 0, 1, 1}, {0, 1, 1, 0, 0, 1, 2}, {1, 1, 1, 0, 0, 0, 3}});
    std::vector<EdgeId> all;
    for (const auto& b : inst.blocks()) all.push_back(b.id);
    CHECK(submatrix_support(inst, all) == inst);
    Instance empty = submatrix_support(inst, {});
    CHECK(empty.blocks().empty());
    CHECK_FALSE(empty.max_weight().has_value());
    Instance one = submatrix_support(inst, {{1, 1}});
    CHECK(one.blocks().size() == 1);
    CHECK(one.block(1, 1)->rank == 1);
    CHECK_THROWS_AS(submatrix_support(inst, {{1, 0}}), InstanceError);
}

TEST_CASE("weight arithmetic is overflow checked") {
    CHECK(checked_add(2, 3) == 5);
    CHECK_THROWS_AS(checked_add(INT64_MAX, 1), InstanceError);
    CHECK_THROWS_AS(checked_mul(INT64_MAX / 2 + 1, 2), InstanceError);
}

TEST_CASE("kernels are cached on rank-1 blocks") {
    Instance inst = th::make(1, 1, {{0, 0, 1, 0, 0, 0, 0}});
    const Block* b = inst.block(0, 0);
    REQUIRE(b->left_ker.has_value());
    CHECK(*b->left_ker == th::span(0, 1));
    CHECK(*b->right_ker == th::span(0, 1));
}
