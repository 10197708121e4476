#include <doctest.h>

#include <random>

#include "degdet/certify.hpp"
#include "degdet/driver.hpp"
#include "degdet/generate.hpp"
#include "degdet/instance.hpp"
#include "helpers.hpp"
#include "reference.hpp"

using namespace degdet;

namespace {
Certificate cert_at(const Solution& sol, int k) { return to_certificate(sol.certificates.at(k)); }
}  // namespace

TEST_CASE("solver certificates are accepted with equal values") {
    Instance inst = th::make(2, 2, {{0, 0, 1, 0, 0, 1, 4}, {0, 1, 1, 0, 0, 1, 1}, {1, 0, 1, 0, 0, 1, 1}, {1, 1, 1, 0, 0, 1, 4}});
    Solution sol = solve(inst);
    for (int k = 0; k <= 4; ++k) {
        Certificate c = cert_at(sol, k);
        Verdict p = verify_primal(inst, c), d = verify_dual(inst, c);
        REQUIRE(p.ok);
        REQUIRE(d.ok);
        CHECK(p.value == 4 * k);
        CHECK(d.value == 4 * k);
    }
}

TEST_CASE("degree-3 node is rejected") {
    Instance inst = th::make(1, 3, {{0, 0, 1, 0, 0, 1, 1}, {0, 1, 1, 0, 0, 1, 1}, {0, 2, 1, 0, 0, 1, 1}});
    Certificate c = cert_at(solve(inst), 0);
    c.k = 3;
    c.edges = {{0, 0, 0, false}, {0, 1, 1, false}, {0, 2, 0, false}};
    Verdict v = verify_primal(inst, c);
    CHECK_FALSE(v.ok);
    CHECK(v.violation == "Deg");
}

TEST_CASE("same-sign edges at a node are rejected") {
    Instance inst = th::make(1, 2, {{0, 0, 1, 0, 0, 1, 1}, {0, 1, 1, 0, 0, 1, 1}});
    Certificate c = cert_at(solve(inst), 0);
    c.k = 2;
    c.edges = {{0, 0, 0, false}, {0, 1, 0, false}};
    Verdict v = verify_primal(inst, c);
    CHECK_FALSE(v.ok);
    CHECK(v.violation == "Deg");
}

TEST_CASE("cycle of rank-2 blocks is rejected") {
    Instance inst = th::make(2, 2, {{0, 0, 1, 0, 0, 1, 0}, {0, 1, 1, 0, 0, 1, 0}, {1, 0, 1, 0, 0, 1, 0}, {1, 1, 1, 0, 0, 1, 0}});
    Certificate c = cert_at(solve(inst), 0);
    c.k = 4;
    c.edges = {{0, 0, 0, false}, {0, 1, 1, false}, {1, 1, 0, false}, {1, 0, 1, false}};
    Verdict v = verify_primal(inst, c);
    CHECK_FALSE(v.ok);
    CHECK(v.violation == "Cycle");
}

TEST_CASE("wrong size and edges off the support") {
    Instance inst = th::make(1, 2, {{0, 0, 1, 0, 0, 1, 1}});
    Certificate c = cert_at(solve(inst), 1);
    c.k = 2;
    CHECK(verify_primal(inst, c).violation == "size");
    Certificate d = cert_at(solve(inst), 1);
    d.edges = {{0, 1, 0, false}};
    CHECK(verify_primal(inst, d).violation == "support");
}

TEST_CASE("dual tampering") {
    Instance inst = th::make(1, 1, {{0, 0, 1, 0, 0, 1, 5}});
    Solution sol = solve(inst);
    Certificate lowered = cert_at(sol, 1);
    lowered.c -= 1;
    Verdict v = verify_dual(inst, lowered);
    CHECK_FALSE(v.ok);
    CHECK(v.violation == "potential");

    Certificate neg = cert_at(sol, 1);
    neg.pr[0][0] = -1;
    CHECK(verify_dual(inst, neg).violation == "negative");
}

TEST_CASE("weak duality: any accepted pair is sandwiched") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 60; ++i) {
        Instance inst = generate(ref::oracle_corpus_params(i));
        Solution sol = solve(inst);
        for (const auto& kc : sol.certificates) {
            Certificate c = to_certificate(kc);
            for (auto& pr : c.pr)
                for (auto& x : pr) x += static_cast<std::int64_t>(rng() % 3);
            for (auto& pc : c.pc)
                for (auto& x : pc) x += static_cast<std::int64_t>(rng() % 3);
            c.c -= static_cast<std::int64_t>(rng() % 2);
            Verdict d = verify_dual(inst, c);
            if (!d.ok) continue;
            CHECK(d.value >= *sol.deltas[kc.k]);
        }
        for (const auto& pk : sol.certificates)
            for (const auto& dj : sol.certificates) {
                Certificate c = to_certificate(dj);
                c.k = pk.k;
                Verdict d = verify_dual(inst, c);
                REQUIRE(d.ok);
                CHECK(d.value >= pk.weight);
            }
    }
}

TEST_CASE("certificate serialization round trip and malformed input") {
    Instance inst = th::make(2, 2, {{0, 0, 1, 0, 0, 1, 4}, {1, 1, 1, 2, 0, 1, -1}});
    Solution sol = solve(inst);
    for (const auto& kc : sol.certificates) {
        Certificate c = to_certificate(kc);
        Certificate back = parse_certificate(inst, serialize_certificate(c));
        CHECK(serialize_certificate(back) == serialize_certificate(c));
        CHECK(verify_primal(inst, back).ok);
        CHECK(verify_dual(inst, back).ok);
    }
    CHECK_THROWS_AS(parse_certificate(inst, "{"), InstanceError);
    CHECK_THROWS_AS(parse_certificate(inst, "{\"k\":1}"), InstanceError);
    CHECK_THROWS_AS(parse_certificate(inst, "[]"), InstanceError);
}
