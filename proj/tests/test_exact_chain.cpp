#include <vector>

#include "doctest.h"
#include "srg/errors.hpp"
#include "srg/exact_chain.hpp"
#include "srg/theory.hpp"

using namespace srg;
using oracle::rational;

TEST_CASE("exact chain: trivial and hand-checked cases") {
    const auto one = oracle::enumerate_exact(1u, rational(1, 2));
    CHECK(one.prob_u_jam(1) == rational(1));

    const auto two_half = oracle::enumerate_exact(2u, rational(1, 2));
    CHECK(two_half.prob_u_jam(1) == rational(3, 4));
    CHECK(two_half.prob_u_jam(2) == rational(1, 4));
    CHECK(two_half.prob_of({2}) == rational(3, 4));
    CHECK(two_half.prob_of({1, 1}) == rational(1, 4));
    CHECK(two_half.expected_u_jam() == doctest::Approx(1.25));
    CHECK(two_half.expected_largest() == doctest::Approx(1.75));

    // p = 0: the two singletons must both self-loop before they merge
    const auto two_frozen = oracle::enumerate_exact(2u, rational(0));
    CHECK(two_frozen.prob_u_jam(1) == rational(1, 2));
    CHECK(two_frozen.prob_u_jam(2) == rational(1, 2));

    // p = 1: merge 1/2 -> {U2}; else glue 2/3 vs second self-loop 1/3
    const auto two_full = oracle::enumerate_exact(2u, rational(1));
    CHECK(two_full.prob_u_jam(1) == rational(5, 6));
    CHECK(two_full.prob_u_jam(2) == rational(1, 6));

    CHECK_THROWS_AS(oracle::enumerate_exact(7u, rational(1, 2)), invalid_params);
    CHECK_THROWS_AS(oracle::enumerate_exact(0u, rational(1, 2)), invalid_params);
}

TEST_CASE("exact chain: probabilities sum to one exactly") {
    for (unsigned n = 1; n <= 6; ++n) {
        for (const auto& p : {rational(0), rational(1, 3), rational(1, 2), rational(1)}) {
            CHECK(oracle::enumerate_exact(n, p).total() == rational(1));
        }
    }
}

TEST_CASE("exact chain reproduces the random-map jam law at p = 1/2") {
    for (unsigned n = 1; n <= 6; ++n) {
        const auto dist = oracle::enumerate_exact(n, rational(1, 2));
        // single community: exact rational identity, no tolerance at all
        CHECK(dist.prob_u_jam(1) == theory::random_map_prob_one_exact(n));
        // maximal number of communities: N^{-N}
        rational nn(1);
        for (unsigned i = 0; i < n; ++i) nn *= n;
        CHECK(dist.prob_u_jam(n) == rational(1) / nn);
    }
}

TEST_CASE("exact chain converts double p exactly") {
    const auto a = oracle::enumerate_exact(4u, 0.5);
    const auto b = oracle::enumerate_exact(4u, rational(1, 2));
    CHECK(a.states == b.states);
}
