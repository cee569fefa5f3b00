// Copyright 2026 The subdiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subdiv/instance_gen.hpp"
#include "subdiv/rng.hpp"
#include "subdiv/stability.hpp"

using namespace subdiv;

namespace {

Digraph two_cliques(int half) {
    Digraph d(2 * half);
    for (int base : {0, half})
        for (int u = 0; u < half; ++u)
            for (int v = 0; v < half; ++v)
                if (u != v) d.add_arc(base + u, base + v);
    return d;
}

}  // namespace

TEST_CASE("two disjoint cliques carry a zero-arc witness") {
    Digraph d = two_cliques(200);
    auto w = find_ec_witness(d, 0.05, 9, 1);
    REQUIRE(w.has_value());
    CHECK(w->arc_count == 0);
    CHECK_NOTHROW(w->revalidate(d));
    CHECK(w->u1.count() >= 180);
    CHECK(w->u2.count() >= 180);
}

TEST_CASE("the complete digraph has no witness") {
    // any U1, U2 of size >= 180 in K_400 have e+(U1,U2) = |U1||U2| - overlap,
    // far above (0.05*400)^2 = 400
    Digraph d = complete_digraph(400);
    CHECK_FALSE(find_ec_witness(d, 0.05, 6, 1).has_value());
}

TEST_CASE("complete-digraph cross counts follow the overlap formula") {
    Digraph d = complete_digraph(40);
    Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        VertexSet u1(40), u2(40);
        for (int v = 0; v < 40; ++v) {
            if (rng.bernoulli(0.5)) u1.insert(v);
            if (rng.bernoulli(0.5)) u2.insert(v);
        }
        long long expect =
            static_cast<long long>(u1.count()) * u2.count() - u1.intersection_count(u2);
        CHECK(d.arc_count_between(u1, u2) == expect);
    }
}

TEST_CASE("eps-prime bounds are validated") {
    CHECK_THROWS_AS(find_ec_witness(complete_digraph(4), 0.5, 1, 1), InputError);
    CHECK_THROWS_AS(find_ec_witness(complete_digraph(4), -0.1, 1, 1), InputError);
}

TEST_CASE("witness search is deterministic under a fixed seed") {
    Digraph d = planted_extremal(ExtremalKind::EC1, 200, ParameterLadder{}, 0.0, 5).graph;
    auto w1 = find_ec_witness(d, 0.1, 8, 99);
    auto w2 = find_ec_witness(d, 0.1, 8, 99);
    REQUIRE(w1.has_value());
    REQUIRE(w2.has_value());
    CHECK(w1->u1 == w2->u1);
    CHECK(w1->u2 == w2->u2);
    CHECK(w1->arc_count == w2->arc_count);
}

TEST_CASE("a witness stays valid at any larger eps-prime") {
    Digraph d = two_cliques(100);
    auto w = find_ec_witness(d, 0.05, 6, 2);
    REQUIRE(w.has_value());
    for (double bigger : {0.08, 0.2, 0.4}) {
        double budget = bigger * d.order();
        CHECK(static_cast<double>(w->arc_count) <= budget * budget);
        CHECK(w->u1.count() >= (0.5 - bigger) * d.order());
    }
}

TEST_CASE("robust out-neighborhood thresholds") {
    Digraph k10 = complete_digraph(10);
    VertexSet s = VertexSet::of(10, {0, 1, 2, 3, 4});
    CHECK(robust_out_neighborhood(k10, s, 0.3).count() == 10);

    CHECK(robust_out_neighborhood(k10, VertexSet(10), 0.3).empty());

    // threshold one: exactly the out-neighborhood of the singleton's member
    Digraph d(5);
    d.add_arc(0, 1);
    d.add_arc(0, 2);
    d.add_arc(3, 0);
    VertexSet single = VertexSet::of(5, {0});
    CHECK(robust_out_neighborhood(d, single, 1.0 / 5) == d.out_neighbors(0, VertexSet::full(5)));
}

TEST_CASE("robust out-neighborhood is monotone in S") {
    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 6 + static_cast<int>(rng.below(8));
        Digraph d(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng.bernoulli(0.4)) d.add_arc(u, v);
        VertexSet small(n), big(n);
        for (int v = 0; v < n; ++v) {
            if (rng.bernoulli(0.3)) small.insert(v);
            if (rng.bernoulli(0.4)) big.insert(v);
        }
        big |= small;
        VertexSet rn_small = robust_out_neighborhood(d, small, 0.25);
        VertexSet rn_big = robust_out_neighborhood(d, big, 0.25);
        CHECK(rn_small.is_subset_of(rn_big));
    }
}

TEST_CASE("outexpander checks on complete and split hosts") {
    RobustParams p{0.1, 0.1};
    auto k20 = check_robust_outexpander(complete_digraph(20), p, 100, 1);
    CHECK(k20.pass);

    auto split = check_robust_outexpander(two_cliques(10), p, 100, 1);
    CHECK_FALSE(split.pass);
    REQUIRE(split.counterexample.has_value());
    // the counterexample re-validates
    VertexSet rn = robust_out_neighborhood(two_cliques(10), *split.counterexample, p.nu);
    CHECK(static_cast<double>(rn.count()) <
          static_cast<double>(split.counterexample->count()) + p.nu * 20);
}

TEST_CASE("narrow size windows are decided exhaustively") {
    RobustParams p{0.45, 0.45};
    auto res = check_robust_outexpander(complete_digraph(20), p, 10, 1);
    CHECK(res.exhaustive);
    CHECK(res.pass);
}

TEST_CASE("complete digraphs expand at every small nu") {
    for (int n : {10, 30, 50}) {
        for (double nu : {0.1, 0.2}) {
            RobustParams p{nu, nu};
            auto res = check_robust_outexpander(complete_digraph(n), p, 60, 7);
            CHECK(res.pass);
        }
    }
}
