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

#include <sstream>

#include "subdiv/digraph.hpp"
#include "subdiv/rng.hpp"

using namespace subdiv;

namespace {

Digraph three_cycle() {
    Digraph d(3);
    d.add_arc(0, 1);
    d.add_arc(1, 2);
    d.add_arc(2, 0);
    return d;
}

Digraph from_mask(int n, unsigned long long mask) {
    Digraph d(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (mask >> bit & 1ULL) d.add_arc(u, v);
            ++bit;
        }
    return d;
}

}  // namespace

TEST_CASE("out and in neighborhoods restricted to a set") {
    Digraph c3 = three_cycle();
    CHECK(c3.out_neighbors(0, VertexSet::full(3)) == VertexSet::of(3, {1}));
    CHECK(c3.out_neighbors(0, VertexSet::of(3, {2})).empty());
    CHECK(c3.in_neighbors(0, VertexSet::full(3)) == VertexSet::of(3, {2}));

    Digraph k4 = complete_digraph(4);
    CHECK(k4.out_neighbors(2, VertexSet::full(4)) == VertexSet::of(4, {0, 1, 3}));

    CHECK_THROWS_AS(c3.out_neighbors(5, VertexSet::full(3)), InputError);
}

TEST_CASE("minimum semi-degree") {
    CHECK(complete_digraph(5).min_semi_degree() == 4);
    CHECK(three_cycle().min_semi_degree() == 1);

    Digraph two_k4(8);
    for (int base : {0, 4})
        for (int u = 0; u < 4; ++u)
            for (int v = 0; v < 4; ++v)
                if (u != v) two_k4.add_arc(base + u, base + v);
    CHECK(two_k4.min_semi_degree() == 3);

    CHECK_THROWS_AS(Digraph(0).min_semi_degree(), InputError);
}

TEST_CASE("arc counts between sets") {
    Digraph k4 = complete_digraph(4);
    CHECK(k4.arc_count_between(VertexSet::of(4, {0, 1}), VertexSet::of(4, {2, 3})) == 4);

    Digraph c3 = three_cycle();
    CHECK(c3.arc_count_between(VertexSet::of(3, {0, 1}), VertexSet::of(3, {0, 1})) == 1);
    CHECK(c3.arc_count_between(VertexSet(3), VertexSet::full(3)) == 0);
}

TEST_CASE("bidirectional degree") {
    CHECK(complete_digraph(4).bidirectional_degree(0, VertexSet::of(4, {1, 2, 3})) == 3);
    CHECK(three_cycle().bidirectional_degree(0, VertexSet::full(3)) == 0);

    Digraph d(3);
    d.add_arc(0, 1);
    d.add_arc(1, 0);
    d.add_arc(0, 2);
    CHECK(d.bidirectional_degree(0, VertexSet::of(3, {1, 2})) == 1);
}

TEST_CASE("degree sums equal the arc count, exhaustively to n = 4") {
    for (int n = 1; n <= 4; ++n) {
        unsigned long long limit = 1ULL << (n * (n - 1));
        // n = 4 walks all 4096 digraphs
        for (unsigned long long mask = 0; mask < limit; ++mask) {
            Digraph d = from_mask(n, mask);
            long long out_sum = 0, in_sum = 0;
            for (int v = 0; v < n; ++v) {
                out_sum += d.out_degree(v);
                in_sum += d.in_degree(v);
            }
            REQUIRE(out_sum == d.arc_count());
            REQUIRE(in_sum == d.arc_count());
            // arc_count_between(X, V) equals the out-degree sum over X
            for (unsigned xm = 0; xm < (1u << n); ++xm) {
                VertexSet x(n);
                long long expect = 0;
                for (int v = 0; v < n; ++v)
                    if (xm >> v & 1u) {
                        x.insert(v);
                        expect += d.out_degree(v);
                    }
                REQUIRE(d.arc_count_between(x, VertexSet::full(n)) == expect);
            }
        }
    }
}

TEST_CASE("bidirectional degree is bounded by both restricted semi-degrees") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng.below(8));
        Digraph d(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng.bernoulli(0.4)) d.add_arc(u, v);
        VertexSet u_set(n);
        for (int v = 0; v < n; ++v)
            if (rng.bernoulli(0.5)) u_set.insert(v);
        int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int b = d.bidirectional_degree(v, u_set);
        CHECK(b <= d.out_degree_in(v, u_set));
        CHECK(b <= d.in_degree_in(v, u_set));
    }
}

TEST_CASE("construction rejects loops and duplicate arcs") {
    Digraph d(3);
    CHECK_THROWS_AS(d.add_arc(1, 1), InputError);
    d.add_arc(0, 1);
    CHECK_THROWS_AS(d.add_arc(0, 1), InputError);
    d.add_arc(1, 0);  // antiparallel is fine
    CHECK(d.arc_count() == 2);
}

TEST_CASE("digraph v1 text round-trip and errors") {
    Digraph c3 = three_cycle();
    std::string text = digraph_v1_string(c3);
    Digraph back = read_digraph_v1_string(text);
    CHECK(back == c3);
    CHECK(digraph_v1_string(back) == text);

    CHECK_NOTHROW(read_digraph_v1_string("2 1 # comment\n0 1\n"));
    CHECK_THROWS_AS(read_digraph_v1_string(""), InputError);
    CHECK_THROWS_AS(read_digraph_v1_string("2 2\n0 1\n"), InputError);
    CHECK_THROWS_AS(read_digraph_v1_string("2 1\n0 5\n"), InputError);
    CHECK_THROWS_AS(read_digraph_v1_string("2 1\n0 x\n"), InputError);
}
