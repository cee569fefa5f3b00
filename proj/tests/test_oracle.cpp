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

#include <set>

#include "subdiv/instance_gen.hpp"
#include "subdiv/oracle.hpp"
#include "subdiv/rng.hpp"

using namespace subdiv;

namespace {

Digraph directed_cycle(int n) {
    Digraph d(n);
    for (int i = 0; i < n; ++i) d.add_arc(i, (i + 1) % n);
    return d;
}

Digraph two_cliques(int half) {
    Digraph d(2 * half);
    for (int base : {0, half})
        for (int u = 0; u < half; ++u)
            for (int v = 0; v < half; ++v)
                if (u != v) d.add_arc(base + u, base + v);
    return d;
}

// definitional absorber count by four nested loops, no neighborhood algebra
long long quadruple_loop_count(const Digraph& d, int u, int v) {
    long long c = 0;
    int n = d.order();
    for (int z1 = 0; z1 < n; ++z1)
        for (int z2 = 0; z2 < n; ++z2)
            for (int z3 = 0; z3 < n; ++z3)
                for (int z4 = 0; z4 < n; ++z4) {
                    std::set<int> s{z1, z2, z3, z4};
                    if (s.size() != 4 || s.count(u) || s.count(v)) continue;
                    if (d.has_arc(z1, z2) && d.has_arc(z2, z3) && d.has_arc(z3, z4) && d.has_arc(z2, u) &&
                        d.has_arc(v, z3))
                        ++c;
                }
    return c;
}

}  // namespace

TEST_CASE("spanning search on small hosts") {
    Pattern arc = Pattern::single_arc();
    auto found = oracle::find_spanning_subdivision_exact(complete_digraph(4), arc);
    REQUIRE(found.found());
    CHECK(verify_subdivision(complete_digraph(4), arc, *found.value, true).pass());

    auto none = oracle::find_spanning_subdivision_exact(two_cliques(3), arc);
    CHECK(none.proved_absent());
}

TEST_CASE("a 6-cycle splits into two length-3 routes at antipodal branch vertices") {
    Digraph c6 = directed_cycle(6);
    Pattern two = Pattern::two_cycle();
    std::vector<int> lengths{3, 3};
    auto res = oracle::find_spanning_subdivision_exact(c6, two, lengths);
    REQUIRE(res.found());
    CHECK(verify_subdivision(c6, two, *res.value, true, lengths).pass());
    int a = res.value->branch[0], b = res.value->branch[1];
    CHECK((b - a + 6) % 6 == 3);  // antipodal on the cycle
}

TEST_CASE("perfect tiling search") {
    Pattern two = Pattern::two_cycle();
    Digraph host(8);
    for (int base : {0, 4})
        for (int i = 0; i < 4; ++i) host.add_arc(base + i, base + (i + 1) % 4);
    auto res = oracle::find_perfect_tiling_exact(host, two, {4, 4});
    REQUIRE(res.found());
    CHECK(verify_tiling(host, two, *res.value).pass());

    auto k8 = oracle::find_perfect_tiling_exact(complete_digraph(8), two, {4, 4});
    REQUIRE(k8.found());
    CHECK(verify_tiling(complete_digraph(8), two, *k8.value).pass());

    CHECK_THROWS_AS(oracle::find_perfect_tiling_exact(complete_digraph(8), two, {4, 3}), InputError);
}

TEST_CASE("absorber enumeration matches known complete-digraph counts") {
    Digraph k7 = complete_digraph(7);
    CHECK(oracle::enumerate_absorbers(k7, 5, 6).size() == 120);
    CHECK(oracle::count_absorbers(k7, 5, 6) == 120);
    CHECK(oracle::count_absorbers(k7, 5, 5) == 360);  // u = v leaves six vertices
    CHECK(oracle::enumerate_absorbers(directed_cycle(3), 0, 1).empty());
}

TEST_CASE("absorber counts agree with the definitional quadruple loop") {
    Rng rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 6 + static_cast<int>(rng.below(3));  // 6..8
        Digraph d(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng.bernoulli(0.5)) d.add_arc(u, v);
        int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        long long expect = quadruple_loop_count(d, u, v);
        CHECK(oracle::count_absorbers(d, u, v) == expect);
        CHECK(static_cast<long long>(oracle::enumerate_absorbers(d, u, v).size()) == expect);
    }
}

TEST_CASE("hamiltonian paths via the subset DP") {
    auto k5 = oracle::hamiltonian_path_exact(complete_digraph(5));
    REQUIRE(k5.found());
    CHECK(k5.value->size() == 5);

    CHECK(oracle::hamiltonian_path_exact(two_cliques(3)).proved_absent());

    // a 5-cycle with the initial fixed to the successor of the terminal has
    // exactly the wrap-around path
    Digraph c5 = directed_cycle(5);
    auto wrap = oracle::hamiltonian_path_exact(c5, 3, 2);
    REQUIRE(wrap.found());
    CHECK(*wrap.value == std::vector<int>{3, 4, 0, 1, 2});
    CHECK(oracle::hamiltonian_path_exact(c5, 2, 4).proved_absent());
}

TEST_CASE("spanning single-arc search agrees with the hamiltonian oracle") {
    Pattern arc = Pattern::single_arc();
    // all digraphs on up to 3 vertices
    for (int n = 2; n <= 3; ++n) {
        unsigned long long limit = 1ULL << (n * (n - 1));
        for (unsigned long long mask = 0; mask < limit; ++mask) {
            Digraph d(n);
            int bit = 0;
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v) {
                    if (u == v) continue;
                    if (mask >> bit & 1ULL) d.add_arc(u, v);
                    ++bit;
                }
            bool a = oracle::find_spanning_subdivision_exact(d, arc).found();
            bool b = oracle::hamiltonian_path_exact(d).found();
            REQUIRE(a == b);
        }
    }
    // random digraphs up to 6
    Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 4 + static_cast<int>(rng.below(3));
        Digraph d(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && rng.bernoulli(0.4)) d.add_arc(u, v);
        bool a = oracle::find_spanning_subdivision_exact(d, arc).found();
        bool b = oracle::hamiltonian_path_exact(d).found();
        REQUIRE(a == b);
    }
}

TEST_CASE("the order cap guards the exact oracle") {
    CHECK_THROWS_AS(oracle::find_spanning_subdivision_exact(complete_digraph(12), Pattern::single_arc()),
                    InputError);
    oracle::Budget b;
    b.override_cap = true;
    CHECK(oracle::find_spanning_subdivision_exact(complete_digraph(12), Pattern::single_arc(), std::nullopt, b)
              .found());
}

TEST_CASE("budget exhaustion is distinct from proved absence") {
    oracle::Budget tiny;
    tiny.node_limit = 5;
    auto res = oracle::find_spanning_subdivision_exact(complete_digraph(8), Pattern::two_cycle(), std::nullopt, tiny);
    CHECK(res.status == oracle::Status::Exhausted);
}
