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
#include "subdiv/oracle.hpp"

using namespace subdiv;

TEST_CASE("random digraphs certify their semi-degree floor") {
    for (int seed = 1; seed <= 10; ++seed) {
        Digraph d = random_min_semidegree(8, 4, seed);
        CHECK(d.min_semi_degree() >= 4);
    }
    CHECK(random_min_semidegree(9, 8, 1).arc_count() >= 9 * 8 / 2);
    CHECK(random_min_semidegree(6, 0, 1).min_semi_degree() >= 0);
    CHECK_THROWS_AS(random_min_semidegree(5, 5, 1), InputError);
}

TEST_CASE("the dense regime also certifies") {
    Digraph d = random_min_semidegree(30, 26, 7);
    CHECK(d.min_semi_degree() >= 26);
    CHECK(d.arc_count() < 30 * 29);  // actually thinned
}

TEST_CASE("fixed seeds give identical graphs") {
    Digraph a = random_min_semidegree(20, 8, 42, 0.1);
    Digraph b = random_min_semidegree(20, 8, 42, 0.1);
    CHECK(a == b);
    Digraph c = random_min_semidegree(20, 8, 43, 0.1);
    CHECK_FALSE(a == c);

    ParameterLadder ladder;
    for (auto kind : {ExtremalKind::EC1, ExtremalKind::EC2, ExtremalKind::EC3}) {
        PlantedInstance p1 = planted_extremal(kind, 200, ladder, 0.2, 9);
        PlantedInstance p2 = planted_extremal(kind, 200, ladder, 0.2, 9);
        CHECK(p1.graph == p2.graph);
    }
}

TEST_CASE("planted instances meet their floors and budgets") {
    ParameterLadder ladder;
    for (auto kind : {ExtremalKind::EC1, ExtremalKind::EC2, ExtremalKind::EC3}) {
        for (int n : {200, 400}) {
            PlantedInstance inst = planted_extremal(kind, n, ladder, 0.0, 3);
            CHECK(inst.graph.order() == n);
            CHECK(inst.graph.min_semi_degree() >= n / 2);
            int blocks = kind == ExtremalKind::EC3 ? 4 : 2;
            for (int b = 1; b <= blocks; ++b) {
                int count = 0;
                for (int v = 0; v < n; ++v)
                    if (inst.block_of[v] == b) ++count;
                CHECK(count > 0);
            }
        }
    }
}

TEST_CASE("noise keeps the planted structure intact") {
    ParameterLadder ladder;
    for (auto kind : {ExtremalKind::EC1, ExtremalKind::EC2, ExtremalKind::EC3}) {
        PlantedInstance inst = planted_extremal(kind, 200, ladder, 1.0, 17);
        CHECK(inst.graph.min_semi_degree() >= 100);
    }
}

TEST_CASE("tightness witnesses are sharp") {
    for (int n : {4, 6, 8}) {
        Digraph d = tightness_witness(n);
        CHECK(d.min_semi_degree() == n / 2 - 1);
        if (n <= 8) {
            CHECK(oracle::hamiltonian_path_exact(d).proved_absent());
            CHECK(oracle::find_spanning_subdivision_exact(d, Pattern::single_arc()).proved_absent());
        }
    }
    CHECK_THROWS_AS(tightness_witness(7), InputError);
    CHECK_THROWS_AS(tightness_witness(2), InputError);
}
