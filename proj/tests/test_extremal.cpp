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

#include "subdiv/extremal.hpp"
#include "subdiv/solver.hpp"

using namespace subdiv;

namespace {

ExtremalPartition classify_planted(const PlantedInstance& inst, const ParameterLadder& ladder, std::uint64_t seed) {
    auto witness = find_ec_witness(inst.graph, ladder.eps_prime, 12, seed);
    REQUIRE(witness.has_value());
    return classify_extremal_structure(inst.graph, *witness, ladder);
}

// fraction of ground-truth block vertices assigned to the matching part,
// maximized over the kind's label symmetry
double agreement(const PlantedInstance& inst, const ExtremalPartition& part) {
    int n = inst.graph.order();
    std::vector<std::vector<int>> relabelings;
    if (inst.kind == ExtremalKind::EC3)
        relabelings = {{1, 2, 3, 4}, {3, 4, 1, 2}};
    else
        relabelings = {{1, 2}, {2, 1}};
    double best = 0;
    for (const auto& relabel : relabelings) {
        int good = 0, total = 0;
        for (int v = 0; v < n; ++v) {
            int truth = inst.block_of[v];
            if (truth == 0) continue;  // planted exceptional set
            ++total;
            int want = relabel[truth - 1];
            if (static_cast<std::size_t>(want) <= part.parts.size() && part.parts[want - 1].contains(v)) ++good;
        }
        best = std::max(best, total == 0 ? 0.0 : static_cast<double>(good) / total);
    }
    return best;
}

}  // namespace

TEST_CASE("planted structures classify to their planted kind") {
    ParameterLadder ladder;
    for (auto kind : {ExtremalKind::EC1, ExtremalKind::EC2, ExtremalKind::EC3}) {
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
            PlantedInstance inst = planted_extremal(kind, 200, ladder, 0.0, seed);
            ExtremalPartition part = classify_planted(inst, ladder, seed);
            CHECK(part.kind == kind);
            CHECK(agreement(inst, part) >= 0.95);
        }
    }
}

TEST_CASE("classification at the larger scale") {
    ParameterLadder ladder;
    for (auto kind : {ExtremalKind::EC1, ExtremalKind::EC2, ExtremalKind::EC3}) {
        PlantedInstance inst = planted_extremal(kind, 400, ladder, 0.0, 11);
        ExtremalPartition part = classify_planted(inst, ladder, 11);
        CHECK(part.kind == kind);
        CHECK(agreement(inst, part) >= 0.95);
    }
}

TEST_CASE("partition dumps carry the kind and the parts") {
    ParameterLadder ladder;
    PlantedInstance inst = planted_extremal(ExtremalKind::EC1, 200, ladder, 0.0, 5);
    ExtremalPartition part = classify_planted(inst, ladder, 5);
    std::string j = part.to_json();
    CHECK(j.find("EC1") != std::string::npos);
    CHECK(j.find("parts") != std::string::npos);
}

TEST_CASE("covers route every exceptional vertex disjointly") {
    ParameterLadder ladder;
    for (auto kind : {ExtremalKind::EC1, ExtremalKind::EC2, ExtremalKind::EC3}) {
        PlantedInstance inst = planted_extremal(kind, 200, ladder, 0.0, 7);
        ExtremalPartition part = classify_planted(inst, ladder, 7);
        PathSystem sys = cover_exceptional(inst.graph, part, ladder, 7);
        // every exceptional vertex covered exactly once, paths disjoint,
        // endpoint tags verified inside cover_exceptional
        VertexSet covered = sys.vertex_set(200);
        for (int w = part.exceptional.next(0); w != -1; w = part.exceptional.next(w + 1))
            CHECK(covered.contains(w));
        for (const auto& p : sys.paths) CHECK(p.verts.size() <= 5);
    }
}

TEST_CASE("EC2 covers restore the side balance on an unbalanced host") {
    // doubled complete bipartite with |W1| = |W2| + 2 and a few arcs inside
    // W1; the cover must wrap two in-block arcs, each using one W2 vertex
    const int n1 = 12, n2 = 10, n = n1 + n2;
    Digraph d(n);
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v) {
            d.add_arc(u, n1 + v);
            d.add_arc(n1 + v, u);
        }
    for (int u = 0; u + 1 < n1; ++u) d.add_arc(u, u + 1);  // arcs inside W1
    ExtremalPartition part;
    part.kind = ExtremalKind::EC2;
    part.eps = 0.4;
    VertexSet w1(n), w2(n);
    for (int u = 0; u < n1; ++u) w1.insert(u);
    for (int v = 0; v < n2; ++v) w2.insert(n1 + v);
    part.parts = {w1, w2};
    part.exceptional = VertexSet(n);
    part.low_degree = {VertexSet(n), VertexSet(n)};
    ParameterLadder ladder;
    PathSystem sys = cover_exceptional(d, part, ladder, 3);
    REQUIRE(sys.paths.size() == 2);
    VertexSet used = sys.vertex_set(n);
    CHECK((w1 - used).count() == (w2 - used).count());
    CHECK(sys.matching_arcs.size() == 2);
}

TEST_CASE("balanced EC2 with no exceptional vertices needs no cover") {
    const int a = 8;
    Digraph d(2 * a);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < a; ++v) {
            d.add_arc(u, a + v);
            d.add_arc(a + v, u);
        }
    ExtremalPartition part;
    part.kind = ExtremalKind::EC2;
    part.eps = 0.4;
    VertexSet w1(2 * a), w2(2 * a);
    for (int u = 0; u < a; ++u) w1.insert(u);
    for (int v = 0; v < a; ++v) w2.insert(a + v);
    part.parts = {w1, w2};
    part.exceptional = VertexSet(2 * a);
    part.low_degree = {VertexSet(2 * a), VertexSet(2 * a)};
    ParameterLadder ladder;
    PathSystem sys = cover_exceptional(d, part, ladder, 3);
    CHECK(sys.paths.empty());
}

TEST_CASE("bipartite spanning subdivisions on a complete doubled host") {
    const int a = 5;
    Digraph t(2 * a);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < a; ++v) {
            t.add_arc(u, a + v);
            t.add_arc(a + v, u);
        }
    std::vector<int> side_a{0, 1, 2, 3, 4}, side_b{5, 6, 7, 8, 9};

    SubdivisionCert arc_cert = bipartite_subdivision(t, side_a, side_b, Pattern::single_arc(), {5}, 0.0, 1);
    CHECK(verify_subdivision(t, Pattern::single_arc(), arc_cert, true).pass());
    CHECK(arc_cert.routes[0].size() == 10);

    SubdivisionCert cyc_cert = bipartite_subdivision(t, side_a, side_b, Pattern::two_cycle(), {4, 1}, 0.0, 2);
    CHECK(verify_subdivision(t, Pattern::two_cycle(), cyc_cert, true).pass());

    CHECK_THROWS_AS(bipartite_subdivision(t, side_a, side_b, Pattern::single_arc(), {4}, 0.0, 1), InputError);
}

TEST_CASE("bipartite tilings on a complete doubled host") {
    const int a = 12;
    Digraph t(2 * a);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < a; ++v) {
            t.add_arc(u, a + v);
            t.add_arc(a + v, u);
        }
    std::vector<int> side_a, side_b;
    for (int i = 0; i < a; ++i) side_a.push_back(i), side_b.push_back(a + i);
    TilingCert cert = bipartite_tiling(t, side_a, side_b, Pattern::two_cycle(), {12, 12}, 0.0, 3);
    CHECK(verify_tiling(t, Pattern::two_cycle(), cert).pass());
    CHECK_THROWS_AS(bipartite_tiling(t, side_a, side_b, Pattern::two_cycle(), {11, 13}, 0.0, 3), InputError);
}

TEST_CASE("extremal spanning solves on planted instances") {
    ParameterLadder ladder;
    for (auto kind : {ExtremalKind::EC1, ExtremalKind::EC2, ExtremalKind::EC3}) {
        PlantedInstance inst = planted_extremal(kind, 200, ladder, 0.0, 13);
        ExtremalPartition part = classify_planted(inst, ladder, 13);
        REQUIRE(part.kind == kind);
        SubdivisionCert cert =
            solve_extremal_spanning(inst.graph, Pattern::single_arc(), std::nullopt, part, ladder, 13);
        CHECK(verify_subdivision(inst.graph, Pattern::single_arc(), cert, true).pass());
    }
}

TEST_CASE("extremal spanning handles a two-arc pattern") {
    ParameterLadder ladder;
    PlantedInstance inst = planted_extremal(ExtremalKind::EC1, 200, ladder, 0.0, 19);
    ExtremalPartition part = classify_planted(inst, ladder, 19);
    SubdivisionCert cert = solve_extremal_spanning(inst.graph, Pattern::two_cycle(), std::nullopt, part, ladder, 19);
    CHECK(verify_subdivision(inst.graph, Pattern::two_cycle(), cert, true).pass());
}

TEST_CASE("extremal tilings on planted instances") {
    ParameterLadder ladder;
    for (auto kind : {ExtremalKind::EC1, ExtremalKind::EC2, ExtremalKind::EC3}) {
        PlantedInstance inst = planted_extremal(kind, 200, ladder, 0.0, 23);
        ExtremalPartition part = classify_planted(inst, ladder, 23);
        REQUIRE(part.kind == kind);
        TilingCert cert = solve_extremal_tiling(inst.graph, Pattern::two_cycle(), {100, 100}, part, ladder, 23);
        CHECK(verify_tiling(inst.graph, Pattern::two_cycle(), cert).pass());
    }
}

TEST_CASE("the solver routes planted instances through the extremal engine") {
    ParameterLadder ladder;
    PlantedInstance inst = planted_extremal(ExtremalKind::EC1, 200, ladder, 0.0, 29);
    SolveOptions opts;
    opts.seed = 29;
    SolveOutcome res = solve(inst.graph, Pattern::single_arc(), opts);
    CHECK(res.route == SolveRoute::EC1);
    REQUIRE(res.spanning.has_value());

    // forcing a mismatched kind is a staged failure
    SolveOptions forced = opts;
    forced.force_extremal = ExtremalKind::EC2;
    CHECK_THROWS_AS(solve(inst.graph, Pattern::single_arc(), forced), SolveError);
}
