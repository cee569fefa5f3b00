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

#include "subdiv/bipartite_embed.hpp"
#include "subdiv/rng.hpp"

using namespace subdiv;

namespace {

// brute-force path packing: does T admit disjoint alternating paths with the
// requested endpoints and side counts? Independent of the embedder.
struct BrutePacker {
    const Digraph& t;
    const EmbedRequest& req;
    VertexSet used;
    bool found = false;

    BrutePacker(const Digraph& tt, const EmbedRequest& r) : t(tt), req(r), used(tt.order()) {}

    bool run() {
        for (auto [x, y] : req.endpoints) used.insert(x), used.insert(y);
        place(0);
        return found;
    }

    void place(std::size_t i) {
        if (found) return;
        if (i == req.sizes.size()) {
            // all of A and B must be consumed
            for (int v : req.side_a)
                if (!used.contains(v)) return;
            for (int v : req.side_b)
                if (!used.contains(v)) return;
            found = true;
            return;
        }
        std::vector<int> path{req.endpoints[i].first};
        extend(i, path, 1, 0);
    }

    void extend(std::size_t i, std::vector<int>& path, int a_cnt, int b_cnt) {
        if (found) return;
        int target = req.endpoints[i].second;
        int cur = path.back();
        if (a_cnt == req.sizes[i] && b_cnt == req.sizes[i] - 1) {
            if (t.has_arc(cur, target)) {
                place(i + 1);
            }
            return;
        }
        bool next_is_b = path.size() % 2 == 1;
        const auto& pool = next_is_b ? req.side_b : req.side_a;
        for (int w : pool) {
            if (used.contains(w) || w == target || !t.has_arc(cur, w)) continue;
            used.insert(w);
            path.push_back(w);
            extend(i, path, a_cnt + (next_is_b ? 0 : 1), b_cnt + (next_is_b ? 1 : 0));
            path.pop_back();
            used.erase(w);
            if (found) return;
        }
    }
};

EmbedRequest random_instance(const Digraph& t, int a, int m, Rng& rng) {
    EmbedRequest req;
    req.host = &t;
    for (int i = 0; i < a; ++i) req.side_a.push_back(i);
    for (int i = 0; i < a; ++i) req.side_b.push_back(a + i);
    std::vector<int> apool = req.side_a, bpool = req.side_b;
    rng.shuffle(apool);
    rng.shuffle(bpool);
    for (int i = 0; i < m; ++i) req.endpoints.push_back({apool[i], bpool[i]});
    req.sizes.assign(m, a / m);
    for (int i = 0; i < a % m; ++i) ++req.sizes[i];
    req.eta = 1.0;  // no declared floor for random feasibility tests
    return req;
}

Digraph random_bipartite(int a, double p, Rng& rng) {
    Digraph t(2 * a);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j) {
            if (rng.bernoulli(p)) t.add_arc(i, a + j);
            if (rng.bernoulli(p)) t.add_arc(a + j, i);
        }
    return t;
}

void check_paths(const Digraph& t, const EmbedRequest& req, const EmbedOutcome& out) {
    REQUIRE(out.success);
    REQUIRE(out.paths.size() == req.sizes.size());
    std::set<int> covered;
    for (std::size_t i = 0; i < out.paths.size(); ++i) {
        const auto& p = out.paths[i];
        CHECK(p.front() == req.endpoints[i].first);
        CHECK(p.back() == req.endpoints[i].second);
        int a_cnt = 0, b_cnt = 0;
        std::set<int> aset(req.side_a.begin(), req.side_a.end());
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k + 1 < p.size()) REQUIRE(t.has_arc(p[k], p[k + 1]));
            REQUIRE(covered.insert(p[k]).second);
            (aset.count(p[k]) ? a_cnt : b_cnt) += 1;
        }
        CHECK(a_cnt == req.sizes[i]);
        CHECK(b_cnt == req.sizes[i]);
    }
    CHECK(covered.size() == req.side_a.size() + req.side_b.size());
}

}  // namespace

TEST_CASE("maximum matching and the deficiency certificate") {
    // left 0 and 1 both only see right 0
    std::vector<std::vector<int>> adj{{0}, {0}, {1}};
    auto m = max_bipartite_matching(3, 2, adj);
    CHECK(m.size == 2);
    auto deficient = hall_deficient_left_set(3, 2, adj, m);
    std::set<int> nbh;
    for (int u : deficient)
        for (int v : adj[u]) nbh.insert(v);
    CHECK(nbh.size() < deficient.size());
}

TEST_CASE("complete doubled bipartite hosts always embed") {
    Rng rng(1);
    Digraph t = random_bipartite(6, 1.0, rng);
    EmbedRequest req = random_instance(t, 6, 2, rng);
    req.eta = 0.0;
    auto out = embed_paths_bipartite(req, 7);
    check_paths(t, req, out);
}

TEST_CASE("the embedder is exact against brute-force packing on small hosts") {
    Rng rng(23);
    int disagreements = 0, feasible = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int a = 3 + static_cast<int>(rng.below(3));  // 3..5
        int m = 1 + static_cast<int>(rng.below(2));
        if (m > a) m = a;
        Digraph t = random_bipartite(a, 0.55, rng);
        EmbedRequest req = random_instance(t, a, m, rng);
        auto out = embed_paths_bipartite(req, 99, 4, /*exhaustive_cap=*/7);
        BrutePacker brute(t, req);
        bool expect = brute.run();
        if (expect) ++feasible;
        if (out.success != expect) ++disagreements;
        if (out.success) check_paths(t, req, out);
    }
    CHECK(disagreements == 0);
    CHECK(feasible > 5);
}

TEST_CASE("failures carry a valid deficiency certificate") {
    // side B vertex 3 (= b0) is the only fit for every pair slot
    Digraph t(6);  // A = {0,1,2}, B = {3,4,5}
    // x0 -> b -> x1 and x1 -> b -> x2 only via b = 3
    t.add_arc(0, 3);
    t.add_arc(3, 1);
    t.add_arc(1, 3);
    t.add_arc(3, 2);
    t.add_arc(2, 4);  // terminal arc to y0 = 4
    t.add_arc(4, 0);
    t.add_arc(5, 0);
    t.add_arc(2, 5);
    EmbedRequest req;
    req.host = &t;
    req.side_a = {0, 1, 2};
    req.side_b = {3, 4, 5};
    req.endpoints = {{0, 4}};
    req.sizes = {3};
    req.eta = 1.0;
    auto out = embed_paths_bipartite(req, 3, 4, 7);
    CHECK_FALSE(out.success);
    CHECK(out.failure == "hall-violation");
    CHECK(out.deficient_pairs.size() > out.deficient_neighborhood.size());
}

TEST_CASE("dense random instances at engineering scale") {
    Rng rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        Digraph t = random_bipartite(50, 0.93, rng);
        EmbedRequest req = random_instance(t, 50, 3, rng);
        req.eta = 0.2;
        auto out = embed_paths_bipartite(req, 1000 + trial);
        check_paths(t, req, out);
    }
}

TEST_CASE("unit chains seat multi-vertex fragments") {
    // a complete bipartite host; one fragment on each side
    Rng rng(5);
    Digraph t = random_bipartite(6, 1.0, rng);
    UnitChainProblem prob;
    prob.host = &t;
    // X side = 0..5, Y side = 6..11
    // fragment [0 -> 7 -> 1] is an X unit (init 0, term 1)
    prob.units.push_back({{0, 7, 1}, true});
    for (int v : {2, 3, 4}) prob.units.push_back({{v}, true});
    for (int v : {6, 8, 9, 10}) prob.units.push_back({{v}, false});
    prob.units.push_back({{5}, true});    // start
    prob.units.push_back({{11}, false});  // end
    prob.free_x = {0, 1, 2, 3};
    prob.free_y = {4, 5, 6, 7};
    UnitChainSpec chain;
    chain.start_unit = 8;
    chain.end_unit = 9;
    chain.free_x = 4;
    chain.free_y = 4;
    prob.chains = {chain};
    auto res = embed_unit_chains(prob, 11);
    REQUIRE(res.success);
    const auto& c = res.chains[0];
    CHECK(c.front() == 5);
    CHECK(c.back() == 11);
    CHECK(c.size() == 12);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) REQUIRE(t.has_arc(c[i], c[i + 1]));
}
