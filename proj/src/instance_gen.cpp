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

#include "subdiv/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "subdiv/rng.hpp"

namespace subdiv {

const char* extremal_kind_name(ExtremalKind k) {
    switch (k) {
        case ExtremalKind::EC1: return "EC1";
        case ExtremalKind::EC2: return "EC2";
        default: return "EC3";
    }
}

Digraph random_min_semidegree(int n, int d, std::uint64_t seed, double extra_p) {
    if (n < 1) throw InputError("generator needs n >= 1");
    if (d < 0 || d > n - 1) throw InputError("semi-degree floor must lie in [0, n-1]");
    Rng rng(seed);
    Digraph g(n);

    if (n >= 2 && d >= static_cast<int>(0.6 * (n - 1)) + 1) {
        // dense regime: thin a complete digraph, keeping both endpoints legal
        Digraph full = complete_digraph(n);
        std::vector<std::pair<int, int>> all = full.arcs();
        rng.shuffle(all);
        std::vector<int> outd(n, n - 1), ind(n, n - 1);
        std::vector<char> keep(all.size(), 1);
        for (std::size_t i = 0; i < all.size(); ++i) {
            auto [u, v] = all[i];
            if (outd[u] > d && ind[v] > d && rng.bernoulli(0.5)) {
                keep[i] = 0;
                --outd[u];
                --ind[v];
            }
        }
        for (std::size_t i = 0; i < all.size(); ++i)
            if (keep[i]) g.add_arc(all[i].first, all[i].second);
    } else if (n >= 3) {
        // union of d arc-disjoint permutation templates: a random vertex
        // order with shifts 1..d gives exactly d out- and in-arcs each
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        for (int shift = 1; shift <= d; ++shift)
            for (int i = 0; i < n; ++i) g.add_arc(perm[i], perm[(i + shift) % n]);
    } else if (n == 2 && d >= 1) {
        g.add_arc(0, 1);
        g.add_arc(1, 0);
    }

    if (extra_p > 0.0) {
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && !g.has_arc(u, v) && rng.bernoulli(extra_p)) g.add_arc(u, v);
    }
    if (g.min_semi_degree() < d) throw InputError("generator failed to certify the semi-degree floor");
    return g;
}

namespace {

void complete_inside(Digraph& g, const std::vector<int>& block) {
    for (int u : block)
        for (int v : block)
            if (u != v) g.add_arc_if_absent(u, v);
}

void one_way_complete(Digraph& g, const std::vector<int>& from, const std::vector<int>& to) {
    for (int u : from)
        for (int v : to)
            if (u != v) g.add_arc_if_absent(u, v);
}

void bidirectional_complete(Digraph& g, const std::vector<int>& a, const std::vector<int>& b) {
    one_way_complete(g, a, b);
    one_way_complete(g, b, a);
}

// Round-robin degree top-ups confined to one zone, so the planted structure
// survives re-measurement.
void patch_out(Digraph& g, int u, int target, const std::vector<int>& pool, std::size_t& cursor) {
    std::size_t guard = 0;
    while (g.out_degree(u) < target && guard++ < 4 * pool.size() + 8) {
        int v = pool[cursor++ % pool.size()];
        if (v != u && !g.has_arc(u, v)) g.add_arc(u, v);
    }
}
void patch_in(Digraph& g, int u, int target, const std::vector<int>& pool, std::size_t& cursor) {
    std::size_t guard = 0;
    while (g.in_degree(u) < target && guard++ < 4 * pool.size() + 8) {
        int v = pool[cursor++ % pool.size()];
        if (v != u && !g.has_arc(v, u)) g.add_arc(v, u);
    }
}

std::vector<int> iota_range(int from, int to) {
    std::vector<int> v(to - from);
    std::iota(v.begin(), v.end(), from);
    return v;
}

void noise_arcs(Digraph& g, const std::vector<int>& from, const std::vector<int>& to, double p, Rng& rng) {
    if (p <= 0.0) return;
    for (int u : from)
        for (int v : to)
            if (u != v && !g.has_arc(u, v) && rng.bernoulli(p)) g.add_arc(u, v);
}

}  // namespace

PlantedInstance planted_extremal(ExtremalKind kind, int n, const ParameterLadder& ladder, double noise,
                                 std::uint64_t seed) {
    if (n < 40) throw InputError("planted instances need n >= 40");
    if (n % 2 != 0) throw InputError("planted instances use even n");
    Rng rng(seed);
    const int half_need = (n + 1) / 2;
    PlantedInstance out;
    out.kind = kind;
    out.block_of.assign(n, 0);

    if (kind == ExtremalKind::EC1 || kind == ExtremalKind::EC2) {
        int w3 = std::max(4, (n / 50) & ~1);  // small, even
        int m = (n - w3) / 2;
        auto w1 = iota_range(0, m);
        auto w2 = iota_range(m, 2 * m);
        auto w3a = iota_range(2 * m, 2 * m + w3 / 2);  // in from W1, out to W2
        auto w3b = iota_range(2 * m + w3 / 2, n);      // out to W1, in from W2
        for (int v : w1) out.block_of[v] = 1;
        for (int v : w2) out.block_of[v] = 2;

        Digraph g(n);
        if (kind == ExtremalKind::EC1) {
            complete_inside(g, w1);
            complete_inside(g, w2);
        } else {
            bidirectional_complete(g, w1, w2);
        }
        for (int w : w3a) {
            one_way_complete(g, w1, {w});
            one_way_complete(g, {w}, w2);
        }
        for (int w : w3b) {
            one_way_complete(g, {w}, w1);
            one_way_complete(g, w2, {w});
        }
        // top up every semi-degree to the floor through structure-safe zones
        std::size_t c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
        for (int w : w3a) {
            patch_in(g, w, half_need, w2, c1);
            patch_out(g, w, half_need, w1, c2);
        }
        for (int w : w3b) {
            patch_in(g, w, half_need, w1, c1);
            patch_out(g, w, half_need, w2, c2);
        }
        for (int u : w1) {
            patch_out(g, u, half_need, w2, c3);
            patch_in(g, u, half_need, w2, c4);
        }
        for (int v : w2) {
            patch_out(g, v, half_need, w1, c5);
            patch_in(g, v, half_need, w1, c6);
        }

        Rng nrng = rng.fork(0x401);
        if (kind == ExtremalKind::EC1) {
            noise_arcs(g, w2, w1, 0.05 * noise, nrng);  // the reverse direction is budget-free
        } else {
            noise_arcs(g, w2, w2, 0.05 * noise, nrng);  // inside W2, outside the witness
        }

        if (g.min_semi_degree() < n / 2) throw InputError("planted instance failed the semi-degree floor");
        VertexSet u1(n), u2(n);
        if (kind == ExtremalKind::EC1) {
            for (int v : w1) u1.insert(v);
            for (int v : w2) u2.insert(v);
        } else {
            for (int v : w1) {
                u1.insert(v);
                u2.insert(v);
            }
        }
        double budget = ladder.eps_prime * n;
        if (static_cast<double>(g.arc_count_between(u1, u2)) > budget * budget)
            throw InputError("planted instance exceeds its witness budget");
        out.graph = std::move(g);
        return out;
    }

    // EC3: cliques W1, W3; doubled bipartite (W2, W4); one-way complete
    // cyclic blocks W1->W2->W3->W4->W1; small exceptional W5.
    int w5 = std::max(4, (n / 50) & ~1);
    int half_blocks = (n - w5) / 2;
    int a = static_cast<int>(std::lround(0.6 * half_blocks));
    int b = half_blocks - a;
    if (b < 6) throw InputError("planted EC3 needs a larger order for its block windows");
    auto w1 = iota_range(0, a);
    auto w2 = iota_range(a, a + b);
    auto w3 = iota_range(a + b, 2 * a + b);
    auto w4 = iota_range(2 * a + b, 2 * a + 2 * b);
    auto w5v = iota_range(2 * a + 2 * b, n);
    for (int v : w1) out.block_of[v] = 1;
    for (int v : w2) out.block_of[v] = 2;
    for (int v : w3) out.block_of[v] = 3;
    for (int v : w4) out.block_of[v] = 4;

    Digraph g(n);
    complete_inside(g, w1);
    complete_inside(g, w3);
    bidirectional_complete(g, w2, w4);
    one_way_complete(g, w1, w2);
    one_way_complete(g, w2, w3);
    one_way_complete(g, w3, w4);
    one_way_complete(g, w4, w1);
    for (int w : w5v) {
        one_way_complete(g, {w}, w1);
        one_way_complete(g, {w}, w2);
        one_way_complete(g, w3, {w});
        one_way_complete(g, w4, {w});
    }
    std::size_t c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
    for (int u : w1) patch_out(g, u, half_need, w5v, c1);
    for (int v : w2) patch_out(g, v, half_need, w5v, c2);
    for (int x : w3) patch_in(g, x, half_need, w5v, c3);
    for (int y : w4) patch_in(g, y, half_need, w5v, c4);
    for (int w : w5v) {
        patch_out(g, w, half_need, w3, c5);
        patch_in(g, w, half_need, w1, c6);
    }

    Rng nrng = rng.fork(0x403);
    noise_arcs(g, w3, w1, 0.03 * noise, nrng);

    if (g.min_semi_degree() < n / 2) throw InputError("planted instance failed the semi-degree floor");
    VertexSet u1(n), u2(n);
    for (int v : w1) u1.insert(v);
    for (int v : w4) {
        u1.insert(v);
        u2.insert(v);
    }
    for (int v : w3) u2.insert(v);
    double budget = ladder.eps_prime * n;
    if (static_cast<double>(g.arc_count_between(u1, u2)) > budget * budget)
        throw InputError("planted instance exceeds its witness budget");
    auto density_ok = [&](const std::vector<int>& from, const std::vector<int>& to) {
        VertexSet fs(n), ts(n);
        for (int v : from) fs.insert(v);
        for (int v : to) ts.insert(v);
        double have = static_cast<double>(g.arc_count_between(fs, ts));
        double want =
            static_cast<double>(from.size()) * static_cast<double>(to.size()) - ladder.eps_prime * n * n / 2.0;
        return have >= want;
    };
    if (!density_ok(w1, w2) || !density_ok(w2, w3) || !density_ok(w3, w4) || !density_ok(w4, w1))
        throw InputError("planted instance misses a one-way density bound");
    out.graph = std::move(g);
    return out;
}

Digraph tightness_witness(int n) {
    if (n < 4 || n % 2 != 0) throw InputError("tightness witness needs even n >= 4");
    Digraph g(n);
    for (int u = 0; u < n / 2; ++u)
        for (int v = 0; v < n / 2; ++v)
            if (u != v) g.add_arc(u, v);
    for (int u = n / 2; u < n; ++u)
        for (int v = n / 2; v < n; ++v)
            if (u != v) g.add_arc(u, v);
    return g;
}

}  // namespace subdiv
