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

#include "subdiv/extremal.hpp"

#include <algorithm>
#include <cmath>

namespace subdiv {

VertexSet PathSystem::vertex_set(int host_order) const {
    VertexSet s(host_order);
    for (const auto& p : paths)
        for (int v : p.verts) s.insert(v);
    return s;
}

namespace {

struct CoverContext {
    const Digraph& d;
    const ExtremalPartition& part;
    VertexSet avail;  // vertices still free to route through
    Rng rng;

    CoverContext(const Digraph& dg, const ExtremalPartition& p, std::uint64_t seed)
        : d(dg), part(p), avail(VertexSet::full(dg.order())), rng(seed) {}

    // a free vertex of `pool` ∩ `constraint`, preferring full-degree ones
    int pick(const VertexSet& pool, const VertexSet& constraint, const VertexSet* avoid_low = nullptr) {
        VertexSet cand = pool & constraint & avail;
        if (avoid_low) {
            VertexSet strong = cand - *avoid_low;
            if (!strong.empty()) cand = strong;
        }
        auto opts = cand.to_vector();
        if (opts.empty()) return -1;
        return opts[rng.below(opts.size())];
    }

    void commit(PathSystem& sys, std::vector<int> verts, int from_part, int to_part) {
        for (int v : verts) avail.erase(v);
        sys.paths.push_back({std::move(verts), from_part, to_part});
    }
};

// (a, w, b) with a in pre ∩ N^-(w), b in post ∩ N^+(w)
bool cover_singleton(CoverContext& cx, PathSystem& sys, int w, const VertexSet& pre, int pre_tag,
                     const VertexSet& post, int post_tag, const VertexSet* pre_low = nullptr,
                     const VertexSet* post_low = nullptr) {
    int a = cx.pick(pre, cx.d.in_row(w), pre_low);
    if (a < 0) return false;
    cx.avail.erase(a);  // reserve while choosing the exit
    int b = cx.pick(post, cx.d.out_row(w), post_low);
    if (b < 0) {
        cx.avail.insert(a);
        return false;
    }
    cx.avail.insert(a);
    cx.commit(sys, {a, w, b}, pre_tag, post_tag);
    return true;
}

void split_dichotomy(const Digraph& d, const ExtremalPartition& part, double e13, std::vector<int>& type1,
                     std::vector<int>& type2) {
    const int n = d.order();
    const double dominant = (1.0 - 2.0 * e13) * n / 2.0;
    const VertexSet& w1 = part.parts[0];
    const VertexSet& w2 = part.parts[1];
    for (int w = part.exceptional.next(0); w != -1; w = part.exceptional.next(w + 1)) {
        bool t1 = d.in_degree_in(w, w1) > dominant && d.out_degree_in(w, w2) > dominant;
        if (t1)
            type1.push_back(w);
        else
            type2.push_back(w);
    }
}

PathSystem cover_ec1(const Digraph& d, const ExtremalPartition& part, const ParameterLadder& ladder,
                     std::uint64_t seed) {
    CoverContext cx(d, part, seed);
    PathSystem sys;
    const double e13 = std::cbrt(ladder.eps);
    const VertexSet& w1 = part.parts[0];
    const VertexSet& w2 = part.parts[1];
    std::vector<int> type1, type2;  // type1: in from W1, out to W2
    split_dichotomy(d, part, e13, type1, type2);

    auto cover_one = [&](int w, bool is_type1) -> bool {
        // singletons first: a length-2 path inside one block
        if (is_type1) {
            if (cover_singleton(cx, sys, w, w1, 0, w1, 0, &part.low_degree[0], &part.low_degree[0])) return true;
            if (cover_singleton(cx, sys, w, w2, 1, w2, 1, &part.low_degree[1], &part.low_degree[1])) return true;
        } else {
            if (cover_singleton(cx, sys, w, w2, 1, w2, 1, &part.low_degree[1], &part.low_degree[1])) return true;
            if (cover_singleton(cx, sys, w, w1, 0, w1, 0, &part.low_degree[0], &part.low_degree[0])) return true;
        }
        // length-4 fallback through a cross arc: W1 w W2 W2 W1 (type1) or
        // its mirror; needs one arc from the exit block back to the home one
        const VertexSet& home = is_type1 ? w1 : w2;
        const VertexSet& away = is_type1 ? w2 : w1;
        int home_tag = is_type1 ? 0 : 1;
        int a = cx.pick(home, cx.d.in_row(w));
        if (a < 0) return false;
        VertexSet exits = cx.d.out_row(w) & away & cx.avail;
        for (int x = exits.next(0); x != -1; x = exits.next(x + 1)) {
            VertexSet nxt = cx.d.out_row(x) & away & cx.avail;
            nxt.erase(x);
            for (int v = nxt.next(0); v != -1; v = nxt.next(v + 1)) {
                VertexSet back = cx.d.out_row(v) & home & cx.avail;
                back.erase(a);
                int u = back.next(0);
                if (u != -1 && a != x && a != v) {
                    cx.commit(sys, {a, w, x, v, u}, home_tag, home_tag);
                    return true;
                }
            }
        }
        return false;
    };

    // pair leftovers of opposite types through the shared neighborhoods
    std::vector<int> rest1, rest2;
    for (int w : type1)
        if (!cover_one(w, true)) rest1.push_back(w);
    for (int w : type2)
        if (!cover_one(w, false)) rest2.push_back(w);
    while (!rest1.empty() && !rest2.empty()) {
        int u = rest1.back(), v = rest2.back();
        // W2 v W1 u W2: enter the type-2 vertex from W2, pivot in W1, leave
        // the type-1 vertex into W2
        int x2 = cx.pick(w2, cx.d.in_row(v));
        if (x2 < 0) break;
        cx.avail.erase(x2);
        VertexSet pivot = cx.d.out_row(v) & cx.d.in_row(u) & w1 & cx.avail;
        int x1 = pivot.next(0);
        if (x1 < 0) {
            cx.avail.insert(x2);
            break;
        }
        cx.avail.erase(x1);
        int y2 = cx.pick(w2, cx.d.out_row(u));
        cx.avail.insert(x1);
        cx.avail.insert(x2);
        if (y2 < 0) break;
        cx.commit(sys, {x2, v, x1, u, y2}, 1, 1);
        rest1.pop_back();
        rest2.pop_back();
    }
    if (!rest1.empty() || !rest2.empty())
        throw SolveError("cover", "exceptional vertex " +
                                      std::to_string(rest1.empty() ? rest2.back() : rest1.back()) +
                                      " admits no cover path");
    return sys;
}

PathSystem cover_ec2(const Digraph& d, const ExtremalPartition& part, const ParameterLadder& ladder,
                     std::uint64_t seed) {
    CoverContext cx(d, part, seed);
    PathSystem sys;
    const double e13 = std::cbrt(ladder.eps);
    const VertexSet& w1 = part.parts[0];
    const VertexSet& w2 = part.parts[1];
    std::vector<int> type1, type2;
    split_dichotomy(d, part, e13, type1, type2);

    for (int w : type1) {  // W1 -> w -> W2 chain link
        if (!cover_singleton(cx, sys, w, w1, 0, w2, 1, &part.low_degree[0], &part.low_degree[1]))
            throw SolveError("cover", "exceptional vertex " + std::to_string(w) + " admits no cover path");
    }
    for (int w : type2) {
        if (!cover_singleton(cx, sys, w, w2, 1, w1, 0, &part.low_degree[1], &part.low_degree[0]))
            throw SolveError("cover", "exceptional vertex " + std::to_string(w) + " admits no cover path");
    }

    // every chain consumed one vertex per side, so the residual imbalance is
    // the block imbalance; burn it with in-block arcs wrapped by one vertex
    // of the other side
    int r = (w1 & cx.avail).count() - (w2 & cx.avail).count();
    const VertexSet& big = r > 0 ? w1 : w2;
    const VertexSet& small = r > 0 ? w2 : w1;
    int big_tag = r > 0 ? 0 : 1;
    int small_tag = r > 0 ? 1 : 0;
    for (int k = std::abs(r); k > 0; --k) {
        bool placed = false;
        VertexSet candidates = big & cx.avail;
        for (int u = candidates.next(0); u != -1 && !placed; u = candidates.next(u + 1)) {
            VertexSet heads = d.out_row(u) & big & cx.avail;
            heads.erase(u);
            for (int u2 = heads.next(0); u2 != -1 && !placed; u2 = heads.next(u2 + 1)) {
                int c = cx.pick(small, d.out_row(u2));
                if (c >= 0 && c != u && c != u2) {
                    cx.commit(sys, {u, u2, c}, big_tag, small_tag);
                    placed = true;
                }
            }
        }
        if (!placed)
            throw SolveError("cover", "no in-block arc available to repair the side imbalance (short by " +
                                          std::to_string(k) + ")");
        sys.matching_arcs.emplace_back(sys.paths.back().verts[0], sys.paths.back().verts[1]);
    }
    return sys;
}

PathSystem cover_ec3(const Digraph& d, const ExtremalPartition& part, const ParameterLadder& ladder,
                     std::uint64_t seed) {
    CoverContext cx(d, part, seed);
    PathSystem sys;
    const double e13 = std::cbrt(ladder.eps);
    const VertexSet& w1 = part.parts[0];
    const VertexSet& w2 = part.parts[1];
    const VertexSet& w3 = part.parts[2];
    const VertexSet& w4 = part.parts[3];
    const double floor13 = (1.0 - e13) * std::min(w1.count(), w3.count());

    for (int w = part.exceptional.next(0); w != -1; w = part.exceptional.next(w + 1)) {
        bool out1 = d.out_degree_in(w, w1) >= floor13;  // w -> W1, W3 -> w
        // clique-side singletons first
        if (out1) {
            if (cover_singleton(cx, sys, w, w1, 0, w1, 0, &part.low_degree[0], &part.low_degree[0])) continue;
            if (cover_singleton(cx, sys, w, w3, 2, w3, 2, &part.low_degree[2], &part.low_degree[2])) continue;
            // cyclic route: W3 w W1 W2 W3 (a W3-path)
            int u = cx.pick(w3, d.in_row(w));
            if (u >= 0) {
                cx.avail.erase(u);
                int a = cx.pick(w1, d.out_row(w));
                if (a >= 0) {
                    cx.avail.erase(a);
                    int y = cx.pick(w2, d.out_row(a));
                    if (y >= 0) {
                        cx.avail.erase(y);
                        int v = cx.pick(w3, d.out_row(y));
                        cx.avail.insert(y);
                        cx.avail.insert(a);
                        cx.avail.insert(u);
                        if (v >= 0 && v != u) {
                            cx.commit(sys, {u, w, a, y, v}, 2, 2);
                            continue;
                        }
                    } else {
                        cx.avail.insert(a);
                        cx.avail.insert(u);
                    }
                } else {
                    cx.avail.insert(u);
                }
            }
        } else {
            if (cover_singleton(cx, sys, w, w1, 0, w1, 0, &part.low_degree[0], &part.low_degree[0])) continue;
            if (cover_singleton(cx, sys, w, w3, 2, w3, 2, &part.low_degree[2], &part.low_degree[2])) continue;
            // cyclic route: W1 w W3 W4 W1 (a W1-path)
            int a = cx.pick(w1, d.in_row(w));
            if (a >= 0) {
                cx.avail.erase(a);
                int u = cx.pick(w3, d.out_row(w));
                if (u >= 0) {
                    cx.avail.erase(u);
                    int x = cx.pick(w4, d.out_row(u));
                    if (x >= 0) {
                        cx.avail.erase(x);
                        int b = cx.pick(w1, d.out_row(x));
                        cx.avail.insert(x);
                        cx.avail.insert(u);
                        cx.avail.insert(a);
                        if (b >= 0 && b != a) {
                            cx.commit(sys, {a, w, u, x, b}, 0, 0);
                            continue;
                        }
                    } else {
                        cx.avail.insert(u);
                        cx.avail.insert(a);
                    }
                } else {
                    cx.avail.insert(a);
                }
            }
        }
        // bipartite-side chains
        bool out2 = d.out_degree_in(w, w2) >= (1.0 - e13) * std::min(w2.count(), w4.count());
        if (out2) {
            if (cover_singleton(cx, sys, w, w4, 3, w2, 1, &part.low_degree[3], &part.low_degree[1])) continue;
        } else {
            if (cover_singleton(cx, sys, w, w2, 1, w4, 3, &part.low_degree[1], &part.low_degree[3])) continue;
        }
        throw SolveError("cover", "exceptional vertex " + std::to_string(w) + " admits no cover path");
    }

    // restore the bipartite balance as in the doubled case
    int r = (w2 & cx.avail).count() - (w4 & cx.avail).count();
    const VertexSet& big = r > 0 ? w2 : w4;
    const VertexSet& other = r > 0 ? w4 : w2;
    int big_tag = r > 0 ? 1 : 3;
    int other_tag = r > 0 ? 3 : 1;
    for (int k = std::abs(r); k > 0; --k) {
        bool placed = false;
        VertexSet candidates = big & cx.avail;
        for (int u = candidates.next(0); u != -1 && !placed; u = candidates.next(u + 1)) {
            VertexSet heads = d.out_row(u) & big & cx.avail;
            heads.erase(u);
            for (int u2 = heads.next(0); u2 != -1 && !placed; u2 = heads.next(u2 + 1)) {
                int c = cx.pick(other, d.out_row(u2));
                if (c >= 0) {
                    cx.commit(sys, {u, u2, c}, big_tag, other_tag);
                    placed = true;
                }
            }
        }
        if (!placed)
            throw SolveError("cover", "no in-block arc available to repair the bipartite imbalance");
        sys.matching_arcs.emplace_back(sys.paths.back().verts[0], sys.paths.back().verts[1]);
    }
    return sys;
}

}  // namespace

PathSystem cover_exceptional(const Digraph& d, const ExtremalPartition& part, const ParameterLadder& ladder,
                             std::uint64_t seed) {
    PathSystem sys;
    switch (part.kind) {
        case ExtremalKind::EC1: sys = cover_ec1(d, part, ladder, seed); break;
        case ExtremalKind::EC2: sys = cover_ec2(d, part, ladder, seed); break;
        case ExtremalKind::EC3: sys = cover_ec3(d, part, ladder, seed); break;
    }
    // re-verify independently of the construction: disjointness, arcs,
    // endpoint tags, coverage of every exceptional vertex
    VertexSet seen(d.order());
    for (const auto& p : sys.paths) {
        if (p.verts.size() < 2 || p.verts.size() > 5)
            throw SolveError("cover", "cover path with out-of-range length");
        for (std::size_t i = 0; i + 1 < p.verts.size(); ++i)
            if (!d.has_arc(p.verts[i], p.verts[i + 1])) throw SolveError("cover", "cover path is not a path");
        for (int v : p.verts) {
            if (seen.contains(v)) throw SolveError("cover", "cover paths overlap at " + std::to_string(v));
            seen.insert(v);
        }
        if (!part.parts[p.from_part].contains(p.verts.front()) || !part.parts[p.to_part].contains(p.verts.back()))
            throw SolveError("cover", "cover path endpoint tag does not match its block");
    }
    for (int w = part.exceptional.next(0); w != -1; w = part.exceptional.next(w + 1))
        if (!seen.contains(w)) throw SolveError("cover", "exceptional vertex " + std::to_string(w) + " left uncovered");
    return sys;
}

}  // namespace subdiv
