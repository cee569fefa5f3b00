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

#include "subdiv/oracle.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace subdiv {
namespace oracle {

namespace {

struct BudgetExceeded {};

class NodeCounter {
public:
    explicit NodeCounter(long long limit) : limit_(limit) {}
    void tick() {
        if (++count_ > limit_) throw BudgetExceeded{};
    }
    long long count() const { return count_; }

private:
    long long count_ = 0;
    long long limit_;
};

// Automorphisms of the pattern, used for canonical branch-assignment pruning
// (on a 2-cycle this halves the branch search).
std::vector<std::vector<int>> pattern_automorphisms(const Pattern& p) {
    int s = p.vertex_count();
    std::vector<int> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int u = 0; u < s && ok; ++u)
            for (int v = 0; v < s && ok; ++v)
                if (p.graph().has_arc(u, v) != p.graph().has_arc(perm[u], perm[v])) ok = false;
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

bool branch_is_canonical(const std::vector<int>& branch, const std::vector<std::vector<int>>& autos) {
    for (const auto& pi : autos) {
        for (std::size_t i = 0; i < branch.size(); ++i) {
            int a = branch[i], b = branch[pi[i]];
            if (a < b) break;
            if (a > b) return false;
        }
    }
    return true;
}

struct SubdivisionSearch {
    const Digraph& host;
    const Pattern& pattern;
    std::optional<std::vector<int>> lengths;
    bool require_spanning;
    // when >= 0, the subdivision must use exactly this many host vertices
    int exact_order;
    NodeCounter& nodes;
    const VertexSet& allowed;

    std::vector<int> branch;
    std::vector<std::vector<int>> routes;
    VertexSet used;
    int used_count = 0;
    std::vector<int> vertex_order;  // branch candidates, descending semi-degree
    std::vector<std::vector<int>> autos;
    std::optional<SubdivisionCert> found;

    SubdivisionSearch(const Digraph& h, const Pattern& p, std::optional<std::vector<int>> len,
                      bool spanning, int exact, NodeCounter& nc, const VertexSet& allow)
        : host(h), pattern(p), lengths(std::move(len)), require_spanning(spanning), exact_order(exact), nodes(nc),
          allowed(allow), used(h.order()) {
        branch.assign(p.vertex_count(), -1);
        routes.assign(p.arc_count(), {});
        vertex_order = allow.to_vector();
        std::sort(vertex_order.begin(), vertex_order.end(), [&](int a, int b) {
            int da = std::min(h.out_degree(a), h.in_degree(a));
            int db = std::min(h.out_degree(b), h.in_degree(b));
            if (da != db) return da > db;
            return a < b;
        });
        autos = pattern_automorphisms(p);
    }

    int allowed_count() const { return allowed.count(); }

    bool run() {
        place_branch(0);
        return found.has_value();
    }

    void place_branch(int i) {
        if (found) return;
        nodes.tick();
        if (i == pattern.vertex_count()) {
            if (!branch_is_canonical(branch, autos)) return;
            build_route(0);
            return;
        }
        for (int v : vertex_order) {
            if (used.contains(v)) continue;
            branch[i] = v;
            used.insert(v);
            ++used_count;
            place_branch(i + 1);
            used.erase(v);
            --used_count;
            branch[i] = -1;
            if (found) return;
        }
    }

    // Remaining interior vertices still required by arcs e..end when lengths
    // are fixed; -1 when lengths are free.
    int remaining_required(int e) const {
        if (!lengths) return -1;
        int r = 0;
        for (int k = e; k < pattern.arc_count(); ++k) r += (*lengths)[k] - 1;
        return r;
    }

    void build_route(int e) {
        if (found) return;
        if (e == pattern.arc_count()) {
            if (require_spanning && used_count != allowed_count()) return;
            if (exact_order >= 0 && used_count != exact_order) return;
            SubdivisionCert cert;
            cert.branch = branch;
            cert.routes = routes;
            found = cert;
            return;
        }
        if (lengths) {
            int need = remaining_required(e);
            int free_slots = (require_spanning || exact_order >= 0)
                                 ? ((exact_order >= 0 ? exact_order : allowed_count()) - used_count)
                                 : host.order();
            if (require_spanning || exact_order >= 0) {
                if (need != free_slots) return;  // arithmetic cannot close
            } else if (need > free_slots + 0) {
                // non-spanning: just capacity
            }
        }
        auto [hu, hv] = pattern.arcs()[e];
        routes[e].clear();
        routes[e].push_back(branch[hu]);
        extend_route(e, branch[hv]);
        routes[e].clear();
    }

    void extend_route(int e, int target) {
        if (found) return;
        nodes.tick();
        int cur = routes[e].back();
        int len = static_cast<int>(routes[e].size()) - 1;  // arcs so far
        bool may_close = !lengths || len + 1 == (*lengths)[e];
        bool may_extend = !lengths || len + 1 < (*lengths)[e];

        if (may_close && host.has_arc(cur, target)) {
            routes[e].push_back(target);
            build_route(e + 1);
            routes[e].pop_back();
            if (found) return;
        }
        if (!may_extend) return;

        VertexSet cand = host.out_row(cur) & allowed;
        cand -= used;
        auto options = cand.to_vector();
        // fewest-candidates-first: prefer extensions with the tightest onward
        // choice so dead ends surface early
        std::sort(options.begin(), options.end(), [&](int a, int b) {
            int da = host.out_row(a).intersection_count(allowed);
            int db = host.out_row(b).intersection_count(allowed);
            if (da != db) return da < db;
            return a < b;
        });
        for (int w : options) {
            routes[e].push_back(w);
            used.insert(w);
            ++used_count;
            extend_route(e, target);
            used.erase(w);
            --used_count;
            routes[e].pop_back();
            if (found) return;
        }
    }
};

void enforce_cap(const Digraph& host, const Budget& budget) {
    if (!budget.override_cap && host.order() > budget.order_cap)
        throw InputError("exact oracle refuses order " + std::to_string(host.order()) + " > cap " +
                         std::to_string(budget.order_cap) + " without an explicit override");
}

}  // namespace

Result<SubdivisionCert> find_spanning_subdivision_exact(const Digraph& host, const Pattern& pattern,
                                                        const std::optional<std::vector<int>>& lengths,
                                                        Budget budget) {
    enforce_cap(host, budget);
    if (lengths) {
        if (static_cast<int>(lengths->size()) != pattern.arc_count())
            throw InputError("length list size does not match pattern arc count");
        for (int l : *lengths)
            if (l < 1) throw InputError("route lengths must be >= 1");
    }
    if (pattern.vertex_count() > host.order()) return {Status::None, std::nullopt, 0};

    NodeCounter nodes(budget.node_limit);
    VertexSet all = VertexSet::full(host.order());
    SubdivisionSearch search(host, pattern, lengths, /*spanning=*/true, /*exact=*/-1, nodes, all);
    try {
        bool ok = search.run();
        if (ok) return {Status::Found, search.found, nodes.count()};
        return {Status::None, std::nullopt, nodes.count()};
    } catch (BudgetExceeded&) {
        return {Status::Exhausted, std::nullopt, nodes.count()};
    }
}

namespace {

struct TilingSearch {
    const Digraph& host;
    const Pattern& pattern;
    const std::vector<int>& orders;
    NodeCounter& nodes;

    VertexSet free_vertices;
    std::vector<SubdivisionCert> parts;
    std::optional<TilingCert> found;

    TilingSearch(const Digraph& h, const Pattern& p, const std::vector<int>& ord, NodeCounter& nc)
        : host(h), pattern(p), orders(ord), nodes(nc), free_vertices(VertexSet::full(h.order())) {}

    bool run() {
        place_part(0, -1);
        return found.has_value();
    }

    void place_part(std::size_t i, int prev_min) {
        if (found) return;
        nodes.tick();
        if (i == orders.size()) {
            TilingCert cert;
            cert.parts = parts;
            cert.orders = orders;
            found = cert;
            return;
        }
        // enumerate subdivisions of exact order orders[i] inside the free set
        SubdivisionSearch sub(host, pattern, std::nullopt, /*spanning=*/false, orders[i], nodes, free_vertices);
        // parts of equal order are interchangeable; force increasing minimal
        // vertex to avoid re-deriving permutations of the same tiling
        enumerate_sub(sub, i, prev_min);
    }

    void enumerate_sub(SubdivisionSearch& sub, std::size_t i, int prev_min) {
        // re-run the subdivision search but intercept each found cert
        struct Hook {
            TilingSearch* outer;
            std::size_t index;
            int prev_min;
        };
        // SubdivisionSearch stops at the first hit; to enumerate we wrap its
        // completion: simplest is to run repeatedly with an exclusion is
        // costly, so instead do the recursion inline here.
        recurse_branch(sub, 0, i, prev_min);
    }

    void recurse_branch(SubdivisionSearch& sub, int bi, std::size_t part_idx, int prev_min) {
        if (found) return;
        nodes.tick();
        if (bi == pattern.vertex_count()) {
            if (!branch_is_canonical(sub.branch, sub.autos)) return;
            recurse_route(sub, 0, part_idx, prev_min);
            return;
        }
        for (int v : sub.vertex_order) {
            if (sub.used.contains(v) || !free_vertices.contains(v)) continue;
            sub.branch[bi] = v;
            sub.used.insert(v);
            ++sub.used_count;
            recurse_branch(sub, bi + 1, part_idx, prev_min);
            sub.used.erase(v);
            --sub.used_count;
            sub.branch[bi] = -1;
            if (found) return;
        }
    }

    void recurse_route(SubdivisionSearch& sub, int e, std::size_t part_idx, int prev_min) {
        if (found) return;
        if (e == pattern.arc_count()) {
            if (sub.used_count != orders[part_idx]) return;
            SubdivisionCert cert;
            cert.branch = sub.branch;
            cert.routes = sub.routes;
            auto used_list = cert.covered_vertices();
            int my_min = *std::min_element(used_list.begin(), used_list.end());
            if (part_idx > 0 && orders[part_idx] == orders[part_idx - 1] && my_min < prev_min) return;
            for (int v : used_list) free_vertices.erase(v);
            parts.push_back(cert);
            place_part(part_idx + 1, my_min);
            parts.pop_back();
            for (int v : used_list) free_vertices.insert(v);
            return;
        }
        auto [hu, hv] = pattern.arcs()[e];
        sub.routes[e].clear();
        sub.routes[e].push_back(sub.branch[hu]);
        recurse_extend(sub, e, sub.branch[hv], part_idx, prev_min);
        sub.routes[e].clear();
    }

    void recurse_extend(SubdivisionSearch& sub, int e, int target, std::size_t part_idx, int prev_min) {
        if (found) return;
        nodes.tick();
        int cur = sub.routes[e].back();
        if (host.has_arc(cur, target)) {
            sub.routes[e].push_back(target);
            recurse_route(sub, e + 1, part_idx, prev_min);
            sub.routes[e].pop_back();
            if (found) return;
        }
        if (sub.used_count >= orders[part_idx]) return;
        VertexSet cand = host.out_row(cur) & free_vertices;
        cand -= sub.used;
        for (int w = cand.next(0); w != -1; w = cand.next(w + 1)) {
            sub.routes[e].push_back(w);
            sub.used.insert(w);
            ++sub.used_count;
            recurse_extend(sub, e, target, part_idx, prev_min);
            sub.used.erase(w);
            --sub.used_count;
            sub.routes[e].pop_back();
            if (found) return;
        }
    }
};

}  // namespace

Result<TilingCert> find_perfect_tiling_exact(const Digraph& host, const Pattern& pattern,
                                             const std::vector<int>& orders, Budget budget) {
    enforce_cap(host, budget);
    long long total = 0;
    for (int k : orders) {
        if (k < 1) throw InputError("part orders must be positive");
        total += k;
    }
    if (total != host.order())
        throw InputError("part orders sum to " + std::to_string(total) + ", host has " +
                         std::to_string(host.order()) + " vertices");

    NodeCounter nodes(budget.node_limit);
    TilingSearch search(host, pattern, orders, nodes);
    try {
        bool ok = search.run();
        if (ok) return {Status::Found, search.found, nodes.count()};
        return {Status::None, std::nullopt, nodes.count()};
    } catch (BudgetExceeded&) {
        return {Status::Exhausted, std::nullopt, nodes.count()};
    }
}

std::vector<std::array<int, 4>> enumerate_absorbers(const Digraph& host, int u, int v) {
    std::vector<std::array<int, 4>> out;
    int n = host.order();
    if (u < 0 || u >= n || v < 0 || v >= n) throw InputError("absorber endpoints out of range");
    // z2 must see u, z3 must be seen by v
    VertexSet z2s = host.in_row(u);
    VertexSet z3s = host.out_row(v);
    for (int z2 = z2s.next(0); z2 != -1; z2 = z2s.next(z2 + 1)) {
        if (z2 == u || z2 == v) continue;
        VertexSet mid = host.out_row(z2) & z3s;
        for (int z3 = mid.next(0); z3 != -1; z3 = mid.next(z3 + 1)) {
            if (z3 == u || z3 == v || z3 == z2) continue;
            for (int z1 = host.in_row(z2).next(0); z1 != -1; z1 = host.in_row(z2).next(z1 + 1)) {
                if (z1 == u || z1 == v || z1 == z2 || z1 == z3) continue;
                const VertexSet& z4s = host.out_row(z3);
                for (int z4 = z4s.next(0); z4 != -1; z4 = z4s.next(z4 + 1)) {
                    if (z4 == u || z4 == v || z4 == z1 || z4 == z2 || z4 == z3) continue;
                    out.push_back({z1, z2, z3, z4});
                }
            }
        }
    }
    return out;
}

long long count_absorbers(const Digraph& host, int u, int v) {
    long long c = 0;
    int n = host.order();
    if (u < 0 || u >= n || v < 0 || v >= n) throw InputError("absorber endpoints out of range");
    VertexSet banned(n);
    banned.insert(u);
    banned.insert(v);
    VertexSet z2s = host.in_row(u) - banned;
    VertexSet z3s = host.out_row(v) - banned;
    for (int z2 = z2s.next(0); z2 != -1; z2 = z2s.next(z2 + 1)) {
        VertexSet mids = host.out_row(z2) & z3s;
        mids.erase(z2);
        for (int z3 = mids.next(0); z3 != -1; z3 = mids.next(z3 + 1)) {
            VertexSet pre = host.in_row(z2) - banned;
            pre.erase(z2);
            pre.erase(z3);
            VertexSet post = host.out_row(z3) - banned;
            post.erase(z2);
            post.erase(z3);
            long long a = pre.count(), b = post.count();
            long long shared = pre.intersection_count(post);
            // ordered (z1, z4) pairs with z1 != z4
            c += a * b - shared;
        }
    }
    return c;
}

namespace {

Result<std::vector<int>> ham_path_subset_dp(const Digraph& host, std::optional<int> initial,
                                            std::optional<int> terminal) {
    const int n = host.order();
    const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
    std::vector<std::uint32_t> outmask(n, 0);
    for (int v = 0; v < n; ++v) {
        const auto& row = host.out_row(v);
        for (int w = row.next(0); w != -1; w = row.next(w + 1)) outmask[v] |= 1u << w;
    }

    // reach[mask] = set of possible terminal vertices of a path covering mask
    std::vector<std::uint32_t> reach(1u << n, 0);
    long long nodes = 0;
    for (int v = 0; v < n; ++v)
        if (!initial || *initial == v) reach[1u << v] |= 1u << v;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::uint32_t ends = reach[mask];
        if (!ends) continue;
        ++nodes;
        std::uint32_t e = ends;
        while (e) {
            int v = __builtin_ctz(e);
            e &= e - 1;
            std::uint32_t nxt = outmask[v] & ~mask;
            while (nxt) {
                int w = __builtin_ctz(nxt);
                nxt &= nxt - 1;
                reach[mask | (1u << w)] |= 1u << w;
            }
        }
    }
    std::uint32_t final_ends = reach[full];
    if (terminal) final_ends &= 1u << *terminal;
    if (!final_ends) return {Status::None, std::nullopt, nodes};

    // reconstruct backwards
    std::vector<int> path;
    std::uint32_t mask = full;
    int cur = __builtin_ctz(final_ends);
    path.push_back(cur);
    while (mask != (1u << cur)) {
        std::uint32_t prev_mask = mask & ~(1u << cur);
        std::uint32_t cands = reach[prev_mask];
        int chosen = -1;
        std::uint32_t c = cands;
        while (c) {
            int p = __builtin_ctz(c);
            c &= c - 1;
            if (outmask[p] & (1u << cur)) {
                chosen = p;
                break;
            }
        }
        path.push_back(chosen);
        mask = prev_mask;
        cur = chosen;
    }
    std::reverse(path.begin(), path.end());
    return {Status::Found, path, nodes};
}

struct HamDfs {
    const Digraph& host;
    std::optional<int> terminal;
    NodeCounter& nodes;
    VertexSet used;
    std::vector<int> path;
    std::optional<std::vector<int>> found;

    HamDfs(const Digraph& h, std::optional<int> t, NodeCounter& nc) : host(h), terminal(t), nodes(nc), used(h.order()) {}

    void go(int v) {
        if (found) return;
        nodes.tick();
        path.push_back(v);
        used.insert(v);
        if (static_cast<int>(path.size()) == host.order()) {
            if (!terminal || *terminal == v) found = path;
        } else {
            VertexSet cand = host.out_row(v) - used;
            for (int w = cand.next(0); w != -1 && !found; w = cand.next(w + 1)) go(w);
        }
        used.erase(v);
        path.pop_back();
    }
};

}  // namespace

Result<std::vector<int>> hamiltonian_path_exact(const Digraph& host, std::optional<int> initial,
                                                std::optional<int> terminal, Budget budget) {
    const int n = host.order();
    if (n == 0) throw InputError("hamiltonian path of an empty digraph");
    if (initial && (*initial < 0 || *initial >= n)) throw InputError("initial vertex out of range");
    if (terminal && (*terminal < 0 || *terminal >= n)) throw InputError("terminal vertex out of range");
    if (n == 1) {
        std::vector<int> p{0};
        return {Status::Found, p, 1};
    }
    if (n <= 20) return ham_path_subset_dp(host, initial, terminal);

    NodeCounter nodes(budget.node_limit);
    HamDfs dfs(host, terminal, nodes);
    try {
        if (initial) {
            dfs.go(*initial);
        } else {
            for (int v = 0; v < n && !dfs.found; ++v) dfs.go(v);
        }
        if (dfs.found) return {Status::Found, dfs.found, nodes.count()};
        return {Status::None, std::nullopt, nodes.count()};
    } catch (BudgetExceeded&) {
        return {Status::Exhausted, std::nullopt, nodes.count()};
    }
}

}  // namespace oracle
}  // namespace subdiv
