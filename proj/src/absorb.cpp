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

#include "subdiv/absorb.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "subdiv/oracle.hpp"

namespace subdiv {

bool Absorber::valid_in(const Digraph& d) const {
    std::set<int> distinct(z.begin(), z.end());
    if (distinct.size() != 4) return false;
    return d.has_arc(z[0], z[1]) && d.has_arc(z[1], z[2]) && d.has_arc(z[2], z[3]);
}

bool absorbs(const Absorber& a, int u, int v, const Digraph& d) {
    for (int w : a.z)
        if (w == u || w == v) return false;
    return d.has_arc(a.z[1], u) && d.has_arc(v, a.z[2]);
}

std::vector<int> absorb_path(const std::vector<int>& path, const Absorber& a, const std::vector<int>& q,
                             const Digraph& d) {
    if (q.empty()) throw InputError("absorbed segment is empty");
    if (!absorbs(a, q.front(), q.back(), d))
        throw InputError("absorber does not absorb the segment endpoints (" + std::to_string(q.front()) + "," +
                         std::to_string(q.back()) + ")");
    for (std::size_t i = 0; i + 1 < q.size(); ++i)
        if (!d.has_arc(q[i], q[i + 1]))
            throw InputError("absorbed segment is not a path at " + std::to_string(q[i]));
    std::set<int> on_path(path.begin(), path.end());
    for (int v : q)
        if (on_path.count(v)) throw InputError("absorbed segment shares vertex " + std::to_string(v) + " with the path");
    std::set<int> qset(q.begin(), q.end());
    if (qset.size() != q.size()) throw InputError("absorbed segment repeats a vertex");

    // locate the absorber, z1..z4 contiguous
    std::size_t pos = path.size();
    for (std::size_t i = 0; i + 3 < path.size(); ++i)
        if (path[i] == a.z[0] && path[i + 1] == a.z[1] && path[i + 2] == a.z[2] && path[i + 3] == a.z[3]) pos = i;
    if (pos == path.size()) throw InputError("absorber does not occur contiguously in the path");

    std::vector<int> out;
    out.reserve(path.size() + q.size());
    out.insert(out.end(), path.begin(), path.begin() + pos + 2);  // .. z1 z2
    out.insert(out.end(), q.begin(), q.end());
    out.insert(out.end(), path.begin() + pos + 2, path.end());  // z3 z4 ..
    return out;
}

VertexSet AbsorberFamily::vertex_set(int host_order) const {
    VertexSet s(host_order);
    for (const auto& m : members)
        for (int v : m.z) s.insert(v);
    for (const auto& link : linked_paths)
        for (int v : link) s.insert(v);
    return s;
}

namespace {

std::pair<int, int> sample_pair(const std::vector<int>& pool, Rng& rng) {
    int u = pool[rng.below(pool.size())];
    int v = pool[rng.below(pool.size())];
    return {u, v};
}

bool family_covers(const Digraph& d, const std::vector<Absorber>& members, const std::vector<int>& part,
                   int u, int v) {
    if (part.empty()) {
        for (const auto& m : members)
            if (absorbs(m, u, v, d)) return true;
        return false;
    }
    for (int idx : part)
        if (absorbs(members[idx], u, v, d)) return true;
    return false;
}

}  // namespace

AbsorberFamily build_absorber_family(const Digraph& d, const VertexSet& allowed, const ParameterLadder& ladder,
                                     Rng& rng, int min_size, int max_size) {
    const int n = d.order();
    auto pool = allowed.to_vector();
    if (pool.size() < 8) throw SolveError("family", "too few vertices to place disjoint absorbers and a pair");
    const int cap = max_size > 0 ? std::min<int>(max_size, static_cast<int>(ladder.gamma * n))
                                 : static_cast<int>(ladder.gamma * n);
    if (cap < 1) throw SolveError("family", "gamma*n allows no absorbers at this order");
    if (min_size > cap) throw SolveError("family", "requested family floor exceeds the gamma*n cap");

    std::pair<int, int> last_uncovered{-1, -1};
    double g1 = ladder.gamma1;
    for (int attempt = 0; attempt <= ladder.retries; ++attempt) {
        Rng local = rng.fork(0xFA0 + attempt);
        // raw draw: ordered 4-tuples at rate g1^3 n^-3; the draw count is the
        // n -> infinity limit of the per-tuple Bernoulli process
        double mean = g1 * g1 * g1 / (static_cast<double>(n) * n * n) * static_cast<double>(pool.size()) *
                      (pool.size() - 1.0) * (pool.size() - 2.0) * (pool.size() - 3.0);
        int draws = local.poisson(mean);
        std::vector<std::array<int, 4>> tuples;
        std::set<std::array<int, 4>> seen;
        int guard = 0;
        while (static_cast<int>(tuples.size()) < draws && guard++ < 50 * draws + 100) {
            std::array<int, 4> t{};
            bool ok = true;
            for (int k = 0; k < 4 && ok; ++k) {
                t[k] = pool[local.below(pool.size())];
                for (int j = 0; j < k; ++j)
                    if (t[j] == t[k]) ok = false;
            }
            if (!ok) continue;
            if (!seen.insert(t).second) continue;
            tuples.push_back(t);
        }

        // the first attempt drops every pair of touching tuples, as the
        // sampling argument does; that rule caps the expected yield near
        // n/44 regardless of rate, so retries keep the first tuple of each
        // collision instead
        std::vector<Absorber> members;
        if (attempt == 0) {
            std::vector<int> touch(n, 0);
            for (const auto& t : tuples)
                for (int v : t) ++touch[v];
            for (const auto& t : tuples) {
                bool lonely = true;
                for (int v : t)
                    if (touch[v] > 1) lonely = false;
                if (!lonely) continue;
                Absorber a{t};
                if (a.valid_in(d)) members.push_back(a);
            }
        } else {
            VertexSet taken(n);
            for (const auto& t : tuples) {
                bool clash = false;
                for (int v : t)
                    if (taken.contains(v)) clash = true;
                if (clash) continue;
                Absorber a{t};
                if (!a.valid_in(d)) continue;
                for (int v : t) taken.insert(v);
                members.push_back(a);
            }
        }
        if (static_cast<int>(members.size()) > cap) members.resize(cap);

        bool ok = static_cast<int>(members.size()) >= std::max(1, min_size);
        if (ok) {
            // sampled coverage over the leftover vertices
            VertexSet fam_set(n);
            for (const auto& m : members)
                for (int v : m.z) fam_set.insert(v);
            std::vector<int> leftover;
            for (int v : pool)
                if (!fam_set.contains(v)) leftover.push_back(v);
            if (!leftover.empty()) {
                for (int s = 0; s < ladder.coverage_samples && ok; ++s) {
                    auto [u, v] = sample_pair(leftover, local);
                    if (!family_covers(d, members, {}, u, v)) {
                        ok = false;
                        last_uncovered = {u, v};
                    }
                }
            }
        }
        if (ok) {
            AbsorberFamily fam;
            fam.members = std::move(members);
            fam.sampled_tuples = draws;
            fam.rate_gamma1 = g1;
            return fam;
        }
        g1 = std::min(0.75, g1 * 1.5);  // escalate the rate before re-drawing
    }
    if (last_uncovered.first >= 0)
        throw SolveError("coverage", "no absorber for pair (" + std::to_string(last_uncovered.first) + "," +
                                          std::to_string(last_uncovered.second) + ") after retries");
    throw SolveError("family", "absorber family below the required size after retries");
}

void partition_and_link(const Digraph& d, AbsorberFamily& fam, const std::vector<int>& sizes,
                        const VertexSet& allowed, const ParameterLadder& ladder, Rng& rng) {
    const int n = d.order();
    const int f = static_cast<int>(fam.members.size());
    long long total = 0;
    for (int s : sizes) {
        if (s < 1) throw InputError("partition sizes must be positive");
        total += s;
    }
    if (total != f) throw InputError("partition sizes sum to " + std::to_string(total) + ", family has " + std::to_string(f));
    if (sizes.size() >= 2) {
        for (int s : sizes)
            if (!(ladder.beta * f < s && s < (1.0 - ladder.beta) * f))
                throw InputError("partition size " + std::to_string(s) + " violates the beta bounds for f=" + std::to_string(f));
    }
    if (static_cast<double>(f) + 1e-9 < ladder.gamma * ladder.gamma * n)
        throw InputError("family of " + std::to_string(f) + " is below the gamma^2*n floor");

    VertexSet fam_set(n);
    for (const auto& m : fam.members)
        for (int v : m.z) fam_set.insert(v);
    std::vector<int> leftover;
    for (int v : allowed.to_vector())
        if (!fam_set.contains(v)) leftover.push_back(v);

    // partition with per-part sampled coverage, retry with a fresh shuffle
    std::vector<std::vector<int>> parts;
    bool covered = false;
    std::pair<int, int> bad_pair{-1, -1};
    for (int attempt = 0; attempt <= ladder.retries && !covered; ++attempt) {
        Rng local = rng.fork(0xA11 + attempt);
        std::vector<int> order(f);
        std::iota(order.begin(), order.end(), 0);
        local.shuffle(order);
        parts.assign(sizes.size(), {});
        int at = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i)
            for (int k = 0; k < sizes[i]; ++k) parts[i].push_back(order[at++]);
        covered = true;
        for (const auto& part : parts) {
            if (leftover.empty()) break;
            for (int s = 0; s < ladder.coverage_samples && covered; ++s) {
                auto [u, v] = sample_pair(leftover, local);
                if (!family_covers(d, fam.members, part, u, v)) {
                    covered = false;
                    bad_pair = {u, v};
                }
            }
            if (!covered) break;
        }
    }
    if (!covered)
        throw SolveError("coverage", "a part misses pair (" + std::to_string(bad_pair.first) + "," +
                                         std::to_string(bad_pair.second) + ") after repartition retries");

    // link each part: connectors of length 1, 2, 3 through fresh vertices
    VertexSet used = fam_set;
    std::vector<int> scan = allowed.to_vector();
    Rng link_rng = rng.fork(0x117);
    link_rng.shuffle(scan);

    fam.parts = parts;
    fam.linked_paths.assign(parts.size(), {});
    fam.connectors.assign(parts.size(), {});
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        const auto& part = parts[pi];
        std::vector<int> link;
        for (std::size_t k = 0; k < part.size(); ++k) {
            const auto& m = fam.members[part[k]].z;
            if (k == 0) {
                link.insert(link.end(), m.begin(), m.end());
                continue;
            }
            int b = link.back();
            int a = m[0];
            std::vector<int> conn;
            bool found = false;
            if (d.has_arc(b, a)) {
                found = true;
            }
            if (!found) {
                for (int x : scan) {
                    if (used.contains(x) || x == b || x == a) continue;
                    if (d.has_arc(b, x) && d.has_arc(x, a)) {
                        conn = {x};
                        found = true;
                        break;
                    }
                }
            }
            if (!found) {
                for (int x : scan) {
                    if (used.contains(x) || x == b || x == a) continue;
                    if (!d.has_arc(b, x)) continue;
                    VertexSet mid = d.out_row(x) & d.in_row(a);
                    for (int y : scan) {
                        if (y == x || used.contains(y) || y == b || y == a) continue;
                        if (mid.contains(y)) {
                            conn = {x, y};
                            found = true;
                            break;
                        }
                    }
                    if (found) break;
                }
            }
            if (!found)
                throw SolveError("connector", "no path of length <= 3 from " + std::to_string(b) + " to " +
                                                  std::to_string(a));
            for (int v : conn) used.insert(v);
            fam.connectors[pi].push_back(conn);
            link.insert(link.end(), conn.begin(), conn.end());
            link.insert(link.end(), m.begin(), m.end());
        }
        for (std::size_t i = 0; i + 1 < link.size(); ++i)
            if (!d.has_arc(link[i], link[i + 1]))
                throw SolveError("connector", "linked path broke at " + std::to_string(link[i]));
        fam.linked_paths[pi] = link;
    }
}

// ---------------------------------------------------------------------------
// skeleton + completion
// ---------------------------------------------------------------------------

namespace {

// Exact-length path from `from` to `to` with interiors drawn from `usable`;
// randomized DFS with a node budget.
std::optional<std::vector<int>> exact_length_path(const Digraph& d, int from, int to, int length,
                                                 const VertexSet& usable, Rng& rng, long long budget = 200000) {
    if (length < 1) return std::nullopt;
    if (length == 1) {
        if (d.has_arc(from, to)) return std::vector<int>{from, to};
        return std::nullopt;
    }
    std::vector<int> path{from};
    VertexSet used(d.order());
    used.insert(from);
    used.insert(to);
    long long nodes = 0;
    std::function<bool()> dfs = [&]() -> bool {
        if (++nodes > budget) return false;
        int cur = path.back();
        int remaining = length - (static_cast<int>(path.size()) - 1);
        if (remaining == 1) {
            if (d.has_arc(cur, to)) {
                path.push_back(to);
                return true;
            }
            return false;
        }
        VertexSet cand = d.out_row(cur) & usable;
        cand -= used;
        auto opts = cand.to_vector();
        rng.shuffle(opts);
        for (int w : opts) {
            path.push_back(w);
            used.insert(w);
            if (dfs()) return true;
            used.erase(w);
            path.pop_back();
            if (nodes > budget) return false;
        }
        return false;
    };
    if (dfs()) return path;
    return std::nullopt;
}

// Bridge of at most 2 intermediate vertices from `from` to `to`.
std::optional<std::vector<int>> short_bridge(const Digraph& d, int from, int to, const VertexSet& usable,
                                             Rng& rng) {
    if (d.has_arc(from, to)) return std::vector<int>{};
    VertexSet mid = d.out_row(from) & d.in_row(to) & usable;
    auto opts = mid.to_vector();
    if (!opts.empty()) {
        rng.shuffle(opts);
        return std::vector<int>{opts[0]};
    }
    VertexSet firsts = d.out_row(from) & usable;
    auto fo = firsts.to_vector();
    rng.shuffle(fo);
    for (int x : fo) {
        VertexSet second = d.out_row(x) & d.in_row(to) & usable;
        second.erase(x);
        int y = second.next(0);
        if (y != -1) return std::vector<int>{x, y};
    }
    return std::nullopt;
}

Digraph induced(const Digraph& d, const std::vector<int>& verts) {
    Digraph sub(static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = 0; j < verts.size(); ++j)
            if (i != j && d.has_arc(verts[i], verts[j])) sub.add_arc(static_cast<int>(i), static_cast<int>(j));
    return sub;
}

}  // namespace

std::optional<std::vector<int>> heuristic_ham_cycle(const Digraph& d, const VertexSet& within, Rng& rng,
                                                    int restarts) {
    auto verts = within.to_vector();
    const int r = static_cast<int>(verts.size());
    if (r < 2) return std::nullopt;

    for (int attempt = 0; attempt < restarts; ++attempt) {
        Rng local = rng.fork(0xC1C + attempt);
        std::vector<int> order = verts;
        local.shuffle(order);

        // seed cycle: a 2-cycle, else a short directed cycle
        std::vector<int> cycle;
        for (std::size_t i = 0; i < order.size() && cycle.empty(); ++i)
            for (std::size_t j = i + 1; j < order.size() && cycle.empty(); ++j)
                if (d.has_arc(order[i], order[j]) && d.has_arc(order[j], order[i]))
                    cycle = {order[i], order[j]};
        if (cycle.empty()) {
            for (std::size_t i = 0; i < order.size() && cycle.empty(); ++i)
                for (std::size_t j = 0; j < order.size() && cycle.empty(); ++j) {
                    if (i == j || !d.has_arc(order[i], order[j])) continue;
                    VertexSet mid = d.out_row(order[j]) & d.in_row(order[i]) & within;
                    mid.erase(order[i]);
                    mid.erase(order[j]);
                    int k = mid.next(0);
                    if (k != -1) cycle = {order[i], order[j], k};
                }
        }
        if (cycle.empty()) continue;

        VertexSet on_cycle(d.order());
        for (int v : cycle) on_cycle.insert(v);
        std::vector<int> pending;
        for (int v : order)
            if (!on_cycle.contains(v)) pending.push_back(v);

        int stall = 0;
        while (!pending.empty() && stall <= 2 * r + 16) {
            bool progress = false;
            std::vector<int> still;
            for (int v : pending) {
                bool inserted = false;
                for (std::size_t i = 0; i < cycle.size(); ++i) {
                    int u = cycle[i];
                    int w = cycle[(i + 1) % cycle.size()];
                    if (d.has_arc(u, v) && d.has_arc(v, w)) {
                        cycle.insert(cycle.begin() + static_cast<long>(i) + 1, v);
                        on_cycle.insert(v);
                        inserted = true;
                        progress = true;
                        break;
                    }
                }
                if (!inserted) still.push_back(v);
            }
            pending = std::move(still);
            if (!progress) {
                ++stall;
                if (cycle.size() > 3) {
                    // eject a random vertex to open new insertion points
                    std::size_t k = local.below(cycle.size());
                    int evicted = cycle[k];
                    int prev = cycle[(k + cycle.size() - 1) % cycle.size()];
                    int next = cycle[(k + 1) % cycle.size()];
                    if (d.has_arc(prev, next)) {
                        cycle.erase(cycle.begin() + static_cast<long>(k));
                        on_cycle.erase(evicted);
                        pending.push_back(evicted);
                    }
                }
            } else {
                stall = 0;
            }
        }
        if (pending.empty()) return cycle;
    }
    return std::nullopt;
}

std::vector<int> default_spanning_lengths(int n, const Pattern& pattern, const ParameterLadder& ladder) {
    const int h = pattern.arc_count();
    const int s = pattern.vertex_count();
    const int short_len = 3;
    double short_sum = static_cast<double>(short_len) * (h - 1);
    if (short_sum > ladder.beta * n)
        throw InputError("pattern has too many arcs for the default length profile at this order");
    int l1 = n - s + h - short_len * (h - 1);
    if (l1 < short_len) throw InputError("host too small for the default length profile");
    std::vector<int> lengths(h, short_len);
    lengths[0] = l1;
    return lengths;
}

Skeleton build_skeleton_spanning(const Digraph& d, const Pattern& pattern, std::vector<int> lengths,
                                 const ParameterLadder& ladder, Rng& rng) {
    const int n = d.order();
    const int h = pattern.arc_count();
    const int s = pattern.vertex_count();
    if (static_cast<int>(lengths.size()) != h) throw InputError("length list does not match the pattern arc count");

    // short routes must fit the beta budget
    double short_sum = 0;
    for (int l : lengths)
        if (static_cast<double>(l) < ladder.alpha * n) short_sum += l;
    if (short_sum > ladder.beta * n)
        throw InputError("short route lengths sum to " + std::to_string(short_sum) + " > beta*n");

    Skeleton sk;
    sk.target_lengths = lengths;
    sk.used = VertexSet(n);
    sk.routes.assign(h, {});

    // branch images: seeded draw among high semi-degree vertices
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng branch_rng = rng.fork(0xB0);
    branch_rng.shuffle(order);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        int da = std::min(d.out_degree(a), d.in_degree(a));
        int db = std::min(d.out_degree(b), d.in_degree(b));
        return da > db;
    });
    sk.branch.assign(order.begin(), order.begin() + s);
    for (int v : sk.branch) sk.used.insert(v);

    // long arcs by descending requested length
    std::vector<int> arc_order(h);
    std::iota(arc_order.begin(), arc_order.end(), 0);
    std::sort(arc_order.begin(), arc_order.end(), [&](int a, int b) {
        if (lengths[a] != lengths[b]) return lengths[a] > lengths[b];
        return a < b;
    });
    for (int e : arc_order)
        if (static_cast<double>(lengths[e]) >= ladder.alpha * n) sk.long_arcs.push_back(e);

    // exact short routes first
    Rng path_rng = rng.fork(0x5B);
    for (int e : arc_order) {
        if (static_cast<double>(lengths[e]) >= ladder.alpha * n) continue;
        auto [hu, hv] = pattern.arcs()[e];
        VertexSet usable = VertexSet::full(n) - sk.used;
        auto route = exact_length_path(d, sk.branch[hu], sk.branch[hv], lengths[e], usable, path_rng);
        if (!route) throw SolveError("short-route", "no exact route of length " + std::to_string(lengths[e]));
        sk.routes[e] = *route;
        for (int v : *route) sk.used.insert(v);
    }

    if (sk.long_arcs.empty()) return sk;

    // absorber family in the remaining digraph
    VertexSet allowed = VertexSet::full(n) - sk.used;
    const int t = static_cast<int>(sk.long_arcs.size());
    int floor_sz = std::max(t, static_cast<int>(std::ceil(ladder.gamma * ladder.gamma * n)));
    // keep every linked path inside its arc's length budget
    int min_target = lengths[sk.long_arcs.back()];
    for (int e : sk.long_arcs) min_target = std::min(min_target, lengths[e]);
    int per_part_cap = std::max(1, (min_target - 8) / 7);
    int cap = per_part_cap * t;
    if (cap < floor_sz) floor_sz = std::max(t, cap);
    Rng fam_rng = rng.fork(0xFA);
    sk.family = build_absorber_family(d, allowed, ladder, fam_rng, floor_sz, cap);

    // partition sizes proportional to the long arcs' budgets
    const int f = static_cast<int>(sk.family.members.size());
    std::vector<int> sizes(t, f / t);
    for (int i = 0; i < f % t; ++i) ++sizes[i];
    Rng link_rng = rng.fork(0x71);
    partition_and_link(d, sk.family, sizes, allowed, ladder, link_rng);
    for (const auto& link : sk.family.linked_paths)
        for (int v : link) sk.used.insert(v);

    // attach each linked path to its branch endpoints
    Rng glue_rng = rng.fork(0x6E);
    for (int i = 0; i < t; ++i) {
        int e = sk.long_arcs[i];
        auto [hu, hv] = pattern.arcs()[e];
        const auto& link = sk.family.linked_paths[i];
        VertexSet usable = VertexSet::full(n) - sk.used;
        auto g1 = short_bridge(d, sk.branch[hu], link.front(), usable, glue_rng);
        if (!g1) throw SolveError("attach", "no bridge from branch to absorbing path " + std::to_string(i));
        for (int v : *g1) {
            sk.used.insert(v);
            usable.erase(v);
        }
        auto g2 = short_bridge(d, link.back(), sk.branch[hv], usable, glue_rng);
        if (!g2) throw SolveError("attach", "no bridge from absorbing path " + std::to_string(i) + " to branch");
        for (int v : *g2) sk.used.insert(v);

        auto& route = sk.routes[e];
        route.push_back(sk.branch[hu]);
        route.insert(route.end(), g1->begin(), g1->end());
        route.insert(route.end(), link.begin(), link.end());
        route.insert(route.end(), g2->begin(), g2->end());
        route.push_back(sk.branch[hv]);
        int cur_len = static_cast<int>(route.size()) - 1;
        if (cur_len > lengths[e])
            throw SolveError("attach", "absorbing path for arc " + std::to_string(e) + " already exceeds its length");
    }
    return sk;
}

namespace {

struct SegmentPlan {
    std::vector<std::vector<int>> segments;   // per long arc, the remainder slice (possibly empty)
    std::vector<int> absorber_of;             // member index used per long arc (-1 when empty)
};

// Try to cut the remainder arrangement (a cycle when `cyclic`) into
// consecutive segments matching the deficits, each absorbable in its part.
std::optional<SegmentPlan> plan_segments(const Digraph& d, const AbsorberFamily& fam,
                                         const std::vector<int>& deficits, const std::vector<int>& arrangement,
                                         bool cyclic) {
    const int r = static_cast<int>(arrangement.size());
    const int t = static_cast<int>(deficits.size());
    long long total = std::accumulate(deficits.begin(), deficits.end(), 0LL);
    if (total != r) return std::nullopt;

    int max_off = cyclic ? r : 1;
    for (int off = 0; off < std::max(1, max_off); ++off) {
        SegmentPlan plan;
        plan.segments.assign(t, {});
        plan.absorber_of.assign(t, -1);
        std::vector<char> absorber_used(fam.members.size(), 0);
        int at = off;
        bool ok = true;
        for (int i = 0; i < t && ok; ++i) {
            if (deficits[i] == 0) continue;
            std::vector<int> seg(deficits[i]);
            for (int k = 0; k < deficits[i]; ++k) seg[k] = arrangement[(at + k) % r];
            at += deficits[i];
            int chosen = -1;
            for (int idx : fam.parts[i]) {
                if (absorber_used[idx]) continue;
                if (absorbs(fam.members[idx], seg.front(), seg.back(), d)) {
                    chosen = idx;
                    break;
                }
            }
            if (chosen < 0) {
                ok = false;
                break;
            }
            absorber_used[chosen] = 1;
            plan.segments[i] = std::move(seg);
            plan.absorber_of[i] = chosen;
        }
        if (ok) return plan;
    }
    return std::nullopt;
}

}  // namespace

SubdivisionCert complete_spanning(const Digraph& d, const Pattern& pattern, Skeleton sk,
                                  const ParameterLadder& ladder, Rng& rng) {
    const int n = d.order();
    const int h = pattern.arc_count();
    const int s = pattern.vertex_count();
    long long want = 0;
    for (int l : sk.target_lengths) want += l;
    if (want != static_cast<long long>(n) - s + h)
        throw InputError("route lengths sum to " + std::to_string(want) + ", spanning requires " +
                         std::to_string(n - s + h));

    VertexSet remainder = VertexSet::full(n) - sk.used;
    const int t = static_cast<int>(sk.long_arcs.size());
    std::vector<int> deficits(t, 0);
    for (int i = 0; i < t; ++i) {
        int e = sk.long_arcs[i];
        deficits[i] = sk.target_lengths[e] - (static_cast<int>(sk.routes[e].size()) - 1);
        if (deficits[i] < 0) throw SolveError("attach", "absorbing path overshot its target length");
    }

    if (!remainder.empty()) {
        if (t == 0) throw SolveError("coverage", "leftover vertices but no absorbing path to take them");
        auto verts = remainder.to_vector();
        std::optional<SegmentPlan> plan;

        if (static_cast<int>(verts.size()) <= 18) {
            Digraph sub = induced(d, verts);
            for (std::size_t c0 = 0; c0 < verts.size() && !plan; ++c0) {
                auto res = oracle::hamiltonian_path_exact(sub, static_cast<int>(c0), std::nullopt);
                if (!res.found()) continue;
                std::vector<int> arrangement;
                for (int idx : *res.value) arrangement.push_back(verts[idx]);
                plan = plan_segments(d, sk.family, deficits, arrangement, /*cyclic=*/false);
            }
            if (!plan) throw SolveError("path-cover", "no exactly-splittable Hamiltonian path of the remainder");
        } else {
            Rng ham_rng = rng.fork(0x4A);
            for (int attempt = 0; attempt < 6 && !plan; ++attempt) {
                auto cyc = heuristic_ham_cycle(d, remainder, ham_rng);
                if (!cyc) continue;
                plan = plan_segments(d, sk.family, deficits, *cyc, /*cyclic=*/true);
            }
            if (!plan) throw SolveError("path-cover", "remainder cover or segment absorption failed after retries");
        }

        for (int i = 0; i < t; ++i) {
            if (plan->segments[i].empty()) continue;
            int e = sk.long_arcs[i];
            sk.routes[e] = absorb_path(sk.routes[e], sk.family.members[plan->absorber_of[i]], plan->segments[i], d);
        }
    }

    SubdivisionCert cert;
    cert.branch = sk.branch;
    cert.routes = sk.routes;
    Verdict v = verify_subdivision(d, pattern, cert, /*require_spanning=*/true, sk.target_lengths);
    if (!v.pass()) throw SolveError("verify", v.summary());
    return cert;
}

SubdivisionCert solve_spanning_nonextremal(const Digraph& d, const Pattern& pattern,
                                           std::optional<std::vector<int>> lengths, const ParameterLadder& ladder,
                                           std::uint64_t seed) {
    std::vector<int> want = lengths ? *lengths : default_spanning_lengths(d.order(), pattern, ladder);
    SolveError last("none", "unreached");
    for (int attempt = 0; attempt <= ladder.retries; ++attempt) {
        Rng rng(seed + 0x9E3779B9ULL * static_cast<std::uint64_t>(attempt));
        try {
            Skeleton sk = build_skeleton_spanning(d, pattern, want, ladder, rng);
            return complete_spanning(d, pattern, std::move(sk), ladder, rng);
        } catch (const SolveError& e) {
            last = e;
        }
    }
    throw last;
}

TilingCert solve_tiling_nonextremal(const Digraph& d, const Pattern& pattern, const std::vector<int>& orders,
                                    const ParameterLadder& ladder, std::uint64_t seed) {
    const int n = d.order();
    const int h = pattern.arc_count();
    const int s = pattern.vertex_count();
    long long total = 0;
    for (int k : orders) total += k;
    if (total != n) throw InputError("part orders must sum to the host order");
    for (int k : orders)
        if (k < s + 1) throw InputError("part order " + std::to_string(k) + " cannot host the pattern");

    double small_sum = 0;
    for (int k : orders)
        if (static_cast<double>(k) < ladder.alpha * n) small_sum += k;
    if (small_sum > ladder.beta * n) throw InputError("small part orders sum above beta*n");

    SolveError last("none", "unreached");
    for (int attempt = 0; attempt <= ladder.retries; ++attempt) {
        Rng rng(seed + 0x51ED270B0ULL + 0x9E3779B9ULL * static_cast<std::uint64_t>(attempt));
        try {
            // big parts carry absorbing paths, small parts are built exactly
            std::vector<int> order_idx(orders.size());
            std::iota(order_idx.begin(), order_idx.end(), 0);
            std::stable_sort(order_idx.begin(), order_idx.end(),
                             [&](int a, int b) { return orders[a] > orders[b]; });
            std::vector<int> big, small;
            for (int i : order_idx)
                (static_cast<double>(orders[i]) >= ladder.alpha * n ? big : small).push_back(i);
            const int t = static_cast<int>(big.size());
            if (t == 0) throw SolveError("orders", "no part is large enough to absorb the remainder");

            VertexSet used(n);
            std::vector<SubdivisionCert> parts(orders.size());

            // branch images for every part
            std::vector<int> vorder(n);
            std::iota(vorder.begin(), vorder.end(), 0);
            Rng brng = rng.fork(0xB1);
            brng.shuffle(vorder);
            std::stable_sort(vorder.begin(), vorder.end(), [&](int a, int b) {
                return std::min(d.out_degree(a), d.in_degree(a)) > std::min(d.out_degree(b), d.in_degree(b));
            });
            std::vector<std::vector<int>> branch_of(orders.size());
            std::size_t bat = 0;
            for (std::size_t i = 0; i < orders.size(); ++i) {
                for (int k = 0; k < s; ++k) branch_of[i].push_back(vorder[bat++]);
                for (int v : branch_of[i]) used.insert(v);
            }

            // exact small parts
            Rng prng = rng.fork(0x4E);
            for (int i : small) {
                SubdivisionCert cert;
                cert.branch = branch_of[i];
                cert.routes.assign(h, {});
                int left = orders[i] - s;  // interiors to spend
                // minimal routes for all arcs but the first, then the first
                // arc takes whatever interior budget remains
                for (int e = 1; e < h; ++e) {
                    auto [hu, hv] = pattern.arcs()[e];
                    VertexSet usable = VertexSet::full(n) - used;
                    std::optional<std::vector<int>> route;
                    for (int len = 1; len <= 3 && !route; ++len) {
                        if (len - 1 > left) break;
                        route = exact_length_path(d, cert.branch[hu], cert.branch[hv], len, usable, prng);
                    }
                    if (!route) throw SolveError("small-part", "no short route for a small part arc");
                    left -= static_cast<int>(route->size()) - 2;
                    cert.routes[e] = *route;
                    for (int v : *route) used.insert(v);
                }
                {
                    auto [hu, hv] = pattern.arcs()[0];
                    VertexSet usable = VertexSet::full(n) - used;
                    auto route = exact_length_path(d, cert.branch[hu], cert.branch[hv], left + 1, usable, prng);
                    if (!route) throw SolveError("small-part", "no exact-length route closing a small part");
                    cert.routes[0] = *route;
                    for (int v : *route) used.insert(v);
                }
                if (cert.order() != orders[i]) throw SolveError("small-part", "small part order drifted");
                parts[i] = cert;
            }

            // family + linked paths for the big parts
            VertexSet allowed = VertexSet::full(n) - used;
            int floor_sz = std::max(t, static_cast<int>(std::ceil(ladder.gamma * ladder.gamma * n)));
            int min_budget = orders[big.back()];
            for (int i : big) min_budget = std::min(min_budget, orders[i]);
            int per_part_cap = std::max(1, (min_budget - s - 3 * h - 8) / 7);
            int cap = per_part_cap * t;
            floor_sz = std::min(floor_sz, std::max(t, cap));
            Rng frng = rng.fork(0xFB);
            AbsorberFamily fam = build_absorber_family(d, allowed, ladder, frng, floor_sz, cap);
            const int f = static_cast<int>(fam.members.size());
            std::vector<int> sizes(t, f / t);
            for (int i = 0; i < f % t; ++i) ++sizes[i];
            Rng lrng = rng.fork(0x72);
            partition_and_link(d, fam, sizes, allowed, ladder, lrng);
            for (const auto& link : fam.linked_paths)
                for (int v : link) used.insert(v);

            // assemble big-part skeletons: absorbing path on arc 0, minimal routes elsewhere
            Rng grng = rng.fork(0x6F);
            std::vector<int> deficits(t, 0);
            for (int bi = 0; bi < t; ++bi) {
                int i = big[bi];
                SubdivisionCert cert;
                cert.branch = branch_of[i];
                cert.routes.assign(h, {});
                const auto& link = fam.linked_paths[bi];
                {
                    auto [hu, hv] = pattern.arcs()[0];
                    VertexSet usable = VertexSet::full(n) - used;
                    auto g1 = short_bridge(d, cert.branch[hu], link.front(), usable, grng);
                    if (!g1) throw SolveError("attach", "no bridge onto a part's absorbing path");
                    for (int v : *g1) {
                        used.insert(v);
                        usable.erase(v);
                    }
                    auto g2 = short_bridge(d, link.back(), cert.branch[hv], usable, grng);
                    if (!g2) throw SolveError("attach", "no bridge off a part's absorbing path");
                    for (int v : *g2) used.insert(v);
                    auto& route = cert.routes[0];
                    route.push_back(cert.branch[hu]);
                    route.insert(route.end(), g1->begin(), g1->end());
                    route.insert(route.end(), link.begin(), link.end());
                    route.insert(route.end(), g2->begin(), g2->end());
                    route.push_back(cert.branch[hv]);
                }
                for (int e = 1; e < h; ++e) {
                    auto [hu, hv] = pattern.arcs()[e];
                    VertexSet usable = VertexSet::full(n) - used;
                    std::optional<std::vector<int>> route;
                    for (int len = 1; len <= 3 && !route; ++len)
                        route = exact_length_path(d, cert.branch[hu], cert.branch[hv], len, usable, grng);
                    if (!route) throw SolveError("attach", "no short route inside a big part");
                    cert.routes[e] = *route;
                    for (int v : *route) used.insert(v);
                }
                deficits[bi] = orders[i] - cert.order();
                if (deficits[bi] < 0) throw SolveError("attach", "big part skeleton exceeds its order");
                parts[i] = cert;
            }

            // absorb the remainder into the big parts
            VertexSet remainder = VertexSet::full(n) - used;
            if (!remainder.empty()) {
                auto verts = remainder.to_vector();
                std::optional<SegmentPlan> plan;
                if (static_cast<int>(verts.size()) <= 18) {
                    Digraph sub = induced(d, verts);
                    for (std::size_t c0 = 0; c0 < verts.size() && !plan; ++c0) {
                        auto res = oracle::hamiltonian_path_exact(sub, static_cast<int>(c0), std::nullopt);
                        if (!res.found()) continue;
                        std::vector<int> arrangement;
                        for (int idx : *res.value) arrangement.push_back(verts[idx]);
                        plan = plan_segments(d, fam, deficits, arrangement, false);
                    }
                } else {
                    Rng hrng = rng.fork(0x4B);
                    for (int a2 = 0; a2 < 6 && !plan; ++a2) {
                        auto cyc = heuristic_ham_cycle(d, remainder, hrng);
                        if (!cyc) continue;
                        plan = plan_segments(d, fam, deficits, *cyc, true);
                    }
                }
                if (!plan) throw SolveError("path-cover", "remainder cover or segment absorption failed");
                for (int bi = 0; bi < t; ++bi) {
                    if (plan->segments[bi].empty()) continue;
                    int i = big[bi];
                    parts[i].routes[0] =
                        absorb_path(parts[i].routes[0], fam.members[plan->absorber_of[bi]], plan->segments[bi], d);
                }
            }

            TilingCert cert;
            cert.parts = parts;
            cert.orders = orders;
            Verdict v = verify_tiling(d, pattern, cert);
            if (!v.pass()) throw SolveError("verify", v.summary());
            return cert;
        } catch (const SolveError& e) {
            last = e;
        }
    }
    throw last;
}

}  // namespace subdiv
