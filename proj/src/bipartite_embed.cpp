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

#include "subdiv/bipartite_embed.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include "subdiv/rng.hpp"

namespace subdiv {

MatchingResult max_bipartite_matching(int n_left, int n_right, const std::vector<std::vector<int>>& adj_left) {
    MatchingResult res;
    res.match_left.assign(n_left, -1);
    res.match_right.assign(n_right, -1);
    const int INF = 1 << 30;
    std::vector<int> dist(n_left, 0);

    auto bfs = [&]() {
        std::queue<int> q;
        for (int u = 0; u < n_left; ++u) {
            if (res.match_left[u] < 0) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = INF;
            }
        }
        bool reachable_free = false;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj_left[u]) {
                int w = res.match_right[v];
                if (w < 0) {
                    reachable_free = true;
                } else if (dist[w] == INF) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return reachable_free;
    };

    std::vector<char> visited;
    std::function<bool(int)> dfs = [&](int u) -> bool {
        for (int v : adj_left[u]) {
            if (visited[v]) continue;
            visited[v] = 1;
            int w = res.match_right[v];
            if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
                res.match_left[u] = v;
                res.match_right[v] = u;
                return true;
            }
        }
        return false;
    };

    while (bfs()) {
        visited.assign(n_right, 0);
        for (int u = 0; u < n_left; ++u)
            if (res.match_left[u] < 0 && dfs(u)) ++res.size;
    }
    return res;
}

std::vector<int> hall_deficient_left_set(int n_left, int n_right, const std::vector<std::vector<int>>& adj_left,
                                         const MatchingResult& m) {
    // alternating BFS from unmatched left nodes: reachable left nodes form S
    // with N(S) fully matched into S, hence |N(S)| = |S| - #unmatched < |S|
    std::vector<char> left_seen(n_left, 0), right_seen(n_right, 0);
    std::queue<int> q;
    for (int u = 0; u < n_left; ++u)
        if (m.match_left[u] < 0) {
            left_seen[u] = 1;
            q.push(u);
        }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj_left[u]) {
            if (right_seen[v]) continue;
            right_seen[v] = 1;
            int w = m.match_right[v];
            if (w >= 0 && !left_seen[w]) {
                left_seen[w] = 1;
                q.push(w);
            }
        }
    }
    std::vector<int> out;
    for (int u = 0; u < n_left; ++u)
        if (left_seen[u]) out.push_back(u);
    return out;
}

void EmbedRequest::validate() const {
    if (!host) throw InputError("embed request has no host digraph");
    if (side_a.size() != side_b.size()) throw InputError("embed request sides are unbalanced");
    const int a = static_cast<int>(side_a.size());
    long long total = 0;
    for (int s : sizes) {
        if (s < 1) throw InputError("embed path sizes must be >= 1");
        total += s;
    }
    if (total != a) throw InputError("embed path sizes sum to " + std::to_string(total) + ", |A| = " + std::to_string(a));
    if (sizes.size() != endpoints.size()) throw InputError("embed endpoints/sizes mismatch");
    std::set<int> avs(side_a.begin(), side_a.end()), bvs(side_b.begin(), side_b.end());
    if (static_cast<int>(avs.size()) != a || static_cast<int>(bvs.size()) != a)
        throw InputError("embed sides contain duplicates");
    for (int v : side_a)
        if (bvs.count(v)) throw InputError("embed sides overlap");
    std::set<int> used;
    for (auto [x, y] : endpoints) {
        if (!avs.count(x)) throw InputError("embed initial not on side A");
        if (!bvs.count(y)) throw InputError("embed terminal not on side B");
        if (!used.insert(x).second || !used.insert(y).second) throw InputError("embed endpoints repeat");
    }
    // declared degree floor
    VertexSet aset(host->order()), bset(host->order());
    for (int v : side_a) aset.insert(v);
    for (int v : side_b) bset.insert(v);
    const double floor_deg = (1.0 - eta) * a;
    for (int v : side_a)
        if (host->out_degree_in(v, bset) < floor_deg || host->in_degree_in(v, bset) < floor_deg)
            throw InputError("embed degree floor violated on side A at vertex " + std::to_string(v));
    for (int v : side_b)
        if (host->out_degree_in(v, aset) < floor_deg || host->in_degree_in(v, aset) < floor_deg)
            throw InputError("embed degree floor violated on side B at vertex " + std::to_string(v));
}

namespace {

// Layout = per path, the ordered A-vertices x_i^0 .. x_i^{r_i}.
struct Layout {
    std::vector<std::vector<int>> rows;
};

struct PairSlot {
    int path;
    int pos;  // between rows[path][pos] and rows[path][pos+1]
};

// Builds the auxiliary pair graph and finds a perfect matching onto B'.
// Returns paths on success.
bool try_layout(const EmbedRequest& req, const Layout& layout, std::vector<std::vector<int>>& paths_out,
                std::vector<PairSlot>& slots_out, std::vector<std::vector<int>>& adj_out,
                std::vector<int>& bprime_out, MatchingResult& match_out) {
    const Digraph& d = *req.host;
    const int m = static_cast<int>(req.sizes.size());

    std::set<int> used_b;
    for (auto [x, y] : req.endpoints) used_b.insert(y);
    std::vector<int> bprime;
    for (int v : req.side_b)
        if (!used_b.count(v)) bprime.push_back(v);
    std::vector<int> bindex(d.order(), -1);
    for (std::size_t i = 0; i < bprime.size(); ++i) bindex[bprime[i]] = static_cast<int>(i);

    std::vector<PairSlot> slots;
    for (int i = 0; i < m; ++i)
        for (std::size_t j = 0; j + 1 < layout.rows[i].size(); ++j)
            slots.push_back({i, static_cast<int>(j)});

    std::vector<std::vector<int>> adj(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
        int u = layout.rows[slots[s].path][slots[s].pos];
        int w = layout.rows[slots[s].path][slots[s].pos + 1];
        VertexSet mid = d.out_row(u) & d.in_row(w);
        for (int b = mid.next(0); b != -1; b = mid.next(b + 1))
            if (bindex[b] >= 0) adj[s].push_back(bindex[b]);
    }

    MatchingResult match = max_bipartite_matching(static_cast<int>(slots.size()), static_cast<int>(bprime.size()), adj);
    slots_out = slots;
    adj_out = adj;
    bprime_out = bprime;
    match_out = match;
    if (match.size != static_cast<int>(slots.size())) return false;

    paths_out.assign(m, {});
    std::vector<std::vector<int>> inserted(m);
    for (std::size_t s = 0; s < slots.size(); ++s) {
        auto& row = inserted[slots[s].path];
        if (row.empty()) row.assign(layout.rows[slots[s].path].size() - 1, -1);
        row[slots[s].pos] = bprime[match.match_left[s]];
    }
    for (int i = 0; i < m; ++i) {
        const auto& row = layout.rows[i];
        auto& path = paths_out[i];
        for (std::size_t j = 0; j < row.size(); ++j) {
            path.push_back(row[j]);
            if (j + 1 < row.size()) path.push_back(inserted[i][j]);
        }
        path.push_back(req.endpoints[i].second);
    }
    return true;
}

}  // namespace

EmbedOutcome embed_paths_bipartite(const EmbedRequest& req, std::uint64_t seed, int retries, int exhaustive_cap) {
    req.validate();
    const Digraph& d = *req.host;
    const int m = static_cast<int>(req.sizes.size());
    const int a = static_cast<int>(req.side_a.size());
    EmbedOutcome out;

    std::vector<int> free_a;
    {
        std::set<int> starts;
        for (auto [x, y] : req.endpoints) starts.insert(x);
        for (int v : req.side_a)
            if (!starts.count(v)) free_a.push_back(v);
    }

    auto attempt = [&](const Layout& layout) -> bool {
        // terminal constraint: last A-vertex of path i must see y_i0
        for (int i = 0; i < m; ++i)
            if (!d.has_arc(layout.rows[i].back(), req.endpoints[i].second)) return false;
        std::vector<std::vector<int>> paths;
        std::vector<PairSlot> slots;
        std::vector<std::vector<int>> adj;
        std::vector<int> bprime;
        MatchingResult match;
        if (try_layout(req, layout, paths, slots, adj, bprime, match)) {
            out.success = true;
            out.paths = paths;
            return true;
        }
        // remember a Hall certificate from this layout
        auto deficient = hall_deficient_left_set(static_cast<int>(slots.size()), static_cast<int>(bprime.size()), adj, match);
        out.deficient_pairs.clear();
        out.deficient_neighborhood.clear();
        std::set<int> nbh;
        for (int s : deficient) {
            out.deficient_pairs.emplace_back(layout.rows[slots[s].path][slots[s].pos],
                                             layout.rows[slots[s].path][slots[s].pos + 1]);
            for (int b : adj[s]) nbh.insert(bprime[b]);
        }
        out.deficient_neighborhood.assign(nbh.begin(), nbh.end());
        return false;
    };

    auto layout_from_order = [&](const std::vector<int>& order) {
        Layout layout;
        layout.rows.assign(m, {});
        std::size_t at = 0;
        for (int i = 0; i < m; ++i) {
            layout.rows[i].push_back(req.endpoints[i].first);
            for (int k = 0; k < req.sizes[i] - 1; ++k) layout.rows[i].push_back(order[at++]);
        }
        return layout;
    };

    if (a <= exhaustive_cap) {
        // exact small regime: enumerate all A-side layouts
        std::vector<int> order = free_a;
        std::sort(order.begin(), order.end());
        do {
            if (attempt(layout_from_order(order))) return out;
        } while (std::next_permutation(order.begin(), order.end()));
        out.failure = "hall-violation";
        return out;
    }

    Rng rng(seed);
    for (int t = 0; t <= retries; ++t) {
        std::vector<int> order = free_a;
        rng.shuffle(order);
        Layout layout = layout_from_order(order);
        // repair pass for the terminal constraint: swap a suitable vertex
        // into the last slot of each path
        bool feasible = true;
        for (int i = 0; i < m && feasible; ++i) {
            int y = req.endpoints[i].second;
            if (d.has_arc(layout.rows[i].back(), y)) continue;
            if (layout.rows[i].size() == 1) {
                feasible = false;  // bare start must see its terminal
                break;
            }
            bool fixed = false;
            for (int j = 0; j < m && !fixed; ++j) {
                auto& row = layout.rows[j];
                std::size_t from = (j == i) ? 1 : (j == 0 ? 1 : 1);
                std::size_t end = row.size() - ((j < i) ? 1 : 0);  // keep already-repaired tails
                for (std::size_t k = from; k < end && !fixed; ++k) {
                    if (j == i && k + 1 == row.size()) continue;
                    if (d.has_arc(row[k], y)) {
                        std::swap(row[k], layout.rows[i].back());
                        // the swap must not break an earlier repaired tail
                        fixed = true;
                    }
                }
            }
            if (!fixed) feasible = false;
        }
        if (!feasible) continue;
        // re-check all tails after swaps
        bool tails_ok = true;
        for (int i = 0; i < m; ++i)
            if (!d.has_arc(layout.rows[i].back(), req.endpoints[i].second)) tails_ok = false;
        if (!tails_ok) continue;
        if (attempt(layout)) return out;
    }
    out.failure = "hall-violation";
    return out;
}

// ---------------------------------------------------------------------------
// unit chains
// ---------------------------------------------------------------------------

namespace {

struct SlotRow {
    // per chain: unit index per position, -1 where a free unit goes
    std::vector<int> unit_at;
    std::vector<bool> is_x;
};

}  // namespace

UnitChainResult embed_unit_chains(const UnitChainProblem& prob, std::uint64_t seed, int retries) {
    UnitChainResult res;
    const Digraph& d = *prob.host;

    for (const auto& c : prob.chains) {
        if (c.start_unit < 0 || c.end_unit < 0) {
            res.failure = "chain without prescribed endpoints";
            return res;
        }
    }

    // slot arithmetic per chain
    std::vector<SlotRow> skeleton(prob.chains.size());
    for (std::size_t ci = 0; ci < prob.chains.size(); ++ci) {
        const auto& c = prob.chains[ci];
        int nx = c.free_x + static_cast<int>(c.pinned_x.size()) + (prob.units[c.start_unit].on_x ? 1 : 0) +
                 (prob.units[c.end_unit].on_x ? 1 : 0);
        int ny = c.free_y + static_cast<int>(c.pinned_y.size()) + (prob.units[c.start_unit].on_x ? 0 : 1) +
                 (prob.units[c.end_unit].on_x ? 0 : 1);
        bool sx = prob.units[c.start_unit].on_x, ex = prob.units[c.end_unit].on_x;
        int expect_diff = (sx && ex) ? 1 : (!sx && !ex) ? -1 : 0;
        if (nx - ny != expect_diff) {
            res.failure = "chain side counts do not alternate (x=" + std::to_string(nx) + ", y=" + std::to_string(ny) + ")";
            return res;
        }
        int total = nx + ny;
        auto& row = skeleton[ci];
        row.unit_at.assign(total, -1);
        row.is_x.assign(total, false);
        bool side = sx;
        for (int p = 0; p < total; ++p) {
            row.is_x[p] = side;
            side = !side;
        }
        row.unit_at.front() = c.start_unit;
        row.unit_at.back() = c.end_unit;
        if ((row.is_x.back()) != ex) {
            res.failure = "chain terminal lands on the wrong side";
            return res;
        }
    }

    Rng rng(seed);
    for (int attempt = 0; attempt <= retries; ++attempt) {
        Rng local = rng.fork(static_cast<std::uint64_t>(attempt) + 0x51);
        auto rows = skeleton;

        // place pinned units at side positions drawn for this attempt
        bool pin_ok = true;
        for (std::size_t ci = 0; ci < prob.chains.size() && pin_ok; ++ci) {
            const auto& c = prob.chains[ci];
            auto& row = rows[ci];
            for (int pass = 0; pass < 2; ++pass) {
                const auto& pins = pass == 0 ? c.pinned_x : c.pinned_y;
                bool want_x = pass == 0;
                std::vector<int> open;
                for (std::size_t p = 1; p + 1 < row.unit_at.size(); ++p)
                    if (row.is_x[p] == want_x && row.unit_at[p] < 0) open.push_back(static_cast<int>(p));
                if (open.size() < pins.size()) {
                    pin_ok = false;
                    break;
                }
                local.shuffle(open);
                for (std::size_t k = 0; k < pins.size(); ++k) row.unit_at[open[k]] = pins[k];
            }
        }
        if (!pin_ok) {
            res.failure = "pinned units exceed chain capacity";
            return res;
        }

        // deal free X units into open X positions (global shuffle)
        std::vector<int> fx = prob.free_x;
        local.shuffle(fx);
        std::vector<std::pair<int, int>> open_x;  // (chain, pos)
        for (std::size_t ci = 0; ci < rows.size(); ++ci)
            for (std::size_t p = 1; p + 1 < rows[ci].unit_at.size(); ++p)
                if (rows[ci].is_x[p] && rows[ci].unit_at[p] < 0) open_x.emplace_back(static_cast<int>(ci), static_cast<int>(p));
        if (open_x.size() != fx.size()) {
            res.failure = "free X unit count mismatch (" + std::to_string(fx.size()) + " units for " +
                          std::to_string(open_x.size()) + " slots)";
            return res;
        }
        for (std::size_t k = 0; k < fx.size(); ++k) rows[open_x[k].first].unit_at[open_x[k].second] = fx[k];

        // repair pass: an X position whose neighbor position is already a
        // fixed unit (pin or endpoint) must connect to it; swap in a unit
        // that does
        auto fits = [&](std::size_t ci, std::size_t p, int unit) {
            const auto& row = rows[ci];
            if (p > 0) {
                int prev = row.unit_at[p - 1];
                if (prev >= 0 && !d.has_arc(prob.units[prev].term(), prob.units[unit].init())) return false;
            }
            if (p + 1 < row.unit_at.size()) {
                int nxt = row.unit_at[p + 1];
                if (nxt >= 0 && !d.has_arc(prob.units[unit].term(), prob.units[nxt].init())) return false;
            }
            return true;
        };
        bool repaired = true;
        for (std::size_t k = 0; k < open_x.size() && repaired; ++k) {
            auto [ci, p] = open_x[k];
            std::size_t pi = static_cast<std::size_t>(p);
            // only already-fixed Y neighbors constrain an X slot; free Y
            // slots are matched afterwards against whatever lands here
            bool y_prev_fixed = pi > 0 && !rows[ci].is_x[pi - 1] && rows[ci].unit_at[pi - 1] >= 0;
            bool y_next_fixed = pi + 1 < rows[ci].unit_at.size() && !rows[ci].is_x[pi + 1] && rows[ci].unit_at[pi + 1] >= 0;
            bool constrained = y_prev_fixed || y_next_fixed;
            if (!constrained) continue;
            if (fits(ci, pi, rows[ci].unit_at[pi])) continue;
            bool fixed = false;
            for (std::size_t k2 = 0; k2 < open_x.size() && !fixed; ++k2) {
                if (k2 == k) continue;
                auto [cj, q] = open_x[k2];
                std::size_t qi = static_cast<std::size_t>(q);
                int mine = rows[ci].unit_at[pi], theirs = rows[cj].unit_at[qi];
                if (!fits(ci, pi, theirs)) continue;
                rows[ci].unit_at[pi] = theirs;
                rows[cj].unit_at[qi] = mine;
                if (fits(cj, qi, mine)) {
                    fixed = true;
                } else {
                    rows[ci].unit_at[pi] = mine;
                    rows[cj].unit_at[qi] = theirs;
                }
            }
            if (!fixed) repaired = false;
        }
        if (!repaired) continue;

        // match free Y units into the remaining Y slots
        std::vector<std::pair<int, int>> open_y;
        for (std::size_t ci = 0; ci < rows.size(); ++ci)
            for (std::size_t p = 1; p + 1 < rows[ci].unit_at.size(); ++p)
                if (!rows[ci].is_x[p] && rows[ci].unit_at[p] < 0) open_y.emplace_back(static_cast<int>(ci), static_cast<int>(p));
        if (open_y.size() != prob.free_y.size()) {
            res.failure = "free Y unit count mismatch (" + std::to_string(prob.free_y.size()) + " units for " +
                          std::to_string(open_y.size()) + " slots)";
            return res;
        }
        std::vector<std::vector<int>> adj(open_y.size());
        for (std::size_t s = 0; s < open_y.size(); ++s) {
            auto [ci, p] = open_y[s];
            int prev = rows[ci].unit_at[p - 1];
            int nxt = rows[ci].unit_at[p + 1];
            for (std::size_t yk = 0; yk < prob.free_y.size(); ++yk) {
                int u = prob.free_y[yk];
                if (d.has_arc(prob.units[prev].term(), prob.units[u].init()) &&
                    d.has_arc(prob.units[u].term(), prob.units[nxt].init()))
                    adj[s].push_back(static_cast<int>(yk));
            }
        }
        MatchingResult match =
            max_bipartite_matching(static_cast<int>(open_y.size()), static_cast<int>(prob.free_y.size()), adj);
        if (match.size != static_cast<int>(open_y.size())) {
            res.failure = "hall-violation";
            continue;
        }
        for (std::size_t s = 0; s < open_y.size(); ++s)
            rows[open_y[s].first].unit_at[open_y[s].second] = prob.free_y[match.match_left[s]];

        // assemble; every inter-unit step must be a real arc
        bool arcs_ok = true;
        std::vector<std::vector<int>> assembled(rows.size());
        for (std::size_t ci = 0; ci < rows.size() && arcs_ok; ++ci) {
            const auto& row = rows[ci];
            for (std::size_t p = 0; p < row.unit_at.size(); ++p) {
                const auto& unit = prob.units[row.unit_at[p]];
                if (p > 0) {
                    int prev = rows[ci].unit_at[p - 1];
                    if (!d.has_arc(prob.units[prev].term(), unit.init())) {
                        arcs_ok = false;
                        break;
                    }
                }
                assembled[ci].insert(assembled[ci].end(), unit.verts.begin(), unit.verts.end());
            }
        }
        if (!arcs_ok) continue;
        res.success = true;
        res.chains = assembled;
        res.failure.clear();
        return res;
    }
    if (res.failure.empty()) res.failure = "hall-violation";
    return res;
}

}  // namespace subdiv
