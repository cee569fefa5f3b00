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

// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "subdiv/bipartite_embed.hpp"
#include "subdiv/cert_io.hpp"
#include "subdiv/experiment.hpp"
#include "subdiv/oracle.hpp"

using namespace subdiv;

namespace {

struct Tally {
    long long certs = 0;
    long long reverify_failures = 0;

    void spanning(const Digraph& d, const Pattern& p, const SubdivisionCert& cert) {
        ++certs;
        if (!verify_subdivision(d, p, cert, true).pass()) ++reverify_failures;
    }
    void tiling(const Digraph& d, const Pattern& p, const TilingCert& cert) {
        ++certs;
        if (!verify_tiling(d, p, cert).pass()) ++reverify_failures;
    }
};

Tally g_tally;

struct Criterion {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    long long ms;
};

std::vector<Criterion> g_results;

template <typename F>
void run_criterion(int id, const std::string& name, F&& body) {
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        detail = body();
        pass = true;
    } catch (const std::exception& e) {
        detail = e.what();
    }
    if (!detail.empty() && detail.rfind("FAIL:", 0) == 0) pass = false;
    long long ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    g_results.push_back({id, name, pass, detail, ms});
}

// --------------------------------------------------------------------------

std::string ghouila_houri_anchor() {
    int found = 0, total = 0;
    for (int trial = 0; trial < 500; ++trial) {
        int n = 6 + trial % 4;  // 6..9
        int d = (n + 1) / 2;
        Digraph host = random_min_semidegree(n, d, 9000 + trial);
        ++total;
        auto res = oracle::hamiltonian_path_exact(host);
        if (res.found()) {
            ++found;
            // a found path doubles as a spanning single-arc cert
            SubdivisionCert cert;
            cert.branch = {res.value->front(), res.value->back()};
            cert.routes = {*res.value};
            g_tally.spanning(host, Pattern::single_arc(), cert);
        }
    }
    if (found != total) return "FAIL: " + std::to_string(found) + "/" + std::to_string(total) + " found";
    return std::to_string(found) + "/" + std::to_string(total) + " hamiltonian";
}

std::string sharpness() {
    for (int n : {6, 8, 10}) {
        Digraph d = tightness_witness(n);
        if (d.min_semi_degree() != n / 2 - 1) return "FAIL: wrong semi-degree at n=" + std::to_string(n);
        auto arc = oracle::find_spanning_subdivision_exact(d, Pattern::single_arc());
        auto cyc = oracle::find_spanning_subdivision_exact(d, Pattern::two_cycle());
        if (!arc.proved_absent() || !cyc.proved_absent())
            return "FAIL: a spanning subdivision was not excluded at n=" + std::to_string(n);
    }
    return "3/3 witness orders sharp";
}

std::string absorption_algebra() {
    Rng rng(17);
    Digraph k24 = complete_digraph(24);
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<int> verts(24);
        std::iota(verts.begin(), verts.end(), 0);
        rng.shuffle(verts);
        int plen = 5 + static_cast<int>(rng.below(6));
        std::vector<int> path(verts.begin(), verts.begin() + plen);
        std::size_t pos = 1 + rng.below(static_cast<std::uint64_t>(plen - 4));
        Absorber a{{path[pos], path[pos + 1], path[pos + 2], path[pos + 3]}};
        int qlen = 1 + static_cast<int>(rng.below(5));
        std::vector<int> q(verts.begin() + plen, verts.begin() + plen + qlen);
        auto grown = absorb_path(path, a, q, k24);
        if (grown.front() != path.front() || grown.back() != path.back() ||
            grown.size() != path.size() + q.size())
            return "FAIL: absorption arithmetic broke at trial " + std::to_string(trial);
        std::set<int> s(grown.begin(), grown.end());
        if (s.size() != grown.size()) return "FAIL: absorption repeated a vertex";
    }
    // exhaustive per-pair absorber floor on K20
    Digraph k20 = complete_digraph(20);
    long long floor_count = 160;  // 1e-3 * 20^4
    for (int u = 0; u < 20; ++u)
        for (int v = 0; v < 20; ++v)
            if (oracle::count_absorbers(k20, u, v) < floor_count)
                return "FAIL: pair (" + std::to_string(u) + "," + std::to_string(v) + ") below the absorber floor";
    return "10000 trials exact; all K20 pairs above the floor";
}

std::string family_pipeline() {
    Digraph k = complete_digraph(300);
    ParameterLadder ladder;
    int good_seeds = 0;
    for (int seed = 1; seed <= 20; ++seed) {
        try {
            Rng rng(seed);
            AbsorberFamily fam = build_absorber_family(k, VertexSet::full(300), ladder, rng,
                                                       static_cast<int>(ladder.gamma * ladder.gamma * 300));
            if (static_cast<double>(fam.members.size()) > ladder.gamma * 300) continue;
            std::set<int> seen;
            bool disjoint = true;
            for (const auto& m : fam.members)
                for (int z : m.z)
                    if (!seen.insert(z).second) disjoint = false;
            if (!disjoint) continue;
            int f = static_cast<int>(fam.members.size());
            std::vector<int> sizes{(f + 1) / 2, f / 2};
            Rng lrng(seed + 100);
            partition_and_link(k, fam, sizes, VertexSet::full(300), ladder, lrng);
            bool connectors_ok = true;
            for (const auto& part : fam.connectors)
                for (const auto& conn : part)
                    if (conn.size() > 2) connectors_ok = false;  // length <= 3
            if (!connectors_ok) continue;
            // 200 sampled pairs covered in every part
            VertexSet fam_set = fam.vertex_set(300);
            std::vector<int> leftover;
            for (int v = 0; v < 300; ++v)
                if (!fam_set.contains(v)) leftover.push_back(v);
            Rng srng(seed + 200);
            bool covered = true;
            for (const auto& part : fam.parts) {
                for (int s = 0; s < 200 && covered; ++s) {
                    int u = leftover[srng.below(leftover.size())];
                    int v = leftover[srng.below(leftover.size())];
                    bool any = false;
                    for (int idx : part)
                        if (absorbs(fam.members[idx], u, v, k)) any = true;
                    if (!any) covered = false;
                }
            }
            if (covered) ++good_seeds;
        } catch (const SolveError&) {
        }
    }
    if (good_seeds < 19) return "FAIL: only " + std::to_string(good_seeds) + "/20 seeds clean";
    return std::to_string(good_seeds) + "/20 seeds clean";
}

// brute-force alternating path packing, independent of the embedder
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
            if (t.has_arc(cur, target)) place(i + 1);
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

std::string embedder() {
    Rng rng(41);
    // (a) exact agreement with brute force on 200 small instances
    int feasible = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int a = 3 + static_cast<int>(rng.below(4));  // 3..6
        int m = 1 + static_cast<int>(rng.below(2));
        if (m > a) m = a;
        Digraph t(2 * a);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < a; ++j) {
                if (rng.bernoulli(0.55)) t.add_arc(i, a + j);
                if (rng.bernoulli(0.55)) t.add_arc(a + j, i);
            }
        EmbedRequest req;
        req.host = &t;
        for (int i = 0; i < a; ++i) req.side_a.push_back(i), req.side_b.push_back(a + i);
        std::vector<int> ap = req.side_a, bp = req.side_b;
        rng.shuffle(ap);
        rng.shuffle(bp);
        for (int i = 0; i < m; ++i) req.endpoints.push_back({ap[i], bp[i]});
        req.sizes.assign(m, a / m);
        for (int i = 0; i < a % m; ++i) ++req.sizes[i];
        req.eta = 1.0;
        auto out = embed_paths_bipartite(req, 500 + trial, 4, 7);
        BrutePacker brute(t, req);
        bool expect = brute.run();
        if (expect) ++feasible;
        if (out.success != expect)
            return "FAIL: small-instance disagreement at trial " + std::to_string(trial);
    }
    // (b) engineering scale with a degree floor
    int success = 0, failures_with_cert = 0, failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int a = 50;
        Rng grng(7000 + trial);
        Digraph t(2 * a);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < a; ++j) {
                if (grng.bernoulli(0.95)) t.add_arc(i, a + j);
                if (grng.bernoulli(0.95)) t.add_arc(a + j, i);
            }
        // patch any vertex under the (1 - eta) floor
        int floor_deg = static_cast<int>(std::ceil(0.9 * a));
        VertexSet aset(2 * a), bset(2 * a);
        for (int i = 0; i < a; ++i) aset.insert(i), bset.insert(a + i);
        for (int i = 0; i < a; ++i) {
            for (int j = 0; t.out_degree_in(i, bset) < floor_deg && j < a; ++j) t.add_arc_if_absent(i, a + j);
            for (int j = 0; t.in_degree_in(i, bset) < floor_deg && j < a; ++j) t.add_arc_if_absent(a + j, i);
            for (int j = 0; t.out_degree_in(a + i, aset) < floor_deg && j < a; ++j) t.add_arc_if_absent(a + i, j);
            for (int j = 0; t.in_degree_in(a + i, aset) < floor_deg && j < a; ++j) t.add_arc_if_absent(j, a + i);
        }
        EmbedRequest req;
        req.host = &t;
        for (int i = 0; i < a; ++i) req.side_a.push_back(i), req.side_b.push_back(a + i);
        std::vector<int> ap = req.side_a, bp = req.side_b;
        Rng srng(7100 + trial);
        srng.shuffle(ap);
        srng.shuffle(bp);
        for (int i = 0; i < 3; ++i) req.endpoints.push_back({ap[i], bp[i]});
        req.sizes = {17, 17, 16};
        req.eta = 0.1;
        auto out = embed_paths_bipartite(req, 7200 + trial);
        if (out.success) {
            ++success;
            std::set<int> covered;
            for (std::size_t i = 0; i < out.paths.size(); ++i) {
                const auto& p = out.paths[i];
                for (std::size_t k2 = 0; k2 + 1 < p.size(); ++k2)
                    if (!t.has_arc(p[k2], p[k2 + 1])) return "FAIL: embedded path is not a path";
                for (int v : p)
                    if (!covered.insert(v).second) return "FAIL: embedded paths overlap";
            }
            if (covered.size() != 2 * a) return "FAIL: embedded paths are not spanning";
        } else {
            ++failures;
            if (out.deficient_pairs.size() > out.deficient_neighborhood.size()) ++failures_with_cert;
        }
    }
    if (success < 99) return "FAIL: only " + std::to_string(success) + "/100 embeddings succeeded";
    if (failures != failures_with_cert) return "FAIL: a failure lacked its deficiency certificate";
    std::ostringstream os;
    os << "200/200 exact small agreement (" << feasible << " feasible); " << success << "/100 at a=50";
    return os.str();
}

std::string classifier() {
    ParameterLadder ladder;
    for (auto kind : {ExtremalKind::EC1, ExtremalKind::EC2, ExtremalKind::EC3}) {
        for (int seed = 1; seed <= 20; ++seed) {
            PlantedInstance inst = planted_extremal(kind, 400, ladder, 0.0, seed);
            auto witness = find_ec_witness(inst.graph, ladder.eps_prime, 12, seed);
            if (!witness) return std::string("FAIL: no witness on planted ") + extremal_kind_name(kind);
            ExtremalPartition part = classify_extremal_structure(inst.graph, *witness, ladder);
            if (part.kind != kind)
                return std::string("FAIL: planted ") + extremal_kind_name(kind) + " classified as " +
                       extremal_kind_name(part.kind) + " at seed " + std::to_string(seed);
            // agreement over ground-truth block vertices, best label symmetry
            std::vector<std::vector<int>> relabelings;
            if (kind == ExtremalKind::EC3)
                relabelings = {{1, 2, 3, 4}, {3, 4, 1, 2}};
            else
                relabelings = {{1, 2}, {2, 1}};
            double best = 0;
            for (const auto& relabel : relabelings) {
                int good = 0, total = 0;
                for (int v = 0; v < 400; ++v) {
                    int truth = inst.block_of[v];
                    if (truth == 0) continue;
                    ++total;
                    int want = relabel[truth - 1];
                    if (static_cast<std::size_t>(want) <= part.parts.size() && part.parts[want - 1].contains(v))
                        ++good;
                }
                best = std::max(best, static_cast<double>(good) / total);
            }
            if (best < 0.95)
                return std::string("FAIL: agreement ") + std::to_string(best) + " on " + extremal_kind_name(kind);
        }
    }
    return "60/60 planted kinds recovered";
}

std::string nonextremal_end_to_end() {
    ParameterLadder ladder;
    std::vector<std::pair<std::string, Pattern>> patterns{
        {"arc", Pattern::single_arc()}, {"2cycle", Pattern::two_cycle()}, {"triangle", Pattern::transitive_triangle()}};
    std::ostringstream os;
    for (auto& [name, pattern] : patterns) {
        int ok = 0;
        for (int seed = 1; seed <= 10; ++seed) {
            Digraph d = random_min_semidegree(200, 110, 100 + seed);
            try {
                SubdivisionCert cert = solve_spanning_nonextremal(d, pattern, std::nullopt, ladder, seed);
                g_tally.spanning(d, pattern, cert);
                if (verify_subdivision(d, pattern, cert, true).pass()) ++ok;
            } catch (const SolveError& e) {
                if (e.stage() == "verify") return "FAIL: verification-stage failure on " + name;
            }
        }
        os << name << ":" << ok << "/10 ";
        if (ok < 9) return "FAIL: " + os.str();
    }
    return os.str();
}

std::string extremal_end_to_end() {
    ParameterLadder ladder;
    std::ostringstream os;
    for (auto kind : {ExtremalKind::EC1, ExtremalKind::EC2, ExtremalKind::EC3}) {
        int ok_span = 0, ok_tile = 0;
        for (int seed = 1; seed <= 10; ++seed) {
            PlantedInstance inst = planted_extremal(kind, 200, ladder, 0.0, 300 + seed);
            auto witness = find_ec_witness(inst.graph, ladder.eps_prime, 12, seed);
            if (!witness) continue;
            ExtremalPartition part = classify_extremal_structure(inst.graph, *witness, ladder);
            try {
                SubdivisionCert cert =
                    solve_extremal_spanning(inst.graph, Pattern::single_arc(), std::nullopt, part, ladder, seed);
                g_tally.spanning(inst.graph, Pattern::single_arc(), cert);
                if (verify_subdivision(inst.graph, Pattern::single_arc(), cert, true).pass()) ++ok_span;
            } catch (const SolveError& e) {
                if (e.stage() == "verify") return "FAIL: verification-stage failure (spanning)";
            }
            try {
                TilingCert cert =
                    solve_extremal_tiling(inst.graph, Pattern::two_cycle(), {100, 100}, part, ladder, seed);
                g_tally.tiling(inst.graph, Pattern::two_cycle(), cert);
                if (verify_tiling(inst.graph, Pattern::two_cycle(), cert).pass()) ++ok_tile;
            } catch (const SolveError& e) {
                if (e.stage() == "verify") return "FAIL: verification-stage failure (tiling)";
            }
        }
        os << extremal_kind_name(kind) << ":" << ok_span << "+" << ok_tile << "/10+10 ";
        if (ok_span < 9 || ok_tile < 9) return "FAIL: " + os.str();
    }
    return os.str();
}

std::string determinism() {
    Digraph d = random_min_semidegree(200, 110, 77);
    SolveOptions opts;
    opts.seed = 77;
    auto a = solve(d, Pattern::single_arc(), opts);
    auto b = solve(d, Pattern::single_arc(), opts);
    if (subdivision_cert_to_json(Pattern::single_arc(), *a.spanning) !=
        subdivision_cert_to_json(Pattern::single_arc(), *b.spanning))
        return "FAIL: certificates differ across identical runs";

    std::string cfg = R"({
      "seed": 3,
      "rows": [
        {"gen": {"type": "random", "n": 9, "d": 5}, "pattern": "arc", "mode": "spanning", "reps": 5},
        {"gen": {"type": "planted", "kind": "EC2", "n": 200}, "pattern": "arc", "mode": "spanning", "reps": 2}
      ]
    })";
    std::string csv1 = run_experiment(cfg).to_csv(false);
    std::string csv2 = run_experiment(cfg).to_csv(false);
    if (csv1 != csv2) return "FAIL: reports differ across identical runs";
    return "certificates and reports byte-identical";
}

std::string choke_point() {
    // breadth battery: every engine's output re-verified above, plus a mixed
    // small-instance sweep here
    Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 6 + static_cast<int>(rng.below(4));
        Digraph d = random_min_semidegree(n, (n + 1) / 2, 400 + trial);
        auto res = oracle::find_spanning_subdivision_exact(d, Pattern::two_cycle());
        if (res.found()) g_tally.spanning(d, Pattern::two_cycle(), *res.value);
    }
    if (g_tally.reverify_failures != 0)
        return "FAIL: " + std::to_string(g_tally.reverify_failures) + " certificates failed re-verification";
    return std::to_string(g_tally.certs) + " certificates re-verified, 0 violations";
}

}  // namespace

int main() {
    run_criterion(2, "hamiltonian anchor (500 random hosts)", ghouila_houri_anchor);
    run_criterion(3, "sharpness of the semi-degree bound", sharpness);
    run_criterion(4, "absorption algebra", absorption_algebra);
    run_criterion(5, "family and linking pipeline", family_pipeline);
    run_criterion(6, "bipartite path embedder", embedder);
    run_criterion(7, "extremal structure classifier", classifier);
    run_criterion(8, "non-extremal end-to-end solves", nonextremal_end_to_end);
    run_criterion(9, "extremal end-to-end solves", extremal_end_to_end);
    run_criterion(10, "determinism", determinism);
    run_criterion(1, "verifier choke point", choke_point);

    std::sort(g_results.begin(), g_results.end(), [](const Criterion& a, const Criterion& b) { return a.id < b.id; });
    bool all_pass = true;
    for (const auto& c : g_results) {
        std::printf("criterion %2d (%s): %s [%lldms] %s\n", c.id, c.name.c_str(), c.pass ? "PASS" : "FAIL", c.ms,
                    c.detail.c_str());
        if (!c.pass) all_pass = false;
    }
    std::printf("acceptance: %s\n", all_pass ? "PASS" : "FAIL");
    return all_pass ? 0 : 1;
}
