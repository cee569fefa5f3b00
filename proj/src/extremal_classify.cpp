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

#include <cmath>

#include <json.hpp>

namespace subdiv {

std::string ExtremalPartition::to_json() const {
    nlohmann::json j;
    j["kind"] = extremal_kind_name(kind);
    nlohmann::json parts_j = nlohmann::json::array();
    for (const auto& p : parts) parts_j.push_back(p.to_vector());
    j["parts"] = parts_j;
    j["exceptional"] = exceptional.to_vector();
    nlohmann::json low_j = nlohmann::json::array();
    for (const auto& p : low_degree) low_j.push_back(p.to_vector());
    j["low_degree"] = low_j;
    j["stats"] = {{"eps", eps}, {"eps1", eps1}, {"notes", notes}};
    return j.dump(2) + "\n";
}

namespace {

double cbrt_pos(double x) { return std::cbrt(x); }

bool both_sigma_above(const Digraph& d, int v, const VertexSet& target, double thr) {
    return d.out_degree_in(v, target) > thr && d.in_degree_in(v, target) > thr;
}

// One-shot migration machinery: every vertex changes its home at most once.
struct Mover {
    std::vector<char> moved;
    explicit Mover(int n) : moved(n, 0) {}
    bool take(int v) {
        if (moved[v]) return false;
        moved[v] = 1;
        return true;
    }
};

void note_window(std::vector<std::string>& notes, const std::string& what, double value, double lo, double hi,
                 double slack) {
    if (value < lo / slack || value > hi * slack)
        notes.push_back(what + "=" + std::to_string(value) + " outside [" + std::to_string(lo) + "," +
                        std::to_string(hi) + "]");
}

// The two-tier degree split of an almost-complete block: vertices meeting
// the (1-10*sqrt(eps)) floor are normal, the rest must still meet the
// eps^(1/3)/2 floor.
VertexSet classify_low_degree_clique(const Digraph& d, const VertexSet& w, double eps,
                                     std::vector<std::string>& notes, const std::string& name) {
    VertexSet low(w.host_size());
    const double sz = w.count();
    const double normal_floor = (1.0 - 10.0 * std::sqrt(eps)) * sz;
    const double weak_floor = cbrt_pos(eps) * sz / 2.0;
    for (int v = w.next(0); v != -1; v = w.next(v + 1)) {
        double deg = d.semi_degree_in(v, w);
        if (deg >= normal_floor) continue;
        low.insert(v);
        if (deg < weak_floor)
            notes.push_back(name + " vertex " + std::to_string(v) + " below the weak in-part floor");
    }
    if (static_cast<double>(low.count()) > 10.0 * std::sqrt(eps) * sz * 1.0 + 1e-9)
        notes.push_back(name + " has " + std::to_string(low.count()) + " low-degree vertices");
    return low;
}

VertexSet classify_low_degree_bipartite(const Digraph& d, const VertexSet& w, const VertexSet& other, double eps,
                                        std::vector<std::string>& notes, const std::string& name) {
    VertexSet low(w.host_size());
    const double sz = other.count();
    const double normal_floor = (1.0 - 10.0 * std::sqrt(eps)) * sz;
    const double weak_floor = cbrt_pos(eps) * sz / 8.0;
    for (int v = w.next(0); v != -1; v = w.next(v + 1)) {
        double deg = d.bidirectional_degree(v, other);
        if (deg >= normal_floor) continue;
        low.insert(v);
        if (d.semi_degree_in(v, other) < weak_floor)
            notes.push_back(name + " vertex " + std::to_string(v) + " below the weak cross floor");
    }
    return low;
}

}  // namespace

ExtremalPartition classify_extremal_structure(const Digraph& d, const ECWitness& witness,
                                              const ParameterLadder& ladder) {
    const int n = d.order();
    witness.revalidate(d);
    const double eps = ladder.eps;
    const double eps1 = ladder.eps1;
    const double e13 = cbrt_pos(eps);

    VertexSet u0 = witness.u1 & witness.u2;
    const int overlap = u0.count();

    ExtremalPartition out;
    out.eps = eps;
    out.eps1 = eps1;
    out.exceptional = VertexSet(n);

    if (static_cast<double>(overlap) <= eps1 * n) {
        // small overlap: two sparse-crossing almost-complete blocks
        out.kind = ExtremalKind::EC1;
        VertexSet w1 = witness.u1 - u0;
        VertexSet w2 = witness.u2 - u0;
        VertexSet rest = VertexSet::full(n) - w1 - w2;

        VertexSet e1(n), e2(n);
        for (int v = w1.next(0); v != -1; v = w1.next(v + 1))
            if (d.semi_degree_in(v, w1) <= e13 * w1.count()) e1.insert(v);
        for (int v = w2.next(0); v != -1; v = w2.next(v + 1))
            if (d.semi_degree_in(v, w2) <= e13 * w2.count()) e2.insert(v);

        Mover mover(n);
        bool changed = true;
        int rounds = 0;
        while (changed && rounds++ <= n) {
            changed = false;
            VertexSet cand2 = e1 | rest;  // candidates that may join W2
            for (int x = cand2.next(0); x != -1; x = cand2.next(x + 1)) {
                if (!both_sigma_above(d, x, w2, e13 * w2.count())) continue;
                if (!mover.take(x)) continue;
                w2.insert(x);
                if (e1.contains(x)) {
                    e1.erase(x);
                    w1.erase(x);
                }
                rest.erase(x);
                changed = true;
            }
            VertexSet cand1 = e2 | rest;
            for (int y = cand1.next(0); y != -1; y = cand1.next(y + 1)) {
                if (!both_sigma_above(d, y, w1, e13 * w1.count())) continue;
                if (!mover.take(y)) continue;
                w1.insert(y);
                if (e2.contains(y)) {
                    e2.erase(y);
                    w2.erase(y);
                }
                rest.erase(y);
                changed = true;
            }
        }
        w1 -= e1;
        w2 -= e2;
        VertexSet w3 = VertexSet::full(n) - w1 - w2;

        // windows (soft) and degree patterns (hard)
        for (int i = 0; i < 2; ++i) {
            const VertexSet& wi = i == 0 ? w1 : w2;
            double sz = wi.count();
            note_window(out.notes, std::string("|W") + std::to_string(i + 1) + "|", sz,
                        (0.5 - eps) * n - std::sqrt(10 * eps) * sz, (0.5 - eps) * n + std::sqrt(10 * eps) * sz,
                        ladder.window_slack);
        }
        if (w1.empty() || w2.empty()) throw SolveError("classify", "an EC1 block is empty");
        for (int w = w3.next(0); w != -1; w = w3.next(w + 1)) {
            double dominant = (1.0 - 2.0 * e13) * n / 2.0;
            bool type1 = d.in_degree_in(w, w1) > dominant && d.out_degree_in(w, w2) > dominant;
            bool type2 = d.out_degree_in(w, w1) > dominant && d.in_degree_in(w, w2) > dominant;
            if (!type1 && !type2)
                throw SolveError("classify", "leftover vertex " + std::to_string(w) +
                                                 " has no dominant degree pattern (EC1 clause violated)");
            if (d.semi_degree_in(w, w1) > e13 * n / 2.0 || d.semi_degree_in(w, w2) > e13 * n / 2.0)
                out.notes.push_back("leftover vertex " + std::to_string(w) + " exceeds the in-block semi-degree cap");
        }
        out.parts = {w1, w2};
        out.exceptional = w3;
        out.low_degree = {classify_low_degree_clique(d, w1, eps, out.notes, "W1"),
                          classify_low_degree_clique(d, w2, eps, out.notes, "W2")};
        return out;
    }

    if (static_cast<double>(overlap) >= (0.5 - eps1) * n) {
        // near-total overlap: doubled almost-complete bipartite structure
        out.kind = ExtremalKind::EC2;
        VertexSet w1 = u0;
        VertexSet w2 = VertexSet::full(n) - u0;

        VertexSet e1(n), e2(n);
        for (int v = w1.next(0); v != -1; v = w1.next(v + 1))
            if (d.bidirectional_degree(v, w2) <= e13 * w2.count()) e1.insert(v);
        for (int v = w2.next(0); v != -1; v = w2.next(v + 1))
            if (d.bidirectional_degree(v, w1) <= e13 * w1.count()) e2.insert(v);

        Mover mover(n);
        bool changed = true;
        int rounds = 0;
        while (changed && rounds++ <= n) {
            changed = false;
            // membership on a side means strong bidirectional ties to the
            // other side; misfits strongly tied to their own side move over
            for (int x = e1.next(0); x != -1; x = e1.next(x + 1)) {
                if (d.bidirectional_degree(x, w1) <= e13 * w1.count()) continue;
                if (!mover.take(x)) continue;
                e1.erase(x);
                w1.erase(x);
                w2.insert(x);
                changed = true;
            }
            for (int y = e2.next(0); y != -1; y = e2.next(y + 1)) {
                if (d.bidirectional_degree(y, w2) <= e13 * w2.count()) continue;
                if (!mover.take(y)) continue;
                e2.erase(y);
                w2.erase(y);
                w1.insert(y);
                changed = true;
            }
        }
        w1 -= e1;
        w2 -= e2;
        VertexSet w3 = VertexSet::full(n) - w1 - w2;

        if (w1.empty() || w2.empty()) throw SolveError("classify", "an EC2 side is empty");
        for (int w = w3.next(0); w != -1; w = w3.next(w + 1)) {
            double dominant = (1.0 - 2.0 * e13) * n / 2.0;
            bool type1 = d.in_degree_in(w, w1) > dominant && d.out_degree_in(w, w2) > dominant;
            bool type2 = d.out_degree_in(w, w1) > dominant && d.in_degree_in(w, w2) > dominant;
            if (!type1 && !type2)
                throw SolveError("classify", "leftover vertex " + std::to_string(w) +
                                                 " has no dominant degree pattern (EC2 clause violated)");
        }
        for (int i = 0; i < 2; ++i) {
            const VertexSet& wi = i == 0 ? w1 : w2;
            double sz = wi.count();
            note_window(out.notes, std::string("|W") + std::to_string(i + 1) + "|", sz,
                        (0.5 - eps) * n - std::sqrt(10 * eps) * sz, (0.5 - eps) * n + std::sqrt(10 * eps) * sz,
                        ladder.window_slack);
        }
        out.parts = {w1, w2};
        out.exceptional = w3;
        out.low_degree = {classify_low_degree_bipartite(d, w1, w2, eps, out.notes, "W1"),
                          classify_low_degree_bipartite(d, w2, w1, eps, out.notes, "W2")};
        return out;
    }

    // middle overlap: the four-block cyclic structure
    out.kind = ExtremalKind::EC3;
    VertexSet w1 = witness.u1 - u0;
    VertexSet w3 = witness.u2 - u0;
    VertexSet w4 = u0;
    VertexSet w2 = VertexSet::full(n) - w1 - w3 - w4;

    VertexSet e1(n), e3(n);
    for (int v = w1.next(0); v != -1; v = w1.next(v + 1))
        if (d.semi_degree_in(v, w1) <= e13 * w1.count()) e1.insert(v);
    for (int v = w3.next(0); v != -1; v = w3.next(v + 1))
        if (d.semi_degree_in(v, w3) <= e13 * w3.count()) e3.insert(v);

    Mover mover(n);
    bool changed = true;
    int rounds = 0;
    while (changed && rounds++ <= n) {
        changed = false;
        VertexSet cand3 = e1 | w2 | w4;
        for (int x = cand3.next(0); x != -1; x = cand3.next(x + 1)) {
            if (!both_sigma_above(d, x, w3, e13 * w3.count())) continue;
            if (!mover.take(x)) continue;
            if (e1.contains(x)) {
                e1.erase(x);
                w1.erase(x);
            }
            w2.erase(x);
            w4.erase(x);
            w3.insert(x);
            changed = true;
        }
        VertexSet cand1 = e3 | w2 | w4;
        for (int y = cand1.next(0); y != -1; y = cand1.next(y + 1)) {
            if (!both_sigma_above(d, y, w1, e13 * w1.count())) continue;
            if (!mover.take(y)) continue;
            if (e3.contains(y)) {
                e3.erase(y);
                w3.erase(y);
            }
            w2.erase(y);
            w4.erase(y);
            w1.insert(y);
            changed = true;
        }
    }
    w1 -= e1;
    w3 -= e3;

    VertexSet e2(n), e4(n);
    for (int v = w2.next(0); v != -1; v = w2.next(v + 1))
        if (d.bidirectional_degree(v, w4) <= e13 * w4.count()) e2.insert(v);
    for (int v = w4.next(0); v != -1; v = w4.next(v + 1))
        if (d.bidirectional_degree(v, w2) <= e13 * w2.count()) e4.insert(v);
    changed = true;
    rounds = 0;
    while (changed && rounds++ <= n) {
        changed = false;
        for (int x = e2.next(0); x != -1; x = e2.next(x + 1)) {
            if (d.bidirectional_degree(x, w2) <= e13 * w2.count()) continue;
            if (!mover.take(x)) continue;
            e2.erase(x);
            w2.erase(x);
            w4.insert(x);
            changed = true;
        }
        for (int y = e4.next(0); y != -1; y = e4.next(y + 1)) {
            if (d.bidirectional_degree(y, w4) <= e13 * w4.count()) continue;
            if (!mover.take(y)) continue;
            e4.erase(y);
            w4.erase(y);
            w2.insert(y);
            changed = true;
        }
    }
    w2 -= e2;
    w4 -= e4;
    VertexSet w5 = VertexSet::full(n) - w1 - w2 - w3 - w4;

    if (w1.empty() || w2.empty() || w3.empty() || w4.empty())
        throw SolveError("classify", "an EC3 block is empty");

    // keep the larger clique first; rotating by two preserves the cyclic
    // structure
    if (w1.count() < w3.count()) {
        std::swap(w1, w3);
        std::swap(w2, w4);
    }

    const double cyc_floor_deficit = ladder.eps_prime * n * static_cast<double>(n) / 2.0;
    auto cyc = [&](const VertexSet& a, const VertexSet& b, const char* name) {
        double have = static_cast<double>(d.arc_count_between(a, b));
        double want = static_cast<double>(a.count()) * b.count() - cyc_floor_deficit;
        if (have < want)
            out.notes.push_back(std::string("one-way density ") + name + " short: " + std::to_string(have) + " < " +
                                std::to_string(want));
    };
    cyc(w1, w2, "W1->W2");
    cyc(w2, w3, "W2->W3");
    cyc(w3, w4, "W3->W4");
    cyc(w4, w1, "W4->W1");

    for (int w = w5.next(0); w != -1; w = w5.next(w + 1)) {
        double floor13 = (1.0 - e13) * std::min(w1.count(), w3.count());
        bool p1 = d.out_degree_in(w, w1) >= floor13 && d.in_degree_in(w, w3) >= floor13;
        bool p2 = d.in_degree_in(w, w1) >= floor13 && d.out_degree_in(w, w3) >= floor13;
        double floor24 = (1.0 - e13) * std::min(w2.count(), w4.count());
        bool q1 = d.out_degree_in(w, w2) >= floor24 && d.in_degree_in(w, w4) >= floor24;
        bool q2 = d.in_degree_in(w, w2) >= floor24 && d.out_degree_in(w, w4) >= floor24;
        if ((!p1 && !p2) || (!q1 && !q2))
            throw SolveError("classify", "leftover vertex " + std::to_string(w) +
                                             " misses a cyclic degree pattern (EC3 clause violated)");
    }

    note_window(out.notes, "|W1|-|W3|", std::abs(w1.count() - w3.count()), 0, 2.0 * ladder.eps_prime * n,
                ladder.window_slack);
    note_window(out.notes, "|W2|-|W4|", std::abs(w2.count() - w4.count()), 0, 2.0 * ladder.eps_prime * n,
                ladder.window_slack);

    out.parts = {w1, w2, w3, w4};
    out.exceptional = w5;
    out.low_degree = {classify_low_degree_clique(d, w1, eps, out.notes, "W1"),
                      classify_low_degree_bipartite(d, w2, w4, eps, out.notes, "W2"),
                      classify_low_degree_clique(d, w3, eps, out.notes, "W3"),
                      classify_low_degree_bipartite(d, w4, w2, eps, out.notes, "W4")};
    return out;
}

}  // namespace subdiv
