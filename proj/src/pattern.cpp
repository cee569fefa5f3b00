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

#include "subdiv/pattern.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace subdiv {

Pattern::Pattern(Digraph h) : h_(std::move(h)) {
    for (int v = 0; v < h_.order(); ++v)
        if (h_.out_degree(v) + h_.in_degree(v) == 0)
            throw InputError("pattern vertex " + std::to_string(v) + " is isolated");
    arcs_ = h_.arcs();
}

std::vector<int> SubdivisionCert::covered_vertices() const {
    std::set<int> used(branch.begin(), branch.end());
    for (const auto& r : routes) used.insert(r.begin(), r.end());
    return {used.begin(), used.end()};
}

int SubdivisionCert::order() const { return static_cast<int>(covered_vertices().size()); }

std::string Verdict::summary() const {
    if (pass()) return "pass";
    std::ostringstream os;
    os << "fail (" << violations.size() << " violation" << (violations.size() == 1 ? "" : "s") << ")";
    for (const auto& v : violations) os << "\n  - " << v;
    return os.str();
}

namespace {

void check_shape(const Digraph& host, const Pattern& pattern, const SubdivisionCert& cert) {
    if (static_cast<int>(cert.branch.size()) != pattern.vertex_count())
        throw InputError("certificate has " + std::to_string(cert.branch.size()) + " branch images, pattern has " +
                         std::to_string(pattern.vertex_count()) + " vertices");
    if (static_cast<int>(cert.routes.size()) != pattern.arc_count())
        throw InputError("certificate has " + std::to_string(cert.routes.size()) + " routes, pattern has " +
                         std::to_string(pattern.arc_count()) + " arcs");
    for (int b : cert.branch)
        if (b < 0 || b >= host.order()) throw InputError("branch image " + std::to_string(b) + " out of range");
    for (const auto& r : cert.routes) {
        if (r.empty()) throw InputError("empty route in certificate");
        for (int v : r)
            if (v < 0 || v >= host.order()) throw InputError("route vertex " + std::to_string(v) + " out of range");
    }
}

std::string arc_name(const std::pair<int, int>& e) {
    return std::to_string(e.first) + "->" + std::to_string(e.second);
}

}  // namespace

Verdict verify_subdivision(const Digraph& host, const Pattern& pattern, const SubdivisionCert& cert,
                           bool require_spanning, const std::optional<std::vector<int>>& required_lengths) {
    check_shape(host, pattern, cert);
    Verdict out;
    auto add = [&out](const std::string& s) { out.violations.push_back(s); };

    // branch injectivity
    for (std::size_t i = 0; i < cert.branch.size(); ++i)
        for (std::size_t j = i + 1; j < cert.branch.size(); ++j)
            if (cert.branch[i] == cert.branch[j])
                add("branch map not injective: pattern vertices " + std::to_string(i) + " and " + std::to_string(j) +
                    " both map to " + std::to_string(cert.branch[i]));

    const auto& arcs = pattern.arcs();
    VertexSet branch_set(host.order());
    for (int b : cert.branch) branch_set.insert(b);

    for (int e = 0; e < pattern.arc_count(); ++e) {
        const auto& route = cert.routes[e];
        const auto name = arc_name(arcs[e]);
        if (route.front() != cert.branch[arcs[e].first])
            add("route for " + name + " starts at " + std::to_string(route.front()) + ", expected f(" +
                std::to_string(arcs[e].first) + ")=" + std::to_string(cert.branch[arcs[e].first]));
        if (route.back() != cert.branch[arcs[e].second])
            add("route for " + name + " ends at " + std::to_string(route.back()) + ", expected f(" +
                std::to_string(arcs[e].second) + ")=" + std::to_string(cert.branch[arcs[e].second]));
        if (route.size() < 2) add("route for " + name + " has no arc");
        for (std::size_t i = 0; i + 1 < route.size(); ++i)
            if (!host.has_arc(route[i], route[i + 1]))
                add("route for " + name + ": " + std::to_string(route[i]) + "->" + std::to_string(route[i + 1]) +
                    " is not an arc of the host");
        VertexSet seen(host.order());
        for (int v : route) {
            if (seen.contains(v)) add("route for " + name + " repeats vertex " + std::to_string(v));
            seen.insert(v);
        }
        // interiors must avoid all branch vertices
        for (std::size_t i = 1; i + 1 < route.size(); ++i)
            if (branch_set.contains(route[i]))
                add("route for " + name + " passes through branch vertex " + std::to_string(route[i]));
    }

    // pairwise interior disjointness
    std::vector<int> owner(host.order(), -1);
    for (int e = 0; e < pattern.arc_count(); ++e) {
        const auto& route = cert.routes[e];
        for (std::size_t i = 1; i + 1 < route.size(); ++i) {
            int v = route[i];
            if (owner[v] >= 0 && owner[v] != e)
                add("interior vertex " + std::to_string(v) + " shared by routes for " + arc_name(arcs[owner[v]]) +
                    " and " + arc_name(arcs[e]));
            owner[v] = e;
        }
    }

    if (require_spanning) {
        VertexSet covered(host.order());
        for (int b : cert.branch) covered.insert(b);
        for (const auto& r : cert.routes)
            for (int v : r) covered.insert(v);
        int missing = host.order() - covered.count();
        if (missing > 0)
            add("not spanning: " + std::to_string(missing) + " host vertices uncovered (first: " +
                std::to_string((VertexSet::full(host.order()) - covered).next(0)) + ")");
    }

    if (required_lengths) {
        if (required_lengths->size() != cert.routes.size()) {
            add("length list has " + std::to_string(required_lengths->size()) + " entries, pattern has " +
                std::to_string(cert.routes.size()) + " arcs");
        } else {
            for (int e = 0; e < pattern.arc_count(); ++e) {
                int len = static_cast<int>(cert.routes[e].size()) - 1;
                if (len != (*required_lengths)[e])
                    add("route for " + arc_name(arcs[e]) + " has length " + std::to_string(len) + ", required " +
                        std::to_string((*required_lengths)[e]));
            }
        }
    }
    return out;
}

Verdict verify_tiling(const Digraph& host, const Pattern& pattern, const TilingCert& cert) {
    Verdict out;
    auto add = [&out](const std::string& s) { out.violations.push_back(s); };
    if (cert.orders.size() != cert.parts.size())
        throw InputError("tiling certificate declares " + std::to_string(cert.orders.size()) + " orders for " +
                         std::to_string(cert.parts.size()) + " parts");

    VertexSet covered(host.order());
    for (std::size_t i = 0; i < cert.parts.size(); ++i) {
        Verdict part = verify_subdivision(host, pattern, cert.parts[i], /*require_spanning=*/false);
        for (const auto& v : part.violations) add("part " + std::to_string(i) + ": " + v);
        auto used = cert.parts[i].covered_vertices();
        if (static_cast<int>(used.size()) != cert.orders[i])
            add("part " + std::to_string(i) + " has order " + std::to_string(used.size()) + ", declared " +
                std::to_string(cert.orders[i]));
        for (int v : used) {
            if (covered.contains(v))
                add("parts overlap at vertex " + std::to_string(v) + " (part " + std::to_string(i) + ")");
            covered.insert(v);
        }
    }
    int missing = host.order() - covered.count();
    if (missing > 0) add("tiling not perfect: " + std::to_string(missing) + " host vertices uncovered");
    return out;
}

Digraph double_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    Digraph d(n);
    for (auto [u, v] : edges) {
        if (u == v) throw InputError("self-loop {" + std::to_string(u) + "} in undirected input");
        d.add_arc(u, v);
        d.add_arc(v, u);
    }
    return d;
}

}  // namespace subdiv
