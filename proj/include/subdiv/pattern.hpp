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

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subdiv/digraph.hpp"

namespace subdiv {

// Pattern digraph H. Every vertex must lie on at least one arc.
class Pattern {
public:
    explicit Pattern(Digraph h);

    const Digraph& graph() const { return h_; }
    int vertex_count() const { return h_.order(); }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    // Arcs in a fixed canonical order; certificates and length lists are
    // indexed against this order.
    const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }

    static Pattern single_arc() {
        Digraph h(2);
        h.add_arc(0, 1);
        return Pattern(std::move(h));
    }
    static Pattern two_cycle() {
        Digraph h(2);
        h.add_arc(0, 1);
        h.add_arc(1, 0);
        return Pattern(std::move(h));
    }
    static Pattern transitive_triangle() {
        Digraph h(3);
        h.add_arc(0, 1);
        h.add_arc(1, 2);
        h.add_arc(0, 2);
        return Pattern(std::move(h));
    }

private:
    Digraph h_;
    std::vector<std::pair<int, int>> arcs_;
};

// Witness of an H-subdivision in a host digraph: branch map f plus one
// directed route per pattern arc. A route of length 1 (a bare host arc) is
// legal, so H itself counts as an H-subdivision.
struct SubdivisionCert {
    std::vector<int> branch;               // branch[i] = host image of pattern vertex i
    std::vector<std::vector<int>> routes;  // routes[e] realizes pattern arc e

    std::vector<int> covered_vertices() const;
    int order() const;  // number of distinct host vertices used
};

struct TilingCert {
    std::vector<SubdivisionCert> parts;
    std::vector<int> orders;  // declared part orders n_1..n_m
};

// Outcome of a verification. A cert passes iff violations is empty; every
// violated clause is reported, not just the first.
struct Verdict {
    std::vector<std::string> violations;
    bool pass() const { return violations.empty(); }
    std::string summary() const;
};

Verdict verify_subdivision(const Digraph& host, const Pattern& pattern, const SubdivisionCert& cert,
                           bool require_spanning,
                           const std::optional<std::vector<int>>& required_lengths = std::nullopt);

Verdict verify_tiling(const Digraph& host, const Pattern& pattern, const TilingCert& cert);

// Replaces each undirected edge {u,v} with the two arcs u->v and v->u.
Digraph double_graph(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace subdiv
