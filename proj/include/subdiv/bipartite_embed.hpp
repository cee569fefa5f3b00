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

#include <cstdint>
#include <string>
#include <vector>

#include "subdiv/digraph.hpp"

namespace subdiv {

struct MatchingResult {
    int size = 0;
    std::vector<int> match_left;   // per left node: matched right node or -1
    std::vector<int> match_right;  // per right node: matched left node or -1
};

MatchingResult max_bipartite_matching(int n_left, int n_right, const std::vector<std::vector<int>>& adj_left);

// Given a maximum matching that does not saturate the left side, returns a
// deficient left set S with |N(S)| < |S| (the standard alternating-reachability
// certificate).
std::vector<int> hall_deficient_left_set(int n_left, int n_right, const std::vector<std::vector<int>>& adj_left,
                                         const MatchingResult& m);

// Request to embed m disjoint paths into a balanced bipartite digraph T:
// path i runs from x_i0 (in A) to y_i0 (in B), alternates sides, and uses
// exactly sizes[i] vertices of each side. A successful embedding partitions
// all of A and B.
struct EmbedRequest {
    const Digraph* host = nullptr;
    std::vector<int> side_a;
    std::vector<int> side_b;
    std::vector<std::pair<int, int>> endpoints;  // (x_i0, y_i0)
    std::vector<int> sizes;                      // per-path side-A vertex count, sums to |A|
    double eta = 0.0;                            // declared degree slack, validated on entry

    void validate() const;
};

struct EmbedOutcome {
    bool success = false;
    std::vector<std::vector<int>> paths;
    std::string failure;                // stage tag when !success ("hall-violation", ...)
    // Hall certificate on failure: pair slots (described as consecutive A
    // vertices) whose joint neighborhood in the auxiliary graph is too small.
    std::vector<std::pair<int, int>> deficient_pairs;
    std::vector<int> deficient_neighborhood;
};

// Auxiliary-graph embedding: A-side layouts are drawn by seeded shuffle
// (subject to the terminal constraint that the last A-vertex of path i sees
// y_i0), the B-side is assigned by maximum matching on the pair graph.
// Instances with |A| <= exhaustive_cap are decided exactly by enumerating
// layouts.
EmbedOutcome embed_paths_bipartite(const EmbedRequest& req, std::uint64_t seed, int retries = 8,
                                   int exhaustive_cap = 7);

// ---------------------------------------------------------------------------
// Unit-level chains: same machinery, but the alternating "vertices" are
// pre-built path fragments (covers of exceptional vertices, excursions into
// another block, parity fixers). A unit's init and term lie on the same side.
// ---------------------------------------------------------------------------

struct ChainUnit {
    std::vector<int> verts;
    bool on_x = true;
    int init() const { return verts.front(); }
    int term() const { return verts.back(); }
    int size() const { return static_cast<int>(verts.size()); }
};

struct UnitChainSpec {
    int start_unit = -1;
    int end_unit = -1;
    std::vector<int> pinned_x;  // multi-vertex units forced into this chain
    std::vector<int> pinned_y;
    int free_x = 0;  // number of free X singles this chain draws
    int free_y = 0;
};

struct UnitChainProblem {
    const Digraph* host = nullptr;
    std::vector<ChainUnit> units;
    std::vector<int> free_x;  // unit indices, globally used exactly once
    std::vector<int> free_y;
    std::vector<UnitChainSpec> chains;
};

struct UnitChainResult {
    bool success = false;
    std::vector<std::vector<int>> chains;  // real vertex sequences
    std::string failure;
};

UnitChainResult embed_unit_chains(const UnitChainProblem& prob, std::uint64_t seed, int retries = 12);

}  // namespace subdiv
