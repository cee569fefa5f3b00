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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/params.hpp"
#include "subdiv/pattern.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

// Staged solver failure; the stage tag is the user-facing contract
// ("path-cover", "coverage", "connector", ...). The CLI maps it to exit 3.
class SolveError : public std::runtime_error {
public:
    SolveError(std::string stage, const std::string& detail)
        : std::runtime_error(stage + ": " + detail), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

// A 4-path z1 z2 z3 z4. It absorbs a pair (u, v) when z2->u and v->z3 are
// arcs and u, v avoid the path; splicing a u..v path between z2 and z3 then
// extends the host path without moving its ends.
struct Absorber {
    std::array<int, 4> z{};
    bool valid_in(const Digraph& d) const;
};

bool absorbs(const Absorber& a, int u, int v, const Digraph& d);

// Rewires the z2-z3 step of `path` (which must contain the absorber
// contiguously) to run z2, Q..., z3. Q may be a single vertex (u == v).
std::vector<int> absorb_path(const std::vector<int>& path, const Absorber& a, const std::vector<int>& q,
                             const Digraph& d);

struct AbsorberFamily {
    std::vector<Absorber> members;  // pairwise disjoint
    int sampled_tuples = 0;         // raw draw size before discards
    double rate_gamma1 = 0.0;       // the sampling gamma1 actually used

    // set after partition_and_link
    std::vector<std::vector<int>> parts;                     // member indices per part
    std::vector<std::vector<int>> linked_paths;              // L_i vertex sequences
    std::vector<std::vector<std::vector<int>>> connectors;   // per part, per gap, interior vertices

    VertexSet vertex_set(int host_order) const;
};

// Randomized absorber family: ordered 4-tuples are drawn at rate
// gamma1^3 n^-3, non-paths and mutually intersecting tuples are discarded,
// and sampled-pair coverage is validated. Retries re-draw with a fresh
// derived seed and an escalated rate; a structured failure names an
// uncovered pair when all retries are spent.
AbsorberFamily build_absorber_family(const Digraph& d, const VertexSet& allowed, const ParameterLadder& ladder,
                                     Rng& rng, int min_size = 0, int max_size = -1);

// Splits the family into parts of the given sizes, validates per-part
// sampled coverage, then links each part's absorbers into one path per part
// using connectors of length <= 3 found by intersecting out/in
// neighborhoods (shortest first).
void partition_and_link(const Digraph& d, AbsorberFamily& fam, const std::vector<int>& sizes,
                        const VertexSet& allowed, const ParameterLadder& ladder, Rng& rng);

struct Skeleton {
    std::vector<int> branch;
    std::vector<std::vector<int>> routes;  // short arcs finished; long arcs hold their absorbing path
    std::vector<int> target_lengths;       // per pattern arc
    std::vector<int> long_arcs;            // arc indices, aligned with family parts
    AbsorberFamily family;
    VertexSet used;
};

// Branch placement, exact short routes, and one linked absorbing path per
// long arc, attached to its branch endpoints by up to two extra arcs.
Skeleton build_skeleton_spanning(const Digraph& d, const Pattern& pattern, std::vector<int> lengths,
                                 const ParameterLadder& ladder, Rng& rng);

// Covers the remainder with a Hamiltonian cycle/path, splits it into one
// segment per long arc sized to the arc's deficit, and absorbs each segment.
SubdivisionCert complete_spanning(const Digraph& d, const Pattern& pattern, Skeleton skeleton,
                                  const ParameterLadder& ladder, Rng& rng);

SubdivisionCert solve_spanning_nonextremal(const Digraph& d, const Pattern& pattern,
                                           std::optional<std::vector<int>> lengths, const ParameterLadder& ladder,
                                           std::uint64_t seed);

TilingCert solve_tiling_nonextremal(const Digraph& d, const Pattern& pattern, const std::vector<int>& orders,
                                    const ParameterLadder& ladder, std::uint64_t seed);

// Default length profile for a spanning solve: one long route plus minimal
// short routes (all below alpha*n, summing under beta*n).
std::vector<int> default_spanning_lengths(int n, const Pattern& pattern, const ParameterLadder& ladder);

// Heuristic Hamiltonian cycle by repeated insertion; used on remainders too
// large for the exact oracle.
std::optional<std::vector<int>> heuristic_ham_cycle(const Digraph& d, const VertexSet& within, Rng& rng,
                                                    int restarts = 12);

}  // namespace subdiv
