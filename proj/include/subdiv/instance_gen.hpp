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
#include <vector>

#include "subdiv/digraph.hpp"
#include "subdiv/params.hpp"

namespace subdiv {

enum class ExtremalKind { EC1, EC2, EC3 };

const char* extremal_kind_name(ExtremalKind k);

// Random digraph with certified minimum semi-degree >= d: a union of d
// arc-disjoint random cycle templates plus Bernoulli(extra_p) arcs.
Digraph random_min_semidegree(int n, int d, std::uint64_t seed, double extra_p = 0.0);

// Ground truth attached to a planted instance: block index per vertex
// (1..5 matching the construction, 0 = exceptional set W3/W5).
struct PlantedInstance {
    Digraph graph;
    ExtremalKind kind;
    std::vector<int> block_of;  // per vertex: 1..4 block id, 0 for exceptional
};

// Planted extremal families. noise in [0,1] adds arcs only in directions the
// structure leaves free, so the planted invariants survive re-measurement.
PlantedInstance planted_extremal(ExtremalKind kind, int n, const ParameterLadder& ladder, double noise,
                                 std::uint64_t seed);

// Two disjoint complete digraphs on n/2 vertices: semi-degree n/2 - 1 yet no
// spanning subdivision of any connected pattern.
Digraph tightness_witness(int n);

}  // namespace subdiv
