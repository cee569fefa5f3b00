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
#include <optional>
#include <vector>

#include "subdiv/pattern.hpp"

namespace subdiv {
namespace oracle {

// Budget exhaustion is a distinct outcome: None means a completed exhaustive
// search proved absence, Exhausted means nothing was proved.
enum class Status { Found, None, Exhausted };

template <typename T>
struct Result {
    Status status = Status::None;
    std::optional<T> value;
    long long nodes = 0;

    bool found() const { return status == Status::Found; }
    bool proved_absent() const { return status == Status::None; }
};

struct Budget {
    long long node_limit = 20'000'000;
    int order_cap = 10;  // refuse larger instances unless override is set
    bool override_cap = false;
};

// Exhaustive search for a spanning H-subdivision, optionally with exact route
// lengths (indexed by the pattern's arc order). Branch candidates are tried
// in descending semi-degree, routes extended fewest-candidates-first, and
// branch assignments that are non-canonical under an automorphism of H are
// pruned.
Result<SubdivisionCert> find_spanning_subdivision_exact(const Digraph& host, const Pattern& pattern,
                                                        const std::optional<std::vector<int>>& lengths = std::nullopt,
                                                        Budget budget = {});

Result<TilingCert> find_perfect_tiling_exact(const Digraph& host, const Pattern& pattern,
                                             const std::vector<int>& orders, Budget budget = {});

// All 4-paths z1 z2 z3 z4 with z2->u and v->z3 present and {z1..z4} disjoint
// from {u, v}. u == v is allowed.
std::vector<std::array<int, 4>> enumerate_absorbers(const Digraph& host, int u, int v);
long long count_absorbers(const Digraph& host, int u, int v);

// Hamiltonian path. Exact subset DP for order <= 20 (optionally with fixed
// initial/terminal vertices); budgeted branch-and-bound beyond that.
Result<std::vector<int>> hamiltonian_path_exact(const Digraph& host, std::optional<int> initial = std::nullopt,
                                                std::optional<int> terminal = std::nullopt, Budget budget = {});

}  // namespace oracle
}  // namespace subdiv
