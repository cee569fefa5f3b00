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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/extremal.hpp"

namespace subdiv {

struct StageTrace {
    struct Entry {
        std::string stage;
        std::string outcome;
        long long wall_us = 0;
    };
    std::vector<Entry> entries;
    std::string render() const;
};

enum class SolveRoute { Stable, EC1, EC2, EC3, Forced };

struct SolveOptions {
    std::uint64_t seed = 1;
    ParameterLadder ladder;
    std::optional<std::vector<int>> lengths;        // spanning mode
    std::optional<std::vector<int>> orders;         // tiling mode
    bool tiling = false;
    std::optional<ExtremalKind> force_extremal;     // skip the witness search
    int witness_restarts = 12;
};

struct SolveOutcome {
    SolveRoute route = SolveRoute::Stable;
    std::optional<ExtremalKind> kind;
    std::optional<SubdivisionCert> spanning;
    std::optional<TilingCert> tiling;
    StageTrace trace;
};

// Classifies, routes to the matching engine, and verifies before returning;
// a certificate never leaves this function unverified.
SolveOutcome solve(const Digraph& d, const Pattern& pattern, const SolveOptions& opts);

}  // namespace subdiv
