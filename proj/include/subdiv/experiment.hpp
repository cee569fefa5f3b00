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

#include <string>
#include <vector>

#include "subdiv/solver.hpp"

namespace subdiv {

// One experiment row per (config row, repetition). Rows are independent and
// run on a worker pool (SUBDIV_THREADS caps it); the report is assembled by
// row index so thread scheduling never changes the output.
struct ExperimentRow {
    std::string instance_id;
    int n = 0;
    std::string mode;
    std::string route;
    std::string outcome;   // "cert" or the failing stage tag
    std::string verifier;  // "pass", "fail" (a bug), or "-"
    std::string oracle;    // "agree", "disagree", "skipped"
    std::uint64_t seed = 0;
    long long wall_ms = 0;
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;
    // report-v1 columns; timing sits in its own column so determinism
    // hashing can drop it
    std::string to_csv(bool include_timing = true) const;
    std::string summary_json() const;
};

ExperimentReport run_experiment(const std::string& config_json);

}  // namespace subdiv
