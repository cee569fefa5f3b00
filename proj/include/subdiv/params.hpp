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

namespace subdiv {

// The solver's parameter hierarchy, exposed as plain numbers. The asymptotic
// ordering gamma, gamma1 << eps_prime << eps1 << eps has no usable numeric
// rendering at the instance sizes this tool runs on, so validate() enforces
// the constraints the pipelines actually rely on (alpha, beta < gamma and the
// eps chain) and validate_strict() additionally demands the full ordering.
struct ParameterLadder {
    double eps = 0.4;
    double eps1 = 0.16;
    double eps_prime = 0.1;
    double gamma = 0.2;
    double gamma1 = 0.25;
    double alpha = 0.1;
    double beta = 0.05;
    int scale_c = 20;

    // Multiplicative slack applied to the extremal size-window checks.
    double window_slack = 1.1;

    int retries = 8;
    int coverage_samples = 200;

    void validate() const;
    bool satisfies_strict_ordering() const;

    std::string to_json() const;
    static ParameterLadder from_json(const std::string& text);
};

}  // namespace subdiv
