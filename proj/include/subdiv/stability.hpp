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
#include <optional>
#include <vector>

#include "subdiv/digraph.hpp"

namespace subdiv {

// Two large vertex sets with few arcs from the first to the second. A
// returned witness always re-validates exactly: |U_i| >= (1/2 - eps')n and
// e+(U1, U2) <= (eps' n)^2.
struct ECWitness {
    VertexSet u1;
    VertexSet u2;
    double eps_prime = 0.0;
    long long arc_count = 0;
    int overlap = 0;  // |U1 ∩ U2|, recorded for the downstream case split

    void revalidate(const Digraph& d) const;  // throws on any broken invariant
};

// Randomized local search for an EC witness. Absence of a witness is
// one-sided: the digraph is only *presumed* stable.
std::optional<ECWitness> find_ec_witness(const Digraph& d, double eps_prime, int restarts, std::uint64_t seed);

struct RobustParams {
    double nu = 0.1;
    double tau = 0.1;
    void validate() const {
        if (!(nu > 0.0 && nu <= tau && tau < 1.0)) throw InputError("robust parameters require 0 < nu <= tau < 1");
    }
};

// {x : |N^-(x) ∩ S| >= nu * n}
VertexSet robust_out_neighborhood(const Digraph& d, const VertexSet& s, double nu);

struct ExpanderVerdict {
    bool pass = true;
    bool exhaustive = false;  // true when every admissible S was enumerated
    std::optional<VertexSet> counterexample;
    long long sets_checked = 0;
};

// Tests |RN+(S)| >= |S| + nu*n over all S with tau*n < |S| < (1-tau)*n.
// Exhaustive when the admissible family is small enough to enumerate,
// otherwise sampled plus a deterministic family (out-neighborhoods and
// degree-sorted prefixes).
ExpanderVerdict check_robust_outexpander(const Digraph& d, RobustParams params, int sample_count,
                                         std::uint64_t seed);

}  // namespace subdiv
