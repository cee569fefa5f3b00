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

#include "subdiv/solver.hpp"

#include <chrono>
#include <sstream>

namespace subdiv {

std::string StageTrace::render() const {
    std::ostringstream os;
    for (const auto& e : entries) os << e.stage << '\t' << e.outcome << '\t' << e.wall_us << "us\n";
    return os.str();
}

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    long long us() const {
        return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

SolveOutcome solve(const Digraph& d, const Pattern& pattern, const SolveOptions& opts) {
    opts.ladder.validate();
    SolveOutcome out;
    auto stage = [&out](const std::string& name, const std::string& what, long long us) {
        out.trace.entries.push_back({name, what, us});
    };

    std::optional<ECWitness> witness;
    std::optional<ExtremalPartition> partition;
    if (opts.force_extremal) {
        Stopwatch sw;
        witness = find_ec_witness(d, opts.ladder.eps_prime, opts.witness_restarts, opts.seed ^ 0xEC);
        if (!witness) throw SolveError("classify", "forced extremal route but no witness was found");
        partition = classify_extremal_structure(d, *witness, opts.ladder);
        if (partition->kind != *opts.force_extremal)
            throw SolveError("classify", std::string("forced kind mismatch: classified as ") +
                                             extremal_kind_name(partition->kind));
        stage("classify", extremal_kind_name(partition->kind), sw.us());
        out.route = SolveRoute::Forced;
        out.kind = partition->kind;
    } else {
        Stopwatch sw;
        witness = find_ec_witness(d, opts.ladder.eps_prime, opts.witness_restarts, opts.seed ^ 0xEC);
        if (witness) {
            partition = classify_extremal_structure(d, *witness, opts.ladder);
            out.kind = partition->kind;
            switch (partition->kind) {
                case ExtremalKind::EC1: out.route = SolveRoute::EC1; break;
                case ExtremalKind::EC2: out.route = SolveRoute::EC2; break;
                case ExtremalKind::EC3: out.route = SolveRoute::EC3; break;
            }
            stage("classify", extremal_kind_name(partition->kind), sw.us());
        } else {
            out.route = SolveRoute::Stable;
            stage("classify", "presumed-stable", sw.us());
        }
    }

    Stopwatch sw;
    if (!opts.tiling) {
        SubdivisionCert cert = partition
                                   ? solve_extremal_spanning(d, pattern, opts.lengths, *partition, opts.ladder, opts.seed)
                                   : solve_spanning_nonextremal(d, pattern, opts.lengths, opts.ladder, opts.seed);
        Verdict v = verify_subdivision(d, pattern, cert, /*require_spanning=*/true, opts.lengths);
        if (!v.pass()) throw SolveError("verify", v.summary());
        stage("solve-spanning", "cert", sw.us());
        out.spanning = std::move(cert);
    } else {
        if (!opts.orders) throw InputError("tiling mode requires part orders");
        TilingCert cert = partition
                              ? solve_extremal_tiling(d, pattern, *opts.orders, *partition, opts.ladder, opts.seed)
                              : solve_tiling_nonextremal(d, pattern, *opts.orders, opts.ladder, opts.seed);
        Verdict v = verify_tiling(d, pattern, cert);
        if (!v.pass()) throw SolveError("verify", v.summary());
        stage("solve-tiling", "cert", sw.us());
        out.tiling = std::move(cert);
    }
    return out;
}

}  // namespace subdiv
