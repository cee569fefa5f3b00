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

#include "subdiv/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "subdiv/oracle.hpp"

namespace subdiv {

using nlohmann::json;

namespace {

Pattern pattern_from_spec(const std::string& spec) {
    if (spec == "arc") return Pattern::single_arc();
    if (spec == "2cycle") return Pattern::two_cycle();
    if (spec == "triangle") return Pattern::transitive_triangle();
    return Pattern(read_digraph_v1_string(spec));
}

struct RowTask {
    json gen;
    std::string pattern_spec;
    std::string mode;
    std::optional<std::vector<int>> orders;
    std::optional<std::vector<int>> lengths;
    std::uint64_t seed;
    std::string id;
    ParameterLadder ladder;
};

Digraph generate(const json& gen, std::uint64_t seed, const ParameterLadder& ladder) {
    std::string type = gen.at("type").get<std::string>();
    if (type == "random") {
        return random_min_semidegree(gen.at("n").get<int>(), gen.at("d").get<int>(), seed,
                                     gen.value("extra_p", 0.0));
    }
    if (type == "planted") {
        std::string k = gen.at("kind").get<std::string>();
        ExtremalKind kind = k == "EC1" ? ExtremalKind::EC1 : k == "EC2" ? ExtremalKind::EC2 : ExtremalKind::EC3;
        return planted_extremal(kind, gen.at("n").get<int>(), ladder, gen.value("noise", 0.0), seed).graph;
    }
    if (type == "tightness") return tightness_witness(gen.at("n").get<int>());
    if (type == "complete") return complete_digraph(gen.at("n").get<int>());
    throw InputError("unknown generator type: " + type);
}

ExperimentRow run_row(const RowTask& task) {
    ExperimentRow row;
    row.instance_id = task.id;
    row.mode = task.mode;
    row.seed = task.seed;
    auto start = std::chrono::steady_clock::now();
    try {
        Digraph d = generate(task.gen, task.seed, task.ladder);
        row.n = d.order();
        Pattern pattern = pattern_from_spec(task.pattern_spec);

        SolveOptions opts;
        opts.seed = task.seed;
        opts.ladder = task.ladder;
        opts.tiling = task.mode == "tiling";
        opts.orders = task.orders;
        opts.lengths = task.lengths;

        SolveOutcome res = solve(d, pattern, opts);
        switch (res.route) {
            case SolveRoute::Stable: row.route = "stable"; break;
            case SolveRoute::EC1: row.route = "EC1"; break;
            case SolveRoute::EC2: row.route = "EC2"; break;
            case SolveRoute::EC3: row.route = "EC3"; break;
            case SolveRoute::Forced: row.route = "forced"; break;
        }
        row.outcome = "cert";
        row.verifier = "pass";  // solve() verifies before returning

        if (row.n <= 10) {
            // oracle cross-check: the instance must be feasible whenever the
            // solver produced a certificate
            if (task.mode == "tiling") {
                auto r = oracle::find_perfect_tiling_exact(d, pattern, *task.orders);
                row.oracle = r.found() ? "agree" : "disagree";
            } else {
                auto r = oracle::find_spanning_subdivision_exact(d, pattern, task.lengths);
                row.oracle = r.found() ? "agree" : "disagree";
            }
        } else {
            row.oracle = "skipped";
        }
    } catch (const SolveError& e) {
        row.route = row.route.empty() ? "-" : row.route;
        row.outcome = e.stage();
        row.verifier = e.stage() == "verify" ? "fail" : "-";
        row.oracle = "skipped";
    } catch (const InputError& e) {
        row.outcome = std::string("input:") + e.what();
        row.verifier = "-";
        row.oracle = "skipped";
    }
    row.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return row;
}

int worker_count() {
    if (const char* env = std::getenv("SUBDIV_THREADS")) {
        int k = std::atoi(env);
        if (k >= 1) return k;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 4u));
}

}  // namespace

std::string ExperimentReport::to_csv(bool include_timing) const {
    std::ostringstream os;
    os << "report-v1:instance_id,n,mode,route,outcome,verifier,oracle,seed";
    if (include_timing) os << ",wall_ms";
    os << "\n";
    for (const auto& r : rows) {
        os << r.instance_id << ',' << r.n << ',' << r.mode << ',' << r.route << ',' << r.outcome << ','
           << r.verifier << ',' << r.oracle << ',' << r.seed;
        if (include_timing) os << ',' << r.wall_ms;
        os << "\n";
    }
    return os.str();
}

std::string ExperimentReport::summary_json() const {
    json j;
    long long total = static_cast<long long>(rows.size());
    long long certs = 0, verifier_fail = 0, oracle_disagree = 0;
    for (const auto& r : rows) {
        if (r.outcome == "cert") ++certs;
        if (r.verifier == "fail") ++verifier_fail;
        if (r.oracle == "disagree") ++oracle_disagree;
    }
    j["rows"] = total;
    j["certs"] = certs;
    j["success_rate"] = total == 0 ? 0.0 : static_cast<double>(certs) / static_cast<double>(total);
    j["verifier_failures"] = verifier_fail;
    j["oracle_disagreements"] = oracle_disagree;
    return j.dump(2) + "\n";
}

ExperimentReport run_experiment(const std::string& config_json) {
    json cfg = json::parse(config_json, nullptr, false);
    if (cfg.is_discarded()) throw InputError("experiment config is not valid JSON");
    std::uint64_t base_seed = cfg.value("seed", 1ULL);
    ParameterLadder default_ladder;
    if (cfg.contains("params")) default_ladder = ParameterLadder::from_json(cfg.at("params").dump());

    std::vector<RowTask> tasks;
    if (cfg.contains("rows")) {
        std::size_t row_idx = 0;
        for (const auto& row : cfg.at("rows")) {
            int reps = row.value("reps", 1);
            ParameterLadder ladder = default_ladder;
            if (row.contains("params")) ladder = ParameterLadder::from_json(row.at("params").dump());
            for (int rep = 0; rep < reps; ++rep) {
                RowTask t;
                t.gen = row.at("gen");
                t.pattern_spec = row.value("pattern", std::string("arc"));
                t.mode = row.value("mode", std::string("spanning"));
                if (row.contains("orders")) t.orders = row.at("orders").get<std::vector<int>>();
                if (row.contains("lengths")) t.lengths = row.at("lengths").get<std::vector<int>>();
                t.seed = base_seed + 1000003ULL * row_idx + static_cast<std::uint64_t>(rep);
                t.id = "r" + std::to_string(row_idx) + "." + std::to_string(rep);
                t.ladder = ladder;
                tasks.push_back(std::move(t));
            }
            ++row_idx;
        }
    }

    ExperimentReport report;
    report.rows.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    int workers = std::min<int>(worker_count(), std::max<std::size_t>(1, tasks.size()));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) break;
                report.rows[i] = run_row(tasks[i]);
            }
        });
    }
    for (auto& th : pool) th.join();
    return report;
}

}  // namespace subdiv
