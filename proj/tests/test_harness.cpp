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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subdiv/cert_io.hpp"
#include "subdiv/experiment.hpp"

using namespace subdiv;

TEST_CASE("dense random hosts route through the stable engine") {
    Digraph d = random_min_semidegree(60, 33, 3);
    SolveOptions opts;
    opts.seed = 3;
    SolveOutcome res = solve(d, Pattern::single_arc(), opts);
    CHECK(res.route == SolveRoute::Stable);
    REQUIRE(res.spanning.has_value());
    CHECK(verify_subdivision(d, Pattern::single_arc(), *res.spanning, true).pass());
}

TEST_CASE("ladder validation rejects broken hierarchies") {
    ParameterLadder bad;
    bad.eps_prime = 0.5;
    bad.eps1 = 0.3;
    CHECK_THROWS_AS(bad.validate(), InputError);
    ParameterLadder good;
    CHECK_NOTHROW(good.validate());
    CHECK_FALSE(good.satisfies_strict_ordering());  // desk-scale defaults waive the gamma tier
    std::string j = good.to_json();
    ParameterLadder back = ParameterLadder::from_json(j);
    CHECK(back.eps == good.eps);
    CHECK(back.gamma1 == good.gamma1);
}

TEST_CASE("experiments run a matrix with oracle cross-checks") {
    std::string cfg = R"({
      "seed": 5,
      "rows": [
        {"gen": {"type": "random", "n": 8, "d": 4}, "pattern": "arc", "mode": "spanning", "reps": 6},
        {"gen": {"type": "complete", "n": 8}, "pattern": "2cycle", "mode": "tiling", "orders": [4, 4], "reps": 2}
      ]
    })";
    ExperimentReport report = run_experiment(cfg);
    REQUIRE(report.rows.size() == 8);
    int agree = 0;
    for (const auto& r : report.rows) {
        CHECK(r.verifier != "fail");
        if (r.oracle == "agree") ++agree;
        CHECK(r.oracle != "disagree");
    }
    CHECK(agree > 0);
    CHECK(report.to_csv().rfind("report-v1:", 0) == 0);
}

TEST_CASE("an empty config yields an empty report") {
    ExperimentReport report = run_experiment(R"({"seed": 1})");
    CHECK(report.rows.empty());
    CHECK(report.to_csv(false) ==
          "report-v1:instance_id,n,mode,route,outcome,verifier,oracle,seed\n");
}

TEST_CASE("reports and certificates are reproducible byte for byte") {
    std::string cfg = R"({
      "seed": 11,
      "rows": [
        {"gen": {"type": "random", "n": 9, "d": 5}, "pattern": "arc", "mode": "spanning", "reps": 4},
        {"gen": {"type": "planted", "kind": "EC1", "n": 200}, "pattern": "arc", "mode": "spanning", "reps": 1}
      ]
    })";
    std::string csv1 = run_experiment(cfg).to_csv(false);
    std::string csv2 = run_experiment(cfg).to_csv(false);
    CHECK(csv1 == csv2);

    Digraph d = random_min_semidegree(80, 44, 9);
    SolveOptions opts;
    opts.seed = 9;
    auto a = solve(d, Pattern::single_arc(), opts);
    auto b = solve(d, Pattern::single_arc(), opts);
    REQUIRE(a.spanning.has_value());
    REQUIRE(b.spanning.has_value());
    CHECK(subdivision_cert_to_json(Pattern::single_arc(), *a.spanning) ==
          subdivision_cert_to_json(Pattern::single_arc(), *b.spanning));
}

TEST_CASE("failed rows stay in the report with their stage tag") {
    std::string cfg = R"({
      "seed": 2,
      "rows": [{"gen": {"type": "tightness", "n": 8}, "pattern": "arc", "mode": "spanning", "reps": 1}]
    })";
    ExperimentReport report = run_experiment(cfg);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].outcome != "cert");
    CHECK(report.rows[0].verifier != "fail");
    CHECK(report.summary_json().find("\"certs\": 0") != std::string::npos);
}
