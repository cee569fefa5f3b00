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

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "subdiv/cert_io.hpp"
#include "subdiv/experiment.hpp"
#include "subdiv/oracle.hpp"
#include "subdiv/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerifier = 4;  // must never happen; a bug if it does

using namespace subdiv;

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& content) {
    if (path == "-" || path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InputError("cannot write file: " + path);
    f << content;
}

Pattern load_pattern(const std::string& spec) {
    if (spec == "arc") return Pattern::single_arc();
    if (spec == "2cycle") return Pattern::two_cycle();
    if (spec == "triangle") return Pattern::transitive_triangle();
    return Pattern(read_digraph_v1_file(spec));
}

ParameterLadder load_ladder(const std::string& params_file) {
    if (params_file.empty()) return ParameterLadder{};
    return ParameterLadder::from_json(slurp(params_file));
}

struct GlobalArgs {
    std::uint64_t seed = 1;
    std::string params_file;
    std::string out = "-";
};

int cmd_gen(const GlobalArgs& g, const std::string& type, int n, int d, double extra_p, const std::string& kind,
            double noise, const std::string& truth_out) {
    ParameterLadder ladder = load_ladder(g.params_file);
    Digraph graph(0);
    nlohmann::json truth;
    if (type == "random") {
        graph = random_min_semidegree(n, d, g.seed, extra_p);
        truth = {{"type", "random"}, {"n", n}, {"d", d}, {"seed", g.seed}};
    } else if (type == "planted") {
        ExtremalKind k = kind == "EC1" ? ExtremalKind::EC1 : kind == "EC2" ? ExtremalKind::EC2 : ExtremalKind::EC3;
        PlantedInstance inst = planted_extremal(k, n, ladder, noise, g.seed);
        graph = inst.graph;
        truth = {{"type", "planted"}, {"kind", kind}, {"n", n}, {"seed", g.seed}, {"block_of", inst.block_of}};
    } else if (type == "tightness") {
        graph = tightness_witness(n);
        truth = {{"type", "tightness"}, {"n", n}};
    } else if (type == "complete") {
        graph = complete_digraph(n);
        truth = {{"type", "complete"}, {"n", n}};
    } else {
        throw InputError("unknown generator type: " + type);
    }
    spill(g.out, digraph_v1_string(graph));
    if (!truth_out.empty()) spill(truth_out, truth.dump(2) + "\n");
    return kExitOk;
}

int cmd_classify(const GlobalArgs& g, const std::string& input, int restarts, bool expander) {
    ParameterLadder ladder = load_ladder(g.params_file);
    Digraph d = read_digraph_v1_file(input);
    auto witness = find_ec_witness(d, ladder.eps_prime, restarts, g.seed);
    nlohmann::json j;
    j["eps_prime"] = ladder.eps_prime;
    j["seed"] = g.seed;
    j["restarts"] = restarts;
    if (witness) {
        j["verdict"] = "extremal";
        j["witness"] = {{"u1", witness->u1.to_vector()},
                        {"u2", witness->u2.to_vector()},
                        {"arc_count", witness->arc_count},
                        {"overlap", witness->overlap}};
        ExtremalPartition part = classify_extremal_structure(d, *witness, ladder);
        j["partition"] = nlohmann::json::parse(part.to_json());
    } else {
        j["verdict"] = "presumed stable";
    }
    if (expander) {
        RobustParams rp;
        auto verdict = check_robust_outexpander(d, rp, 200, g.seed);
        j["outexpander"] = {{"pass", verdict.pass},
                            {"exhaustive", verdict.exhaustive},
                            {"sets_checked", verdict.sets_checked}};
        if (verdict.counterexample) j["outexpander"]["counterexample"] = verdict.counterexample->to_vector();
    }
    spill(g.out, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_solve(const GlobalArgs& g, const std::string& input, const std::string& pattern_spec, const std::string& mode,
              const std::vector<int>& lengths, const std::vector<int>& orders, const std::string& force,
              const std::string& trace_out) {
    Digraph d = read_digraph_v1_file(input);
    Pattern pattern = load_pattern(pattern_spec);
    SolveOptions opts;
    opts.seed = g.seed;
    opts.ladder = load_ladder(g.params_file);
    opts.tiling = mode == "tiling";
    if (!lengths.empty()) opts.lengths = lengths;
    if (!orders.empty()) opts.orders = orders;
    if (!force.empty())
        opts.force_extremal = force == "ec1" ? ExtremalKind::EC1 : force == "ec2" ? ExtremalKind::EC2 : ExtremalKind::EC3;

    SolveOutcome res = solve(d, pattern, opts);
    if (!trace_out.empty()) spill(trace_out, res.trace.render());
    if (res.spanning) spill(g.out, subdivision_cert_to_json(pattern, *res.spanning));
    if (res.tiling) spill(g.out, tiling_cert_to_json(pattern, *res.tiling));
    return kExitOk;
}

int cmd_verify(const std::string& cert_file, const std::string& input, bool spanning) {
    Digraph d = read_digraph_v1_file(input);
    std::string text = slurp(cert_file);
    Verdict v;
    if (json_is_tiling_cert(text)) {
        ParsedTilingCert parsed = tiling_cert_from_json(text);
        v = verify_tiling(d, parsed.pattern, parsed.cert);
    } else {
        ParsedSubdivisionCert parsed = subdivision_cert_from_json(text);
        v = verify_subdivision(d, parsed.pattern, parsed.cert, spanning);
    }
    std::cout << v.summary() << "\n";
    return v.pass() ? kExitOk : 1;
}

int cmd_oracle(const GlobalArgs& g, const std::string& input, const std::string& pattern_spec, const std::string& mode,
               const std::vector<int>& lengths, const std::vector<int>& orders, long long budget, bool force) {
    Digraph d = read_digraph_v1_file(input);
    Pattern pattern = load_pattern(pattern_spec);
    oracle::Budget b;
    b.node_limit = budget;
    b.override_cap = force;
    nlohmann::json j;
    if (mode == "tiling") {
        auto r = oracle::find_perfect_tiling_exact(d, pattern, orders, b);
        j["status"] = r.found() ? "found" : r.proved_absent() ? "none" : "exhausted";
        j["nodes"] = r.nodes;
        if (r.found()) spill(g.out, tiling_cert_to_json(pattern, *r.value));
    } else if (mode == "hampath") {
        auto r = oracle::hamiltonian_path_exact(d, std::nullopt, std::nullopt, b);
        j["status"] = r.found() ? "found" : r.proved_absent() ? "none" : "exhausted";
        j["nodes"] = r.nodes;
        if (r.found()) j["path"] = *r.value;
    } else {
        std::optional<std::vector<int>> len;
        if (!lengths.empty()) len = lengths;
        auto r = oracle::find_spanning_subdivision_exact(d, pattern, len, b);
        j["status"] = r.found() ? "found" : r.proved_absent() ? "none" : "exhausted";
        j["nodes"] = r.nodes;
        if (r.found()) spill(g.out, subdivision_cert_to_json(pattern, *r.value));
    }
    std::cerr << j.dump() << "\n";
    return kExitOk;
}

int cmd_experiment(const GlobalArgs& g, const std::string& config, const std::string& summary_out) {
    ExperimentReport report = run_experiment(slurp(config));
    spill(g.out, report.to_csv(true));
    if (!summary_out.empty()) spill(summary_out, report.summary_json());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spanning subdivisions and subdivision tilings in dense digraphs"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--params", g.params_file, "parameter ladder JSON file");
    app.add_option("--out", g.out, "output file (default stdout)");

    auto* gen = app.add_subcommand("gen", "generate an instance");
    std::string gen_type = "random", gen_kind = "EC1", truth_out;
    int gen_n = 8, gen_d = 4;
    double gen_extra = 0.0, gen_noise = 0.0;
    gen->add_option("--type", gen_type, "random|planted|tightness|complete");
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--d", gen_d, "semi-degree floor (random)");
    gen->add_option("--extra-p", gen_extra, "extra arc probability (random)");
    gen->add_option("--kind", gen_kind, "EC1|EC2|EC3 (planted)");
    gen->add_option("--noise", gen_noise, "noise level (planted)");
    gen->add_option("--truth-out", truth_out, "sidecar JSON with planted ground truth");

    auto* classify = app.add_subcommand("classify", "stability report and extremal partition");
    std::string cls_input;
    int cls_restarts = 12;
    bool cls_expander = false;
    classify->add_option("input", cls_input, "digraph v1 file")->required();
    classify->add_option("--restarts", cls_restarts, "witness search restarts");
    classify->add_flag("--expander", cls_expander, "also run the robust outexpander check");

    auto* solve_cmd = app.add_subcommand("solve", "find a spanning subdivision or perfect tiling");
    std::string sv_input, sv_pattern = "arc", sv_mode = "spanning", sv_force, sv_trace;
    std::vector<int> sv_lengths, sv_orders;
    solve_cmd->add_option("--input", sv_input, "digraph v1 file")->required();
    solve_cmd->add_option("--pattern", sv_pattern, "arc|2cycle|triangle|<file>");
    solve_cmd->add_option("--mode", sv_mode, "spanning|tiling");
    solve_cmd->add_option("--lengths", sv_lengths, "per-arc route lengths (spanning)");
    solve_cmd->add_option("--orders", sv_orders, "part orders (tiling)");
    solve_cmd->add_option("--force-extremal", sv_force, "ec1|ec2|ec3 route override");
    solve_cmd->add_option("--trace", sv_trace, "stage trace output file");

    auto* verify = app.add_subcommand("verify", "check a certificate against a host digraph");
    std::string vf_cert, vf_input;
    bool vf_spanning = true;
    verify->add_option("cert", vf_cert, "certificate JSON")->required();
    verify->add_option("input", vf_input, "digraph v1 file")->required();
    verify->add_flag("!--no-spanning", vf_spanning, "skip the spanning clause");

    auto* orc = app.add_subcommand("oracle", "exact search on small instances");
    std::string or_input, or_pattern = "arc", or_mode = "spanning";
    std::vector<int> or_lengths, or_orders;
    long long or_budget = 20'000'000;
    bool or_force = false;
    orc->add_option("--input", or_input, "digraph v1 file")->required();
    orc->add_option("--pattern", or_pattern, "arc|2cycle|triangle|<file>");
    orc->add_option("--mode", or_mode, "spanning|tiling|hampath");
    orc->add_option("--lengths", or_lengths, "exact route lengths");
    orc->add_option("--orders", or_orders, "part orders");
    orc->add_option("--budget", or_budget, "node budget");
    orc->add_flag("--force", or_force, "override the order cap");

    auto* exp = app.add_subcommand("experiment", "run a config matrix and emit report-v1 CSV");
    std::string ex_config, ex_summary;
    exp->add_option("config", ex_config, "experiment config JSON")->required();
    exp->add_option("--summary", ex_summary, "aggregate summary JSON file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_gen(g, gen_type, gen_n, gen_d, gen_extra, gen_kind, gen_noise, truth_out);
        if (*classify) return cmd_classify(g, cls_input, cls_restarts, cls_expander);
        if (*solve_cmd) return cmd_solve(g, sv_input, sv_pattern, sv_mode, sv_lengths, sv_orders, sv_force, sv_trace);
        if (*verify) return cmd_verify(vf_cert, vf_input, vf_spanning);
        if (*orc) return cmd_oracle(g, or_input, or_pattern, or_mode, or_lengths, or_orders, or_budget, or_force);
        if (*exp) return cmd_experiment(g, ex_config, ex_summary);
    } catch (const subdiv::SolveError& e) {
        if (e.stage() == "verify") {
            std::cerr << "verification failure (bug): " << e.what() << "\n";
            return kExitVerifier;
        }
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const subdiv::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
