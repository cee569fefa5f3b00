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

#include "subdiv/params.hpp"

#include <json.hpp>

#include "subdiv/digraph.hpp"

namespace subdiv {

using nlohmann::json;

void ParameterLadder::validate() const {
    auto in01 = [](double x) { return x > 0.0 && x < 1.0; };
    if (!in01(eps) || !in01(eps1) || !in01(eps_prime) || !in01(gamma) || !in01(gamma1) || !in01(alpha) || !in01(beta))
        throw InputError("ladder values must lie in (0,1)");
    if (!(alpha < gamma) || !(beta < gamma)) throw InputError("ladder requires alpha, beta < gamma");
    if (!(eps_prime < eps1 && eps1 < eps)) throw InputError("ladder requires eps_prime < eps1 < eps");
    if (scale_c < 1) throw InputError("ladder scale constant must be positive");
    if (retries < 0 || coverage_samples < 1) throw InputError("invalid retry/sample configuration");
}

bool ParameterLadder::satisfies_strict_ordering() const {
    return gamma < eps_prime && gamma1 < eps_prime && eps_prime < eps1 && eps1 < eps && eps < 1.0;
}

std::string ParameterLadder::to_json() const {
    json j;
    j["eps"] = eps;
    j["eps1"] = eps1;
    j["eps_prime"] = eps_prime;
    j["gamma"] = gamma;
    j["gamma1"] = gamma1;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["scale_c"] = scale_c;
    j["window_slack"] = window_slack;
    j["retries"] = retries;
    j["coverage_samples"] = coverage_samples;
    return j.dump();
}

ParameterLadder ParameterLadder::from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("ladder JSON is malformed");
    ParameterLadder p;
    auto get = [&j](const char* key, auto& slot) {
        if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("eps", p.eps);
    get("eps1", p.eps1);
    get("eps_prime", p.eps_prime);
    get("gamma", p.gamma);
    get("gamma1", p.gamma1);
    get("alpha", p.alpha);
    get("beta", p.beta);
    get("scale_c", p.scale_c);
    get("window_slack", p.window_slack);
    get("retries", p.retries);
    get("coverage_samples", p.coverage_samples);
    p.validate();
    return p;
}

}  // namespace subdiv
