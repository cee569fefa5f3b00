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

#include "subdiv/cert_io.hpp"

#include <json.hpp>

namespace subdiv {

using nlohmann::json;

namespace {

json branch_to_json(const SubdivisionCert& cert) {
    json branch = json::array();
    for (std::size_t i = 0; i < cert.branch.size(); ++i)
        branch.push_back(json::array({static_cast<int>(i), cert.branch[i]}));
    return branch;
}

json paths_to_json(const Pattern& pattern, const SubdivisionCert& cert) {
    json paths = json::array();
    for (int e = 0; e < pattern.arc_count(); ++e) {
        json p;
        p["arc"] = json::array({pattern.arcs()[e].first, pattern.arcs()[e].second});
        p["route"] = cert.routes[e];
        paths.push_back(p);
    }
    return paths;
}

SubdivisionCert part_from_json(const Pattern& pattern, const json& j) {
    SubdivisionCert cert;
    cert.branch.assign(pattern.vertex_count(), -1);
    for (const auto& pair : j.at("branch")) {
        int hv = pair.at(0).get<int>();
        if (hv < 0 || hv >= pattern.vertex_count()) throw InputError("certificate branch refers to unknown pattern vertex");
        cert.branch[hv] = pair.at(1).get<int>();
    }
    for (int b : cert.branch)
        if (b < 0) throw InputError("certificate branch map incomplete");

    cert.routes.assign(pattern.arc_count(), {});
    std::vector<bool> seen(pattern.arc_count(), false);
    for (const auto& p : j.at("paths")) {
        int u = p.at("arc").at(0).get<int>();
        int v = p.at("arc").at(1).get<int>();
        int idx = -1;
        for (int e = 0; e < pattern.arc_count(); ++e)
            if (pattern.arcs()[e] == std::make_pair(u, v)) idx = e;
        if (idx < 0) throw InputError("certificate path for non-arc of the pattern");
        if (seen[idx]) throw InputError("duplicate certificate path for one pattern arc");
        seen[idx] = true;
        cert.routes[idx] = p.at("route").get<std::vector<int>>();
        if (cert.routes[idx].empty()) throw InputError("empty route in certificate");
    }
    for (int e = 0; e < pattern.arc_count(); ++e)
        if (!seen[e]) throw InputError("certificate missing a path for some pattern arc");
    return cert;
}

json wrap(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw InputError("certificate is not valid JSON");
    return j;
}

}  // namespace

std::string subdivision_cert_to_json(const Pattern& pattern, const SubdivisionCert& cert) {
    json j;
    j["pattern"] = digraph_v1_string(pattern.graph());
    j["branch"] = branch_to_json(cert);
    j["paths"] = paths_to_json(pattern, cert);
    return j.dump(2) + "\n";
}

std::string tiling_cert_to_json(const Pattern& pattern, const TilingCert& cert) {
    json j;
    j["pattern"] = digraph_v1_string(pattern.graph());
    j["orders"] = cert.orders;
    json parts = json::array();
    for (const auto& part : cert.parts) {
        json p;
        p["branch"] = branch_to_json(part);
        p["paths"] = paths_to_json(pattern, part);
        parts.push_back(p);
    }
    j["parts"] = parts;
    return j.dump(2) + "\n";
}

bool json_is_tiling_cert(const std::string& text) { return wrap(text).contains("parts"); }

ParsedSubdivisionCert subdivision_cert_from_json(const std::string& text) {
    json j = wrap(text);
    try {
        Pattern pattern(read_digraph_v1_string(j.at("pattern").get<std::string>()));
        SubdivisionCert cert = part_from_json(pattern, j);
        return {pattern, cert};
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed subdivision certificate: ") + e.what());
    }
}

ParsedTilingCert tiling_cert_from_json(const std::string& text) {
    json j = wrap(text);
    try {
        Pattern pattern(read_digraph_v1_string(j.at("pattern").get<std::string>()));
        TilingCert cert;
        cert.orders = j.at("orders").get<std::vector<int>>();
        for (const auto& p : j.at("parts")) cert.parts.push_back(part_from_json(pattern, p));
        return {pattern, cert};
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed tiling certificate: ") + e.what());
    }
}

}  // namespace subdiv
