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

#include "subdiv/pattern.hpp"

namespace subdiv {

// Certificate JSON:
//   subdivision: {"pattern": "<digraph v1 text>",
//                 "branch": [[h_vertex, d_vertex], ...],
//                 "paths":  [{"arc": [u, v], "route": [...]}, ...]}
//   tiling:      {"pattern": ..., "orders": [...], "parts": [{branch, paths}, ...]}
// Serialization is canonical (sorted keys, fixed layout) so round-trips are
// bit-exact.
std::string subdivision_cert_to_json(const Pattern& pattern, const SubdivisionCert& cert);
std::string tiling_cert_to_json(const Pattern& pattern, const TilingCert& cert);

struct ParsedSubdivisionCert {
    Pattern pattern;
    SubdivisionCert cert;
};
struct ParsedTilingCert {
    Pattern pattern;
    TilingCert cert;
};

bool json_is_tiling_cert(const std::string& text);
ParsedSubdivisionCert subdivision_cert_from_json(const std::string& text);
ParsedTilingCert tiling_cert_from_json(const std::string& text);

}  // namespace subdiv
