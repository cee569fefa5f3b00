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

#include "subdiv/digraph.hpp"

#include <fstream>
#include <sstream>

namespace subdiv {

Digraph complete_digraph(int n) {
    Digraph d(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) d.add_arc(u, v);
    return d;
}

namespace {

// Strips comments and blank lines, yields whitespace-separated tokens.
std::vector<long long> tokenize(std::istream& is) {
    std::vector<long long> toks;
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long x;
        while (ls >> x) toks.push_back(x);
        if (ls.fail() && !ls.eof()) throw InputError("digraph v1: non-numeric token in line: " + line);
    }
    return toks;
}

}  // namespace

Digraph read_digraph_v1(std::istream& is) {
    auto toks = tokenize(is);
    if (toks.size() < 2) throw InputError("digraph v1: missing header `n m`");
    long long n = toks[0], m = toks[1];
    if (n < 0 || m < 0) throw InputError("digraph v1: negative header value");
    if (static_cast<long long>(toks.size()) != 2 + 2 * m)
        throw InputError("digraph v1: expected " + std::to_string(2 * m) + " arc tokens, found " + std::to_string(toks.size() - 2));
    Digraph d(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        long long u = toks[2 + 2 * i], v = toks[3 + 2 * i];
        if (u < 0 || u >= n || v < 0 || v >= n) throw InputError("digraph v1: arc endpoint out of range");
        d.add_arc(static_cast<int>(u), static_cast<int>(v));
    }
    return d;
}

Digraph read_digraph_v1_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open digraph file: " + path);
    return read_digraph_v1(f);
}

Digraph read_digraph_v1_string(const std::string& text) {
    std::istringstream s(text);
    return read_digraph_v1(s);
}

void write_digraph_v1(std::ostream& os, const Digraph& d) {
    os << d.order() << ' ' << d.arc_count() << '\n';
    for (auto [u, v] : d.arcs()) os << u << ' ' << v << '\n';
}

std::string digraph_v1_string(const Digraph& d) {
    std::ostringstream os;
    write_digraph_v1(os, d);
    return os.str();
}

}  // namespace subdiv
