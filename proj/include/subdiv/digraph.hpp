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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace subdiv {

// Raised on malformed user input (files, certificates, parameter values).
// The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

class Digraph;

// Subset of the vertices [0, n) of a fixed host, stored as a bitset so the
// neighbourhood intersections that dominate every construction are
// word-parallel.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

    static VertexSet full(int n) {
        VertexSet s(n);
        for (int v = 0; v < n; ++v) s.insert(v);
        return s;
    }
    static VertexSet of(int n, std::initializer_list<int> vs) {
        VertexSet s(n);
        for (int v : vs) s.insert(v);
        return s;
    }

    int host_size() const { return n_; }
    void check(int v) const {
        if (v < 0 || v >= n_) throw InputError("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n_) + ")");
    }

    void insert(int v) { check(v); words_[v >> 6] |= 1ULL << (v & 63); }
    void erase(int v) { check(v); words_[v >> 6] &= ~(1ULL << (v & 63)); }
    bool contains(int v) const {
        return v >= 0 && v < n_ && (words_[v >> 6] >> (v & 63) & 1ULL);
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool empty() const {
        for (auto w : words_) if (w) return false;
        return true;
    }

    VertexSet& operator&=(const VertexSet& o) { bin(o, [](std::uint64_t a, std::uint64_t b) { return a & b; }); return *this; }
    VertexSet& operator|=(const VertexSet& o) { bin(o, [](std::uint64_t a, std::uint64_t b) { return a | b; }); return *this; }
    VertexSet& operator-=(const VertexSet& o) { bin(o, [](std::uint64_t a, std::uint64_t b) { return a & ~b; }); return *this; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { a &= b; return a; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { a |= b; return a; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { a -= b; return a; }
    bool operator==(const VertexSet& o) const { return n_ == o.n_ && words_ == o.words_; }

    bool is_subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    int intersection_count(const VertexSet& o) const {
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += __builtin_popcountll(words_[i] & o.words_[i]);
        return c;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                int b = __builtin_ctzll(w);
                out.push_back(static_cast<int>(i * 64 + b));
                w &= w - 1;
            }
        }
        return out;
    }

    // First member >= from, or -1.
    int next(int from = 0) const {
        if (from >= n_) return -1;
        std::size_t i = static_cast<std::size_t>(from) >> 6;
        std::uint64_t w = words_[i] & (~0ULL << (from & 63));
        while (true) {
            if (w) return static_cast<int>(i * 64 + __builtin_ctzll(w));
            if (++i >= words_.size()) return -1;
            w = words_[i];
        }
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    template <typename F>
    void bin(const VertexSet& o, F f) {
        if (o.n_ != n_) throw InputError("vertex set host mismatch");
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = f(words_[i], o.words_[i]);
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

// Loop-free digraph on vertices 0..n-1. Adjacency is kept as two bit-matrix
// views (out-rows and in-rows); values are treated as immutable once built,
// so they are safe to share across concurrent readers.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(int n) : n_(n), out_(n, VertexSet(n)), in_(n, VertexSet(n)), arcs_(0) {
        if (n < 0) throw InputError("negative vertex count");
    }

    int order() const { return n_; }
    long long arc_count() const { return arcs_; }

    void add_arc(int u, int v) {
        check(u);
        check(v);
        if (u == v) throw InputError("self-loop " + std::to_string(u) + " rejected");
        if (out_[u].contains(v)) throw InputError("duplicate arc " + std::to_string(u) + "->" + std::to_string(v));
        out_[u].insert(v);
        in_[v].insert(u);
        ++arcs_;
    }
    void add_arc_if_absent(int u, int v) {
        if (u != v && !out_[u].contains(v)) add_arc(u, v);
    }

    bool has_arc(int u, int v) const { return u >= 0 && u < n_ && out_[u].contains(v); }

    const VertexSet& out_row(int v) const { check(v); return out_[v]; }
    const VertexSet& in_row(int v) const { check(v); return in_[v]; }

    VertexSet out_neighbors(int v, const VertexSet& within) const { return out_row(v) & within; }
    VertexSet in_neighbors(int v, const VertexSet& within) const { return in_row(v) & within; }

    int out_degree(int v) const { return out_row(v).count(); }
    int in_degree(int v) const { return in_row(v).count(); }
    int out_degree_in(int v, const VertexSet& X) const { return out_row(v).intersection_count(X); }
    int in_degree_in(int v, const VertexSet& X) const { return in_row(v).intersection_count(X); }
    int semi_degree_in(int v, const VertexSet& X) const {
        return std::min(out_degree_in(v, X), in_degree_in(v, X));
    }

    int min_semi_degree() const {
        if (n_ == 0) throw InputError("minimum semi-degree of an empty digraph");
        int best = n_;
        for (int v = 0; v < n_; ++v) {
            int d = std::min(out_degree(v), in_degree(v));
            if (d < best) best = d;
        }
        return best;
    }

    // Number of arcs from X to Y; X and Y may overlap, each ordered pair is
    // counted once.
    long long arc_count_between(const VertexSet& X, const VertexSet& Y) const {
        long long c = 0;
        for (int x = X.next(0); x != -1; x = X.next(x + 1)) c += out_row(x).intersection_count(Y);
        return c;
    }

    // |{u in U : both v->u and u->v are arcs}|.
    int bidirectional_degree(int v, const VertexSet& U) const {
        check(v);
        VertexSet both = out_row(v) & in_row(v);
        return both.intersection_count(U);
    }

    std::vector<std::pair<int, int>> arcs() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(arcs_));
        for (int u = 0; u < n_; ++u)
            for (int v = out_[u].next(0); v != -1; v = out_[u].next(v + 1)) out.emplace_back(u, v);
        return out;
    }

    bool operator==(const Digraph& o) const { return n_ == o.n_ && out_ == o.out_; }

private:
    void check(int v) const {
        if (v < 0 || v >= n_) throw InputError("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n_) + ")");
    }

    int n_ = 0;
    std::vector<VertexSet> out_;
    std::vector<VertexSet> in_;
    long long arcs_ = 0;
};

Digraph complete_digraph(int n);

// "digraph v1" text format: `n m` on the first line, then one `u v` arc per
// line, 0-based; `#` starts a comment.
Digraph read_digraph_v1(std::istream& is);
Digraph read_digraph_v1_file(const std::string& path);
Digraph read_digraph_v1_string(const std::string& text);
void write_digraph_v1(std::ostream& os, const Digraph& d);
std::string digraph_v1_string(const Digraph& d);

}  // namespace subdiv
