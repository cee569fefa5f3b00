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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace subdiv {

// Deterministic RNG used everywhere in the project. std::mt19937_64 has a
// fully specified output sequence; the bounded draws below avoid the
// implementation-defined std:: distributions so that identical seeds give
// identical runs on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        // Rejection sampling keeps the draw exactly uniform.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = eng_();
        while (x >= limit) x = eng_();
        return x % bound;
    }

    int range(int lo, int hi_inclusive) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi_inclusive - lo + 1)));
    }

    // Uniform double in [0, 1).
    double unit() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return unit() < p; }

    // Poisson draw, Knuth's method; adequate for the small means used here.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        int k = 0;
        double prod = unit();
        while (prod > limit) {
            ++k;
            prod *= unit();
        }
        return k;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derived stream for a subtask; keeps sibling tasks decorrelated while
    // remaining a pure function of (seed, tag).
    Rng fork(std::uint64_t tag) {
        std::uint64_t s = next_u64();
        s ^= tag * 0x9e3779b97f4a7c15ULL;
        return Rng(s);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace subdiv
