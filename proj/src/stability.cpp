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

#include "subdiv/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "subdiv/rng.hpp"

namespace subdiv {

void ECWitness::revalidate(const Digraph& d) const {
    const int n = d.order();
    const double floor_size = (0.5 - eps_prime) * n;
    if (u1.count() < floor_size || u2.count() < floor_size)
        throw InputError("EC witness set below the size floor");
    long long e = d.arc_count_between(u1, u2);
    if (e != arc_count) throw InputError("EC witness arc count does not re-validate");
    double budget = eps_prime * n;
    if (static_cast<double>(e) > budget * budget) throw InputError("EC witness exceeds the arc budget");
    if (u1.intersection_count(u2) != overlap) throw InputError("EC witness overlap does not re-validate");
}

namespace {

// Incrementally maintained objective e+(U1, U2) with per-vertex marginals.
struct WitnessState {
    const Digraph& d;
    VertexSet u1, u2;
    std::vector<int> out_to_u2;   // per vertex: |N+(v) ∩ U2|
    std::vector<int> in_from_u1;  // per vertex: |N-(v) ∩ U1|
    long long cost = 0;

    WitnessState(const Digraph& dg, VertexSet a, VertexSet b)
        : d(dg), u1(std::move(a)), u2(std::move(b)), out_to_u2(dg.order()), in_from_u1(dg.order()) {
        for (int v = 0; v < d.order(); ++v) {
            out_to_u2[v] = d.out_row(v).intersection_count(u2);
            in_from_u1[v] = d.in_row(v).intersection_count(u1);
        }
        cost = 0;
        for (int v = u1.next(0); v != -1; v = u1.next(v + 1)) cost += out_to_u2[v];
    }

    void add_u1(int v) {
        u1.insert(v);
        cost += out_to_u2[v];
        const auto& row = d.out_row(v);
        for (int w = row.next(0); w != -1; w = row.next(w + 1)) ++in_from_u1[w];
    }
    void remove_u1(int v) {
        u1.erase(v);
        cost -= out_to_u2[v];
        const auto& row = d.out_row(v);
        for (int w = row.next(0); w != -1; w = row.next(w + 1)) --in_from_u1[w];
    }
    void add_u2(int v) {
        u2.insert(v);
        cost += in_from_u1[v];
        const auto& row = d.in_row(v);
        for (int w = row.next(0); w != -1; w = row.next(w + 1)) ++out_to_u2[w];
    }
    void remove_u2(int v) {
        u2.erase(v);
        cost -= in_from_u1[v];
        const auto& row = d.in_row(v);
        for (int w = row.next(0); w != -1; w = row.next(w + 1)) --out_to_u2[w];
    }

    long long marginal_add_u1(int v) const { return out_to_u2[v]; }
    long long marginal_add_u2(int v) const { return in_from_u1[v]; }
};

// One hill-climbing pass of 1-swap moves on each side; returns true if any
// move improved the cost.
bool improve_once(WitnessState& st, int floor_sz) {
    (void)floor_sz;
    bool improved = false;
    const int n = st.d.order();
    // replace the costliest member of U1 by the cheapest outsider
    for (int side = 0; side < 2; ++side) {
        int worst = -1;
        long long worst_cost = -1;
        int best_out = -1;
        long long best_cost = -1;
        for (int v = 0; v < n; ++v) {
            bool member = side == 0 ? st.u1.contains(v) : st.u2.contains(v);
            long long m = side == 0 ? st.marginal_add_u1(v) : st.marginal_add_u2(v);
            if (member) {
                if (m > worst_cost) {
                    worst_cost = m;
                    worst = v;
                }
            } else {
                if (best_cost < 0 || m < best_cost) {
                    best_cost = m;
                    best_out = v;
                }
            }
        }
        if (worst >= 0 && best_out >= 0 && best_cost < worst_cost) {
            if (side == 0) {
                st.remove_u1(worst);
                st.add_u1(best_out);
            } else {
                st.remove_u2(worst);
                st.add_u2(best_out);
            }
            improved = true;
        }
    }
    return improved;
}

VertexSet pick(const std::vector<int>& order, int k, int n) {
    VertexSet s(n);
    for (int i = 0; i < k; ++i) s.insert(order[i]);
    return s;
}

}  // namespace

std::optional<ECWitness> find_ec_witness(const Digraph& d, double eps_prime, int restarts, std::uint64_t seed) {
    if (!(eps_prime > 0.0 && eps_prime < 0.5)) throw InputError("eps_prime must lie in (0, 1/2)");
    const int n = d.order();
    if (n == 0) throw InputError("EC witness of an empty digraph");
    const int floor_sz = static_cast<int>(std::ceil((0.5 - eps_prime) * n));
    if (floor_sz > n) return std::nullopt;
    const double budget = (eps_prime * n) * (eps_prime * n);

    Rng rng(seed);
    std::optional<ECWitness> best;

    std::vector<int> by_out(n), by_in(n), by_total(n);
    std::iota(by_out.begin(), by_out.end(), 0);
    by_in = by_out;
    by_total = by_out;
    std::sort(by_out.begin(), by_out.end(), [&](int a, int b) {
        if (d.out_degree(a) != d.out_degree(b)) return d.out_degree(a) < d.out_degree(b);
        return a < b;
    });
    std::sort(by_in.begin(), by_in.end(), [&](int a, int b) {
        if (d.in_degree(a) != d.in_degree(b)) return d.in_degree(a) < d.in_degree(b);
        return a < b;
    });
    std::sort(by_total.begin(), by_total.end(), [&](int a, int b) {
        int da = d.out_degree(a) + d.in_degree(a), db = d.out_degree(b) + d.in_degree(b);
        if (da != db) return da < db;
        return a < b;
    });

    for (int r = 0; r < std::max(1, restarts); ++r) {
        Rng local = rng.fork(static_cast<std::uint64_t>(r) + 1);
        VertexSet u1(n), u2(n);
        switch (r % 3) {
            case 0:  // disjoint degree seeds
                u1 = pick(by_out, floor_sz, n);
                u2 = pick(by_in, floor_sz, n);
                break;
            case 1:  // identical seed, for witnesses with U1 = U2
                u1 = pick(by_total, floor_sz, n);
                u2 = u1;
                break;
            default: {  // random
                std::vector<int> perm(n);
                std::iota(perm.begin(), perm.end(), 0);
                local.shuffle(perm);
                u1 = pick(perm, floor_sz, n);
                local.shuffle(perm);
                u2 = pick(perm, floor_sz, n);
                break;
            }
        }

        WitnessState st(d, u1, u2);
        for (int pass = 0; pass < 4 * n; ++pass)
            if (!improve_once(st, floor_sz)) break;

        if (static_cast<double>(st.cost) > budget) continue;

        // Greedy growth: a maximal witness makes the downstream structural
        // split recover whole blocks instead of floor-sized fragments. Only
        // cheap vertices are added, so tightly attached vertices stay out.
        const long long cap = std::max<long long>(2, static_cast<long long>(eps_prime * n / 10.0));
        bool grew = true;
        while (grew) {
            grew = false;
            for (int v = 0; v < n; ++v) {
                if (!st.u1.contains(v)) {
                    long long m = st.marginal_add_u1(v);
                    if (m <= cap && static_cast<double>(st.cost + m) <= budget) {
                        st.add_u1(v);
                        grew = true;
                    }
                }
            }
            for (int v = 0; v < n; ++v) {
                if (!st.u2.contains(v)) {
                    long long m = st.marginal_add_u2(v);
                    if (m <= cap && static_cast<double>(st.cost + m) <= budget) {
                        st.add_u2(v);
                        grew = true;
                    }
                }
            }
        }

        ECWitness w;
        w.u1 = st.u1;
        w.u2 = st.u2;
        w.eps_prime = eps_prime;
        w.arc_count = st.cost;
        w.overlap = st.u1.intersection_count(st.u2);
        w.revalidate(d);
        if (!best || w.arc_count < best->arc_count ||
            (w.arc_count == best->arc_count && w.u1.count() + w.u2.count() > best->u1.count() + best->u2.count()))
            best = w;
    }
    return best;
}

VertexSet robust_out_neighborhood(const Digraph& d, const VertexSet& s, double nu) {
    if (!(nu > 0.0 && nu < 1.0)) throw InputError("nu must lie in (0,1)");
    const int n = d.order();
    const double threshold = nu * n;
    VertexSet out(n);
    for (int x = 0; x < n; ++x)
        if (static_cast<double>(d.in_row(x).intersection_count(s)) >= threshold) out.insert(x);
    return out;
}

namespace {

bool expansion_holds(const Digraph& d, const VertexSet& s, double nu) {
    VertexSet rn = robust_out_neighborhood(d, s, nu);
    return static_cast<double>(rn.count()) >= static_cast<double>(s.count()) + nu * d.order();
}

}  // namespace

ExpanderVerdict check_robust_outexpander(const Digraph& d, RobustParams params, int sample_count,
                                         std::uint64_t seed) {
    params.validate();
    const int n = d.order();
    ExpanderVerdict verdict;
    const double lo = params.tau * n, hi = (1.0 - params.tau) * n;
    int k_lo = static_cast<int>(std::floor(lo)) + 1;
    int k_hi = static_cast<int>(std::ceil(hi)) - 1;
    if (k_lo > k_hi) {
        verdict.exhaustive = true;
        return verdict;  // no admissible sizes, vacuous pass
    }

    auto try_set = [&](const VertexSet& s) -> bool {
        int k = s.count();
        if (!(static_cast<double>(k) > lo && static_cast<double>(k) < hi)) return true;
        ++verdict.sets_checked;
        if (!expansion_holds(d, s, params.nu)) {
            verdict.pass = false;
            verdict.counterexample = s;
            return false;
        }
        return true;
    };

    // exhaustive when the admissible family is small enough to walk
    double total = 0;
    for (int k = k_lo; k <= k_hi && total < 3e6; ++k) {
        double c = 1;
        for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
        total += c;
    }
    if (total <= 2e6 || n <= 18) {
        verdict.exhaustive = true;
        std::vector<int> idx;
        for (int k = k_lo; k <= k_hi; ++k) {
            idx.assign(k, 0);
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                VertexSet s(n);
                for (int v : idx) s.insert(v);
                if (!try_set(s)) return verdict;
                int i = k - 1;
                while (i >= 0 && idx[i] == n - k + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        return verdict;
    }

    // deterministic family: all out-neighborhoods, degree-sorted prefixes
    for (int v = 0; v < n; ++v)
        if (!try_set(d.out_row(v))) return verdict;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = std::min(d.out_degree(a), d.in_degree(a));
        int db = std::min(d.out_degree(b), d.in_degree(b));
        if (da != db) return da < db;
        return a < b;
    });
    for (int k = k_lo; k <= k_hi; k += std::max(1, (k_hi - k_lo) / 32)) {
        VertexSet s(n);
        for (int i = 0; i < k; ++i) s.insert(order[i]);
        if (!try_set(s)) return verdict;
    }

    Rng rng(seed);
    for (int trial = 0; trial < sample_count; ++trial) {
        int k = k_lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(k_hi - k_lo + 1)));
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        VertexSet s(n);
        for (int i = 0; i < k; ++i) s.insert(perm[i]);
        if (!try_set(s)) return verdict;
    }
    return verdict;
}

}  // namespace subdiv
