#pragma once

// Per-element catenary degree c(A); exact daleth and c_2 over a subset via
// pair loops with automorphism-orbit reduction; bounded empirical c_k and
// Delta scans (explicit lower bounds / under-approximations).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "blockmon/atoms.hpp"
#include "blockmon/errors.hpp"
#include "blockmon/factorization.hpp"
#include "blockmon/sequence.hpp"

namespace blockmon {

struct ScanOptions {
    int workers = 0;
    long long element_size_cap = 40;
    double time_budget_seconds = 0;   // 0 = unlimited; exact ops abort, scans go incomplete
    long long product_budget = 200000; // empirical c_k: max products evaluated
    long long state_budget = 3000000;  // empirical Delta: max DFS states in exhaustive mode
};

namespace detail {

struct Deadline {
    std::chrono::steady_clock::time_point at{};
    bool active = false;

    static Deadline from_seconds(double s) {
        Deadline d;
        if (s > 0) {
            d.active = true;
            d.at = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(s));
        }
        return d;
    }
    bool expired() const { return active && std::chrono::steady_clock::now() > at; }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

// distance on factorizations given as sorted divisor-index multisets
inline long long index_distance(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0, j = 0;
    long long common = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++common;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return std::max<long long>(static_cast<long long>(a.size()) - common,
                               static_cast<long long>(b.size()) - common);
}

// Bottleneck connectivity threshold: ascending edges through union-find;
// the weight of the edge completing connectivity is c, and its endpoints
// witness the bottleneck.
inline long long bottleneck_threshold(const std::vector<std::vector<int>>& zs, int& wit_a,
                                      int& wit_b) {
    const int n = static_cast<int>(zs.size());
    wit_a = wit_b = -1;
    if (n <= 1) return 0;
    struct Edge {
        long long d;
        int i, j;
    };
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({index_distance(zs[i], zs[j]), i, j});
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.d, a.i, a.j) < std::tie(b.d, b.i, b.j);
    });
    UnionFind uf(n);
    int remaining = n - 1;
    for (const Edge& e : edges) {
        if (uf.unite(e.i, e.j)) {
            --remaining;
            if (remaining == 0) {
                wit_a = e.i;
                wit_b = e.j;
                return e.d;
            }
        }
    }
    return 0; // unreachable for a complete graph
}

} // namespace detail

// --- per-element analysis ---------------------------------------------------

struct ChainAnalysis {
    Sequence element;
    long long factorization_count = 0;
    long long catenary = 0;
    long long bottleneck_edge = 0;
    std::optional<std::pair<Factorization, Factorization>> witness_pair;
    LengthSet lengths;
};

inline ChainAnalysis catenary_of_element(const Sequence& A, const FactorizationOptions& opt = {}) {
    ChainAnalysis res;
    res.element = A;
    std::vector<Sequence> divs = divisor_atoms(A);
    std::vector<std::vector<int>> zs;
    for_each_factorization(A, divs, opt, [&](const std::vector<int>& idx) {
        zs.push_back(idx);
    });
    for (auto& z : zs) std::sort(z.begin(), z.end());
    res.factorization_count = static_cast<long long>(zs.size());
    std::set<long long> lens;
    for (const auto& z : zs) lens.insert(static_cast<long long>(z.size()));
    res.lengths.assign(lens.begin(), lens.end());
    int a = -1, b = -1;
    res.catenary = detail::bottleneck_threshold(zs, a, b);
    res.bottleneck_edge = res.catenary;
    if (a >= 0) {
        auto materialize = [&](const std::vector<int>& z) {
            std::vector<Sequence> atoms;
            for (int d : z) atoms.push_back(divs[static_cast<std::size_t>(d)]);
            return make_factorization(A.group(), std::move(atoms));
        };
        res.witness_pair = std::make_pair(materialize(zs[static_cast<std::size_t>(a)]),
                                          materialize(zs[static_cast<std::size_t>(b)]));
    }
    return res;
}

// --- exact daleth and c_2 over a subset --------------------------------------

struct PairWitness {
    Sequence u, v; // normalized so that u <= v
    LengthSet lengths;
};

struct DalethResult {
    long long value = 0;
    std::optional<PairWitness> witness;
    unsigned long long pairs_examined = 0;
    bool symmetry_reduced = false;
};

struct C2Result {
    long long value = 0;
    std::optional<PairWitness> witness;
    unsigned long long pairs_examined = 0;
    bool symmetry_reduced = false;
};

struct PairScanResult {
    DalethResult daleth;
    C2Result c2;
};

namespace detail {

struct PairBest {
    long long value = 0;
    std::optional<PairWitness> witness;

    void offer(long long v, const Sequence& u, const Sequence& w, const LengthSet& L) {
        if (v < value) return;
        PairWitness cand;
        if (u < w) {
            cand.u = u;
            cand.v = w;
        } else {
            cand.u = w;
            cand.v = u;
        }
        cand.lengths = L;
        if (v > value || !witness ||
            std::make_pair(cand.u, cand.v) < std::make_pair(witness->u, witness->v)) {
            value = v;
            witness = std::move(cand);
        }
    }

    void merge(const PairBest& o) {
        if (!o.witness) return;
        offer(o.value, o.witness->u, o.witness->v, o.witness->lengths);
    }
};

struct PairEval {
    long long min_len_excl2 = 0;
    long long catenary = 0;
    LengthSet lengths;
};

inline PairEval evaluate_pair(const Sequence& U, const Sequence& V,
                              const FactorizationOptions& fopt) {
    PairEval out;
    Sequence A = mul(U, V);
    std::vector<Sequence> divs = divisor_atoms(A);
    std::vector<std::vector<int>> zs;
    for_each_factorization(A, divs, fopt, [&](const std::vector<int>& idx) {
        zs.push_back(idx);
    });
    std::set<long long> lens;
    for (auto& z : zs) {
        std::sort(z.begin(), z.end());
        lens.insert(static_cast<long long>(z.size()));
    }
    out.lengths.assign(lens.begin(), lens.end());
    out.min_len_excl2 = min_length_excluding_two(out.lengths);
    int a, b;
    out.catenary = bottleneck_threshold(zs, a, b);
    return out;
}

} // namespace detail

// Exact sup over unordered atom pairs (u = v allowed) of min(L(uv) \ {2})
// and of c(uv), in one pass. With orbit reduction the first atom runs over
// Aut-orbit representatives and the second over all atoms; every unordered
// pair is covered up to an automorphism, and both targets are Aut-invariant.
//
// Pairs are processed in buckets of descending min(|u|, |v|). Once both
// running maxima are >= 3, a remaining bucket l <= min(bests) cannot
// improve either value (max L(uv) <= min{|u|, |v|}), so those buckets are
// skipped. Bucket-level gating keeps the examined pair set, and hence the
// whole result, independent of the worker count.
inline PairScanResult pair_scan(const AtomSet& set, const std::vector<const Automorphism*>& maps,
                                const ScanOptions& opt = {}) {
    PairScanResult res;
    const bool reduced = !maps.empty();
    res.daleth.symmetry_reduced = reduced;
    res.c2.symmetry_reduced = reduced;
    if (set.atoms.empty()) return res;

    std::vector<AtomOrbit> orbits = orbit_representatives(set, maps);
    const auto deadline = detail::Deadline::from_seconds(opt.time_budget_seconds);

    std::vector<long long> atom_len(set.atoms.size());
    for (std::size_t i = 0; i < set.atoms.size(); ++i) atom_len[i] = set.atoms[i].length();

    FactorizationOptions fopt;
    fopt.element_size_cap = std::max<long long>(opt.element_size_cap, 2 * set.davenport + 2);

    detail::PairBest best_daleth, best_c2;
    unsigned long long examined = 0;

    struct Task {
        int rep;
        int other;
    };
    for (long long bucket = set.davenport; bucket >= 1; --bucket) {
        const long long floor_best = std::min(best_daleth.value, best_c2.value);
        if (best_daleth.value >= 3 && best_c2.value >= 3 && bucket <= floor_best) break;

        std::vector<Task> tasks;
        for (const auto& orb : orbits) {
            const long long lu = atom_len[static_cast<std::size_t>(orb.rep_index)];
            for (std::size_t j = reduced ? 0 : static_cast<std::size_t>(orb.rep_index);
                 j < set.atoms.size(); ++j) {
                if (std::min(lu, atom_len[j]) == bucket)
                    tasks.push_back({orb.rep_index, static_cast<int>(j)});
            }
        }
        if (tasks.empty()) continue;
        if (deadline.expired())
            throw cap_exceeded("time budget exhausted during the exact pair scan");

        const int workers = std::min<int>(resolve_workers(opt.workers),
                                          static_cast<int>(tasks.size()));
        std::vector<detail::PairBest> wd(static_cast<std::size_t>(workers));
        std::vector<detail::PairBest> wc(static_cast<std::size_t>(workers));
        auto work = [&](int w) {
            for (std::size_t t = static_cast<std::size_t>(w); t < tasks.size();
                 t += static_cast<std::size_t>(workers)) {
                const Sequence& U = set.atoms[static_cast<std::size_t>(tasks[t].rep)];
                const Sequence& V = set.atoms[static_cast<std::size_t>(tasks[t].other)];
                detail::PairEval ev = detail::evaluate_pair(U, V, fopt);
                wd[static_cast<std::size_t>(w)].offer(ev.min_len_excl2, U, V, ev.lengths);
                wc[static_cast<std::size_t>(w)].offer(ev.catenary, U, V, ev.lengths);
            }
        };
        if (workers <= 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& th : pool) th.join();
        }
        for (int w = 0; w < workers; ++w) {
            best_daleth.merge(wd[static_cast<std::size_t>(w)]);
            best_c2.merge(wc[static_cast<std::size_t>(w)]);
        }
        examined += tasks.size();
    }

    res.daleth.value = best_daleth.value;
    res.daleth.witness = best_daleth.witness;
    res.daleth.pairs_examined = examined;
    res.c2.value = best_c2.value;
    res.c2.witness = best_c2.witness;
    res.c2.pairs_examined = examined;
    return res;
}

inline DalethResult daleth(const AtomSet& set, const std::vector<const Automorphism*>& maps,
                           const ScanOptions& opt = {}) {
    return pair_scan(set, maps, opt).daleth;
}

inline C2Result c2_exact(const AtomSet& set, const std::vector<const Automorphism*>& maps,
                         const ScanOptions& opt = {}) {
    return pair_scan(set, maps, opt).c2;
}

// --- bounded empirical scans -------------------------------------------------

struct CkScan {
    int k = 0;
    long long size_cap = 0;
    long long value = 0; // lower bound for c_k
    std::optional<Sequence> witness;
    long long witness_min_length = 0;
    bool complete = true; // false when a budget stopped the scan early
    long long products_examined = 0;
};

// max c(A) over products of at most k atoms with |A| <= size_cap; elements
// with min L(a) <= k are exactly such products (plus units). Reported as a
// lower bound; the enumeration order and any budget cutoff are
// deterministic (single-threaded, canonical order).
inline CkScan empirical_ck(const AtomSet& set, const std::vector<const Automorphism*>& maps,
                           int k, long long size_cap, const ScanOptions& opt = {}) {
    CkScan scan;
    scan.k = k;
    scan.size_cap = size_cap;
    if (k <= 1 || set.atoms.empty()) return scan; // units and atoms factor uniquely
    const auto deadline = detail::Deadline::from_seconds(opt.time_budget_seconds);

    std::vector<AtomOrbit> orbits = orbit_representatives(set, maps);
    FactorizationOptions fopt;
    fopt.element_size_cap = std::max(opt.element_size_cap, size_cap);

    std::set<std::string> seen;
    std::vector<int> stack;

    // tail atoms are non-decreasing among themselves; the leading orbit
    // representative is unconstrained relative to them (coverage up to Aut)
    std::function<bool(int, long long)> extend = [&](int tail_floor, long long used) -> bool {
        if (static_cast<int>(stack.size()) >= 2) {
            Sequence A(set.subset.group);
            for (int i : stack) A = mul(A, set.atoms[static_cast<std::size_t>(i)]);
            std::string key = A.text();
            if (!seen.count(key)) {
                seen.insert(key);
                ++scan.products_examined;
                if (scan.products_examined > opt.product_budget || deadline.expired()) {
                    scan.complete = false;
                    return false;
                }
                ChainAnalysis ca = catenary_of_element(A, fopt);
                long long min_l = ca.lengths.empty() ? 0 : ca.lengths.front();
                const bool better = ca.catenary > scan.value;
                const bool tie_smaller = ca.catenary == scan.value && ca.catenary > 0 &&
                                         (!scan.witness || A < *scan.witness);
                if (better || tie_smaller) {
                    scan.value = ca.catenary;
                    scan.witness = A;
                    scan.witness_min_length = min_l;
                }
            }
        }
        if (static_cast<int>(stack.size()) >= k) return true;
        for (std::size_t j = static_cast<std::size_t>(tail_floor); j < set.atoms.size(); ++j) {
            long long l = set.atoms[j].length();
            if (used + l > size_cap) continue;
            stack.push_back(static_cast<int>(j));
            bool go_on = extend(static_cast<int>(j), used + l);
            stack.pop_back();
            if (!go_on) return false;
        }
        return true;
    };

    for (const auto& orb : orbits) {
        long long l = set.atoms[static_cast<std::size_t>(orb.rep_index)].length();
        if (l > size_cap) continue;
        stack.assign(1, orb.rep_index);
        if (!extend(0, l)) break;
    }
    return scan;
}

struct DeltaScan {
    enum class Mode { exhaustive, atom_pairs };
    Mode mode = Mode::exhaustive;
    long long size_cap = 0;
    std::vector<long long> values; // sorted union of observed distance sets
    std::optional<Sequence> witness_max;
    bool complete = true;
    long long elements_examined = 0;
};

namespace detail {

inline long long predicted_multiset_states(std::size_t universe, long long max_size,
                                           long long clamp) {
    // C(max_size + universe, universe), clamped
    long long u = static_cast<long long>(universe);
    long long result = 1;
    for (long long i = 1; i <= u; ++i) {
        result = result * (max_size + i) / i;
        if (result > clamp) return clamp + 1;
    }
    return result;
}

} // namespace detail

// Union of Delta(L(A)) over zero-sum A with |A| <= size_cap. Exhaustive DFS
// over 0-free multisets when the state space fits the budget (terms with a
// zero only shift lengths and leave the distance set unchanged); otherwise
// falls back to the sound atom-pair slice, which is where the maximal
// distance lives whenever the corollary-4.3 chain applies.
inline DeltaScan empirical_delta(const AtomSet& set, const std::vector<const Automorphism*>& maps,
                                 long long size_cap, const ScanOptions& opt = {}) {
    DeltaScan scan;
    scan.size_cap = size_cap;
    const Group& g = set.subset.group;
    const auto deadline = detail::Deadline::from_seconds(opt.time_budget_seconds);
    const std::vector<int> universe = set.subset.nonzero_universe();

    std::set<long long> acc;
    auto note = [&](const LengthSet& L, const Sequence& A) {
        auto d = delta_set(L);
        for (long long x : d) {
            bool is_new_max = acc.empty() || x > *acc.rbegin();
            acc.insert(x);
            if (is_new_max) scan.witness_max = A;
        }
    };

    FactorizationOptions fopt;
    fopt.element_size_cap = std::max(opt.element_size_cap, size_cap);

    const long long predicted = detail::predicted_multiset_states(
        universe.size(), std::max<long long>(size_cap - 1, 0), opt.state_budget);
    if (predicted <= opt.state_budget) {
        scan.mode = DeltaScan::Mode::exhaustive;
        std::vector<std::pair<int, int>> terms;
        long long states = 0;
        // DFS over 0-free multisets S in non-decreasing order; each zero-sum
        // element arises exactly once as S * (-sigma(S)) with a maximal
        // closing term.
        std::function<bool(std::size_t, int, long long)> dfs = [&](std::size_t pos, int sum,
                                                                   long long len) -> bool {
            if (++states > opt.state_budget || deadline.expired()) {
                scan.complete = false;
                return false;
            }
            if (!terms.empty()) {
                int c = g.neg(sum);
                if (c != 0 && c >= terms.back().first &&
                    std::binary_search(universe.begin(), universe.end(), c)) {
                    auto closed = terms;
                    if (closed.back().first == c)
                        closed.back().second += 1;
                    else
                        closed.emplace_back(c, 1);
                    Sequence A(g, std::move(closed));
                    ++scan.elements_examined;
                    note(factorization_lengths(A, fopt), A);
                }
            }
            if (len >= size_cap - 1) return true;
            for (std::size_t p = pos; p < universe.size(); ++p) {
                const int e = universe[p];
                if (!terms.empty() && e < terms.back().first) continue;
                if (terms.empty() || terms.back().first != e)
                    terms.emplace_back(e, 1);
                else
                    terms.back().second += 1;
                bool go_on = dfs(p, g.add(sum, e), len + 1);
                if (terms.back().second == 1)
                    terms.pop_back();
                else
                    terms.back().second -= 1;
                if (!go_on) return false;
            }
            return true;
        };
        dfs(0, 0, 0);
    } else {
        scan.mode = DeltaScan::Mode::atom_pairs;
        std::vector<AtomOrbit> orbits = orbit_representatives(set, maps);
        const bool reduced = !maps.empty();
        for (const auto& orb : orbits) {
            const Sequence& U = set.atoms[static_cast<std::size_t>(orb.rep_index)];
            for (std::size_t j = reduced ? 0 : static_cast<std::size_t>(orb.rep_index);
                 j < set.atoms.size(); ++j) {
                const Sequence& V = set.atoms[j];
                if (std::min(U.length(), V.length()) <= 2) continue;
                if (U.length() + V.length() > size_cap) continue;
                if (deadline.expired()) {
                    scan.complete = false;
                    break;
                }
                Sequence A = mul(U, V);
                ++scan.elements_examined;
                note(factorization_lengths(A, fopt), A);
            }
            if (!scan.complete) break;
        }
    }
    scan.values.assign(acc.begin(), acc.end());
    return scan;
}

} // namespace blockmon
