#pragma once

// Factorization sets Z(A), length sets L(A), Delta-sets, gcd and distance
// of factorizations.
//
// Enumeration recurses on the canonical-min element g of the remainder and
// branches over divisor atoms containing g. Within a run of equal g the
// chosen atoms must be non-decreasing in the canonical atom order; the
// floor resets when g moves. Every factorization is produced exactly once:
// its atoms, grouped by their minimal element, appear in a unique order
// under these constraints.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "blockmon/atoms.hpp"
#include "blockmon/errors.hpp"
#include "blockmon/sequence.hpp"

namespace blockmon {

struct Factorization {
    std::vector<Sequence> atoms; // canonically sorted multiset of atoms
    Sequence product;
    long long length = 0;

    std::string text() const {
        std::string s;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (i) s += " | ";
            s += atoms[i].text();
        }
        return s;
    }
};

using LengthSet = std::vector<long long>; // sorted, duplicate free

struct FactorizationOptions {
    long long element_size_cap = 40;
    // memoization pays off only on large inputs; -1 = auto (on when |A| > 20)
    int memoize = -1;
};

namespace detail {

// remainder as multiplicity vector aligned with a fixed divisor support
struct FactorDfs {
    std::vector<int> supp;                   // sorted distinct elements of A
    std::vector<int> rem;                    // remaining multiplicities
    std::vector<std::vector<std::pair<int, int>>> divisors; // (supp position, mult)
    std::vector<std::vector<int>> by_min;    // divisor indices by minimal supp position

    bool use_memo = false;
    std::map<std::string, std::vector<std::vector<int>>> memo;

    std::vector<int> chosen;
    std::function<void(const std::vector<int>&)> emit;

    void setup(const Sequence& A, const std::vector<Sequence>& divs) {
        for (auto [e, m] : A.terms()) {
            supp.push_back(e);
            rem.push_back(m);
        }
        divisors.reserve(divs.size());
        by_min.assign(supp.size(), {});
        for (const auto& d : divs) {
            std::vector<std::pair<int, int>> enc;
            for (auto [e, m] : d.terms()) {
                auto it = std::lower_bound(supp.begin(), supp.end(), e);
                enc.emplace_back(static_cast<int>(it - supp.begin()), m);
            }
            by_min[static_cast<std::size_t>(enc.front().first)].push_back(
                static_cast<int>(divisors.size()));
            divisors.push_back(std::move(enc));
        }
    }

    std::string rem_key() const {
        std::string k;
        k.reserve(rem.size() * 2);
        for (int m : rem) {
            k += static_cast<char>('0' + (m & 0x3f));
            k += static_cast<char>('0' + ((m >> 6) & 0x3f));
        }
        return k;
    }

    int min_pos() const {
        for (std::size_t p = 0; p < rem.size(); ++p)
            if (rem[p] > 0) return static_cast<int>(p);
        return -1;
    }

    bool try_remove(int d) {
        for (auto [p, m] : divisors[static_cast<std::size_t>(d)])
            if (rem[static_cast<std::size_t>(p)] < m) return false;
        for (auto [p, m] : divisors[static_cast<std::size_t>(d)])
            rem[static_cast<std::size_t>(p)] -= m;
        return true;
    }

    void put_back(int d) {
        for (auto [p, m] : divisors[static_cast<std::size_t>(d)])
            rem[static_cast<std::size_t>(p)] += m;
    }

    void run() {
        if (use_memo) {
            for (const auto& suffix : solve_memo()) {
                chosen = suffix;
                emit(chosen);
            }
        } else {
            dfs(-1, 0);
        }
    }

    void dfs(int prev_pos, int floor) {
        int p = min_pos();
        if (p < 0) {
            emit(chosen);
            return;
        }
        int lo = (p == prev_pos) ? floor : 0;
        const auto& cands = by_min[static_cast<std::size_t>(p)];
        auto start = std::lower_bound(cands.begin(), cands.end(), lo);
        for (auto it = start; it != cands.end(); ++it) {
            int d = *it;
            if (!try_remove(d)) continue;
            chosen.push_back(d);
            dfs(p, d);
            chosen.pop_back();
            put_back(d);
        }
    }

    // memoized variant: suffix sets keyed by (remainder, effective floor)
    std::vector<std::vector<int>> solve_memo(int prev_pos = -1, int floor = 0) {
        int p = min_pos();
        if (p < 0) return {{}};
        int lo = (p == prev_pos) ? floor : 0;
        std::string key = rem_key() + "#" + std::to_string(lo);
        auto hit = memo.find(key);
        if (hit != memo.end()) return hit->second;
        std::vector<std::vector<int>> result;
        const auto& cands = by_min[static_cast<std::size_t>(p)];
        auto start = std::lower_bound(cands.begin(), cands.end(), lo);
        for (auto it = start; it != cands.end(); ++it) {
            int d = *it;
            if (!try_remove(d)) continue;
            for (auto suffix : solve_memo(p, d)) {
                suffix.insert(suffix.begin(), d);
                result.push_back(std::move(suffix));
            }
            put_back(d);
        }
        memo.emplace(std::move(key), result);
        return result;
    }
};

inline void check_factorable(const Sequence& A, const FactorizationOptions& opt) {
    if (A.sigma_index() != 0) throw input_error("factorization requires a zero-sum sequence");
    if (A.length() > opt.element_size_cap)
        throw cap_exceeded("element length " + std::to_string(A.length()) +
                           " exceeds the factorization cap " +
                           std::to_string(opt.element_size_cap));
}

} // namespace detail

// Visit every factorization once as a sorted list of divisor-atom indices.
// `divs` must be the canonically sorted divisor atoms of A.
template <typename Fn>
void for_each_factorization(const Sequence& A, const std::vector<Sequence>& divs,
                            const FactorizationOptions& opt, Fn&& fn) {
    detail::check_factorable(A, opt);
    if (A.empty()) { // the unit has exactly one factorization, the empty one
        fn(std::vector<int>{});
        return;
    }
    detail::FactorDfs dfs;
    dfs.setup(A, divs);
    dfs.use_memo = opt.memoize > 0 || (opt.memoize < 0 && A.length() > 20);
    dfs.emit = [&](const std::vector<int>& idx) { fn(idx); };
    dfs.run();
}

inline std::vector<Factorization> enumerate_factorizations(const Sequence& A,
                                                           const FactorizationOptions& opt = {}) {
    std::vector<Sequence> divs = divisor_atoms(A);
    std::vector<Factorization> out;
    for_each_factorization(A, divs, opt, [&](const std::vector<int>& idx) {
        Factorization f;
        for (int d : idx) f.atoms.push_back(divs[static_cast<std::size_t>(d)]);
        std::sort(f.atoms.begin(), f.atoms.end());
        f.product = A;
        f.length = static_cast<long long>(f.atoms.size());
        out.push_back(std::move(f));
    });
    return out;
}

// lengths only; far lighter than materializing Z(A) for scans
inline LengthSet factorization_lengths(const Sequence& A, const FactorizationOptions& opt = {},
                                       long long* count = nullptr) {
    std::vector<Sequence> divs = divisor_atoms(A);
    std::set<long long> lens;
    long long n = 0;
    for_each_factorization(A, divs, opt, [&](const std::vector<int>& idx) {
        lens.insert(static_cast<long long>(idx.size()));
        ++n;
    });
    if (count) *count = n;
    return LengthSet(lens.begin(), lens.end());
}

inline LengthSet length_set(const Sequence& A, const FactorizationOptions& opt = {}) {
    return factorization_lengths(A, opt);
}

// differences between consecutive elements; Delta of a singleton is empty
inline std::vector<long long> delta_set(const LengthSet& L) {
    std::vector<long long> d;
    for (std::size_t i = 1; i < L.size(); ++i) d.push_back(L[i] - L[i - 1]);
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

// min(L \ {2}) with the convention min {} = 0
inline long long min_length_excluding_two(const LengthSet& L) {
    for (long long l : L)
        if (l != 2) return l;
    return 0;
}

inline Factorization make_factorization(const Group& g, std::vector<Sequence> atoms) {
    Factorization f;
    std::sort(atoms.begin(), atoms.end());
    f.atoms = std::move(atoms);
    Sequence prod(g);
    for (const auto& a : f.atoms) prod = mul(prod, a);
    f.product = std::move(prod);
    f.length = static_cast<long long>(f.atoms.size());
    return f;
}

// multiset intersection of the atom multisets
inline Factorization gcd_factorizations(const Factorization& z1, const Factorization& z2) {
    std::vector<Sequence> common;
    std::size_t i = 0, j = 0;
    while (i < z1.atoms.size() && j < z2.atoms.size()) {
        int c = z1.atoms[i].compare(z2.atoms[j]);
        if (c == 0) {
            common.push_back(z1.atoms[i]);
            ++i;
            ++j;
        } else if (c < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    Group g = z1.atoms.empty() ? (z2.atoms.empty() ? Group() : z2.atoms.front().group())
                               : z1.atoms.front().group();
    return make_factorization(g, std::move(common));
}

// d(z, z') = max of the two lengths after cancelling common atoms
inline long long distance(const Factorization& z1, const Factorization& z2) {
    std::size_t i = 0, j = 0;
    long long common = 0;
    while (i < z1.atoms.size() && j < z2.atoms.size()) {
        int c = z1.atoms[i].compare(z2.atoms[j]);
        if (c == 0) {
            ++common;
            ++i;
            ++j;
        } else if (c < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    return std::max(z1.length - common, z2.length - common);
}

} // namespace blockmon
