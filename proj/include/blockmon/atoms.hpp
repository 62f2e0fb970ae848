#pragma once

// Enumeration of A(G_0) — all minimal zero-sum sequences over G_0 — plus
// Davenport constants, automorphism orbits, the persistent atom cache and
// the maximal-atom shape verifier for C_3^3.
//
// The enumerator runs a DFS over zero-sum-free sequences S with terms drawn
// from G_0 \ {0} in non-decreasing canonical order, maintaining the subsum
// set incrementally. An atom U = S * (-sigma(S)) is emitted whenever the
// closing term lies in G_0 \ {0} and is >= the maximal term of S; together
// with the standalone atom "0" this produces every atom exactly once
// (remove one copy of the canonical-max term of an atom and the DFS state
// that regenerates it is unique).

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "blockmon/errors.hpp"
#include "blockmon/group.hpp"
#include "blockmon/sequence.hpp"

namespace blockmon {

struct EnumerationOptions {
    long long enumeration_cap = 81; // refuse groups larger than this
    int workers = 0;                // 0 = hardware concurrency
};

inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

struct AtomSet {
    SubsetSpec subset;
    std::vector<Sequence> atoms; // canonically sorted, duplicate free
    long long davenport = 0;     // max atom length, 0 for the empty atom set
    std::vector<std::vector<int>> by_length;

    const std::vector<int>& of_length(long long l) const {
        static const std::vector<int> none;
        if (l < 0 || l >= static_cast<long long>(by_length.size())) return none;
        return by_length[static_cast<std::size_t>(l)];
    }

    int find(const Sequence& s) const {
        auto it = std::lower_bound(atoms.begin(), atoms.end(), s);
        if (it != atoms.end() && *it == s) return static_cast<int>(it - atoms.begin());
        return -1;
    }

    void rebuild_index() {
        davenport = 0;
        for (const auto& a : atoms) davenport = std::max(davenport, a.length());
        by_length.assign(static_cast<std::size_t>(davenport + 1), {});
        for (std::size_t i = 0; i < atoms.size(); ++i)
            by_length[static_cast<std::size_t>(atoms[i].length())].push_back(static_cast<int>(i));
    }
};

namespace detail {

struct AtomDfs {
    const Group& g;
    const std::vector<int>& elems; // sorted nonzero universe
    std::vector<Sequence>* out;

    std::vector<std::pair<int, int>> terms;

    void run(std::size_t first_pos) {
        const int e = elems[first_pos];
        SumSet acc(g.order());
        acc.add_term(g, e);
        terms.clear();
        terms.emplace_back(e, 1);
        grow(first_pos, e, acc);
        terms.clear();
    }

    void grow(std::size_t pos, int sum, const SumSet& acc) {
        const int c = g.neg(sum);
        if (c != 0 && c >= terms.back().first &&
            std::binary_search(elems.begin(), elems.end(), c)) {
            auto closed = terms;
            if (closed.back().first == c)
                closed.back().second += 1;
            else
                closed.emplace_back(c, 1);
            out->push_back(Sequence(g, std::move(closed)));
        }
        for (std::size_t p = pos; p < elems.size(); ++p) {
            const int e = elems[p];
            if (acc.contains(g.neg(e))) continue; // extension would create a zero subsum
            SumSet acc2 = acc;
            acc2.add_term(g, e);
            if (terms.back().first == e)
                terms.back().second += 1;
            else
                terms.emplace_back(e, 1);
            grow(p, g.add(sum, e), acc2);
            if (terms.back().second == 1)
                terms.pop_back();
            else
                terms.back().second -= 1;
        }
    }
};

} // namespace detail

inline AtomSet enumerate_atoms(const SubsetSpec& subset, const EnumerationOptions& opt = {}) {
    const Group& g = subset.group;
    if (g.order() > opt.enumeration_cap)
        throw cap_exceeded("group order " + std::to_string(g.order()) +
                           " exceeds the enumeration cap " + std::to_string(opt.enumeration_cap));
    AtomSet set;
    set.subset = subset;
    const std::vector<int> elems = subset.nonzero_universe();

    int workers = resolve_workers(opt.workers);
    if (static_cast<std::size_t>(workers) > elems.size())
        workers = std::max<int>(1, static_cast<int>(elems.size()));
    std::vector<std::vector<Sequence>> shard(static_cast<std::size_t>(workers));
    auto work = [&](int w) {
        detail::AtomDfs dfs{g, elems, &shard[static_cast<std::size_t>(w)], {}};
        for (std::size_t p = static_cast<std::size_t>(w); p < elems.size();
             p += static_cast<std::size_t>(workers))
            dfs.run(p);
    };
    if (workers <= 1) {
        if (!elems.empty()) work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    if (subset.has_zero()) set.atoms.push_back(Sequence(g, {{0, 1}}));
    for (auto& s : shard)
        for (auto& a : s) set.atoms.push_back(std::move(a));
    std::sort(set.atoms.begin(), set.atoms.end());
    set.rebuild_index();
    return set;
}

inline long long davenport(const SubsetSpec& subset, const EnumerationOptions& opt = {}) {
    return enumerate_atoms(subset, opt).davenport;
}

inline std::vector<Sequence> atoms_of_length(const AtomSet& set, long long l) {
    std::vector<Sequence> out;
    for (int i : set.of_length(l)) out.push_back(set.atoms[static_cast<std::size_t>(i)]);
    return out;
}

// All atoms dividing the multiset A (their support is inside supp(A), so
// this is independent of any ambient subset). Same DFS as the global
// enumerator, with multiplicities capped by A.
inline std::vector<Sequence> divisor_atoms(const Sequence& A) {
    const Group& g = A.group();
    std::vector<Sequence> out;
    std::vector<int> elems;
    std::vector<int> cap;
    for (auto [e, m] : A.terms()) {
        if (e == 0) continue;
        elems.push_back(e);
        cap.push_back(m);
    }
    if (A.multiplicity(0) > 0) out.push_back(Sequence(g, {{0, 1}}));

    std::vector<std::pair<int, int>> terms;
    std::vector<int> used(elems.size(), 0);

    std::function<void(std::size_t, int, const SumSet&)> grow = [&](std::size_t pos, int sum,
                                                                    const SumSet& acc) {
        const int c = g.neg(sum);
        if (c != 0 && c >= terms.back().first) {
            auto it = std::lower_bound(elems.begin(), elems.end(), c);
            if (it != elems.end() && *it == c) {
                std::size_t ci = static_cast<std::size_t>(it - elems.begin());
                if (used[ci] + 1 <= cap[ci]) {
                    auto closed = terms;
                    if (closed.back().first == c)
                        closed.back().second += 1;
                    else
                        closed.emplace_back(c, 1);
                    out.push_back(Sequence(g, std::move(closed)));
                }
            }
        }
        for (std::size_t p = pos; p < elems.size(); ++p) {
            const int e = elems[p];
            if (used[p] + 1 > cap[p]) continue;
            if (acc.contains(g.neg(e))) continue;
            SumSet acc2 = acc;
            acc2.add_term(g, e);
            used[p] += 1;
            if (terms.back().first == e)
                terms.back().second += 1;
            else
                terms.emplace_back(e, 1);
            grow(p, g.add(sum, e), acc2);
            if (terms.back().second == 1)
                terms.pop_back();
            else
                terms.back().second -= 1;
            used[p] -= 1;
        }
    };

    for (std::size_t p = 0; p < elems.size(); ++p) {
        const int e = elems[p];
        SumSet acc(g.order());
        acc.add_term(g, e);
        used[p] = 1;
        terms.assign(1, {e, 1});
        grow(p, e, acc);
        used[p] = 0;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- automorphism orbits ----------------------------------------------------

inline Sequence apply_automorphism(const Automorphism& a, const Sequence& s) {
    std::vector<std::pair<int, int>> t;
    t.reserve(s.terms().size());
    for (auto [e, m] : s.terms()) t.emplace_back(a.apply(e), m);
    return Sequence(s.group(), std::move(t));
}

// Maps that fix the allowed set setwise; only those act on A(G_0).
inline std::vector<const Automorphism*> subset_stabilizer(const SubsetSpec& subset,
                                                          const AutomorphismSet& autos) {
    std::vector<const Automorphism*> keep;
    if (!autos.available()) return keep;
    for (const auto& a : autos.maps) {
        bool ok = true;
        if (subset.kind == SubsetSpec::Kind::explicit_set) {
            for (int e : subset.allowed)
                if (!subset.contains(a.apply(e))) {
                    ok = false;
                    break;
                }
        }
        if (ok) keep.push_back(&a);
    }
    return keep;
}

struct AtomOrbit {
    int rep_index;   // canonical-min member of the orbit
    long long size;
};

inline std::vector<AtomOrbit> orbit_representatives(const AtomSet& set,
                                                    const std::vector<const Automorphism*>& maps) {
    std::vector<AtomOrbit> orbits;
    if (maps.empty()) {
        for (std::size_t i = 0; i < set.atoms.size(); ++i)
            orbits.push_back({static_cast<int>(i), 1});
        return orbits;
    }
    std::vector<char> seen(set.atoms.size(), 0);
    for (std::size_t i = 0; i < set.atoms.size(); ++i) {
        if (seen[i]) continue;
        long long size = 0;
        for (const Automorphism* a : maps) {
            Sequence img = apply_automorphism(*a, set.atoms[i]);
            int j = set.find(img);
            if (j < 0) throw input_error("automorphism does not preserve the atom set");
            if (!seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = 1;
                ++size;
            }
        }
        orbits.push_back({static_cast<int>(i), size});
    }
    return orbits;
}

// --- cache -----------------------------------------------------------------
//
// Line format:
//   group=<factors>;subset=<all|nonzero|canonical element list>
//   <canonical sequence text>            (one atom per line, sorted)
//   count=<N>;digest=<16 hex digits>     (FNV-1a over all preceding lines)

namespace detail {

struct Fnv1a {
    std::uint64_t h = 0xcbf29ce484222325ull;
    void feed(const std::string& line) {
        for (unsigned char c : line) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        h ^= static_cast<unsigned char>('\n');
        h *= 0x100000001b3ull;
    }
    std::string hex() const {
        static const char* d = "0123456789abcdef";
        std::string s(16, '0');
        for (int i = 0; i < 16; ++i) s[15 - i] = d[(h >> (4 * i)) & 0xf];
        return s;
    }
};

} // namespace detail

inline void save_cache(const AtomSet& set, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write cache file " + path);
    detail::Fnv1a digest;
    std::string header = "group=" + set.subset.group.label() + ";subset=" + set.subset.label();
    digest.feed(header);
    out << header << '\n';
    for (const auto& a : set.atoms) {
        std::string line = a.text();
        digest.feed(line);
        out << line << '\n';
    }
    out << "count=" << set.atoms.size() << ";digest=" << digest.hex() << '\n';
}

inline AtomSet load_cache(const SubsetSpec& subset, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read cache file " + path);
    std::string line;
    if (!std::getline(in, line)) throw input_error("cache file is empty: " + path);
    detail::Fnv1a digest;
    digest.feed(line);
    const std::string expect_header =
        "group=" + subset.group.label() + ";subset=" + subset.label();
    if (line != expect_header)
        throw input_error("cache header mismatch: have \"" + line + "\", want \"" +
                          expect_header + "\"");
    AtomSet set;
    set.subset = subset;
    std::optional<std::string> footer;
    while (std::getline(in, line)) {
        if (line.rfind("count=", 0) == 0) {
            footer = line;
            break;
        }
        digest.feed(line);
        set.atoms.push_back(parse_sequence(subset.group, line));
    }
    if (!footer) throw input_error("cache file has no footer: " + path);
    std::size_t semi = footer->find(";digest=");
    if (semi == std::string::npos) throw input_error("malformed cache footer: " + *footer);
    const long long count = std::stoll(footer->substr(6, semi - 6));
    const std::string want_digest = footer->substr(semi + 8);
    if (count != static_cast<long long>(set.atoms.size()))
        throw input_error("cache count mismatch in " + path);
    if (digest.hex() != want_digest)
        throw input_error("cache digest mismatch in " + path);
    for (std::size_t i = 1; i < set.atoms.size(); ++i)
        if (!(set.atoms[i - 1] < set.atoms[i]))
            throw input_error("cache atoms out of canonical order in " + path);
    // spot-check a digest-seeded sample of entries against the atom predicate
    std::uint64_t state = digest.h | 1;
    for (int k = 0; k < 32 && !set.atoms.empty(); ++k) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        const auto& a = set.atoms[static_cast<std::size_t>(state % set.atoms.size())];
        if (!is_atom(a)) throw input_error("cache entry fails the atom predicate: " + a.text());
    }
    set.rebuild_index();
    return set;
}

// --- maximal-atom shape verification for C_3^3 -------------------------------
//
// Checks, for G = C_3^3 with D(G) = 7:
//   (i)   every length-7 atom has maximum multiplicity exactly 2;
//   (ii)  the set of length-7 atoms equals the closure, under Aut(G), of the
//         standard-basis family e_1^2 (a_1 e_1+e_2)(a_2 e_1+e_2)
//         prod_j (a_{2+j} e_1 + b_j e_2 + e_3) with sum a_i = sum b_j = 1 mod 3;
//   (iii) every member of that family is itself a length-7 atom.

struct Lemma57Report {
    long long max_length_atoms = 0;
    long long h2_violations = 0;
    long long family_size = 0;          // distinct standard-basis instantiations
    long long family_non_atoms = 0;     // (iii) violations
    long long closure_size = 0;
    bool sets_equal = false;

    bool pass() const {
        return h2_violations == 0 && family_non_atoms == 0 && sets_equal;
    }
};

inline std::vector<Sequence> lemma_5_7_standard_family(const Group& g) {
    if (g.factors() != std::vector<long long>{3, 3, 3})
        throw input_error("the maximal-atom family is specific to the group 3,3,3");
    const int e1 = g.index_of({1, 0, 0});
    const int e2 = g.index_of({0, 1, 0});
    const int e3 = g.index_of({0, 0, 1});
    std::vector<Sequence> fam;
    std::array<int, 5> a{};
    std::array<int, 3> b{};
    for (int a0 = 0; a0 < 243; ++a0) {
        int t = a0, suma = 0;
        for (int i = 0; i < 5; ++i) {
            a[static_cast<std::size_t>(i)] = t % 3;
            suma += t % 3;
            t /= 3;
        }
        if (suma % 3 != 1) continue;
        for (int b0 = 0; b0 < 27; ++b0) {
            int u = b0, sumb = 0;
            for (int j = 0; j < 3; ++j) {
                b[static_cast<std::size_t>(j)] = u % 3;
                sumb += u % 3;
                u /= 3;
            }
            if (sumb % 3 != 1) continue;
            std::vector<std::pair<int, int>> terms{{e1, 2}};
            for (int i = 0; i < 2; ++i)
                terms.emplace_back(g.add(g.scalar_mul(a[static_cast<std::size_t>(i)], e1), e2), 1);
            for (int j = 0; j < 3; ++j) {
                int x = g.add(g.scalar_mul(a[static_cast<std::size_t>(2 + j)], e1),
                              g.add(g.scalar_mul(b[static_cast<std::size_t>(j)], e2), e3));
                terms.emplace_back(x, 1);
            }
            fam.push_back(Sequence(g, std::move(terms)));
        }
    }
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    return fam;
}

inline Lemma57Report verify_lemma_5_7(const AtomSet& set, const AutomorphismSet& autos) {
    const Group& g = set.subset.group;
    if (g.factors() != std::vector<long long>{3, 3, 3} ||
        set.subset.kind != SubsetSpec::Kind::all)
        throw input_error("the maximal-atom verifier runs on the full subset of group 3,3,3");
    if (!autos.available())
        throw input_error("automorphisms unavailable; cannot close the family under Aut(G)");

    Lemma57Report rep;
    std::vector<Sequence> top = atoms_of_length(set, set.davenport);
    rep.max_length_atoms = static_cast<long long>(top.size());
    for (const auto& u : top)
        if (u.max_multiplicity() != 2) ++rep.h2_violations;

    std::vector<Sequence> fam = lemma_5_7_standard_family(g);
    rep.family_size = static_cast<long long>(fam.size());
    for (const auto& u : fam)
        if (!is_atom(u) || u.length() != set.davenport) ++rep.family_non_atoms;

    std::vector<Sequence> closure;
    closure.reserve(fam.size() * autos.maps.size());
    for (const auto& u : fam)
        for (const auto& a : autos.maps) closure.push_back(apply_automorphism(a, u));
    std::sort(closure.begin(), closure.end());
    closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    rep.closure_size = static_cast<long long>(closure.size());
    rep.sets_equal = closure == top; // both canonically sorted
    return rep;
}

} // namespace blockmon
