#pragma once

// Finite abelian groups in invariant-factor form, element arithmetic,
// structural constants, bases and automorphisms.
//
// Elements are handled at two levels: a friendly value type (GroupElement,
// a residue vector) and a dense index in [0, |G|) used by the enumeration
// engines. The index order is lexicographic on coordinate vectors; this is
// the canonical element order used everywhere downstream.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "blockmon/errors.hpp"

namespace blockmon {

namespace detail {

inline std::vector<std::pair<long long, int>> prime_power_split(long long n) {
    std::vector<std::pair<long long, int>> out;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// Normalize an arbitrary list of cyclic orders into invariant-factor form
// n_1 | n_2 | ... | n_r.  For each prime, sort its exponents descending;
// the k-th largest invariant factor is the product over primes of the k-th
// largest prime power.
inline std::vector<long long> invariant_factors(const std::vector<long long>& factors) {
    std::map<long long, std::vector<int>> by_prime;
    for (long long f : factors) {
        if (f < 2) throw input_error("group factors must be >= 2, got " + std::to_string(f));
        for (auto [p, e] : prime_power_split(f)) by_prime[p].push_back(e);
    }
    std::size_t rank = 0;
    for (auto& [p, es] : by_prime) {
        std::sort(es.begin(), es.end(), std::greater<int>());
        rank = std::max(rank, es.size());
    }
    std::vector<long long> inv(rank, 1);
    for (auto& [p, es] : by_prime) {
        for (std::size_t k = 0; k < es.size(); ++k) {
            long long pe = 1;
            for (int i = 0; i < es[k]; ++i) pe *= p;
            inv[k] *= pe; // inv[0] is the largest factor
        }
    }
    std::reverse(inv.begin(), inv.end()); // ascending, n_1 | ... | n_r
    return inv;
}

struct GroupData {
    std::vector<long long> factors; // invariant factors, ascending divisibility chain
    long long order = 1;
    int rank = 0;
    long long exponent = 1;
    std::vector<long long> strides;   // mixed radix, coords[0] most significant
    std::vector<int> neg_tbl;         // index -> index of the inverse
    std::vector<int> ord_tbl;         // index -> element order
    std::vector<int> add_tbl;         // full addition table when order is small
    bool has_add_tbl = false;

    static constexpr long long kMaxIndexedOrder = 1 << 22;
    static constexpr long long kAddTableMaxOrder = 512;

    explicit GroupData(std::vector<long long> inv) : factors(std::move(inv)) {
        rank = static_cast<int>(factors.size());
        for (long long f : factors) {
            order *= f;
            if (order > kMaxIndexedOrder)
                throw cap_exceeded("group order exceeds the indexable limit");
        }
        exponent = factors.empty() ? 1 : factors.back();
        strides.assign(rank, 1);
        for (int i = rank - 2; i >= 0; --i) strides[i] = strides[i + 1] * factors[i + 1];

        neg_tbl.resize(order);
        ord_tbl.resize(order);
        std::vector<long long> c(rank);
        for (long long i = 0; i < order; ++i) {
            decode(i, c);
            long long ni = 0, o = 1;
            for (int k = 0; k < rank; ++k) {
                ni += ((factors[k] - c[k]) % factors[k]) * strides[k];
                o = std::lcm(o, factors[k] / std::gcd(factors[k], c[k]));
            }
            neg_tbl[i] = static_cast<int>(ni);
            ord_tbl[i] = static_cast<int>(o);
        }
        if (order <= kAddTableMaxOrder) {
            has_add_tbl = true;
            add_tbl.resize(order * order);
            std::vector<long long> ca(rank), cb(rank);
            for (long long a = 0; a < order; ++a) {
                decode(a, ca);
                for (long long b = 0; b < order; ++b) {
                    decode(b, cb);
                    long long s = 0;
                    for (int k = 0; k < rank; ++k)
                        s += ((ca[k] + cb[k]) % factors[k]) * strides[k];
                    add_tbl[a * order + b] = static_cast<int>(s);
                }
            }
        }
    }

    void decode(long long idx, std::vector<long long>& out) const {
        for (int k = 0; k < rank; ++k) out[k] = (idx / strides[k]) % factors[k];
    }

    long long encode(const std::vector<long long>& coords) const {
        long long idx = 0;
        for (int k = 0; k < rank; ++k) {
            long long c = coords[k] % factors[k];
            if (c < 0) c += factors[k];
            idx += c * strides[k];
        }
        return idx;
    }

    int add(int a, int b) const {
        if (has_add_tbl) return add_tbl[static_cast<long long>(a) * order + b];
        long long s = 0;
        for (int k = 0; k < rank; ++k) {
            long long ca = (a / strides[k]) % factors[k];
            long long cb = (b / strides[k]) % factors[k];
            s += ((ca + cb) % factors[k]) * strides[k];
        }
        return static_cast<int>(s);
    }
};

} // namespace detail

// Immutable shared handle for a finite abelian group. Cheap to copy; two
// handles denote the same group iff their invariant factors coincide.
class Group {
public:
    Group() : d_(trivial_data()) {}
    explicit Group(const std::vector<long long>& factors)
        : d_(std::make_shared<const detail::GroupData>(detail::invariant_factors(factors))) {}

    const std::vector<long long>& factors() const { return d_->factors; }
    long long order() const { return d_->order; }
    int rank() const { return d_->rank; }
    long long exponent() const { return d_->exponent; }
    bool trivial() const { return d_->order == 1; }

    int add(int a, int b) const { return d_->add(a, b); }
    int neg(int a) const { return d_->neg_tbl[a]; }
    int order_of(int a) const { return d_->ord_tbl[a]; }
    int zero() const { return 0; }

    int scalar_mul(long long k, int a) const {
        long long o = d_->ord_tbl[a];
        k %= o;
        if (k < 0) k += o;
        int acc = 0;
        for (long long i = 0; i < k; ++i) acc = add(acc, a);
        return acc;
    }

    std::vector<long long> coords_of(int idx) const {
        std::vector<long long> c(d_->rank);
        d_->decode(idx, c);
        return c;
    }
    int index_of(const std::vector<long long>& coords) const {
        if (static_cast<int>(coords.size()) != d_->rank)
            throw input_error("coordinate vector has wrong rank");
        return static_cast<int>(d_->encode(coords));
    }

    // "3,3,3"; the trivial group is spelled "1".
    std::string label() const {
        if (d_->factors.empty()) return "1";
        std::ostringstream os;
        for (std::size_t i = 0; i < d_->factors.size(); ++i) {
            if (i) os << ',';
            os << d_->factors[i];
        }
        return os.str();
    }

    std::string element_text(int idx) const {
        std::ostringstream os;
        auto c = coords_of(idx);
        os << '(';
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) os << ',';
            os << c[k];
        }
        os << ')';
        return os.str();
    }

    friend bool operator==(const Group& a, const Group& b) {
        return a.d_ == b.d_ || a.d_->factors == b.d_->factors;
    }
    friend bool operator!=(const Group& a, const Group& b) { return !(a == b); }

private:
    std::shared_ptr<const detail::GroupData> d_;

    static std::shared_ptr<const detail::GroupData> trivial_data() {
        static const auto t = std::make_shared<const detail::GroupData>(std::vector<long long>{});
        return t;
    }
};

inline Group make_group(const std::vector<long long>& factors) { return Group(factors); }

// Residue vector in the ambient group; coords[i] in [0, n_i).
struct GroupElement {
    Group group;
    std::vector<long long> coords;

    int index() const { return group.index_of(coords); }
    std::string text() const { return group.element_text(index()); }
};

inline GroupElement element_at(const Group& g, int idx) { return {g, g.coords_of(idx)}; }

inline void require_same_group(const GroupElement& a, const GroupElement& b) {
    if (a.group != b.group) throw input_error("elements belong to different groups");
}

inline GroupElement add(const GroupElement& a, const GroupElement& b) {
    require_same_group(a, b);
    return element_at(a.group, a.group.add(a.index(), b.index()));
}

inline GroupElement neg(const GroupElement& a) {
    return element_at(a.group, a.group.neg(a.index()));
}

inline GroupElement scalar_mul(long long k, const GroupElement& a) {
    return element_at(a.group, a.group.scalar_mul(k, a.index()));
}

inline long long order_of(const GroupElement& a) { return a.group.order_of(a.index()); }

inline long long d_star(const Group& g) {
    long long s = 0;
    for (long long f : g.factors()) s += f - 1;
    return s;
}

inline int two_rank(const Group& g) {
    int r = 0;
    for (long long f : g.factors())
        if (f % 2 == 0) ++r;
    return r;
}

// All |G| elements exactly once, in canonical (lexicographic) order.
inline std::vector<GroupElement> elements(const Group& g) {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(g.order()));
    for (long long i = 0; i < g.order(); ++i) out.push_back(element_at(g, static_cast<int>(i)));
    return out;
}

// Subgroup generated by the given element indices, as a sorted index list.
inline std::vector<int> subgroup_span(const Group& g, const std::vector<int>& gens) {
    std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
    std::vector<int> frontier{0};
    in[0] = 1;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier) {
            for (int e : gens) {
                int y = g.add(x, e);
                if (!in[y]) {
                    in[y] = 1;
                    next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<int> out;
    for (long long i = 0; i < g.order(); ++i)
        if (in[i]) out.push_back(static_cast<int>(i));
    return out;
}

// Independence in the paper's sense: the sum of the cyclic subgroups is
// direct, i.e. |<e_1,...,e_k>| = prod ord(e_i). All inputs must be nonzero.
inline bool is_independent(const std::vector<GroupElement>& elems) {
    if (elems.empty()) return true;
    const Group& g = elems.front().group;
    std::vector<int> idx;
    long long expect = 1;
    for (const auto& e : elems) {
        if (e.group != g) throw input_error("elements belong to different groups");
        int i = e.index();
        if (i == 0) throw input_error("independence is defined for nonzero elements");
        idx.push_back(i);
        expect *= g.order_of(i);
        if (expect > g.order()) return false;
    }
    return static_cast<long long>(subgroup_span(g, idx).size()) == expect;
}

inline bool is_basis(const std::vector<GroupElement>& elems) {
    if (elems.empty()) return true; // vacuous basis of the trivial group
    const Group& g = elems.front().group;
    std::vector<int> idx;
    for (const auto& e : elems) idx.push_back(e.index());
    return is_independent(elems) &&
           static_cast<long long>(subgroup_span(g, idx).size()) == g.order();
}

// --- basis search for the corollary-4.3 style condition (b) --------------
//
// Searches for a basis (e_1,...,e_r) of G with ord(e_i) = n_i drawn from a
// pool, such that {e_0,...,e_r, -e_0,...,-e_r} lies inside the allowed set,
// where e_0 = sum floor(n_i/2) e_i. Exhaustive below the search cap.

struct BasisSearch {
    enum class Status { found, none, not_attempted };
    Status status = Status::none;
    std::vector<GroupElement> basis;
    std::optional<GroupElement> e0;
};

namespace detail {

inline bool basis_dfs(const Group& g, const std::vector<char>& allowed,
                      const std::vector<long long>& orders, std::size_t depth,
                      std::vector<int>& picked, std::vector<char>& span_mask,
                      long long span_size) {
    const int n = static_cast<int>(g.order());
    if (depth == orders.size()) {
        if (span_size != g.order()) return false;
        int e0 = 0;
        for (std::size_t i = 0; i < picked.size(); ++i)
            e0 = g.add(e0, g.scalar_mul(g.factors()[i] / 2, picked[i]));
        return allowed[e0] && allowed[g.neg(e0)];
    }
    for (int cand = 1; cand < n; ++cand) {
        if (!allowed[cand] || !allowed[g.neg(cand)]) continue;
        if (g.order_of(cand) != orders[depth]) continue;
        if (span_mask[cand]) continue; // <picked> already contains cand: sum not direct
        // grow the span to span + <cand> and check directness by cardinality
        std::vector<char> mask2 = span_mask;
        long long added = 0;
        for (int x = 0; x < n; ++x) {
            if (!span_mask[x]) continue;
            int y = x;
            for (long long k = 1; k < orders[depth]; ++k) {
                y = g.add(y, cand);
                if (!mask2[y]) {
                    mask2[y] = 1;
                    ++added;
                }
            }
        }
        long long size2 = span_size + added;
        if (size2 != span_size * orders[depth]) continue; // not independent
        picked.push_back(cand);
        if (basis_dfs(g, allowed, orders, depth + 1, picked, mask2, size2)) return true;
        picked.pop_back();
    }
    return false;
}

} // namespace detail

inline BasisSearch find_basis_with_orders(const Group& g, const std::vector<int>& allowed_idx,
                                          const std::vector<long long>& orders,
                                          long long search_cap = 81) {
    BasisSearch res;
    if (g.order() > search_cap) {
        res.status = BasisSearch::Status::not_attempted;
        return res;
    }
    std::vector<char> allowed(static_cast<std::size_t>(g.order()), 0);
    for (int i : allowed_idx) allowed[i] = 1;
    if (orders.empty()) {
        // trivial group: e_0 = 0 must itself be allowed
        if (allowed.empty() || allowed[0]) {
            res.status = BasisSearch::Status::found;
            res.e0 = element_at(g, 0);
        }
        return res;
    }
    std::vector<int> picked;
    std::vector<char> span_mask(static_cast<std::size_t>(g.order()), 0);
    span_mask[0] = 1;
    if (detail::basis_dfs(g, allowed, orders, 0, picked, span_mask, 1)) {
        res.status = BasisSearch::Status::found;
        for (int i : picked) res.basis.push_back(element_at(g, i));
        int e0 = 0;
        for (std::size_t i = 0; i < picked.size(); ++i)
            e0 = g.add(e0, g.scalar_mul(g.factors()[i] / 2, picked[i]));
        res.e0 = element_at(g, e0);
    }
    return res;
}

// --- automorphisms --------------------------------------------------------

// One automorphism, stored as a permutation of element indices together
// with the images of the standard generators.
struct Automorphism {
    std::vector<int> perm;
    std::vector<int> basis_images;

    int apply(int idx) const { return perm[idx]; }
};

struct AutomorphismSet {
    enum class Status { available, unavailable };
    Status status = Status::unavailable;
    std::vector<Automorphism> maps;

    bool available() const { return status == Status::available; }
};

namespace detail {

// standard generators: e_i = the i-th coordinate vector
inline std::vector<int> standard_generators(const Group& g) {
    std::vector<int> gens;
    for (int k = 0; k < g.rank(); ++k) {
        std::vector<long long> c(g.rank(), 0);
        c[k] = 1;
        gens.push_back(g.index_of(c));
    }
    return gens;
}

inline Automorphism perm_from_images(const Group& g, const std::vector<int>& images) {
    // element with coords (a_1,...,a_r) maps to sum a_k * images[k]
    const int n = static_cast<int>(g.order());
    Automorphism a;
    a.basis_images = images;
    a.perm.assign(n, 0);
    std::vector<long long> c(g.rank());
    for (int i = 0; i < n; ++i) {
        c = g.coords_of(i);
        int y = 0;
        for (int k = 0; k < g.rank(); ++k) y = g.add(y, g.scalar_mul(c[k], images[k]));
        a.perm[i] = y;
    }
    return a;
}

inline bool images_give_bijection(const Group& g, const std::vector<int>& images) {
    const int n = static_cast<int>(g.order());
    std::vector<char> hit(n, 0);
    std::vector<long long> c(g.rank());
    for (int i = 0; i < n; ++i) {
        c = g.coords_of(i);
        int y = 0;
        for (int k = 0; k < g.rank(); ++k) y = g.add(y, g.scalar_mul(c[k], images[k]));
        if (hit[y]) return false;
        hit[y] = 1;
    }
    return true;
}

// Elementary abelian p^r: automorphisms are the invertible r x r matrices
// over Z/pZ, generated row by row keeping rows independent.
inline void glp_dfs(const Group& g, long long p, int r, std::vector<int>& rows,
                    std::vector<char>& span, std::vector<Automorphism>& out,
                    std::size_t map_cap, bool& overflow) {
    if (overflow) return;
    if (static_cast<int>(rows.size()) == r) {
        if (out.size() >= map_cap) {
            overflow = true;
            return;
        }
        out.push_back(perm_from_images(g, rows));
        return;
    }
    const int n = static_cast<int>(g.order());
    for (int cand = 1; cand < n; ++cand) {
        if (span[cand]) continue;
        // extend span by all p-multiples of cand added to existing span
        std::vector<char> span2 = span;
        for (int x = 0; x < n; ++x) {
            if (!span[x]) continue;
            int y = x;
            for (long long k = 1; k < p; ++k) {
                y = g.add(y, cand);
                span2[y] = 1;
            }
        }
        rows.push_back(cand);
        glp_dfs(g, p, r, rows, span2, out, map_cap, overflow);
        rows.pop_back();
        if (overflow) return;
    }
}

inline void generic_aut_dfs(const Group& g, const std::vector<int>& gens,
                            std::vector<int>& images, std::vector<Automorphism>& out,
                            std::size_t map_cap, bool& overflow) {
    if (overflow) return;
    const int r = static_cast<int>(gens.size());
    const int depth = static_cast<int>(images.size());
    if (depth == r) {
        if (images_give_bijection(g, images)) {
            if (out.size() >= map_cap) {
                overflow = true;
                return;
            }
            out.push_back(perm_from_images(g, images));
        }
        return;
    }
    const long long nd = g.factors()[depth];
    const int n = static_cast<int>(g.order());
    for (int cand = 0; cand < n; ++cand) {
        if (g.order_of(cand) > nd || nd % g.order_of(cand) != 0) continue;
        // partial injectivity: the induced map on <g_1..g_depth+1> must be injective
        images.push_back(cand);
        long long sub = 1;
        for (int k = 0; k <= depth; ++k) sub *= g.factors()[k];
        std::vector<char> hit(n, 0);
        bool inj = true;
        std::vector<long long> c(depth + 1);
        for (long long t = 0; t < sub && inj; ++t) {
            long long tt = t;
            int y = 0;
            for (int k = depth; k >= 0; --k) {
                c[k] = tt % g.factors()[k];
                tt /= g.factors()[k];
                y = g.add(y, g.scalar_mul(c[k], images[k]));
            }
            if (hit[y]) inj = false;
            hit[y] = 1;
        }
        if (inj) generic_aut_dfs(g, gens, images, out, map_cap, overflow);
        images.pop_back();
        if (overflow) return;
    }
}

} // namespace detail

// Full automorphism group: exact matrix enumeration for elementary abelian
// p-groups, brute force over generator images otherwise (gated by
// brute_force_order_cap). Unavailability is a valid outcome; callers fall
// back to unreduced loops.
inline AutomorphismSet automorphisms(const Group& g, long long brute_force_order_cap = 64,
                                     std::size_t map_cap = 200000) {
    AutomorphismSet set;
    if (g.trivial()) {
        set.status = AutomorphismSet::Status::available;
        Automorphism id;
        id.perm = {0};
        set.maps.push_back(std::move(id));
        return set;
    }
    const auto& fs = g.factors();
    const bool elementary = std::all_of(fs.begin(), fs.end(), [&](long long f) { return f == fs[0]; }) &&
                            detail::prime_power_split(fs[0]).size() == 1 &&
                            detail::prime_power_split(fs[0])[0].second == 1;
    bool overflow = false;
    if (elementary) {
        std::vector<int> rows;
        std::vector<char> span(static_cast<std::size_t>(g.order()), 0);
        span[0] = 1;
        detail::glp_dfs(g, fs[0], g.rank(), rows, span, set.maps, map_cap, overflow);
    } else {
        if (g.order() > brute_force_order_cap) return set; // unavailable
        auto gens = detail::standard_generators(g);
        std::vector<int> images;
        detail::generic_aut_dfs(g, gens, images, set.maps, map_cap, overflow);
    }
    if (overflow) {
        set.maps.clear();
        return set; // unavailable: too many maps to hold
    }
    set.status = AutomorphismSet::Status::available;
    return set;
}

} // namespace blockmon
