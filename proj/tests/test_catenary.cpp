#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "blockmon/catenary.hpp"
#include "blockmon/verify.hpp"

using namespace blockmon;

namespace {

std::shared_ptr<GroupBundle> bundle_of(std::vector<long long> fs) {
    return cached_bundle(SubsetSpec::all_of(Group(std::move(fs))));
}

} // namespace

TEST_CASE("unique factorization means catenary zero") {
    Group g({5});
    Sequence atom(g, {{1, 1}, {4, 1}});
    auto ca = catenary_of_element(atom);
    CHECK(ca.catenary == 0);
    CHECK(ca.factorization_count == 1);
    CHECK_FALSE(ca.witness_pair.has_value());
}

TEST_CASE("catenary of g^n (-g)^n over C_n equals n") {
    for (long long n : {3, 4, 5, 6}) {
        Group g({n});
        Sequence A(g, {{1, static_cast<int>(n)}, {static_cast<int>(g.neg(1)), static_cast<int>(n)}});
        auto ca = catenary_of_element(A);
        CHECK(ca.catenary == n);
        CHECK(ca.catenary == oracle::catenary_direct(A));
        REQUIRE(ca.witness_pair.has_value());
        CHECK(distance(ca.witness_pair->first, ca.witness_pair->second) == ca.catenary);
    }
}

TEST_CASE("the worked 3,3 element has catenary 3") {
    Group g({3, 3});
    const int e1 = g.index_of({1, 0});
    const int e2 = g.index_of({0, 1});
    const int e0 = g.neg(g.add(e1, e2));
    Sequence V = Sequence::from_elements(g, {e0, e1, e2});
    Sequence A = mul(mul(V, V), V);
    auto ca = catenary_of_element(A);
    CHECK(ca.factorization_count == 2);
    CHECK(ca.catenary == 3);
}

TEST_CASE("catenary against the connectivity oracle on random elements") {
    std::mt19937_64 rng(41);
    auto b = bundle_of({2, 4});
    const Group& g = b->subset.group;
    for (int trial = 0; trial < 100; ++trial) {
        Sequence A(g);
        int parts = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < parts; ++i)
            A = mul(A, b->atoms.atoms[rng() % b->atoms.atoms.size()]);
        REQUIRE(catenary_of_element(A).catenary == oracle::catenary_direct(A));
    }
}

TEST_CASE("daleth and c2 on tiny groups") {
    auto b2 = bundle_of({2});
    CHECK(b2->pairs.daleth.value == 0);
    CHECK(b2->pairs.c2.value == 0);

    auto b33 = bundle_of({3, 3});
    CHECK(b33->pairs.daleth.value == 3);
    CHECK(b33->pairs.c2.value == 3);
    REQUIRE(b33->pairs.daleth.witness.has_value());
    CHECK(min_length_excluding_two(b33->pairs.daleth.witness->lengths) == 3);

    auto b4 = bundle_of({4});
    CHECK(b4->pairs.daleth.value == 4);
    CHECK(b4->pairs.c2.value == 4);
}

TEST_CASE("the finitely generated example subset has vanishing pair invariants") {
    auto b = cached_bundle(example_3_3_3_subset());
    CHECK(b->atoms.atoms.size() == 5);
    CHECK(b->atoms.davenport == 4);
    CHECK(b->pairs.daleth.value == 0);
    CHECK(b->pairs.c2.value == 0);
}

TEST_CASE("reduced and unreduced pair scans agree") {
    for (const auto& fs : {std::vector<long long>{2, 2, 2}, {3, 3}, {4}}) {
        Group g(fs);
        auto set = enumerate_atoms(SubsetSpec::all_of(g));
        auto autos = automorphisms(g);
        auto stab = subset_stabilizer(set.subset, autos);
        auto reduced = pair_scan(set, stab);
        auto plain = pair_scan(set, {});
        CHECK(reduced.daleth.value == plain.daleth.value);
        CHECK(reduced.c2.value == plain.c2.value);
        CHECK(reduced.daleth.symmetry_reduced);
        CHECK_FALSE(plain.daleth.symmetry_reduced);
    }
}

TEST_CASE("pair scans are deterministic across worker counts") {
    Group g({3, 3});
    auto set = enumerate_atoms(SubsetSpec::all_of(g));
    auto autos = automorphisms(g);
    auto stab = subset_stabilizer(set.subset, autos);
    ScanOptions one;
    one.workers = 1;
    ScanOptions four;
    four.workers = 4;
    auto a = pair_scan(set, stab, one);
    auto b = pair_scan(set, stab, four);
    CHECK(a.daleth.value == b.daleth.value);
    CHECK(a.daleth.pairs_examined == b.daleth.pairs_examined);
    REQUIRE(a.daleth.witness.has_value());
    REQUIRE(b.daleth.witness.has_value());
    CHECK(a.daleth.witness->u == b.daleth.witness->u);
    CHECK(a.daleth.witness->v == b.daleth.witness->v);
    CHECK(a.c2.value == b.c2.value);
    CHECK(a.c2.witness->u == b.c2.witness->u);
}

TEST_CASE("empirical c_k scans") {
    auto b = bundle_of({3, 3});
    // k = 1 is always zero
    auto k1 = empirical_ck(b->atoms, b->stabilizer, 1, 14);
    CHECK(k1.value == 0);
    // k = 2 at cap 14 matches the exact pair value
    auto k2 = empirical_ck(b->atoms, b->stabilizer, 2, 14);
    CHECK(k2.value == 3);
    CHECK(k2.complete);
    REQUIRE(k2.witness.has_value());
    CHECK(catenary_of_element(*k2.witness).catenary == 3);
    // monotone in k and cap
    auto k3 = empirical_ck(b->atoms, b->stabilizer, 3, 14);
    CHECK(k3.value >= k2.value);
    auto k2small = empirical_ck(b->atoms, b->stabilizer, 2, 8);
    CHECK(k2small.value <= k2.value);
}

TEST_CASE("empirical delta scans") {
    // factorial monoid: empty distance set
    auto b2 = bundle_of({2});
    auto d2 = empirical_delta(b2->atoms, b2->stabilizer, 14);
    CHECK(d2.values.empty());

    // the finitely generated example: {1} at cap 16, exhaustively
    auto bex = cached_bundle(example_3_3_3_subset());
    auto dex = empirical_delta(bex->atoms, bex->stabilizer, 16);
    CHECK(dex.mode == DeltaScan::Mode::exhaustive);
    CHECK(dex.complete);
    CHECK(dex.values == std::vector<long long>{1});

    // 3,3 at cap 14: max distance 1 (daleth - 2)
    auto b33 = bundle_of({3, 3});
    auto d33 = empirical_delta(b33->atoms, b33->stabilizer, 14);
    REQUIRE_FALSE(d33.values.empty());
    CHECK(d33.values.back() == 1);
    REQUIRE(d33.witness_max.has_value());
    auto L = length_set(*d33.witness_max);
    CHECK(delta_set(L).back() == 1);
}

TEST_CASE("empirical ck witness for the finitely generated example") {
    auto b = cached_bundle(example_3_3_3_subset());
    auto ck = empirical_ck(b->atoms, b->stabilizer, 4, 16);
    CHECK(ck.value == 4);
    REQUIRE(ck.witness.has_value());
    CHECK(catenary_of_element(*ck.witness).catenary == 4);
}
