#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "blockmon/group.hpp"

using namespace blockmon;

TEST_CASE("make_group normalizes to invariant-factor form") {
    CHECK(Group(std::vector<long long>{}).label() == "1");
    CHECK(Group({3, 3, 3}).label() == "3,3,3");
    CHECK(Group({2, 3}).label() == "6");
    CHECK(Group({6, 4}).label() == "2,12");
    CHECK(Group({2, 2, 3}).label() == "2,6");
    CHECK(Group({4, 6, 10}).label() == "2,2,60");
    // idempotent on normalized input
    Group g({2, 12});
    CHECK(Group(g.factors()).label() == g.label());
    CHECK_THROWS_AS(Group({1, 3}), input_error);
    CHECK_THROWS_AS(Group({0}), input_error);
}

TEST_CASE("trivial group") {
    Group g(std::vector<long long>{});
    CHECK(g.order() == 1);
    CHECK(g.rank() == 0);
    CHECK(g.exponent() == 1);
    CHECK(d_star(g) == 0);
    CHECK(elements(g).size() == 1);
    CHECK(g.element_text(0) == "()");
}

TEST_CASE("element arithmetic") {
    Group g({3, 3});
    GroupElement a{g, {1, 2}};
    GroupElement b{g, {2, 2}};
    CHECK(add(a, b).coords == std::vector<long long>{0, 1});
    CHECK(add(a, neg(a)).index() == 0);
    for (const auto& x : elements(g)) {
        CHECK(scalar_mul(g.exponent(), x).index() == 0);
        CHECK(add(x, neg(x)).index() == 0);
        CHECK(g.exponent() % order_of(x) == 0);
    }
    Group h({9});
    CHECK_THROWS_AS(add(a, GroupElement{h, {1}}), input_error);
}

TEST_CASE("element order") {
    Group t(std::vector<long long>{});
    CHECK(order_of(element_at(t, 0)) == 1);
    Group c4({4});
    CHECK(order_of(GroupElement{c4, {1}}) == 4);
    Group g({2, 4});
    CHECK(order_of(GroupElement{g, {1, 2}}) == 2);
}

TEST_CASE("structural constants") {
    CHECK(d_star(Group({3, 3, 3})) == 6);
    CHECK(d_star(Group({2, 4})) == 4);
    CHECK(two_rank(Group({3, 3, 3})) == 0);
    CHECK(two_rank(Group({2, 4})) == 2);
    CHECK(two_rank(Group({2, 2, 2})) == 3);
}

TEST_CASE("elements iterate in lexicographic coordinate order") {
    Group g({3, 3});
    auto es = elements(g);
    REQUIRE(es.size() == 9);
    CHECK(es.front().coords == std::vector<long long>{0, 0});
    CHECK(es.back().coords == std::vector<long long>{2, 2});
    std::set<int> distinct;
    for (const auto& e : es) distinct.insert(e.index());
    CHECK(distinct.size() == 9);
    Group c2({2});
    CHECK(elements(c2).size() == 2);
}

TEST_CASE("independence and bases") {
    Group g({3, 3, 3});
    std::vector<GroupElement> std_basisitems;
    for (int i = 0; i < 3; ++i) {
        std::vector<long long> c(3, 0);
        c[i] = 1;
        std_basisitems.push_back({g, c});
    }
    CHECK(is_independent(std_basisitems));
    CHECK(is_basis(std_basisitems));
    GroupElement x{g, {1, 0, 0}};
    CHECK_FALSE(is_independent({x, x}));
    CHECK_THROWS_AS(is_independent({element_at(g, 0)}), input_error);

    // subgroup-closure oracle: {(1,0),(1,1)} spans all of C3 x C3
    Group h({3, 3});
    GroupElement u{h, {1, 0}};
    GroupElement v{h, {1, 1}};
    CHECK(subgroup_span(h, {u.index(), v.index()}).size() == 9);
    CHECK(is_basis({u, v}));
}

TEST_CASE("basis search honors the subset condition") {
    Group g({3, 3, 3});
    // full subset: the standard basis qualifies
    std::vector<int> all;
    for (long long i = 0; i < g.order(); ++i) all.push_back(static_cast<int>(i));
    auto ok = find_basis_with_orders(g, all, g.factors());
    REQUIRE(ok.status == BasisSearch::Status::found);
    CHECK(ok.basis.size() == 3);
    REQUIRE(ok.e0.has_value());
    CHECK(all[static_cast<std::size_t>(ok.e0->index())] == ok.e0->index());

    // negatives absent: no qualifying basis exists
    int e1 = g.index_of({1, 0, 0});
    int e2 = g.index_of({0, 1, 0});
    int e3 = g.index_of({0, 0, 1});
    int e0 = g.neg(g.add(e1, g.add(e2, e3)));
    auto none = find_basis_with_orders(g, {e0, e1, e2, e3}, g.factors());
    CHECK(none.status == BasisSearch::Status::none);

    // cap exceeded reports "not attempted"
    auto skip = find_basis_with_orders(g, all, g.factors(), 8);
    CHECK(skip.status == BasisSearch::Status::not_attempted);

    // trivial group: vacuous basis when the zero class is allowed
    Group t(std::vector<long long>{});
    auto vac = find_basis_with_orders(t, {0}, {});
    CHECK(vac.status == BasisSearch::Status::found);
    CHECK(vac.basis.empty());
}

TEST_CASE("automorphism counts") {
    auto c2 = automorphisms(Group({2}));
    REQUIRE(c2.available());
    CHECK(c2.maps.size() == 1);

    auto c33 = automorphisms(Group({3, 3}));
    REQUIRE(c33.available());
    CHECK(c33.maps.size() == 48); // |GL(2,3)| = (9-1)(9-3)

    auto c333 = automorphisms(Group({3, 3, 3}));
    REQUIRE(c333.available());
    CHECK(c333.maps.size() == 11232); // |GL(3,3)| = (27-1)(27-3)(27-9)

    auto c24 = automorphisms(Group({2, 4}));
    REQUIRE(c24.available());
    CHECK(c24.maps.size() == 8);
}

TEST_CASE("automorphisms preserve the group structure") {
    std::mt19937_64 rng(7);
    for (const auto& fs : {std::vector<long long>{3, 3}, {2, 4}, {6}}) {
        Group g(fs);
        auto aut = automorphisms(g);
        REQUIRE(aut.available());
        // pairwise distinct
        std::set<std::vector<int>> perms;
        for (const auto& a : aut.maps) perms.insert(a.perm);
        CHECK(perms.size() == aut.maps.size());
        for (int trial = 0; trial < 100; ++trial) {
            const auto& a = aut.maps[rng() % aut.maps.size()];
            int x = static_cast<int>(rng() % static_cast<std::uint64_t>(g.order()));
            int y = static_cast<int>(rng() % static_cast<std::uint64_t>(g.order()));
            CHECK(a.apply(g.add(x, y)) == g.add(a.apply(x), a.apply(y)));
            CHECK(a.apply(g.neg(x)) == g.neg(a.apply(x)));
        }
    }
}
