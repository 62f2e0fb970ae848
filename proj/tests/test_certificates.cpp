#include <catch2/catch_amalgamated.hpp>

#include "blockmon/certificates.hpp"
#include "blockmon/verify.hpp"

using namespace blockmon;

namespace {

std::vector<GroupElement> standard_basis(const Group& g) {
    std::vector<GroupElement> b;
    for (int i = 0; i < g.rank(); ++i) {
        std::vector<long long> c(g.rank(), 0);
        c[i] = 1;
        b.push_back({g, c});
    }
    return b;
}

} // namespace

TEST_CASE("rational arithmetic") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(19, 3).text() == "19/3");
    CHECK(Rational(4).text() == "4");
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(5, 3) < Rational(7, 4));
    CHECK_THROWS_AS(Rational(1, 0), input_error);
}

TEST_CASE("integer floor logarithm") {
    CHECK(floor_log(2, 1) == 0);
    CHECK(floor_log(2, 27) == 4);
    CHECK(floor_log(3, 27) == 3);
    CHECK(floor_log(3, 26) == 2);
    CHECK_THROWS_AS(floor_log(1, 5), input_error);
}

TEST_CASE("rank-r witness construction") {
    // C3^3 standard basis, k = (1,1,1)
    {
        Group g({3, 3, 3});
        auto w = prop_4_1_1_witness(g, standard_basis(g), {1, 1, 1});
        CHECK(w.lengths == LengthSet{2, 4});
        CHECK(w.element.length() == 8);
    }
    // C2^3: same exponents
    {
        Group g({2, 2, 2});
        auto w = prop_4_1_1_witness(g, standard_basis(g), {1, 1, 1});
        CHECK(w.lengths == LengthSet{2, 4});
    }
    // C5, k = (2)
    {
        Group g({5});
        auto w = prop_4_1_1_witness(g, standard_basis(g), {2});
        CHECK(w.lengths == LengthSet{2, 3});
    }
    // preconditions
    Group g({5});
    CHECK_THROWS_AS(prop_4_1_1_witness(g, standard_basis(g), {1}), input_error);  // sum = 1
    CHECK_THROWS_AS(prop_4_1_1_witness(g, standard_basis(g), {3}), input_error);  // 2k > ord
    Group h({3, 3});
    GroupElement x{h, {1, 0}};
    CHECK_THROWS_AS(prop_4_1_1_witness(h, {x, x}, {1, 1}), input_error); // dependent
}

TEST_CASE("order-n witness construction") {
    for (long long n : {3, 4, 6}) {
        Group g({n});
        auto w = prop_4_1_2_witness(GroupElement{g, {1}});
        CHECK(w.lengths == LengthSet{2, n});
    }
    Group g({4});
    CHECK_THROWS_AS(prop_4_1_2_witness(GroupElement{g, {2}}), input_error); // ord 2
}

TEST_CASE("subset lower bound") {
    {
        Group g({3, 3, 3});
        auto b = prop_4_1_3_lower_bound(g, SubsetSpec::all_of(g));
        REQUIRE(b.status == Prop413Bound::Status::applicable);
        CHECK(b.bound == 4); // max{3, 1+1+1+1}
    }
    {
        Group g({2, 4});
        auto b = prop_4_1_3_lower_bound(g, SubsetSpec::all_of(g));
        REQUIRE(b.status == Prop413Bound::Status::applicable);
        CHECK(b.bound == 4); // max{4, 1+1+2}
    }
    {
        auto subset = example_3_3_3_subset();
        auto b = prop_4_1_3_lower_bound(subset.group, subset);
        CHECK(b.status == Prop413Bound::Status::inapplicable);
    }
}

TEST_CASE("thm-4.2 bound arithmetic") {
    CHECK(theorem_4_2_bound(7, 4) == 4);  // max{floor(4.5), 4}
    CHECK(theorem_4_2_bound(2, 0) == 2);
    CHECK(theorem_4_2_bound(5, 3) == 3);  // floor(3.5) = 3
}

TEST_CASE("certification outcomes") {
    // factorial: C2
    {
        auto b = cached_bundle(SubsetSpec::all_of(Group({2})));
        CHECK(b->certificate.status == Certificate::Status::certified);
        CHECK(b->certificate.value == 0);
        CHECK(block_monoid_is_factorial(b->atoms));
        auto bracket = lemma_3_6_bracket(b->certificate.value);
        CHECK(bracket == std::pair<long long, long long>{0, 2});
    }
    // certified c = daleth: 3,3
    {
        auto b = cached_bundle(SubsetSpec::all_of(Group({3, 3})));
        CHECK(b->certificate.status == Certificate::Status::certified);
        CHECK(b->certificate.value == 3);
        CHECK_FALSE(block_monoid_is_factorial(b->atoms));
    }
    // bound-only: the finitely generated example
    {
        auto b = cached_bundle(example_3_3_3_subset());
        auto ds = empirical_delta(b->atoms, b->stabilizer, 16);
        std::optional<long long> maxd;
        if (!ds.values.empty()) maxd = ds.values.back();
        Certificate c = certify_catenary(b->atoms, b->pairs.daleth, b->pairs.c2, maxd);
        CHECK(c.status == Certificate::Status::bound_only);
        CHECK(c.lower == 3); // max(c2, 2 + 1)
        CHECK(c.upper == 3); // thm-4.2 value; the subset violates its premise
    }
}

TEST_CASE("bracket collapse") {
    CHECK(lemma_3_6_bracket(0) == std::pair<long long, long long>{0, 2});
    CHECK(lemma_3_6_bracket(2) == std::pair<long long, long long>{2, 2});
    CHECK(lemma_3_6_bracket(3) == std::pair<long long, long long>{3, 3});
}

TEST_CASE("the equality chain checker") {
    {
        auto b = cached_bundle(SubsetSpec::all_of(Group({3, 3, 3})));
        auto rep = corollary_4_3_check(b->subset.group, b->subset, b->atoms, b->pairs.daleth,
                                       b->pairs.c2);
        CHECK(rep.cond_a);
        CHECK(rep.cond_a_lhs == 4);
        CHECK(rep.cond_a_rhs == 4);
        CHECK(rep.cond_b.status == Prop413Bound::Status::applicable);
        CHECK(rep.chain_holds);
        CHECK(rep.chain_value == 4);
        CHECK(rep.max_delta_derived == 2);
    }
    {
        auto b = cached_bundle(SubsetSpec::all_of(Group({2, 4})));
        auto rep = corollary_4_3_check(b->subset.group, b->subset, b->atoms, b->pairs.daleth,
                                       b->pairs.c2);
        CHECK(rep.chain_holds);
        CHECK(rep.chain_value == 4);
    }
    {
        auto b = cached_bundle(example_3_3_3_subset());
        auto rep = corollary_4_3_check(b->subset.group, b->subset, b->atoms, b->pairs.daleth,
                                       b->pairs.c2);
        CHECK(rep.cond_b.status == Prop413Bound::Status::inapplicable);
        CHECK_FALSE(rep.chain_holds);
        CHECK(b->pairs.daleth.value == 0);
    }
}

TEST_CASE("daleth against the Davenport constant") {
    // cyclic groups: daleth = D = n
    for (long long n = 3; n <= 8; ++n) {
        auto b = cached_bundle(SubsetSpec::all_of(Group({n})));
        auto rep = corollary_4_6_check(b->subset.group, b->atoms, b->pairs.daleth);
        CHECK(rep.daleth_equals_davenport);
        CHECK(rep.daleth_value == n);
        CHECK(rep.group_cyclic_or_elementary2);
        CHECK(rep.consistent);
    }
    // elementary 2-group
    {
        auto b = cached_bundle(SubsetSpec::all_of(Group({2, 2, 2})));
        auto rep = corollary_4_6_check(b->subset.group, b->atoms, b->pairs.daleth);
        CHECK(rep.daleth_equals_davenport);
        CHECK(rep.daleth_value == 4);
        CHECK(rep.consistent);
    }
    // neither: 3,3 has daleth 3 < D = 5
    {
        auto b = cached_bundle(SubsetSpec::all_of(Group({3, 3})));
        auto rep = corollary_4_6_check(b->subset.group, b->atoms, b->pairs.daleth);
        CHECK_FALSE(rep.daleth_equals_davenport);
        CHECK(rep.daleth_value == 3);
        CHECK(rep.davenport_value == 5);
        CHECK_FALSE(rep.group_cyclic_or_elementary2);
        CHECK(rep.consistent);
    }
}

TEST_CASE("thm-5.4 bounds with exact rationals") {
    // frozen evaluation for 3,3,3 with D = 7: base 2, floor log = 4,
    // inner floor = 4*1 + floor(27/16) = 5, tight = max{3, 19/3}
    Theorem54Bounds t = theorem_5_4_bound(Group({3, 3, 3}), 7);
    CHECK(t.tight == Rational(19, 3));
    CHECK(t.relaxed == Rational(53, 6));
    CHECK(t.tight <= t.relaxed);

    for (const auto& fs :
         {std::vector<long long>{2}, {5}, {2, 4}, {3, 3}, {2, 2, 2}, {3, 3, 3}}) {
        Group g(fs);
        auto b = cached_bundle(SubsetSpec::all_of(g));
        Theorem54Bounds tb = theorem_5_4_bound(g, b->atoms.davenport);
        CHECK(tb.tight <= tb.relaxed);
        CHECK(Rational(b->pairs.daleth.value) <= tb.tight);
    }
}

TEST_CASE("greedy minimizer") {
    auto zeros = lemma_5_3_minimizer(Rational(0), {Rational(2), Rational(1)});
    CHECK(zeros == std::vector<Rational>{Rational(0), Rational(0)});

    auto full = lemma_5_3_minimizer(Rational(3), {Rational(2), Rational(1)});
    CHECK(full == std::vector<Rational>{Rational(2), Rational(1)});

    auto mid = lemma_5_3_minimizer(Rational(3), {Rational(2), Rational(2), Rational(1)});
    CHECK(mid == std::vector<Rational>{Rational(2), Rational(1), Rational(0)});

    CHECK_THROWS_AS(lemma_5_3_minimizer(Rational(9), {Rational(2)}), input_error);
    CHECK_THROWS_AS(lemma_5_3_minimizer(Rational(1), {Rational(1), Rational(2)}), input_error);
}

TEST_CASE("classifier") {
    CHECK(corollary_5_6_classify(Group(std::vector<long long>{})) == CatenaryClass::le2);
    CHECK(corollary_5_6_classify(Group({2})) == CatenaryClass::le2);
    CHECK(corollary_5_6_classify(Group({3})) == CatenaryClass::eq3);
    CHECK(corollary_5_6_classify(Group({2, 2})) == CatenaryClass::eq3);
    CHECK(corollary_5_6_classify(Group({3, 3})) == CatenaryClass::eq3);
    CHECK(corollary_5_6_classify(Group({4})) == CatenaryClass::eq4);
    CHECK(corollary_5_6_classify(Group({2, 4})) == CatenaryClass::eq4);
    CHECK(corollary_5_6_classify(Group({2, 2, 2})) == CatenaryClass::eq4);
    CHECK(corollary_5_6_classify(Group({3, 3, 3})) == CatenaryClass::eq4);
    CHECK(corollary_5_6_classify(Group({4, 4})) == CatenaryClass::ge5);
    CHECK(corollary_5_6_classify(Group({5})) == CatenaryClass::ge5);
    CHECK(corollary_5_6_classify(Group({2, 3})) == CatenaryClass::ge5); // C6
}

TEST_CASE("evidence for the >= 5 labels") {
    for (const auto& fs : {std::vector<long long>{5}, {6}, {7}, {2, 2, 4}, {4, 4}}) {
        Group g(fs);
        auto w = ge5_evidence(g);
        REQUIRE(w.has_value());
        CHECK(min_length_excluding_two(w->lengths) >= 5);
    }
}
