#include "doctest.h"
#include "test_models.hpp"

#include "seltop/model.hpp"
#include "seltop/symbolic_set.hpp"

#include <random>

using namespace seltop;
using namespace fixtures;

TEST_CASE("parse accepts the basic models") {
    SymbolicSpace sp = m1();
    CHECK(sp.name == "m1");
    CHECK(sp.region_count() == 2);
    CHECK(sp.finite_component_count() == 2);

    SymbolicSpace f = m4();
    CHECK(f.region_count() == 1); // the explicit limit point merges into the family
    CHECK(!f.finite_component_count());
    const FamilyRegion& fam = f.regions[0].family();
    CHECK(fam.member_lo(3) == rat(5, 64));
    CHECK(fam.member_hi(3) == rat(3, 32));
}

TEST_CASE("parse rejects bad models") {
    CHECK_THROWS_AS(parse_model("space empty\n"), ParseError);
    CHECK_THROWS_AS(parse_model("space x\nsegment 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_model("space x\nsegment 0 1\npoint 1/2\n"), ParseError); // overlap
    CHECK_THROWS_AS(parse_model("space x\npoint 2\nsegment 0 1\n"), ParseError);   // order
    CHECK_THROWS_AS(parse_model("space x\nsegment 0 1\npoint 1\n"), ParseError);   // touching
    // self-intersecting family: ratio*seg_hi >= seg_lo
    CHECK_THROWS_AS(parse_model("space x\nfamily limit=0 side=right ratio=1/2 seg=1/8..3/4\n"), ParseError);
    CHECK_THROWS_AS(parse_model("space x\nfamily limit=0 side=right ratio=2 seg=5/8..3/4\n"), ParseError);
    try {
        parse_model("space x\nsegment 0 1\npoint 1/2\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("membership and component lookup") {
    SymbolicSpace sp = m4();
    CHECK(sp.contains(Rational(0)));
    CHECK(sp.contains(rat(5, 8)));
    CHECK(sp.contains(rat(3, 32)));
    CHECK(!sp.contains(rat(1, 2)));  // gap between S_0 and S_1
    CHECK(!sp.contains(rat(-1, 8)));
    CHECK(!sp.contains(Rational(1)));

    ComponentRef c = component_of(sp, rat(11, 16));
    CHECK(c.member == 0);
    CHECK(component_of(sp, Rational(0)).member == ComponentRef::kLimit);
    CHECK(component_of(sp, rat(5, 32)).member == 2);
    CHECK_THROWS(component_of(sp, rat(1, 2)));
}

TEST_CASE("components stream in index order") {
    SymbolicSpace sp = m4();
    auto comps = SymbolicSet::full_set(sp).components_prefix(4);
    REQUIRE(comps.size() == 4);
    CHECK(comps[0].member == ComponentRef::kLimit);
    CHECK(comps[1].member == 0);
    CHECK(comps[2].member == 1);
    CHECK(comps[3].member == 2);

    auto tail = SymbolicSet::family_tail(sp, 0, 3, false).components_prefix(3);
    REQUIRE(tail.size() == 3);
    CHECK(tail[0].member == 3);
    CHECK(tail[1].member == 4);
    CHECK(tail[2].member == 5);

    SymbolicSpace two = m1();
    auto both = SymbolicSet::full_set(two).components_prefix(10);
    REQUIRE(both.size() == 2);
    CHECK(both[0].region == 0);
    CHECK(both[1].region == 1);

    // a half-open cut of a segment is not open: rejected with a certificate
    SymbolicSet bad = SymbolicSet::interval(two, rat(1, 4), true, std::nullopt, true);
    CHECK_THROWS_AS(ComponentStream{bad}, NotClopenError);
}

TEST_CASE("lr flags") {
    SymbolicSpace f = m4();
    auto [l0, r0] = lr_flags(f, component_of(f, Rational(0)));
    CHECK(l0 == 0);
    CHECK(r0 == 1);
    auto [l1, r1] = lr_flags(f, component_of(f, rat(5, 8)));
    CHECK(l1 == 0);
    CHECK(r1 == 0);

    SymbolicSpace sp = m1();
    auto [l2, r2] = lr_flags(sp, component_of(sp, rat(1, 2)));
    CHECK(l2 == 0);
    CHECK(r2 == 0);
    SymbolicSpace sp2 = m2();
    auto [l3, r3] = lr_flags(sp2, component_of(sp2, rat(5, 2)));
    CHECK(l3 == 0);
    CHECK(r3 == 0);

    SymbolicSpace five = m5();
    auto [l4, r4] = lr_flags(five, component_of(five, Rational(2)));
    CHECK(l4 == 1);
    CHECK(r4 == 0);
}

TEST_CASE("delta neighborhood case split") {
    SymbolicSpace sp = m4();
    ComponentRef s0 = component_of(sp, rat(5, 8));
    // both flags zero: Delta is the component itself, for every eps
    CHECK(delta_neighborhood(sp, s0, rat(1, 100)) == SymbolicSet::component_set(sp, s0));
    CHECK(delta_neighborhood(sp, s0, Rational(10)) == SymbolicSet::component_set(sp, s0));

    // limit of m4: l=0, r=1, Delta({0}, 1/4) = [0, 1/8) ∩ X
    ComponentRef lim = component_of(sp, Rational(0));
    SymbolicSet d = delta_neighborhood(sp, lim, rat(1, 4));
    CHECK(d == SymbolicSet::interval(sp, Rational(0), true, rat(1, 8), false));
    CHECK(d.is_open());
    CHECK(SymbolicSet::component_set(sp, lim).subset_of(d));

    // both-sides case via explicit flags: the plain eps/2 ball
    SymbolicSet both = delta_by_flags(sp, lim, rat(1, 4), 1, 1);
    CHECK(both == metric_ball(SymbolicSet::component_set(sp, lim), rat(1, 8)));
}

TEST_CASE("delta invariants: containment, openness, shrinking") {
    SymbolicSpace sp = m4();
    for (const Rational& eps : {rat(1, 2), rat(1, 8), rat(1, 64)}) {
        for (int m = -1; m < 4; ++m) {
            ComponentRef c = make_component(sp, 0, m); // -1 is the limit
            SymbolicSet d = delta_neighborhood(sp, c, eps);
            CHECK(SymbolicSet::component_set(sp, c).subset_of(d));
            CHECK(d.is_open());
            CHECK(d.subset_of(metric_ball(SymbolicSet::component_set(sp, c), eps * rat(1, 2))));
        }
    }
    // shrinking: Delta(C, eps) fits into any open U around C for some eps = 2^-k
    ComponentRef lim = component_of(sp, Rational(0));
    SymbolicSet u = SymbolicSet::interval(sp, Rational(0), true, rat(1, 8), false);
    auto eps = shrink_to_fit(sp, lim, u, 20);
    REQUIRE(eps.has_value());
    CHECK(*eps == rat(1, 4)); // [0, eps/2) ⊆ [0,1/8) first at eps = 1/4
    CHECK(delta_neighborhood(sp, lim, *eps).subset_of(u));
}

TEST_CASE("small-neighbor bound: components inside Delta(C,eps) have diam <= eps/2") {
    SymbolicSpace sp = m4();
    for (const Rational& eps : {Rational(1), rat(1, 4), rat(1, 16)}) {
        ComponentRef lim = component_of(sp, Rational(0));
        SymbolicSet d = delta_neighborhood(sp, lim, eps);
        for (const ComponentRef& s : d.components_prefix(12)) {
            if (s == lim) continue;
            if (SymbolicSet::component_set(sp, s).subset_of(d)) CHECK(s.diam() <= eps * rat(1, 2));
        }
    }
}

TEST_CASE("big components") {
    SymbolicSpace sp = m4();
    auto big = big_components(sp, SymbolicSet::full_set(sp), rat(1, 8));
    REQUIRE(big.size() == 1);           // diam S_n = 2^-n/8, only S_0 reaches 1/8
    CHECK(big[0].member == 0);

    auto more = big_components(sp, SymbolicSet::full_set(sp), rat(1, 32));
    REQUIRE(more.size() == 3);          // S_0, S_1, S_2; positional order is ascending
    CHECK(more[0].member == 2);
    CHECK(more[2].member == 0);

    SymbolicSpace one = m1();
    CHECK(big_components(one, SymbolicSet::full_set(one), Rational(2)).empty());
    CHECK_THROWS_AS(big_components(one, SymbolicSet::full_set(one), Rational(0)), std::invalid_argument);
}

TEST_CASE("admissible clopen sets") {
    SymbolicSpace sp = m4();
    SymbolicSet full = SymbolicSet::full_set(sp);
    CHECK(is_admissible(sp, full));
    CHECK(is_admissible(sp, SymbolicSet::family_tail(sp, 0, 5, true)));
    CHECK(is_admissible(sp, SymbolicSet::component_set(sp, component_of(sp, rat(5, 8)))));

    SymbolicSpace two = m1();
    CHECK(!is_admissible(two, SymbolicSet::full_set(two))); // exactly two components
    SymbolicSpace seg = m2();
    CHECK(is_admissible(seg, SymbolicSet::component_set(seg, component_of(seg, rat(1, 2)))));

    // in the eps-refined class: single segment component passes for every eps
    SymbolicSet c0 = SymbolicSet::component_set(seg, component_of(seg, rat(1, 2)));
    CHECK(is_admissible_at(seg, c0, rat(1, 100)));
    CHECK(is_admissible_at(seg, c0, Rational(5)));
    // m4 at eps=1: diam 3/4 < 1
    CHECK(is_admissible_at(sp, full, Rational(1)));
    // at eps=1/8: too wide, and not trapped in Delta(S_0, 1/8) = S_0
    CHECK(!is_admissible_at(sp, full, rat(1, 8)));

    CHECK_THROWS_AS(is_admissible(sp, SymbolicSet::family_tail(sp, 0, 2, false)), NotClopenError);
}

TEST_CASE("split_clopen") {
    SymbolicSpace sp = m4();
    auto [u1, u2] = split_clopen(sp, SymbolicSet::full_set(sp));
    CHECK(u1 == SymbolicSet::family_tail(sp, 0, 1, true));
    CHECK(u2 == SymbolicSet::component_set(sp, component_of(sp, rat(5, 8))));
    CHECK(set_union(u1, u2) == SymbolicSet::full_set(sp));
    CHECK(set_intersect(u1, u2).is_empty());
    CHECK(is_admissible(sp, u1));
    CHECK(is_admissible(sp, u2));

    // single component input violates the precondition
    SymbolicSet single = SymbolicSet::component_set(sp, component_of(sp, rat(5, 8)));
    CHECK_THROWS_AS(split_clopen(sp, single), std::invalid_argument);

    // left-sided family: the least-index member is the positionally first part
    SymbolicSpace five = m5();
    SymbolicSet right_tail = SymbolicSet::family_tail(five, 1, 0, true);
    auto [v1, v2] = split_clopen(five, right_tail);
    CHECK(v1 == SymbolicSet::component_set(five, make_component(five, 1, 0)));
    CHECK(v2 == SymbolicSet::family_tail(five, 1, 1, true));
}

TEST_CASE("clopen separation") {
    SymbolicSpace sp = m4();
    ComponentRef s2 = make_component(sp, 0, 2);
    SymbolicSet u = metric_ball(SymbolicSet::component_set(sp, s2), rat(1, 64));
    CHECK(clopen_separation(sp, s2, u) == SymbolicSet::component_set(sp, s2));

    ComponentRef lim = component_of(sp, Rational(0));
    SymbolicSet u2 = SymbolicSet::interval(sp, Rational(0), true, rat(1, 8), false);
    SymbolicSet v = clopen_separation(sp, lim, u2);
    CHECK(v == SymbolicSet::family_tail(sp, 0, 3, true)); // least k with S_k ⊆ U is 3
    CHECK(v.is_clopen());
    CHECK(v.subset_of(u2));

    CHECK_THROWS_AS(clopen_separation(sp, s2, SymbolicSet::component_set(sp, lim)), std::invalid_argument);
}

TEST_CASE("purisch witnesses") {
    SymbolicSpace sp1 = m1();
    auto w1 = purisch_witnesses(sp1, 0);
    REQUIRE(w1.size() == 4); // open ends contribute quarter-point proxies
    CHECK(w1[0] == rat(1, 4));
    CHECK(w1[1] == rat(1, 2));
    CHECK(w1[2] == rat(3, 4));
    CHECK(w1[3] == Rational(2));

    SymbolicSpace sp2 = m2();
    auto w2 = purisch_witnesses(sp2, 0);
    std::vector<Rational> expect = {Rational(0), rat(1, 2), Rational(1), Rational(2), rat(5, 2), Rational(3)};
    CHECK(w2 == expect);

    SymbolicSpace sp4 = m4();
    auto w4 = purisch_witnesses(sp4, 2);
    CHECK(w4.size() == 10); // {0} plus endpoints+midpoint of S_0, S_1, S_2
    CHECK(w4[0] == Rational(0));
    CHECK(w4[1] == rat(5, 32));
}

TEST_CASE("scale level") {
    SymbolicSpace sp = m2();
    CHECK(scale_level(component_of(sp, rat(1, 2))) == 0); // diam 1
    SymbolicSpace sp4 = m4();
    CHECK(scale_level(make_component(sp4, 0, 0)) == 3);   // diam 1/8
    ComponentRef c;
    c.lo = Rational(0);
    c.hi = rat(3, 10);
    CHECK(scale_level(c) == 2);                           // 1/4 <= 3/10 < 1/2
    CHECK_THROWS(scale_level(component_of(sp4, Rational(0))));
}

TEST_CASE("convexity of the standard metric on sampled triples") {
    SymbolicSpace sp = m4();
    auto w = purisch_witnesses(sp, 6);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i; j < w.size(); ++j)
            for (std::size_t k = j; k < w.size(); ++k)
                CHECK(max(w[j] - w[i], w[k] - w[j]) <= w[k] - w[i]);
}
