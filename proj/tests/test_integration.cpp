#include "doctest.h"
#include "test_models.hpp"

#include "seltop/cws.hpp"
#include "seltop/synthesizer.hpp"

#include <random>

using namespace seltop;

namespace {

// isolated components on both sides of an accumulating family
const char* kMixed = R"(space mixed
point -2
segment -3/2 -1
family limit=0 side=right ratio=1/2 seg=5/8..3/4
point 3/2
segment 2 3 open-left open-right
)";

} // namespace

TEST_CASE("parser merges an explicit limit point regardless of its position") {
    SymbolicSpace before = parse_model("space a\npoint 0\nfamily limit=0 side=right ratio=1/2 seg=5/8..3/4\n");
    SymbolicSpace after = parse_model("space b\nfamily limit=0 side=right ratio=1/2 seg=5/8..3/4\npoint 0\n");
    CHECK(before.region_count() == 1);
    CHECK(after.region_count() == 1);
    CHECK(before.contains(Rational(0)));

    // two families cannot share a limit point
    CHECK_THROWS_AS(parse_model("space c\n"
                                "family limit=0 side=left ratio=1/2 seg=5/8..3/4\n"
                                "family limit=0 side=right ratio=1/2 seg=5/8..3/4\n"),
                    ParseError);
}

TEST_CASE("set algebra fuzz with tail pieces") {
    SymbolicSpace sp = parse_model(kMixed);
    std::mt19937_64 rng(31);
    auto random_piece = [&]() {
        switch (rng() % 4) {
        case 0:
            return SymbolicSet::family_tail(sp, 2, static_cast<int>(rng() % 6), rng() & 1);
        case 1:
            return SymbolicSet::component_set(sp, make_component(sp, 2, static_cast<int>(rng() % 6)));
        case 2: {
            long long den = 1 + static_cast<long long>(rng() % 16);
            long long a = static_cast<long long>(rng() % static_cast<unsigned long long>(7 * den)) - 3 * den;
            long long b = a + 1 + static_cast<long long>(rng() % (2 * den));
            return SymbolicSet::interval(sp, rat(a, den), (rng() & 1) != 0, rat(b, den), (rng() & 1) != 0);
        }
        default: {
            static const int isolated[] = {0, 1, 3, 4};
            return SymbolicSet::component_set(
                sp, make_component(sp, isolated[rng() % 4], ComponentRef::kWhole));
        }
        }
    };
    auto random_probe = [&]() {
        long long den = 1 + static_cast<long long>(rng() % 64);
        long long num = static_cast<long long>(rng() % static_cast<unsigned long long>(7 * den)) - 3 * den;
        return rat(num, den);
    };
    for (int trial = 0; trial < 120; ++trial) {
        SymbolicSet a = set_union(random_piece(), random_piece());
        SymbolicSet b = set_difference(random_piece(), random_piece());
        SymbolicSet u = set_union(a, b);
        SymbolicSet i = set_intersect(a, b);
        SymbolicSet d = set_difference(a, b);
        for (int k = 0; k < 30; ++k) {
            Rational q = random_probe();
            CHECK(u.contains(q) == (a.contains(q) || b.contains(q)));
            CHECK(i.contains(q) == (a.contains(q) && b.contains(q)));
            CHECK(d.contains(q) == (a.contains(q) && !b.contains(q)));
        }
        CHECK(set_union(u, u) == u);
        CHECK(set_difference(a, a).is_empty());
        CHECK(set_intersect(a, b) == set_intersect(b, a));
    }
}

TEST_CASE("mixed model end to end") {
    SymbolicSpace sp = parse_model(kMixed);
    CHECK(!sp.finite_component_count());

    // sieves and their invariants
    auto sieve = Sieve::build(sp, 6);
    CHECK(check_sieve_invariants(*sieve, 6).passed());

    // synthesis with all suites
    auto g = SynthesizedSelection::synthesize(sp, 6);
    CHECK(verify_invariance(*g, 6).passed());
    CHECK(verify_continuity(*g, 300, 9).passed());
    CHECK(verify_node_certificates(*g, 6).passed());
    TopologyCheckReport rep = verify_topology_equality(*g, 6, 4);
    CHECK(rep.verdict.passed());
    Subbase sub = Subbase::of(g->as_selection());
    for (const TargetReport& t : rep.targets) {
        CHECK(replay_witnesses(sub, t.target, t.verdict));
        CHECK(t.verdict.trace_guard_ok);
    }

    // the within-component rule coexists with isolated components
    CHECK(g->less(rat(-3, 2), Rational(-1)));
    CHECK(g->less(rat(9, 4), rat(5, 2)));
    auto [below, above] = interval_of(*g, rat(3, 2));
    CHECK(below.exact());
    SymbolicSet all = set_union(set_union(below.determined, above.determined),
                                SymbolicSet::point(sp, rat(3, 2)));
    CHECK(all == SymbolicSet::full_set(sp));
}

TEST_CASE("locate_clopen across regions of the mixed model") {
    SymbolicSpace sp = parse_model(kMixed);
    auto sieve = Sieve::build(sp, 6);
    // isolated components become their own nodes quickly
    SymbolicSet seg = SymbolicSet::component_set(sp, component_of(sp, rat(5, 2)));
    auto hit = sieve->locate_clopen(rat(5, 2), seg, 8);
    REQUIRE(hit.has_value());
    CHECK(sieve->node(*hit).value == seg);
    // tail neighborhoods of the limit
    SymbolicSet u = SymbolicSet::interval(sp, Rational(0), true, rat(1, 64), false);
    auto hit2 = sieve->locate_clopen(Rational(0), u, 12);
    REQUIRE(hit2.has_value());
    CHECK(sieve->node(*hit2).value.subset_of(u));
}
