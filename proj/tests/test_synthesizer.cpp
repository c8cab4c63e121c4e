#include "doctest.h"
#include "test_models.hpp"

#include "seltop/synthesizer.hpp"

#include <random>

using namespace seltop;
using namespace fixtures;

TEST_CASE("node selection cases") {
    SymbolicSpace sp = m4();
    auto sieve = Sieve::build(sp, 4);
    sieve->ensure_level(3);
    int no_big = -1, trivial = -1;
    for (int id = 0; id < sieve->node_count(); ++id) {
        const auto& nd = sieve->node(id);
        if (!nd.expanded) continue;
        if (node_case(nd) == NodeCase::NoBig && nd.children.size() >= 3 && no_big < 0) no_big = id;
        if (node_case(nd) == NodeCase::Trivial && trivial < 0) trivial = id;
    }
    REQUIRE(no_big >= 0);
    Tournament t = node_selection(*sieve, no_big);
    int n = static_cast<int>(sieve->children(no_big).size());
    CHECK(t.same_on(build_circular_blocks(n), n)); // circular-block construction
    if (trivial >= 0) {
        Tournament tt = node_selection(*sieve, trivial);
        CHECK(static_cast<int>(sieve->children(trivial).size()) == 1);
        (void)tt;
    }
    // one-sided accumulation wiring: reversed maximal placement puts the
    // marked piece at the bottom
    Tournament left = build_marked_maximum(8, 3);
    Tournament right = left.reversed();
    for (int p = 0; p < 8; ++p)
        if (p != 3) {
            CHECK(left.less(p, 3));
            CHECK(right.less(3, p));
        }
}

TEST_CASE("synthesized order: within components natural, across pieces decisive") {
    SymbolicSpace sp = m4();
    auto g = SynthesizedSelection::synthesize(sp, 8);

    // same component: natural order
    CHECK(g->less(rat(5, 8), rat(11, 16)));
    CHECK(!g->less(rat(11, 16), rat(5, 8)));

    // the limit against a member: resolved at the separating node, stable
    bool zero_below_s0 = g->less(Rational(0), rat(11, 16));
    CHECK(g->less(Rational(0), rat(11, 16)) == zero_below_s0);
    CHECK(g->less(rat(11, 16), Rational(0)) == !zero_below_s0);

    // antisymmetry/totality on 500 random witness pairs
    auto pts = purisch_witnesses(sp, 8);
    std::mt19937_64 rng(17);
    for (int k = 0; k < 500; ++k) {
        const Rational& a = pts[rng() % pts.size()];
        const Rational& b = pts[rng() % pts.size()];
        if (a == b) {
            CHECK(!g->less(a, b));
            continue;
        }
        CHECK(g->less(a, b) == !g->less(b, a));
    }
}

TEST_CASE("interval_of: complementarity and oracle agreement") {
    SymbolicSpace sp = m4();
    auto g = SynthesizedSelection::synthesize(sp, 6);
    auto pts = purisch_witnesses(sp, 6);

    for (const Rational& x : pts) {
        auto [below, above] = interval_of(*g, x);
        // the three determined parts plus the residue tile the space
        SymbolicSet all = set_union(set_union(below.determined, above.determined),
                                    SymbolicSet::point(sp, x));
        all = set_union(all, below.residue);
        CHECK(all == SymbolicSet::full_set(sp));
        CHECK(set_intersect(below.determined, above.determined).is_empty());
        CHECK(!below.determined.contains(x));
        CHECK(!above.determined.contains(x));
        // pointwise oracle: every witness lands on the side select() says
        for (const Rational& w : pts) {
            if (w == x) continue;
            bool w_below = g->less(w, x);
            if (below.determined.contains(w)) CHECK(w_below);
            if (above.determined.contains(w)) CHECK(!w_below);
            CHECK((below.determined.contains(w) || above.determined.contains(w)));
        }
    }

    // members resolve exactly; the accumulation point keeps a residue
    CHECK(interval_of(*g, rat(5, 8)).first.exact());
    auto at_zero = interval_of(*g, Rational(0));
    CHECK(!at_zero.first.exact());
    CHECK(at_zero.first.residue_whole_components);
}

TEST_CASE("oracle equivalence through the selection wrapper") {
    SymbolicSpace sp = m4();
    auto g = SynthesizedSelection::synthesize(sp, 6);
    SelPtr sel = g->as_selection();
    auto pts = purisch_witnesses(sp, 4);
    Tournament induced = restrict_to_tournament(*sel, pts);
    for (const Rational& x : pts) {
        auto point_lo = interval_below(induced, pts, x);
        SymbolicSet sym = interval_of(*g, x).first.determined;
        std::vector<Rational> sym_lo;
        for (const Rational& w : pts)
            if (sym.contains(w)) sym_lo.push_back(w);
        CHECK(point_lo == sym_lo);
    }
}

TEST_CASE("continuity boxes across branches and within a component") {
    SymbolicSpace sp = m4();
    auto g = SynthesizedSelection::synthesize(sp, 8);

    // cross-component: sibling pieces at the separating node
    Rational x = Rational(0), y = rat(11, 16);
    if (!g->less(x, y)) std::swap(x, y);
    auto box = g->continuity_box(x, y);
    REQUIRE(box.has_value());
    CHECK(box->first.contains(x));
    CHECK(box->second.contains(y));
    CHECK(box->first.is_open());
    CHECK(box->second.is_open());
    CHECK(g->box_ordered(box->first, box->second));

    // within-component: the half-pieces at the scale-level node
    auto box2 = g->continuity_box(rat(21, 32), rat(23, 32)); // both in S_0
    REQUIRE(box2.has_value());
    CHECK(box2->first.contains(rat(21, 32)));
    CHECK(box2->second.contains(rat(23, 32)));
    CHECK(box2->first.is_open());
    CHECK(box2->second.is_open());
    CHECK(g->box_ordered(box2->first, box2->second));
    // the box lives inside the scale-level piece of S_0
    SymbolicSet piece = g->sieve().node(g->sieve().branch(rat(21, 32), scale_level(component_of(sp, rat(21, 32)))).back()).value;
    CHECK(set_union(box2->first, box2->second).subset_of(piece));
}

TEST_CASE("verify_invariance passes and catches a flipped table") {
    SymbolicSpace sp = m4();
    auto g = SynthesizedSelection::synthesize(sp, 6);
    CHECK(verify_invariance(*g, 6).passed());

    // flip one root-level pair inconsistently: the stored relation claims
    // piece 0 below piece 1 and piece 1 below piece 0, depending on the
    // direction it is asked
    auto bad = SynthesizedSelection::synthesize(sp, 6);
    bad->sieve().ensure_level(1);
    int root = bad->sieve().roots()[0];
    int kid_count = static_cast<int>(bad->sieve().children(root).size());
    REQUIRE(kid_count >= 3);
    Tournament orig = node_selection(bad->sieve(), root);
    bad->replace_sigma(root, Tournament::from_rule([orig](int i, int j) {
        if ((i == 0 && j == 1) || (i == 1 && j == 0)) return true;
        return orig.less(i, j);
    }));
    Verdict v = verify_invariance(*bad, 6);
    CHECK(!v.passed());
    CHECK(!v.detail.empty());
}

TEST_CASE("verify_continuity on sampled pairs") {
    SymbolicSpace sp = m4();
    auto g = SynthesizedSelection::synthesize(sp, 6);
    Verdict v = verify_continuity(*g, 200, 42);
    CHECK(v.passed());
}

TEST_CASE("verify_node_certificates") {
    SymbolicSpace sp = m4();
    auto g = SynthesizedSelection::synthesize(sp, 5);
    Verdict v = verify_node_certificates(*g, 5);
    CHECK(v.passed());
}

TEST_CASE("topology equality at moderate depth") {
    SymbolicSpace sp = m4();
    auto g = SynthesizedSelection::synthesize(sp, 6);
    TopologyCheckReport rep = verify_topology_equality(*g, 6, 4);
    CHECK(rep.verdict.passed());
    CHECK(rep.subbasic_failures.empty());
    Subbase sub = Subbase::of(g->as_selection());
    for (const TargetReport& t : rep.targets) {
        CHECK(t.verdict.kind == OpennessVerdict::Kind::Open);
        CHECK(replay_witnesses(sub, t.target, t.verdict));
        CHECK(t.verdict.trace_guard_ok);
    }
}

TEST_CASE("cut-point half-pieces at the scale-level node") {
    // for every materialized non-degenerate component and its midpoint
    // witness: the two halves of the scale-level piece are open in the model
    // and in the generated topology, and uniformly ordered
    SymbolicSpace sp = m4();
    auto g = SynthesizedSelection::synthesize(sp, 6);
    Subbase sub = Subbase::of(g->as_selection());
    OpenQueryOptions opts;
    opts.depth = 6;
    for (int m = 0; m <= 3; ++m) {
        ComponentRef c = make_component(sp, 0, m);
        Rational p = (c.lo + c.hi) * rat(1, 2);
        int kappa = scale_level(c);
        std::vector<int> chain = g->sieve().branch(c.lo, kappa);
        const SymbolicSet& piece = g->sieve().node(chain.back()).value;
        SymbolicSet lo = set_intersect(piece, SymbolicSet::interval(sp, std::nullopt, true, p, false));
        SymbolicSet hi = set_intersect(piece, SymbolicSet::interval(sp, p, false, std::nullopt, true));
        CHECK(lo.is_open());
        CHECK(hi.is_open());
        CHECK(g->box_ordered(lo, hi));
        CHECK(is_open(sub, lo, opts).kind == OpennessVerdict::Kind::Open);
        CHECK(is_open(sub, hi, opts).kind == OpennessVerdict::Kind::Open);
    }
}

TEST_CASE("two accumulation points variant") {
    SymbolicSpace sp = m5();
    auto g = SynthesizedSelection::synthesize(sp, 5);
    CHECK(verify_invariance(*g, 5).passed());
    CHECK(verify_continuity(*g, 100, 7).passed());
    TopologyCheckReport rep = verify_topology_equality(*g, 5, 4);
    CHECK(rep.verdict.passed());
    Subbase sub = Subbase::of(g->as_selection());
    for (const TargetReport& t : rep.targets) CHECK(replay_witnesses(sub, t.target, t.verdict));
}
