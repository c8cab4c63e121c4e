#include "doctest.h"
#include "test_models.hpp"

#include "seltop/symbolic_set.hpp"

#include <random>

using namespace seltop;
using namespace fixtures;

namespace {

// random rational in [-1, 3] with denominator up to 64
Rational random_probe(std::mt19937_64& rng) {
    long long den = 1 + static_cast<long long>(rng() % 64);
    long long num = static_cast<long long>(rng() % static_cast<unsigned long long>(4 * den + 1)) - den;
    return rat(num, den);
}

SymbolicSet random_interval(const SymbolicSpace& sp, std::mt19937_64& rng) {
    Rational a = random_probe(rng), b = random_probe(rng);
    if (b < a) std::swap(a, b);
    std::optional<Rational> lo = (rng() % 5 == 0) ? std::nullopt : std::optional<Rational>(a);
    std::optional<Rational> hi = (rng() % 5 == 0) ? std::nullopt : std::optional<Rational>(b);
    return SymbolicSet::interval(sp, lo, rng() & 1, hi, rng() & 1);
}

} // namespace

TEST_CASE("interval construction snaps to canonical traces") {
    SymbolicSpace sp = m1();
    SymbolicSet a = SymbolicSet::interval(sp, rat(1, 2), true, Rational(2), true);
    CHECK(a.contains(rat(1, 2)));
    CHECK(a.contains(rat(3, 4)));
    CHECK(a.contains(Rational(2)));
    CHECK(!a.contains(rat(1, 4)));
    CHECK(!a.contains(Rational(1))); // 1 is not in the space

    // two syntactically different intervals denoting the same subset are equal
    SymbolicSet b = SymbolicSet::interval(sp, rat(1, 2), true, rat(5, 2), false);
    CHECK(a == b);

    SymbolicSpace f = m4();
    // [0, 1/8) picks up the limit and exactly the members from index 3 on
    SymbolicSet t = SymbolicSet::interval(f, Rational(0), true, rat(1, 8), false);
    SymbolicSet manual = set_union(SymbolicSet::point(f, Rational(0)),
                                   SymbolicSet::family_tail(f, 0, 3, false));
    CHECK(t == manual);
    CHECK(t == SymbolicSet::interval(f, Rational(0), true, rat(1, 10), false)); // same subset
    CHECK(t == SymbolicSet::family_tail(f, 0, 3, true));
}

TEST_CASE("tail pieces assemble from member pieces") {
    SymbolicSpace f = m4();
    SymbolicSet acc = SymbolicSet::family_tail(f, 0, 7, true);
    for (int n = 6; n >= 3; --n)
        acc = set_union(acc, SymbolicSet::component_set(f, make_component(f, 0, n)));
    CHECK(acc == SymbolicSet::family_tail(f, 0, 3, true)); // tail absorbs whole members
}

TEST_CASE("set algebra agrees with pointwise membership") {
    std::mt19937_64 rng(2024);
    for (const SymbolicSpace& sp : {m1(), m2(), m4(), m5()}) {
        for (int trial = 0; trial < 60; ++trial) {
            SymbolicSet a = random_interval(sp, rng);
            SymbolicSet b = random_interval(sp, rng);
            SymbolicSet u = set_union(a, b);
            SymbolicSet i = set_intersect(a, b);
            SymbolicSet d = set_difference(a, b);
            SymbolicSet c = a.complement();
            for (int k = 0; k < 40; ++k) {
                Rational q = random_probe(rng);
                bool ina = a.contains(q), inb = b.contains(q), inx = sp.contains(q);
                CHECK(u.contains(q) == (ina || inb));
                CHECK(i.contains(q) == (ina && inb));
                CHECK(d.contains(q) == (ina && !inb));
                CHECK(c.contains(q) == (inx && !ina));
            }
            CHECK(set_union(a, a) == a); // normalization is idempotent
            CHECK(set_difference(a, b).subset_of(a));
        }
    }
}

TEST_CASE("openness and closedness") {
    SymbolicSpace sp = m1();
    SymbolicSet pt2 = SymbolicSet::point(sp, Rational(2));
    CHECK(pt2.is_clopen()); // isolated point
    SymbolicSet half = SymbolicSet::interval(sp, std::nullopt, true, rat(1, 2), false);
    CHECK(half.is_open());
    CHECK(!half.is_closed());
    CHECK(half.boundary_point() == rat(1, 2));
    SymbolicSet closed_half = SymbolicSet::interval(sp, rat(1, 2), true, Rational(1), false);
    CHECK(!closed_half.is_open());
    CHECK(closed_half.open_failure() == rat(1, 2));

    SymbolicSpace f = m4();
    CHECK(SymbolicSet::family_tail(f, 0, 4, true).is_clopen());
    SymbolicSet no_limit = SymbolicSet::family_tail(f, 0, 4, false);
    CHECK(no_limit.is_open());
    CHECK(!no_limit.is_closed());
    CHECK(no_limit.boundary_point() == Rational(0));
    SymbolicSet lim_only = SymbolicSet::point(f, Rational(0));
    CHECK(!lim_only.is_open());
    CHECK(lim_only.is_closed());
    CHECK(lim_only.boundary_point() == Rational(0));
    // member piece clopen; a half-member is open only when cut at the far end
    CHECK(SymbolicSet::component_set(f, make_component(f, 0, 1)).is_clopen());
    SymbolicSet halfmem = SymbolicSet::interval(f, rat(5, 8), true, rat(11, 16), false);
    CHECK(halfmem.is_open());
    CHECK(!halfmem.is_closed());
}

TEST_CASE("bounds and diameter") {
    SymbolicSpace f = m4();
    SymbolicSet full = SymbolicSet::full_set(f);
    CHECK(full.inf()->value == Rational(0));
    CHECK(full.inf()->attained);
    CHECK(full.sup()->value == rat(3, 4));
    CHECK(full.diameter() == rat(3, 4));

    SymbolicSet tail = SymbolicSet::family_tail(f, 0, 2, false);
    CHECK(tail.inf()->value == Rational(0));
    CHECK(!tail.inf()->attained);
    CHECK(tail.sup()->value == rat(3, 16)); // hi of S_2
    CHECK(tail.diameter() == rat(3, 16));

    SymbolicSpace sp = m1();
    SymbolicSet seg = SymbolicSet::interval(sp, std::nullopt, true, Rational(1), true);
    CHECK(seg.inf()->value == Rational(0));
    CHECK(!seg.inf()->attained);
    CHECK(seg.diameter() == Rational(1));
}

TEST_CASE("clopen parts decomposition") {
    SymbolicSpace f = m5();
    SymbolicSet u = set_union(SymbolicSet::family_tail(f, 0, 2, true),
                              SymbolicSet::family_tail(f, 1, 3, true));
    u = set_union(u, SymbolicSet::component_set(f, make_component(f, 0, 0)));
    u = set_union(u, SymbolicSet::component_set(f, make_component(f, 1, 0)));
    auto parts = u.clopen_parts();
    REQUIRE(parts.size() == 4);
    // positional: right-sided tail at 0, then S0.0, then the left family's
    // member 0, then the left tail rising to its limit
    CHECK(std::holds_alternative<TailRef>(parts[0]));
    CHECK(std::get<TailRef>(parts[0]).from == 2);
    CHECK(std::get<ComponentRef>(parts[1]).member == 0);
    CHECK(std::get<ComponentRef>(parts[2]).region == 1);
    CHECK(std::get<TailRef>(parts[3]).region == 1);
    CHECK(std::get<TailRef>(parts[3]).from == 3);

    // a whole member adjacent to the tail is absorbed into it
    SymbolicSet absorbed = set_union(SymbolicSet::family_tail(f, 1, 1, true),
                                     SymbolicSet::component_set(f, make_component(f, 1, 0)));
    CHECK(absorbed == SymbolicSet::family_tail(f, 1, 0, true));
    Rational prev = part_min_position(f, parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        CHECK(part_min_position(f, parts[i]) > prev);
        prev = part_min_position(f, parts[i]);
    }
}

TEST_CASE("rays around sets") {
    SymbolicSpace sp = m1();
    SymbolicSet pt2 = SymbolicSet::point(sp, Rational(2));
    CHECK(ray_below(pt2) == SymbolicSet::interval(sp, std::nullopt, true, Rational(2), false));
    SymbolicSet seg = SymbolicSet::interval(sp, std::nullopt, true, Rational(1), false); // (0,1)
    // sup not attained: everything <= 1 is strictly below each point's future...
    SymbolicSet above = ray_above(seg);
    CHECK(above == pt2);
    SymbolicSet below_cl = ray_below_closed(seg);
    CHECK(below_cl == seg); // X minus {2}
}
