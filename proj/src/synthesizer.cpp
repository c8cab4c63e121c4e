#include "seltop/synthesizer.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace seltop {

NodeCase node_case(const Sieve::NodeData& node) {
    if (!node.big) return NodeCase::NoBig;
    if (node.l_flag == 0 && node.r_flag == 0) return NodeCase::Trivial;
    if (node.l_flag == 1 && node.r_flag == 0) return NodeCase::LeftAccumulation;
    if (node.l_flag == 0 && node.r_flag == 1) return NodeCase::RightAccumulation;
    return NodeCase::BothSides;
}

Tournament node_selection(Sieve& sieve, int node_id) {
    const auto& kids = sieve.children(node_id);
    int n = static_cast<int>(kids.size());
    if (n == 2) throw std::logic_error("node_selection: anti-binarity violated");
    const Sieve::NodeData& nd = sieve.node(node_id);
    switch (node_case(nd)) {
    case NodeCase::NoBig:
        return build_circular_blocks(n);
    case NodeCase::Trivial:
        if (n != 1) throw std::logic_error("node_selection: flagless big component must be alone");
        return Tournament::total_order(1);
    case NodeCase::LeftAccumulation:
        return build_marked_maximum(n, *nd.big_child);
    case NodeCase::RightAccumulation:
        return build_marked_maximum(n, *nd.big_child).reversed();
    case NodeCase::BothSides: {
        int pi = *nd.big_child;
        return build_separator_blocks(pi, n - 1 - pi);
    }
    }
    throw std::logic_error("node_selection: unreachable");
}

// --- the synthesized selection ------------------------------------------------------

std::shared_ptr<SynthesizedSelection> SynthesizedSelection::synthesize(const SymbolicSpace& sp,
                                                                       int depth) {
    auto g = std::make_shared<SynthesizedSelection>();
    g->sieve_ = Sieve::build(sp, depth);
    g->depth_ = depth;
    g->sieve_->ensure_level(depth);
    return g;
}

const Tournament& SynthesizedSelection::sigma(int node_id) const {
    auto it = sigma_.find(node_id);
    if (it != sigma_.end()) return it->second;
    Tournament t = node_id < 0 ? build_circular_blocks(static_cast<int>(sieve_->roots().size()))
                               : node_selection(*sieve_, node_id);
    return sigma_.emplace(node_id, std::move(t)).first->second;
}

void SynthesizedSelection::replace_sigma(int node_id, Tournament t) {
    sigma_[node_id] = std::move(t);
    interval_memo_.clear();
}

SelPtr SynthesizedSelection::as_selection() const {
    return sieve_selection(shared_from_this());
}

namespace {
int child_index_containing(Sieve& sieve, const std::vector<int>& kids, const Rational& x) {
    for (std::size_t i = 0; i < kids.size(); ++i)
        if (sieve.node(kids[i]).value.contains(x)) return static_cast<int>(i);
    return -1;
}
} // namespace

bool SynthesizedSelection::less(const Rational& x, const Rational& y) const {
    if (x == y) return false;
    if (!space().contains(x) || !space().contains(y))
        throw std::invalid_argument("less: point outside the space");
    if (component_of(space(), x) == component_of(space(), y)) return x < y;
    const std::vector<int>* kids = &sieve_->roots();
    int node_id = -1;
    for (int level = 0; level <= expansion_cap(); ++level) {
        int ix = child_index_containing(*sieve_, *kids, x);
        int iy = child_index_containing(*sieve_, *kids, y);
        if (ix < 0 || iy < 0) throw std::logic_error("less: level does not cover the pair");
        if (ix != iy) return sigma(node_id).less(ix, iy);
        node_id = (*kids)[static_cast<std::size_t>(ix)];
        kids = &sieve_->children(node_id);
    }
    throw Undetermined("less: pair not separated within the expansion cap");
}

namespace {
struct IntervalWalk {
    SymbolicSet below, above;
    SymbolicSet residue;
    bool stabilized = false;
};
} // namespace

std::pair<PartialSet, PartialSet> interval_of(const SynthesizedSelection& g, const Rational& x) {
    const SymbolicSpace& sp = g.space();
    if (!sp.contains(x)) throw std::invalid_argument("interval_of: point outside the space");
    if (auto hit = g.interval_memo_.find(x); hit != g.interval_memo_.end()) return hit->second;
    Sieve& sieve = g.sieve();
    SymbolicSet comp = SymbolicSet::component_set(sp, component_of(sp, x));

    IntervalWalk w{SymbolicSet::empty_set(sp), SymbolicSet::empty_set(sp), SymbolicSet::empty_set(sp)};
    const std::vector<int>* kids = &sieve.roots();
    int node_id = -1;
    SymbolicSet last_value = SymbolicSet::full_set(sp);
    for (int level = 0; level <= g.expansion_cap(); ++level) {
        int ix = child_index_containing(sieve, *kids, x);
        if (ix < 0) throw std::logic_error("interval_of: level does not cover the point");
        const Tournament& s = g.sigma(node_id);
        for (std::size_t j = 0; j < kids->size(); ++j) {
            if (static_cast<int>(j) == ix) continue;
            const SymbolicSet& sib = sieve.node((*kids)[j]).value;
            if (s.less(static_cast<int>(j), ix)) w.below = set_union(w.below, sib);
            else w.above = set_union(w.above, sib);
        }
        node_id = (*kids)[static_cast<std::size_t>(ix)];
        last_value = sieve.node(node_id).value;
        if (last_value == comp) {
            w.stabilized = true;
            break;
        }
        kids = &sieve.children(node_id);
    }
    // inside the component the order is the natural one
    w.below = set_union(w.below, set_intersect(comp, SymbolicSet::interval(sp, std::nullopt, true, x, false)));
    w.above = set_union(w.above, set_intersect(comp, SymbolicSet::interval(sp, x, false, std::nullopt, true)));
    if (!w.stabilized) w.residue = set_difference(last_value, comp);

    PartialSet below{w.below, w.residue, w.residue.is_open()};
    PartialSet above{w.above, w.residue, w.residue.is_open()};
    return g.interval_memo_.emplace(x, std::make_pair(below, above)).first->second;
}

PartialSet SynthesizedSelection::below_partial(const Rational& x) const {
    return interval_of(*this, x).first;
}

PartialSet SynthesizedSelection::above_partial(const Rational& x) const {
    return interval_of(*this, x).second;
}

SymbolicSet SynthesizedSelection::below(const Rational& x) const {
    PartialSet p = below_partial(x);
    if (!p.exact()) throw Undetermined("below: interval unresolved within the expansion cap");
    return p.determined;
}

SymbolicSet SynthesizedSelection::above(const Rational& x) const {
    PartialSet p = above_partial(x);
    if (!p.exact()) throw Undetermined("above: interval unresolved within the expansion cap");
    return p.determined;
}

// --- whole-set comparison -------------------------------------------------------

namespace {

// natural order between two traces inside one connected component
bool trace_strictly_below(const SegTrace& a, const SegTrace& b) {
    if (a.empty() || b.empty()) return true;
    const SubIv& last = a.ivs.back();
    const SubIv& first = b.ivs.front();
    if (last.hi < first.lo) return true;
    if (last.hi == first.lo) return !(last.hi_in && first.lo_in);
    return false;
}

bool same_component_ok(const SymbolicSpace& sp, const SymbolicSet& u, const SymbolicSet& v) {
    for (int i = 0; i < sp.region_count(); ++i) {
        const Region& r = sp.regions[static_cast<std::size_t>(i)];
        if (r.is_point()) {
            if (std::get<bool>(u.trace(i)) && std::get<bool>(v.trace(i))) return false;
        } else if (r.is_segment()) {
            const SegTrace& a = std::get<SegTrace>(u.trace(i));
            const SegTrace& b = std::get<SegTrace>(v.trace(i));
            if (!a.empty() && !b.empty() && !trace_strictly_below(a, b)) return false;
        } else {
            const FamTrace& a = std::get<FamTrace>(u.trace(i));
            const FamTrace& b = std::get<FamTrace>(v.trace(i));
            if (a.limit_in && b.limit_in) return false;
            if (a.tail_from && b.tail_from) return false; // shared deep members
            const FamilyRegion& f = r.family();
            std::vector<int> shared;
            for (const auto& [n, mt] : a.partial) {
                (void)mt;
                if (b.tail_from && n >= *b.tail_from) shared.push_back(n);
                else if (b.partial.count(n)) shared.push_back(n);
            }
            if (a.tail_from)
                for (const auto& [n, mt] : b.partial) {
                    (void)mt;
                    if (n >= *a.tail_from) shared.push_back(n);
                }
            for (int n : shared) {
                SegTrace at = a.tail_from && n >= *a.tail_from
                                  ? SegTrace{{SubIv{f.member_lo(n), f.member_hi(n), true, true}}}
                                  : a.partial.at(n);
                SegTrace bt = b.tail_from && n >= *b.tail_from
                                  ? SegTrace{{SubIv{f.member_lo(n), f.member_hi(n), true, true}}}
                                  : b.partial.at(n);
                if (!trace_strictly_below(at, bt)) return false;
            }
        }
    }
    return true;
}

bool cross_walk(const SynthesizedSelection& g, int node_id, const std::vector<int>& kids,
                const SymbolicSet& u, const SymbolicSet& v, int levels_left) {
    Sieve& sieve = g.sieve();
    const Tournament& s = g.sigma(node_id);
    std::vector<SymbolicSet> us, vs;
    std::vector<bool> u_meets, v_meets;
    for (int kid : kids) {
        SymbolicSet uk = set_intersect(u, sieve.node(kid).value);
        SymbolicSet vk = set_intersect(v, sieve.node(kid).value);
        u_meets.push_back(!uk.is_empty());
        v_meets.push_back(!vk.is_empty());
        us.push_back(std::move(uk));
        vs.push_back(std::move(vk));
    }
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (!u_meets[i]) continue;
        for (std::size_t j = 0; j < kids.size(); ++j) {
            if (i == j || !v_meets[j]) continue;
            if (!s.less(static_cast<int>(i), static_cast<int>(j))) return false;
        }
    }
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (!u_meets[i] || !v_meets[i]) continue;
        const Sieve::NodeData& nd = sieve.node(kids[i]);
        if (nd.value.component_count() == std::optional<int>(1)) continue; // same-component case
        if (levels_left <= 0) return false; // cannot decide within the cap
        if (!cross_walk(g, kids[i], sieve.children(kids[i]), us[i], vs[i], levels_left - 1))
            return false;
    }
    return true;
}

} // namespace

bool SynthesizedSelection::box_ordered(const SymbolicSet& u, const SymbolicSet& v) const {
    if (u.is_empty() || v.is_empty()) return true;
    if (!same_component_ok(space(), u, v)) return false;
    return cross_walk(*this, -1, sieve_->roots(), u, v, expansion_cap());
}

std::optional<std::pair<SymbolicSet, SymbolicSet>>
SynthesizedSelection::continuity_box(const Rational& x, const Rational& y) const {
    const SymbolicSpace& sp = space();
    ComponentRef cx = component_of(sp, x);
    ComponentRef cy = component_of(sp, y);
    if (cx == cy) {
        // half-pieces of the scale-level node around a cut point between x, y
        if (!(x < y)) return std::nullopt;
        Rational p = (x + y) * rat(1, 2);
        int kappa = scale_level(cx);
        std::vector<int> chain = sieve_->branch(x, kappa);
        const SymbolicSet& piece = sieve_->node(chain.back()).value;
        SymbolicSet u = set_intersect(piece, SymbolicSet::interval(sp, std::nullopt, true, p, false));
        SymbolicSet v = set_intersect(piece, SymbolicSet::interval(sp, p, false, std::nullopt, true));
        return std::make_pair(u, v);
    }
    const std::vector<int>* kids = &sieve_->roots();
    for (int level = 0; level <= expansion_cap(); ++level) {
        int ix = child_index_containing(*sieve_, *kids, x);
        int iy = child_index_containing(*sieve_, *kids, y);
        if (ix < 0 || iy < 0) return std::nullopt;
        if (ix != iy)
            return std::make_pair(sieve_->node((*kids)[static_cast<std::size_t>(ix)]).value,
                                  sieve_->node((*kids)[static_cast<std::size_t>(iy)]).value);
        kids = &sieve_->children((*kids)[static_cast<std::size_t>(ix)]);
    }
    return std::nullopt;
}

// --- verifiers ------------------------------------------------------------------

Verdict verify_invariance(const SynthesizedSelection& g, int levels) {
    Sieve& sieve = g.sieve();
    sieve.ensure_level(levels);
    for (int n = 0; n <= levels; ++n) {
        std::vector<int> level_nodes;
        for (int id = 0; id < sieve.node_count(); ++id)
            if (sieve.node(id).level == n) level_nodes.push_back(id);
        for (std::size_t a = 0; a < level_nodes.size(); ++a) {
            for (std::size_t b = a + 1; b < level_nodes.size(); ++b) {
                const SymbolicSet& va = sieve.node(level_nodes[a]).value;
                const SymbolicSet& vb = sieve.node(level_nodes[b]).value;
                bool ab = g.box_ordered(va, vb);
                bool ba = g.box_ordered(vb, va);
                if (ab == ba) {
                    std::ostringstream os;
                    os << "level " << n << " pieces " << va.to_string() << " and " << vb.to_string()
                       << (ab ? " are ordered both ways" : " are not uniformly ordered");
                    return Verdict::fail(os.str());
                }
                // pointwise replay on sample points
                Rational pa = sample_point(va), pb = sample_point(vb);
                if (g.less(pa, pb) != ab) {
                    std::ostringstream os;
                    os << "level " << n << ": pointwise order of " << pa << "," << pb
                       << " disagrees with the piece order";
                    return Verdict::fail(os.str());
                }
            }
        }
    }
    return Verdict::pass("all level families decisive to depth " + std::to_string(levels));
}

Verdict verify_continuity(const SynthesizedSelection& g, int pair_budget, std::uint64_t seed) {
    const SymbolicSpace& sp = g.space();
    std::vector<Rational> points = purisch_witnesses(sp, g.depth() + 2);
    std::mt19937_64 rng(seed);
    int cross = 0, within = 0;
    for (int k = 0; k < pair_budget; ++k) {
        const Rational& a = points[rng() % points.size()];
        const Rational& b = points[rng() % points.size()];
        if (a == b) continue;
        Rational x = a, y = b;
        if (!g.less(x, y)) std::swap(x, y);
        auto box = g.continuity_box(x, y);
        if (!box) return Verdict::fail("no continuity box for the pair " + x.to_string() + "," + y.to_string());
        const auto& [u, v] = *box;
        std::ostringstream name;
        name << "pair " << x << "," << y;
        if (!u.contains(x) || !v.contains(y)) return Verdict::fail(name.str() + ": box misses its points");
        if (!u.is_open() || !v.is_open()) return Verdict::fail(name.str() + ": box not open");
        if (!g.box_ordered(u, v)) return Verdict::fail(name.str() + ": box not uniformly ordered");
        (component_of(sp, x) == component_of(sp, y) ? within : cross) += 1;
    }
    std::ostringstream os;
    os << "continuity verified on " << (cross + within) << " pairs (" << cross << " cross-branch, "
       << within << " within-component)";
    return Verdict::pass(os.str());
}

Verdict verify_node_certificates(const SynthesizedSelection& g, int levels) {
    Sieve& sieve = g.sieve();
    sieve.ensure_level(levels);
    const SymbolicSpace& sp = g.space();

    auto check_node = [&](int node_id, const std::vector<int>& kids) -> Verdict {
        std::vector<SymbolicSet> parts;
        for (int kid : kids) parts.push_back(sieve.node(kid).value);
        const Tournament& s = g.sigma(node_id);
        for (bool rev : {false, true}) {
            auto cert = certify_partition_open(s, parts, rev);
            if (!cert.verdict.passed()) {
                std::ostringstream os;
                os << "node " << node_id << (rev ? " (reversed children)" : "") << ": "
                   << cert.verdict.detail;
                return Verdict::fail(os.str());
            }
        }
        if (node_id >= 0) {
            const Sieve::NodeData& nd = sieve.node(node_id);
            if (nd.big && nd.big_child) {
                SymbolicSet cs = SymbolicSet::component_set(sp, *nd.big);
                SymbolicSet below = ray_below(cs), above = ray_above(cs);
                int pi = *nd.big_child;
                for (std::size_t k = 0; k < kids.size(); ++k) {
                    if (static_cast<int>(k) == pi) continue;
                    bool k_below = sieve.node(kids[k]).value.subset_of(below);
                    if (k_below && !s.less(static_cast<int>(k), pi))
                        return Verdict::fail("node " + std::to_string(node_id) +
                                             ": a lower sibling is not below the big child");
                    if (!k_below && !s.less(pi, static_cast<int>(k)))
                        return Verdict::fail("node " + std::to_string(node_id) +
                                             ": an upper sibling is not above the big child");
                    for (std::size_t k2 = 0; k2 < kids.size(); ++k2) {
                        if (k2 == k || static_cast<int>(k2) == pi) continue;
                        bool k2_below = sieve.node(kids[k2]).value.subset_of(below);
                        if (k_below && !k2_below && !s.less(static_cast<int>(k), static_cast<int>(k2)))
                            return Verdict::fail("node " + std::to_string(node_id) +
                                                 ": pieces straddling the big component misordered");
                    }
                }
                (void)above;
            }
        }
        return Verdict::pass();
    };

    Verdict v = check_node(-1, sieve.roots());
    if (!v.passed()) return v;
    for (int id = 0; id < sieve.node_count(); ++id) {
        if (!sieve.node(id).expanded || sieve.node(id).level >= levels) continue;
        v = check_node(id, sieve.node(id).children);
        if (!v.passed()) return v;
    }
    return Verdict::pass("per-node openness certificates and routing verified to depth " +
                         std::to_string(levels));
}

TopologyCheckReport verify_topology_equality(const SynthesizedSelection& g, int depth, int bound) {
    Subbase sub = Subbase::of(g.as_selection());
    OpenQueryOptions opts;
    opts.depth = depth;
    opts.bound = bound;
    TopologyCheckReport rep = topology_equals_model(sub, opts);

    // additionally: every materialized sieve piece is open in the generated
    // topology (the clopen location route)
    Sieve& sieve = g.sieve();
    bool any_fail = false, any_undet = false;
    for (int id = 0; id < sieve.node_count(); ++id) {
        if (sieve.node(id).level > depth) continue;
        TargetReport t;
        t.name = "sieve piece " + std::to_string(id);
        t.target = sieve.node(id).value;
        t.verdict = is_open(sub, t.target, opts);
        rep.max_fold = std::max(rep.max_fold, t.verdict.max_fold());
        if (t.verdict.kind == OpennessVerdict::Kind::NotOpen) any_fail = true;
        if (t.verdict.kind == OpennessVerdict::Kind::Undetermined) any_undet = true;
        rep.targets.push_back(std::move(t));
    }
    if (any_fail)
        rep.verdict = Verdict::fail("a sieve piece is not open in the generated topology");
    else if (any_undet && rep.verdict.passed())
        rep.verdict = Verdict::undetermined("a sieve piece verdict is undetermined");
    return rep;
}

} // namespace seltop
