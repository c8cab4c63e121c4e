#include "seltop/topology.hpp"

#include "seltop/witness_search.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace seltop {

Subbase supremum_subbase(const std::vector<Subbase>& subs) {
    if (subs.empty()) throw std::invalid_argument("supremum_subbase: empty list");
    Subbase out;
    out.space = subs.front().space;
    for (const Subbase& s : subs) {
        if (s.space != out.space) throw std::invalid_argument("supremum_subbase: carrier mismatch");
        for (const SelPtr& sel : s.selections) out.selections.push_back(sel);
    }
    return out;
}

namespace {

// --- anchor pool -------------------------------------------------------------

std::vector<Rational> anchor_points(const Subbase& sub, const SymbolicSet& target, int depth) {
    const SymbolicSpace& sp = *sub.space;
    std::vector<Rational> pts = purisch_witnesses(sp, depth);
    for (int i = 0; i < sp.region_count(); ++i) {
        const Region& r = sp.regions[static_cast<std::size_t>(i)];
        for (const Rational& q : {r.span_lo(), r.span_hi()})
            if (sp.contains(q)) pts.push_back(q);
        // breakpoints of the target trace
        const RegionTrace& t = target.trace(i);
        if (std::holds_alternative<SegTrace>(t)) {
            for (const SubIv& iv : std::get<SegTrace>(t).ivs) {
                if (sp.contains(iv.lo)) pts.push_back(iv.lo);
                if (sp.contains(iv.hi)) pts.push_back(iv.hi);
            }
        } else if (std::holds_alternative<FamTrace>(t)) {
            for (const auto& [n, mt] : std::get<FamTrace>(t).partial)
                for (const SubIv& iv : mt.ivs) {
                    if (sp.contains(iv.lo)) pts.push_back(iv.lo);
                    if (sp.contains(iv.hi)) pts.push_back(iv.hi);
                }
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<WitnessAtom> build_pool(const Subbase& sub, const std::vector<Rational>& anchors) {
    std::vector<WitnessAtom> pool;
    for (std::size_t si = 0; si < sub.selections.size(); ++si) {
        const Selection& s = *sub.selections[si];
        for (const Rational& p : anchors) {
            if (!s.carrier.contains(p)) continue;
            try {
                pool.push_back({SubbasicRef{static_cast<int>(si), false, p}, interval_below(s, p)});
            } catch (const Undetermined&) {
            }
            try {
                pool.push_back({SubbasicRef{static_cast<int>(si), true, p}, interval_above(s, p)});
            } catch (const Undetermined&) {
            }
        }
    }
    return pool;
}

// --- coverage units ----------------------------------------------------------

struct Unit {
    enum class Kind { Point, Stretch, Limit, Tail };
    Kind kind = Kind::Point;
    Rational point;    // representative / the point itself
    SymbolicSet cover; // what one witness intersection must contain
    int region = -1;
    int tail_from = 0;
};

std::vector<Unit> units_of(const SymbolicSet& target) {
    const SymbolicSpace& sp = *target.space();
    std::vector<Unit> units;
    auto stretch_unit = [&](const SubIv& iv) {
        Unit u;
        u.kind = iv.lo == iv.hi ? Unit::Kind::Point : Unit::Kind::Stretch;
        u.point = iv.lo == iv.hi ? iv.lo : (iv.lo_in ? iv.lo : (iv.lo + iv.hi) * rat(1, 2));
        u.cover = SymbolicSet::interval(sp, iv.lo, iv.lo_in, iv.hi, iv.hi_in);
        return u;
    };
    for (int i = 0; i < sp.region_count(); ++i) {
        const Region& r = sp.regions[static_cast<std::size_t>(i)];
        const RegionTrace& t = target.trace(i);
        if (r.is_point()) {
            if (std::get<bool>(t)) {
                Unit u;
                u.kind = Unit::Kind::Point;
                u.point = r.point().p;
                u.cover = SymbolicSet::point(sp, u.point);
                units.push_back(std::move(u));
            }
        } else if (r.is_segment()) {
            for (const SubIv& iv : std::get<SegTrace>(t).ivs) units.push_back(stretch_unit(iv));
        } else {
            const FamTrace& ft = std::get<FamTrace>(t);
            for (const auto& [n, mt] : ft.partial)
                for (const SubIv& iv : mt.ivs) units.push_back(stretch_unit(iv));
            if (ft.limit_in) {
                Unit u;
                u.kind = Unit::Kind::Limit;
                u.point = r.family().limit;
                u.cover = SymbolicSet::point(sp, u.point);
                u.region = i;
                u.tail_from = ft.tail_from ? *ft.tail_from : 0;
                units.push_back(std::move(u));
            } else if (ft.tail_from) {
                Unit u;
                u.kind = Unit::Kind::Tail;
                u.region = i;
                u.tail_from = *ft.tail_from;
                u.cover = SymbolicSet::family_tail(sp, i, *ft.tail_from, false);
                u.point = r.family().member_lo(*ft.tail_from);
                units.push_back(std::move(u));
            }
        }
    }
    return units;
}

// --- germ analysis -----------------------------------------------------------

struct Stub {
    Rational at;
    bool from_above = false; // points approaching `at` from above
};

struct Envelope {
    SymbolicSet solid;
    std::vector<Stub> stubs;
};

struct PartViewT {
    std::vector<SymbolicSet> parts;
    std::vector<bool> reversed;
    Tournament top;
};

std::optional<PartViewT> part_view(const Selection& s) {
    PartViewT v;
    if (s.is_canonical()) {
        v.parts = {s.carrier};
        v.reversed = {s.canonical().reverse};
        v.top = Tournament::total_order(1);
        return v;
    }
    if (!s.is_invariant()) return std::nullopt;
    const InvariantNode& inv = s.invariant();
    for (const SelPtr& c : inv.children) {
        if (!c->is_canonical()) return std::nullopt;
        v.reversed.push_back(c->canonical().reverse);
    }
    v.parts = inv.parts;
    v.top = inv.top;
    return v;
}

// whether S has points arbitrarily close to `a` strictly above / below it
bool accumulates(const SymbolicSet& s, const Rational& a, bool above) {
    const SymbolicSpace& sp = *s.space();
    SymbolicSet side = above ? set_intersect(s, SymbolicSet::interval(sp, a, false, std::nullopt, true))
                             : set_intersect(s, SymbolicSet::interval(sp, std::nullopt, true, a, false));
    if (side.is_empty()) return false;
    if (above) {
        auto b = side.inf();
        return b->value == a; // infimum equal and necessarily not attained
    }
    auto b = side.sup();
    return b->value == a;
}

// envelope of the class { base ∪ (part ∩ natural_ray(p)) : p ∈ avail };
// ray_up means the ray is (p,->), so content shrinks as p is pushed upward
Envelope class_envelope(const SymbolicSet& base, const SymbolicSet& part, const SymbolicSet& avail,
                        bool ray_up) {
    const SymbolicSpace& sp = *base.space();
    Envelope e;
    e.solid = base;
    if (ray_up) {
        Bound b = *avail.sup();
        SymbolicSet ray = SymbolicSet::interval(sp, b.value, !b.attained, std::nullopt, true);
        e.solid = set_union(base, set_intersect(part, ray));
        if (!b.attained) e.stubs.push_back(Stub{b.value, false});
    } else {
        Bound b = *avail.inf();
        SymbolicSet ray = SymbolicSet::interval(sp, std::nullopt, true, b.value, !b.attained);
        e.solid = set_union(base, set_intersect(part, ray));
        if (!b.attained) e.stubs.push_back(Stub{b.value, true});
    }
    return e;
}

// all subbasic germ classes containing x, one envelope per class;
// nullopt when some selection's shape is unsupported
std::optional<std::vector<Envelope>> envelopes_at(const Subbase& sub, const Rational& x) {
    const SymbolicSpace& sp = *sub.space;
    std::vector<Envelope> out;
    for (const SelPtr& sel : sub.selections) {
        auto pv = part_view(*sel);
        if (!pv) return std::nullopt;
        int px = -1;
        for (std::size_t k = 0; k < pv->parts.size(); ++k)
            if (pv->parts[k].contains(x)) px = static_cast<int>(k);
        if (px < 0) continue; // x outside this carrier: no classes
        const SymbolicSet& p_of_x = pv->parts[static_cast<std::size_t>(px)];
        bool rev_x = pv->reversed[static_cast<std::size_t>(px)];
        // block unions below/above each part, used as class bases
        for (std::size_t q = 0; q < pv->parts.size(); ++q) {
            int qi = static_cast<int>(q);
            if (qi == px) continue;
            SymbolicSet base = SymbolicSet::empty_set(sp);
            bool rev_q = pv->reversed[q];
            if (pv->top.less(px, qi)) {
                // below-class anchored in part q contains x
                for (std::size_t m = 0; m < pv->parts.size(); ++m)
                    if (static_cast<int>(m) != qi && pv->top.less(static_cast<int>(m), qi))
                        base = set_union(base, pv->parts[m]);
                out.push_back(class_envelope(base, pv->parts[q], pv->parts[q], /*ray_up=*/rev_q));
            } else {
                // above-class anchored in part q contains x
                for (std::size_t m = 0; m < pv->parts.size(); ++m)
                    if (static_cast<int>(m) != qi && pv->top.less(qi, static_cast<int>(m)))
                        base = set_union(base, pv->parts[m]);
                out.push_back(class_envelope(base, pv->parts[q], pv->parts[q], /*ray_up=*/!rev_q));
            }
        }
        // within-part classes
        SymbolicSet nat_below = SymbolicSet::interval(sp, std::nullopt, true, x, false);
        SymbolicSet nat_above = SymbolicSet::interval(sp, x, false, std::nullopt, true);
        SymbolicSet below_base = SymbolicSet::empty_set(sp);
        SymbolicSet above_base = SymbolicSet::empty_set(sp);
        for (std::size_t m = 0; m < pv->parts.size(); ++m) {
            if (static_cast<int>(m) == px) continue;
            if (pv->top.less(static_cast<int>(m), px)) below_base = set_union(below_base, pv->parts[m]);
            else above_base = set_union(above_base, pv->parts[m]);
        }
        // class of below(p) with x <_h p: anchors are the h-above points of x
        SymbolicSet avail_up = set_intersect(p_of_x, rev_x ? nat_below : nat_above);
        if (!avail_up.is_empty())
            out.push_back(class_envelope(below_base, p_of_x, avail_up, /*ray_up=*/rev_x));
        // class of above(p) with p <_h x
        SymbolicSet avail_dn = set_intersect(p_of_x, rev_x ? nat_above : nat_below);
        if (!avail_dn.is_empty())
            out.push_back(class_envelope(above_base, p_of_x, avail_dn, /*ray_up=*/!rev_x));
    }
    return out;
}

bool envelope_admits(const Envelope& e, const Stub& s) {
    for (const Stub& own : e.stubs)
        if (own.at == s.at && own.from_above == s.from_above) return true;
    return accumulates(e.solid, s.at, s.from_above);
}

// a germ obstruction at x against `target`, if one is provable
std::optional<std::string> germ_obstruction(const Subbase& sub, const SymbolicSet& target,
                                            const Rational& x) {
    auto envs = envelopes_at(sub, x);
    if (!envs) return std::nullopt;
    const SymbolicSpace& sp = *sub.space;
    SymbolicSet m_solid = SymbolicSet::full_set(sp);
    for (const Envelope& e : *envs) m_solid = set_intersect(m_solid, e.solid);
    m_solid = set_union(m_solid, SymbolicSet::point(sp, x));
    SymbolicSet residue = set_difference(m_solid, target);
    if (!residue.is_empty()) {
        std::ostringstream os;
        os << "every finite subbasic intersection containing " << x << " also contains "
           << sample_point(residue) << " outside the target (" << envs->size() << (envs->size() == 1 ? " germ class)" : " germ classes)");
        return os.str();
    }
    for (const Envelope& e : *envs) {
        for (const Stub& s : e.stubs) {
            bool survives = true;
            for (const Envelope& other : *envs)
                if (!envelope_admits(other, s)) {
                    survives = false;
                    break;
                }
            if (!survives) continue;
            bool outside = accumulates(set_difference(SymbolicSet::full_set(sp), target), s.at,
                                       s.from_above);
            if (outside) {
                std::ostringstream os;
                os << "every finite subbasic intersection containing " << x
                   << " keeps a stub of points approaching " << s.at
                   << (s.from_above ? " from above" : " from below")
                   << ", which leave the target (" << envs->size() << (envs->size() == 1 ? " germ class)" : " germ classes)");
                return os.str();
            }
        }
    }
    return std::nullopt;
}

} // namespace

// --- is_open -------------------------------------------------------------------

OpennessVerdict is_open(const Subbase& sub, const SymbolicSet& target, const OpenQueryOptions& opts) {
    const SymbolicSpace& sp = *sub.space;
    OpennessVerdict out;
    if (target.is_empty()) {
        out.kind = OpennessVerdict::Kind::Open;
        return out;
    }
    if (target == SymbolicSet::full_set(sp)) {
        out.kind = OpennessVerdict::Kind::Open;
        OpenWitness w;
        w.point = sample_point(target);
        w.intersection = target; // empty intersection convention
        out.witnesses.push_back(std::move(w));
        return out;
    }

    // anchors run two levels past the query depth so that the deepest
    // materialized members still have neighbors to cut against
    std::vector<Rational> anchors = anchor_points(sub, target, opts.depth + 2);
    std::vector<WitnessAtom> pool = build_pool(sub, anchors);

    std::vector<Unit> units = units_of(target);
    bool depth_bounded = false;

    auto cover_unit = [&](const SymbolicSet& cover, const Rational& rep,
                          OpenWitness* out_w) -> bool {
        std::vector<WitnessAtom> usable;
        for (const WitnessAtom& a : pool)
            if (cover.subset_of(a.set)) usable.push_back(a);
        std::vector<int> chosen;
        SymbolicSet result = SymbolicSet::full_set(sp);
        if (!search_witness_minimal(usable, target, opts.bound, chosen, result,
                                    SymbolicSet::full_set(sp)))
            return false;
        OpenWitness w;
        w.point = rep;
        for (int k : chosen) w.atoms.push_back(usable[static_cast<std::size_t>(k)].ref);
        w.intersection = result;
        *out_w = std::move(w);
        return true;
    };

    for (std::size_t ui = 0; ui < units.size(); ++ui) {
        const Unit u = units[ui];
        OpenWitness w;
        if (cover_unit(u.cover, u.point, &w)) {
            if (u.kind == Unit::Kind::Limit) {
                // the witness covers the limit and everything from its own
                // tail bound on; list the remaining whole members explicitly
                const FamTrace& wt = std::get<FamTrace>(w.intersection.trace(u.region));
                if (!wt.tail_from) {
                    // a witness containing the limit but no tail cannot
                    // vouch for the deep members
                    out.kind = OpennessVerdict::Kind::Undetermined;
                    out.detail = "limit witness carries no tail";
                    return out;
                }
                int kw = *wt.tail_from;
                if (kw - u.tail_from > 256) {
                    out.kind = OpennessVerdict::Kind::Undetermined;
                    out.detail = "limit witness tail too deep";
                    return out;
                }
                const FamilyRegion& f = sp.regions[static_cast<std::size_t>(u.region)].family();
                for (int n = u.tail_from; n < kw; ++n) {
                    Unit m;
                    m.kind = Unit::Kind::Stretch;
                    m.point = f.member_lo(n);
                    m.cover = SymbolicSet::component_set(sp, make_component(sp, u.region, n));
                    units.push_back(std::move(m));
                }
            }
            out.witnesses.push_back(std::move(w));
            continue;
        }
        if (u.kind == Unit::Kind::Tail) {
            // no single whole-tail witness: verify members to the configured
            // depth; deeper members remain covered only by this bound
            const FamilyRegion& f = sp.regions[static_cast<std::size_t>(u.region)].family();
            int upto = std::max(u.tail_from + 1, opts.depth);
            for (int n = u.tail_from; n <= upto; ++n) {
                Unit m;
                m.kind = Unit::Kind::Stretch;
                m.point = f.member_lo(n);
                m.cover = SymbolicSet::component_set(sp, make_component(sp, u.region, n));
                units.push_back(std::move(m));
            }
            depth_bounded = true;
            continue;
        }
        // no witness: try to prove the obstruction at the unit's point
        if (auto obstruction = germ_obstruction(sub, target, u.point)) {
            out.kind = OpennessVerdict::Kind::NotOpen;
            out.obstruction_at = u.point;
            out.detail = *obstruction;
            return out;
        }
        // for stretches, an endpoint germ may still be decisive
        if (u.kind == Unit::Kind::Stretch) {
            for (const Rational& probe : {u.cover.inf()->value, u.cover.sup()->value}) {
                if (!target.contains(probe)) continue;
                if (auto obstruction = germ_obstruction(sub, target, probe)) {
                    out.kind = OpennessVerdict::Kind::NotOpen;
                    out.obstruction_at = probe;
                    out.detail = *obstruction;
                    return out;
                }
            }
        }
        out.kind = OpennessVerdict::Kind::Undetermined;
        out.detail = "no witness within bound at " + u.point.to_string() +
                     " and no germ obstruction proved";
        return out;
    }

    out.kind = OpennessVerdict::Kind::Open;
    if (depth_bounded)
        out.detail = "family tails verified to depth " + std::to_string(opts.depth) +
                     "; deeper members by the bounded-depth contract";

    if (opts.trace_guard) {
        // necessary condition: the trace of the target on the witness set is
        // open in the topology the traced pool atoms generate
        std::vector<Rational> wset = purisch_witnesses(sp, opts.depth);
        for (const Rational& wpt : wset) {
            if (!target.contains(wpt)) continue;
            bool any = false;
            std::vector<bool> nbhd(wset.size(), true);
            for (const WitnessAtom& a : pool) {
                if (!a.set.contains(wpt)) continue;
                any = true;
                for (std::size_t k = 0; k < wset.size(); ++k)
                    if (nbhd[k] && !a.set.contains(wset[k])) nbhd[k] = false;
            }
            if (!any) continue; // no traced atom contains it: nothing to check
            for (std::size_t k = 0; k < wset.size(); ++k)
                if (nbhd[k] && !target.contains(wset[k])) out.trace_guard_ok = false;
        }
    }
    return out;
}

// --- topology comparison ----------------------------------------------------------

namespace {
bool subbasic_open_in_model(const Selection& s, const Rational& p, bool above, std::string* why) {
    if (s.is_sieve()) {
        PartialSet ps = above ? s.sieve().backend->above_partial(p) : s.sieve().backend->below_partial(p);
        if (ps.determined.is_open() && (ps.exact() || ps.residue_whole_components)) return true;
        if (auto b = ps.determined.open_failure()) {
            *why = "interval at " + p.to_string() + " not open at " + b->to_string();
            return false;
        }
        *why = "interval at " + p.to_string() + " has an unresolved non-component residue";
        return false;
    }
    SymbolicSet set = above ? interval_above(s, p) : interval_below(s, p);
    if (set.is_open()) return true;
    *why = "interval at " + p.to_string() + " not open at " + set.open_failure()->to_string();
    return false;
}
} // namespace

TopologyCheckReport topology_equals_model(const Subbase& sub, const OpenQueryOptions& opts) {
    const SymbolicSpace& sp = *sub.space;
    TopologyCheckReport rep;
    std::vector<Rational> witnesses = purisch_witnesses(sp, opts.depth);

    // containment one way: queried subbasic sets must be open in the model
    for (std::size_t si = 0; si < sub.selections.size(); ++si) {
        for (const Rational& p : witnesses) {
            if (!sub.selections[si]->carrier.contains(p)) continue;
            for (bool above : {false, true}) {
                ++rep.subbasic_checked;
                std::string why;
                if (!subbasic_open_in_model(*sub.selections[si], p, above, &why))
                    rep.subbasic_failures.push_back("selection " + std::to_string(si) + ": " + why);
            }
        }
    }

    // containment the other way: canonical model-subbasic sets and clopen
    // regions/tails must be open under the subbase
    std::vector<TargetReport> targets;
    auto add_target = [&](std::string name, SymbolicSet set) {
        targets.push_back(TargetReport{std::move(name), std::move(set), {}});
    };
    // clopen regions and tails first: failing candidates die on these
    for (int i = 0; i < sp.region_count(); ++i) {
        const Region& r = sp.regions[static_cast<std::size_t>(i)];
        if (r.is_family()) {
            for (int n = 0; n <= opts.depth; ++n)
                add_target("member " + std::to_string(i) + "." + std::to_string(n),
                           SymbolicSet::component_set(sp, make_component(sp, i, n)));
            for (int k = 0; k <= opts.depth; ++k)
                add_target("tail(r" + std::to_string(i) + ",n>=" + std::to_string(k) + ",+lim)",
                           SymbolicSet::family_tail(sp, i, k, true));
        } else {
            add_target("region " + std::to_string(i),
                       SymbolicSet::component_set(sp, make_component(sp, i, ComponentRef::kWhole)));
        }
    }
    for (const Rational& x : witnesses) {
        add_target("(<-," + x.to_string() + ")",
                   SymbolicSet::interval(sp, std::nullopt, true, x, false));
        add_target("(" + x.to_string() + ",->)",
                   SymbolicSet::interval(sp, x, false, std::nullopt, true));
    }

    bool any_fail = !rep.subbasic_failures.empty();
    bool any_undet = false;
    for (TargetReport& t : targets) {
        t.verdict = is_open(sub, t.target, opts);
        rep.max_fold = std::max(rep.max_fold, t.verdict.max_fold());
        if (t.verdict.kind == OpennessVerdict::Kind::NotOpen) any_fail = true;
        if (t.verdict.kind == OpennessVerdict::Kind::Undetermined) any_undet = true;
        if (opts.stop_at_first_failure && (any_fail || any_undet)) break;
    }
    rep.targets = std::move(targets);
    if (any_fail) {
        std::string first;
        for (const TargetReport& t : rep.targets)
            if (t.verdict.kind == OpennessVerdict::Kind::NotOpen) {
                first = t.name + ": " + t.verdict.detail;
                break;
            }
        if (first.empty() && !rep.subbasic_failures.empty()) first = rep.subbasic_failures.front();
        rep.verdict = Verdict::fail(first);
    } else if (any_undet) {
        std::string first;
        for (const TargetReport& t : rep.targets)
            if (t.verdict.kind == OpennessVerdict::Kind::Undetermined) {
                first = t.name + ": " + t.verdict.detail;
                break;
            }
        rep.verdict = Verdict::undetermined(first);
    } else {
        rep.verdict = Verdict::pass("topology matches the model");
    }
    return rep;
}

bool replay_witnesses(const Subbase& sub, const SymbolicSet& target, const OpennessVerdict& v) {
    if (v.kind != OpennessVerdict::Kind::Open) return true;
    const SymbolicSpace& sp = *sub.space;
    for (const OpenWitness& w : v.witnesses) {
        SymbolicSet replay = SymbolicSet::full_set(sp);
        for (const SubbasicRef& ref : w.atoms) {
            const Selection& s = *sub.selections[static_cast<std::size_t>(ref.selection)];
            replay = set_intersect(replay, ref.above ? interval_above(s, ref.at)
                                                     : interval_below(s, ref.at));
        }
        if (!(replay == w.intersection)) return false;
        if (!replay.contains(w.point)) return false;
        if (!replay.subset_of(target)) return false;
    }
    return true;
}

std::string TopologyCheckReport::to_string() const {
    std::ostringstream os;
    os << "topology check: " << verdict.kind_name();
    if (!verdict.detail.empty()) os << " (" << verdict.detail << ")";
    os << "\n  subbasic sets checked: " << subbasic_checked
       << ", failures: " << subbasic_failures.size() << "\n";
    for (const std::string& f : subbasic_failures) os << "    " << f << "\n";
    os << "  targets: " << targets.size() << ", max witness fold: " << max_fold << "\n";
    for (const TargetReport& t : targets) {
        os << "    " << t.name << ": "
           << (t.verdict.kind == OpennessVerdict::Kind::Open
                   ? "open"
                   : t.verdict.kind == OpennessVerdict::Kind::NotOpen ? "NOT open" : "undetermined");
        if (!t.verdict.detail.empty()) os << " — " << t.verdict.detail;
        os << "\n";
    }
    return os.str();
}

} // namespace seltop
