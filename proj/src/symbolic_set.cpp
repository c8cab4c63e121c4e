#include "seltop/symbolic_set.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace seltop {

namespace {

// --- SubIv / SegTrace algebra ------------------------------------------------

std::optional<SubIv> iv_intersect(const SubIv& a, const SubIv& b) {
    SubIv r;
    if (a.lo > b.lo) { r.lo = a.lo; r.lo_in = a.lo_in; }
    else if (b.lo > a.lo) { r.lo = b.lo; r.lo_in = b.lo_in; }
    else { r.lo = a.lo; r.lo_in = a.lo_in && b.lo_in; }
    if (a.hi < b.hi) { r.hi = a.hi; r.hi_in = a.hi_in; }
    else if (b.hi < a.hi) { r.hi = b.hi; r.hi_in = b.hi_in; }
    else { r.hi = a.hi; r.hi_in = a.hi_in && b.hi_in; }
    if (!r.valid()) return std::nullopt;
    return r;
}

SegTrace seg_normalize(std::vector<SubIv> ivs) {
    std::erase_if(ivs, [](const SubIv& v) { return !v.valid(); });
    std::sort(ivs.begin(), ivs.end(), [](const SubIv& a, const SubIv& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.lo_in && !b.lo_in;
    });
    SegTrace out;
    for (const SubIv& iv : ivs) {
        if (!out.ivs.empty()) {
            SubIv& cur = out.ivs.back();
            bool touches = iv.lo < cur.hi || (iv.lo == cur.hi && (cur.hi_in || iv.lo_in));
            if (touches) {
                if (iv.hi > cur.hi) { cur.hi = iv.hi; cur.hi_in = iv.hi_in; }
                else if (iv.hi == cur.hi) cur.hi_in = cur.hi_in || iv.hi_in;
                continue;
            }
        }
        out.ivs.push_back(iv);
    }
    return out;
}

SegTrace seg_union(const SegTrace& a, const SegTrace& b) {
    std::vector<SubIv> ivs = a.ivs;
    ivs.insert(ivs.end(), b.ivs.begin(), b.ivs.end());
    return seg_normalize(std::move(ivs));
}

SegTrace seg_intersect(const SegTrace& a, const SegTrace& b) {
    std::vector<SubIv> out;
    for (const SubIv& x : a.ivs)
        for (const SubIv& y : b.ivs)
            if (auto r = iv_intersect(x, y)) out.push_back(*r);
    return seg_normalize(std::move(out));
}

std::vector<SubIv> iv_subtract(const SubIv& a, const SubIv& b) {
    std::vector<SubIv> out;
    if (b.lo > a.hi || (b.lo == a.hi && !(b.lo_in && a.hi_in)) ||
        b.hi < a.lo || (b.hi == a.lo && !(b.hi_in && a.lo_in))) {
        out.push_back(a); // disjoint
        return out;
    }
    SubIv left{a.lo, b.lo, a.lo_in, !b.lo_in};
    if (left.valid() && left.hi <= a.hi) out.push_back(left);
    SubIv right{b.hi, a.hi, !b.hi_in, a.hi_in};
    if (right.valid() && right.lo >= a.lo) out.push_back(right);
    return out;
}

SegTrace seg_diff(const SegTrace& a, const SegTrace& b) {
    std::vector<SubIv> cur = a.ivs;
    for (const SubIv& y : b.ivs) {
        std::vector<SubIv> next;
        for (const SubIv& x : cur)
            for (const SubIv& piece : iv_subtract(x, y)) next.push_back(piece);
        cur = std::move(next);
    }
    return seg_normalize(std::move(cur));
}

bool seg_contains(const SegTrace& t, const Rational& q) {
    for (const SubIv& iv : t.ivs) {
        if (q < iv.lo || (q == iv.lo && !iv.lo_in)) continue;
        if (q > iv.hi || (q == iv.hi && !iv.hi_in)) continue;
        return true;
    }
    return false;
}

SegTrace whole_member_trace(const FamilyRegion& f, int n) {
    return SegTrace{{SubIv{f.member_lo(n), f.member_hi(n), true, true}}};
}

bool is_whole_member(const SegTrace& t, const FamilyRegion& f, int n) {
    return t.ivs.size() == 1 && t.ivs[0].lo == f.member_lo(n) && t.ivs[0].hi == f.member_hi(n) &&
           t.ivs[0].lo_in && t.ivs[0].hi_in;
}

SegTrace fam_member_trace(const FamTrace& t, const FamilyRegion& f, int n) {
    if (t.tail_from && n >= *t.tail_from) return whole_member_trace(f, n);
    auto it = t.partial.find(n);
    return it != t.partial.end() ? it->second : SegTrace{};
}

enum class SetOp { Union, Intersect, Diff };

bool bool_op(bool a, bool b, SetOp op) {
    switch (op) {
    case SetOp::Union: return a || b;
    case SetOp::Intersect: return a && b;
    case SetOp::Diff: return a && !b;
    }
    return false;
}

SegTrace seg_op(const SegTrace& a, const SegTrace& b, SetOp op) {
    switch (op) {
    case SetOp::Union: return seg_union(a, b);
    case SetOp::Intersect: return seg_intersect(a, b);
    case SetOp::Diff: return seg_diff(a, b);
    }
    return {};
}

FamTrace fam_normalize(FamTrace t, const FamilyRegion& f) {
    std::erase_if(t.partial, [](const auto& kv) { return kv.second.empty(); });
    if (t.tail_from) {
        std::erase_if(t.partial, [&](const auto& kv) { return kv.first >= *t.tail_from; });
        while (*t.tail_from > 0) {
            auto it = t.partial.find(*t.tail_from - 1);
            if (it == t.partial.end() || !is_whole_member(it->second, f, it->first)) break;
            t.partial.erase(it);
            --*t.tail_from;
        }
    }
    return t;
}

FamTrace fam_op(const FamTrace& a, const FamTrace& b, const FamilyRegion& f, SetOp op) {
    FamTrace r;
    r.limit_in = bool_op(a.limit_in, b.limit_in, op);
    switch (op) {
    case SetOp::Union:
        if (a.tail_from && b.tail_from) r.tail_from = std::min(*a.tail_from, *b.tail_from);
        else if (a.tail_from) r.tail_from = *a.tail_from;
        else if (b.tail_from) r.tail_from = *b.tail_from;
        break;
    case SetOp::Intersect:
        if (a.tail_from && b.tail_from) r.tail_from = std::max(*a.tail_from, *b.tail_from);
        break;
    case SetOp::Diff:
        if (a.tail_from && !b.tail_from) {
            int beyond_b = b.partial.empty() ? 0 : b.partial.rbegin()->first + 1;
            r.tail_from = std::max(*a.tail_from, beyond_b);
        }
        break;
    }
    int probe = 0;
    if (a.tail_from) probe = std::max(probe, *a.tail_from);
    if (b.tail_from) probe = std::max(probe, *b.tail_from);
    if (!a.partial.empty()) probe = std::max(probe, a.partial.rbegin()->first + 1);
    if (!b.partial.empty()) probe = std::max(probe, b.partial.rbegin()->first + 1);
    for (int n = 0; n < probe; ++n) {
        if (r.tail_from && n >= *r.tail_from) break;
        SegTrace m = seg_op(fam_member_trace(a, f, n), fam_member_trace(b, f, n), op);
        if (!m.empty()) r.partial[n] = std::move(m);
    }
    return fam_normalize(std::move(r), f);
}

} // namespace

// --- SymbolicSet -------------------------------------------------------------

SymbolicSet::SymbolicSet(const SymbolicSpace* sp) : space_(sp) {
    for (const Region& r : sp->regions) {
        if (r.is_point()) tr_.emplace_back(false);
        else if (r.is_segment()) tr_.emplace_back(SegTrace{});
        else tr_.emplace_back(FamTrace{});
    }
}

SymbolicSet SymbolicSet::empty_set(const SymbolicSpace& sp) { return SymbolicSet(&sp); }

SymbolicSet SymbolicSet::full_set(const SymbolicSpace& sp) {
    SymbolicSet s(&sp);
    for (int i = 0; i < sp.region_count(); ++i) {
        const Region& r = sp.regions[static_cast<std::size_t>(i)];
        if (r.is_point()) s.tr_[static_cast<std::size_t>(i)] = true;
        else if (r.is_segment()) {
            const SegmentRegion& sr = r.segment();
            s.tr_[static_cast<std::size_t>(i)] = SegTrace{{SubIv{sr.lo, sr.hi, !sr.lo_open, !sr.hi_open}}};
        } else {
            FamTrace t;
            t.limit_in = true;
            t.tail_from = 0;
            s.tr_[static_cast<std::size_t>(i)] = t;
        }
    }
    return s;
}

SymbolicSet SymbolicSet::interval(const SymbolicSpace& sp,
                                  const std::optional<Rational>& lo, bool lo_in,
                                  const std::optional<Rational>& hi, bool hi_in) {
    SymbolicSet s(&sp);
    for (int i = 0; i < sp.region_count(); ++i) {
        const Region& r = sp.regions[static_cast<std::size_t>(i)];
        // sentinel endpoints strictly outside the region closure
        SubIv q{lo ? *lo : r.span_lo() - Rational(1), hi ? *hi : r.span_hi() + Rational(1),
                lo ? lo_in : true, hi ? hi_in : true};
        if (!q.valid()) continue;
        if (r.is_point()) {
            const Rational& p = r.point().p;
            bool in = !(p < q.lo || (p == q.lo && !q.lo_in) || p > q.hi || (p == q.hi && !q.hi_in));
            s.tr_[static_cast<std::size_t>(i)] = in;
        } else if (r.is_segment()) {
            const SegmentRegion& sr = r.segment();
            SubIv reg{sr.lo, sr.hi, !sr.lo_open, !sr.hi_open};
            if (auto iv = iv_intersect(reg, q)) s.tr_[static_cast<std::size_t>(i)] = SegTrace{{*iv}};
        } else {
            const FamilyRegion& f = r.family();
            FamTrace t;
            t.limit_in = !(f.limit < q.lo || (f.limit == q.lo && !q.lo_in) ||
                           f.limit > q.hi || (f.limit == q.hi && !q.hi_in));
            bool covers_limit_side = f.side == Side::Right ? q.lo <= f.limit : q.hi >= f.limit;
            bool any_member_side = f.side == Side::Right ? q.hi > f.limit : q.lo < f.limit;
            if (any_member_side) {
                for (int n = 0;; ++n) {
                    SubIv mem{f.member_lo(n), f.member_hi(n), true, true};
                    auto iv = iv_intersect(mem, q);
                    if (iv && iv->lo == mem.lo && iv->hi == mem.hi && iv->lo_in && iv->hi_in) {
                        if (covers_limit_side) { t.tail_from = n; break; }
                        t.partial[n] = SegTrace{{*iv}};
                        continue;
                    }
                    if (iv) t.partial[n] = SegTrace{{*iv}};
                    // decide whether deeper members can still meet the query
                    if (f.side == Side::Right) {
                        if (mem.hi < q.lo || (mem.hi == q.lo && !(q.lo_in))) break; // member below query
                    } else {
                        if (mem.lo > q.hi || (mem.lo == q.hi && !(q.hi_in))) break; // member above query
                    }
                }
            }
            s.tr_[static_cast<std::size_t>(i)] = fam_normalize(std::move(t), f);
        }
    }
    return s;
}

SymbolicSet SymbolicSet::point(const SymbolicSpace& sp, const Rational& p) {
    return interval(sp, p, true, p, true);
}

SymbolicSet SymbolicSet::component_set(const SymbolicSpace& sp, const ComponentRef& c) {
    SymbolicSet s(&sp);
    const Region& r = sp.regions[static_cast<std::size_t>(c.region)];
    if (r.is_point()) {
        s.tr_[static_cast<std::size_t>(c.region)] = true;
    } else if (r.is_segment()) {
        s.tr_[static_cast<std::size_t>(c.region)] = SegTrace{{SubIv{c.lo, c.hi, c.lo_in, c.hi_in}}};
    } else {
        FamTrace t;
        if (c.member == ComponentRef::kLimit) t.limit_in = true;
        else t.partial[c.member] = whole_member_trace(r.family(), c.member);
        s.tr_[static_cast<std::size_t>(c.region)] = std::move(t);
    }
    return s;
}

SymbolicSet SymbolicSet::family_tail(const SymbolicSpace& sp, int region, int from, bool include_limit) {
    SymbolicSet s(&sp);
    if (!sp.regions[static_cast<std::size_t>(region)].is_family())
        throw std::invalid_argument("family_tail: region is not a family");
    FamTrace t;
    t.limit_in = include_limit;
    t.tail_from = from;
    s.tr_[static_cast<std::size_t>(region)] = std::move(t);
    return s;
}

SymbolicSet SymbolicSet::part_set(const SymbolicSpace& sp, const ClopenPart& part) {
    if (std::holds_alternative<ComponentRef>(part))
        return component_set(sp, std::get<ComponentRef>(part));
    const TailRef& t = std::get<TailRef>(part);
    return family_tail(sp, t.region, t.from, true);
}

bool SymbolicSet::is_empty() const {
    for (const RegionTrace& t : tr_) {
        if (std::holds_alternative<bool>(t)) { if (std::get<bool>(t)) return false; }
        else if (std::holds_alternative<SegTrace>(t)) { if (!std::get<SegTrace>(t).empty()) return false; }
        else { if (!std::get<FamTrace>(t).empty()) return false; }
    }
    return true;
}

bool SymbolicSet::contains(const Rational& q) const {
    auto ri = space_->region_at(q);
    if (!ri) return false;
    const Region& r = space_->regions[static_cast<std::size_t>(*ri)];
    const RegionTrace& t = tr_[static_cast<std::size_t>(*ri)];
    if (r.is_point()) return std::get<bool>(t) && q == r.point().p;
    if (r.is_segment()) return seg_contains(std::get<SegTrace>(t), q);
    const FamilyRegion& f = r.family();
    const FamTrace& ft = std::get<FamTrace>(t);
    if (q == f.limit) return ft.limit_in;
    for (int n = 0;; ++n) {
        Rational lo = f.member_lo(n), hi = f.member_hi(n);
        bool past = f.side == Side::Right ? q > hi : q < lo;
        if (past && n == 0) return false;
        if (q >= lo && q <= hi) return seg_contains(fam_member_trace(ft, f, n), q);
        bool deeper_possible = f.side == Side::Right ? q < lo : q > hi;
        if (!deeper_possible) return false;
    }
}

bool operator==(const SymbolicSet& a, const SymbolicSet& b) {
    return a.space_ == b.space_ && a.tr_ == b.tr_;
}

namespace {
std::vector<RegionTrace> op_traces(const SymbolicSet& a, const SymbolicSet& b, SetOp op) {
    if (a.space() != b.space()) throw std::invalid_argument("set op: different spaces");
    std::vector<RegionTrace> out;
    for (int i = 0; i < a.space()->region_count(); ++i) {
        const Region& reg = a.space()->regions[static_cast<std::size_t>(i)];
        const RegionTrace& ta = a.trace(i);
        const RegionTrace& tb = b.trace(i);
        if (reg.is_point()) out.emplace_back(bool_op(std::get<bool>(ta), std::get<bool>(tb), op));
        else if (reg.is_segment()) out.emplace_back(seg_op(std::get<SegTrace>(ta), std::get<SegTrace>(tb), op));
        else out.emplace_back(fam_op(std::get<FamTrace>(ta), std::get<FamTrace>(tb), reg.family(), op));
    }
    return out;
}
} // namespace

SymbolicSet set_union(const SymbolicSet& a, const SymbolicSet& b) {
    SymbolicSet r(a.space());
    r.tr_ = op_traces(a, b, SetOp::Union);
    return r;
}
SymbolicSet set_intersect(const SymbolicSet& a, const SymbolicSet& b) {
    SymbolicSet r(a.space());
    r.tr_ = op_traces(a, b, SetOp::Intersect);
    return r;
}
SymbolicSet set_difference(const SymbolicSet& a, const SymbolicSet& b) {
    SymbolicSet r(a.space());
    r.tr_ = op_traces(a, b, SetOp::Diff);
    return r;
}

SymbolicSet SymbolicSet::complement() const { return set_difference(full_set(*space_), *this); }

bool SymbolicSet::subset_of(const SymbolicSet& other) const {
    return set_difference(*this, other).is_empty();
}

// --- openness ----------------------------------------------------------------

namespace {
// Relative openness of one SubIv inside an ambient segment [alo, ahi]:
// an attained endpoint must coincide with the ambient boundary.
std::optional<Rational> iv_open_failure(const SubIv& iv, const Rational& alo, const Rational& ahi) {
    if (iv.lo_in && iv.lo != alo) return iv.lo;
    if (iv.hi_in && iv.hi != ahi) return iv.hi;
    return std::nullopt;
}
} // namespace

std::optional<Rational> SymbolicSet::open_failure() const {
    for (int i = 0; i < space_->region_count(); ++i) {
        const Region& r = space_->regions[static_cast<std::size_t>(i)];
        const RegionTrace& t = tr_[static_cast<std::size_t>(i)];
        if (r.is_point()) continue; // isolated either way
        if (r.is_segment()) {
            const SegmentRegion& s = r.segment();
            for (const SubIv& iv : std::get<SegTrace>(t).ivs)
                if (auto p = iv_open_failure(iv, s.lo, s.hi)) return p;
            continue;
        }
        const FamilyRegion& f = r.family();
        const FamTrace& ft = std::get<FamTrace>(t);
        if (ft.limit_in && !ft.tail_from) return f.limit;
        for (const auto& [n, mt] : ft.partial)
            for (const SubIv& iv : mt.ivs)
                if (auto p = iv_open_failure(iv, f.member_lo(n), f.member_hi(n))) return p;
    }
    return std::nullopt;
}

bool SymbolicSet::is_open() const { return !open_failure(); }
bool SymbolicSet::is_closed() const { return complement().is_open(); }

std::optional<Rational> SymbolicSet::boundary_point() const {
    if (auto p = open_failure()) return p;
    return complement().open_failure();
}

// --- bounds ------------------------------------------------------------------

std::optional<Bound> SymbolicSet::inf() const {
    for (int i = 0; i < space_->region_count(); ++i) {
        const Region& r = space_->regions[static_cast<std::size_t>(i)];
        const RegionTrace& t = tr_[static_cast<std::size_t>(i)];
        if (r.is_point()) {
            if (std::get<bool>(t)) return Bound{r.point().p, true};
        } else if (r.is_segment()) {
            const SegTrace& st = std::get<SegTrace>(t);
            if (!st.empty()) return Bound{st.ivs.front().lo, st.ivs.front().lo_in};
        } else {
            const FamilyRegion& f = r.family();
            const FamTrace& ft = std::get<FamTrace>(t);
            if (ft.empty()) continue;
            if (f.side == Side::Right) {
                if (ft.limit_in) return Bound{f.limit, true};
                if (ft.tail_from) return Bound{f.limit, false};
                // highest index present sits lowest
                const SegTrace& mt = ft.partial.rbegin()->second;
                return Bound{mt.ivs.front().lo, mt.ivs.front().lo_in};
            }
            // side Left: lowest index present sits lowest; tail begins at its member
            int lowest = ft.partial.empty() ? (ft.tail_from ? *ft.tail_from : -1)
                                            : ft.partial.begin()->first;
            if (lowest >= 0) {
                SegTrace mt = fam_member_trace(ft, f, lowest);
                return Bound{mt.ivs.front().lo, mt.ivs.front().lo_in};
            }
            if (ft.limit_in) return Bound{f.limit, true};
        }
    }
    return std::nullopt;
}

std::optional<Bound> SymbolicSet::sup() const {
    for (int i = space_->region_count(); i-- > 0;) {
        const Region& r = space_->regions[static_cast<std::size_t>(i)];
        const RegionTrace& t = tr_[static_cast<std::size_t>(i)];
        if (r.is_point()) {
            if (std::get<bool>(t)) return Bound{r.point().p, true};
        } else if (r.is_segment()) {
            const SegTrace& st = std::get<SegTrace>(t);
            if (!st.empty()) return Bound{st.ivs.back().hi, st.ivs.back().hi_in};
        } else {
            const FamilyRegion& f = r.family();
            const FamTrace& ft = std::get<FamTrace>(t);
            if (ft.empty()) continue;
            if (f.side == Side::Left) {
                if (ft.limit_in) return Bound{f.limit, true};
                if (ft.tail_from) return Bound{f.limit, false};
                const SegTrace& mt = ft.partial.rbegin()->second;
                return Bound{mt.ivs.back().hi, mt.ivs.back().hi_in};
            }
            int lowest = ft.partial.empty() ? (ft.tail_from ? *ft.tail_from : -1)
                                            : ft.partial.begin()->first;
            if (lowest >= 0) {
                SegTrace mt = fam_member_trace(ft, f, lowest);
                return Bound{mt.ivs.back().hi, mt.ivs.back().hi_in};
            }
            if (ft.limit_in) return Bound{f.limit, true};
        }
    }
    return std::nullopt;
}

Rational SymbolicSet::diameter() const {
    auto lo = inf();
    auto hi = sup();
    if (!lo || !hi) throw std::invalid_argument("diameter of empty set");
    return hi->value - lo->value;
}

// --- clopen structure ----------------------------------------------------------

std::vector<ClopenPart> SymbolicSet::clopen_parts() const {
    if (auto p = boundary_point()) throw NotClopenError(*p, "clopen_parts: set is not clopen");
    std::vector<ClopenPart> out;
    for (int i = 0; i < space_->region_count(); ++i) {
        const Region& r = space_->regions[static_cast<std::size_t>(i)];
        const RegionTrace& t = tr_[static_cast<std::size_t>(i)];
        if (r.is_point()) {
            if (std::get<bool>(t)) out.push_back(make_component(*space_, i, ComponentRef::kWhole));
        } else if (r.is_segment()) {
            if (!std::get<SegTrace>(t).empty()) out.push_back(make_component(*space_, i, ComponentRef::kWhole));
        } else {
            const FamilyRegion& f = r.family();
            const FamTrace& ft = std::get<FamTrace>(t);
            std::vector<ClopenPart> members;
            for (const auto& [n, mt] : ft.partial) {
                assert(is_whole_member(mt, f, n));
                (void)mt;
                members.push_back(make_component(*space_, i, n));
            }
            if (f.side == Side::Right) {
                // positional: tail (starting at the limit) first, then members
                // by descending index
                if (ft.limit_in) out.push_back(TailRef{i, *ft.tail_from});
                for (auto it = members.rbegin(); it != members.rend(); ++it) out.push_back(*it);
            } else {
                for (const ClopenPart& m : members) out.push_back(m);
                if (ft.limit_in) out.push_back(TailRef{i, *ft.tail_from});
            }
        }
    }
    return out;
}

std::optional<int> SymbolicSet::component_count() const {
    int n = 0;
    for (int i = 0; i < space_->region_count(); ++i) {
        const Region& r = space_->regions[static_cast<std::size_t>(i)];
        const RegionTrace& t = tr_[static_cast<std::size_t>(i)];
        if (r.is_point()) n += std::get<bool>(t) ? 1 : 0;
        else if (r.is_segment()) n += std::get<SegTrace>(t).empty() ? 0 : 1;
        else {
            const FamTrace& ft = std::get<FamTrace>(t);
            if (ft.tail_from) return std::nullopt;
            n += static_cast<int>(ft.partial.size()) + (ft.limit_in ? 1 : 0);
        }
    }
    return n;
}

std::vector<ComponentRef> SymbolicSet::components_prefix(int max_items) const {
    ComponentStream stream(*this);
    std::vector<ComponentRef> out;
    while (static_cast<int>(out.size()) < max_items) {
        auto c = stream.next();
        if (!c) break;
        out.push_back(*c);
    }
    return out;
}

std::string SymbolicSet::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " u ";
        first = false;
    };
    for (int i = 0; i < space_->region_count(); ++i) {
        const Region& r = space_->regions[static_cast<std::size_t>(i)];
        const RegionTrace& t = tr_[static_cast<std::size_t>(i)];
        if (r.is_point()) {
            if (std::get<bool>(t)) { sep(); os << "{" << r.point().p << "}"; }
        } else if (r.is_segment()) {
            for (const SubIv& iv : std::get<SegTrace>(t).ivs) {
                sep();
                if (iv.lo == iv.hi) os << "{" << iv.lo << "}";
                else os << (iv.lo_in ? "[" : "(") << iv.lo << "," << iv.hi << (iv.hi_in ? "]" : ")");
            }
        } else {
            const FamTrace& ft = std::get<FamTrace>(t);
            const FamilyRegion& f = r.family();
            if (ft.limit_in && !ft.tail_from) { sep(); os << "{" << f.limit << "}"; }
            for (const auto& [n, mt] : ft.partial)
                for (const SubIv& iv : mt.ivs) {
                    sep();
                    if (is_whole_member(mt, f, n)) { os << "S" << i << "." << n; break; }
                    os << (iv.lo_in ? "[" : "(") << iv.lo << "," << iv.hi << (iv.hi_in ? "]" : ")");
                }
            if (ft.tail_from) {
                sep();
                os << "tail(r" << i << ",n>=" << *ft.tail_from << (ft.limit_in ? ",+lim)" : ")");
            }
        }
    }
    if (first) os << "{}";
    return os.str();
}

Rational part_min_position(const SymbolicSpace& sp, const ClopenPart& p) {
    if (std::holds_alternative<ComponentRef>(p)) return std::get<ComponentRef>(p).lo;
    const TailRef& t = std::get<TailRef>(p);
    const FamilyRegion& f = sp.regions[static_cast<std::size_t>(t.region)].family();
    return f.side == Side::Right ? f.limit : f.member_lo(t.from);
}

std::string part_to_string(const SymbolicSpace& sp, const ClopenPart& p) {
    (void)sp;
    if (std::holds_alternative<ComponentRef>(p)) return std::get<ComponentRef>(p).to_string();
    const TailRef& t = std::get<TailRef>(p);
    return "tail(r" + std::to_string(t.region) + ",n>=" + std::to_string(t.from) + ",+lim)";
}

std::optional<int> part_component_count(const ClopenPart& p) {
    if (std::holds_alternative<ComponentRef>(p)) return 1;
    return std::nullopt;
}

// --- metric / order helpers ----------------------------------------------------

SymbolicSet metric_ball(const SymbolicSet& a, const Rational& eps) {
    if (!(eps > Rational(0))) throw std::invalid_argument("metric_ball: eps must be positive");
    auto lo = a.inf();
    auto hi = a.sup();
    if (!lo || !hi) throw std::invalid_argument("metric_ball: empty set");
    return SymbolicSet::interval(*a.space(), lo->value - eps, false, hi->value + eps, false);
}

SymbolicSet ray_below(const SymbolicSet& a) {
    auto lo = a.inf();
    if (!lo) throw std::invalid_argument("ray_below: empty set");
    // attained infimum: strictly below it; otherwise everything up to and
    // including the bound itself
    return SymbolicSet::interval(*a.space(), std::nullopt, true, lo->value, !lo->attained);
}

SymbolicSet ray_above(const SymbolicSet& a) {
    auto hi = a.sup();
    if (!hi) throw std::invalid_argument("ray_above: empty set");
    return SymbolicSet::interval(*a.space(), hi->value, !hi->attained, std::nullopt, true);
}

SymbolicSet ray_below_closed(const SymbolicSet& a) { return ray_above(a).complement(); }
SymbolicSet ray_above_closed(const SymbolicSet& a) { return ray_below(a).complement(); }

// --- component neighbourhoods ---------------------------------------------------

SymbolicSet delta_by_flags(const SymbolicSpace& sp, const ComponentRef& c, const Rational& eps,
                           int l_flag, int r_flag) {
    if (!(eps > Rational(0))) throw std::invalid_argument("delta_neighborhood: eps must be positive");
    SymbolicSet cs = SymbolicSet::component_set(sp, c);
    if (l_flag == 0 && r_flag == 0) return cs;
    SymbolicSet ball = metric_ball(cs, eps * rat(1, 2));
    if (l_flag != 0 && r_flag == 0) return set_intersect(ball, ray_below_closed(cs));
    if (l_flag == 0 && r_flag != 0) return set_intersect(ball, ray_above_closed(cs));
    return ball;
}

SymbolicSet delta_neighborhood(const SymbolicSpace& sp, const ComponentRef& c, const Rational& eps) {
    auto [l, r] = lr_flags(sp, c);
    return delta_by_flags(sp, c, eps, l, r);
}

std::vector<ComponentRef> big_components(const SymbolicSpace& sp, const SymbolicSet& u, const Rational& eps) {
    if (!(eps > Rational(0))) throw std::invalid_argument("big_components: eps must be positive");
    if (auto p = u.boundary_point()) throw NotClopenError(*p, "big_components: set is not clopen");
    std::vector<ComponentRef> out;
    for (int i = 0; i < sp.region_count(); ++i) {
        const Region& r = sp.regions[static_cast<std::size_t>(i)];
        if (r.is_point()) continue;
        if (r.is_segment()) {
            ComponentRef c = make_component(sp, i, ComponentRef::kWhole);
            if (c.diam() >= eps && !std::get<SegTrace>(u.trace(i)).empty()) out.push_back(c);
            continue;
        }
        const FamilyRegion& f = r.family();
        const FamTrace& ft = std::get<FamTrace>(u.trace(i));
        for (int n = 0; f.member_diam(n) >= eps; ++n) {
            if (!fam_member_trace(ft, f, n).empty()) out.push_back(make_component(sp, i, n));
        }
    }
    std::sort(out.begin(), out.end(), [](const ComponentRef& a, const ComponentRef& b) { return a.lo < b.lo; });
    return out;
}

bool is_admissible(const SymbolicSpace& sp, const SymbolicSet& u) {
    (void)sp;
    if (auto p = u.boundary_point()) throw NotClopenError(*p, "is_admissible: set is not clopen");
    if (u.is_empty()) return false;
    auto n = u.component_count();
    return !n || *n == 1;
}

bool is_admissible_at(const SymbolicSpace& sp, const SymbolicSet& u, const Rational& eps) {
    if (!is_admissible(sp, u)) return false;
    if (u.diameter() < eps) return true;
    for (const ComponentRef& c : big_components(sp, u, eps))
        if (u.subset_of(delta_neighborhood(sp, c, eps))) return true;
    return false;
}

std::pair<SymbolicSet, SymbolicSet> split_clopen(const SymbolicSpace& sp, const SymbolicSet& u) {
    if (!is_admissible(sp, u) || u.component_count())
        throw std::invalid_argument("split_clopen: needs an admissible clopen set with infinitely many components");
    std::vector<ClopenPart> parts = u.clopen_parts();
    // The positionally first clopen component, when one exists, is the first
    // part. When the first part is a right-sided tail its members have no
    // positional minimum, so split the tail at its least index instead; for
    // a left-sided tail the least index is also the positionally first
    // clopen component, so the two rules agree.
    ComponentRef chosen;
    if (std::holds_alternative<ComponentRef>(parts.front())) {
        chosen = std::get<ComponentRef>(parts.front());
    } else {
        const TailRef& t = std::get<TailRef>(parts.front());
        chosen = make_component(sp, t.region, t.from);
    }
    SymbolicSet piece = SymbolicSet::component_set(sp, chosen);
    SymbolicSet rest = set_difference(u, piece);
    if (part_min_position(sp, ClopenPart{chosen}) <= rest.inf()->value)
        return {piece, rest};
    return {rest, piece};
}

SymbolicSet clopen_separation(const SymbolicSpace& sp, const ComponentRef& c, const SymbolicSet& u) {
    if (auto p = u.open_failure()) throw NotClopenError(*p, "clopen_separation: U is not open");
    SymbolicSet cs = SymbolicSet::component_set(sp, c);
    if (!cs.subset_of(u)) throw std::invalid_argument("clopen_separation: C not contained in U");
    if (cs.is_clopen()) return cs;
    // only family limits are non-clopen components; take the least whole tail inside U
    const FamTrace& ft = std::get<FamTrace>(u.trace(c.region));
    if (!ft.tail_from)
        throw std::logic_error("clopen_separation: open set around a limit must contain a tail");
    return SymbolicSet::family_tail(sp, c.region, *ft.tail_from, true);
}

std::optional<Rational> shrink_to_fit(const SymbolicSpace& sp, const ComponentRef& c,
                                      const SymbolicSet& u, int max_halvings) {
    Rational eps(1);
    for (int k = 0; k <= max_halvings; ++k) {
        if (delta_neighborhood(sp, c, eps).subset_of(u)) return eps;
        eps = eps * rat(1, 2);
    }
    return std::nullopt;
}

// --- component stream ------------------------------------------------------------

ComponentStream::ComponentStream(SymbolicSet restrict_to) : set_(std::move(restrict_to)) {
    if (auto p = set_.open_failure()) throw NotClopenError(*p, "components: restriction is not open");
}

std::optional<ComponentRef> ComponentStream::next() {
    const SymbolicSpace& sp = *set_.space();
    while (region_ < sp.region_count()) {
        const Region& r = sp.regions[static_cast<std::size_t>(region_)];
        const RegionTrace& t = set_.trace(region_);
        if (r.is_point()) {
            bool in = std::get<bool>(t);
            ++region_;
            if (in) return make_component(sp, region_ - 1, ComponentRef::kWhole);
            continue;
        }
        if (r.is_segment()) {
            bool in = !std::get<SegTrace>(t).empty();
            ++region_;
            if (in) return make_component(sp, region_ - 1, ComponentRef::kWhole);
            continue;
        }
        const FamTrace& ft = std::get<FamTrace>(t);
        if (!limit_done_) {
            limit_done_ = true;
            if (ft.limit_in) return make_component(sp, region_, ComponentRef::kLimit);
        }
        if (!member_) member_ = 0;
        // advance to the next member index meeting the set
        while (true) {
            int n = *member_;
            if (ft.tail_from && n >= *ft.tail_from) {
                ++*member_;
                return make_component(sp, region_, n);
            }
            auto it = ft.partial.lower_bound(n);
            if (it == ft.partial.end()) {
                if (ft.tail_from) {
                    *member_ = *ft.tail_from;
                    continue;
                }
                break; // family exhausted
            }
            *member_ = it->first + 1;
            return make_component(sp, region_, it->first);
        }
        ++region_;
        limit_done_ = false;
        member_.reset();
    }
    return std::nullopt;
}

} // namespace seltop

