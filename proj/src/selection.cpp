#include "seltop/selection.hpp"

#include <algorithm>
#include <sstream>

namespace seltop {

// --- Tournament ----------------------------------------------------------------

std::size_t Tournament::pair_index(int n, int i, int j) {
    // lexicographic over pairs (i,j), i < j
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) -
           static_cast<std::size_t>(i) * (static_cast<std::size_t>(i) + 1) / 2 +
           static_cast<std::size_t>(j - i - 1);
}

Tournament Tournament::total_order(int n) {
    Tournament t;
    t.n_ = n;
    t.bits_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2, 1);
    return t;
}

Tournament Tournament::from_bits(int n, unsigned long long bits) {
    Tournament t;
    t.n_ = n;
    std::size_t m = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
    t.bits_.assign(m, 0);
    for (std::size_t k = 0; k < m; ++k) t.bits_[k] = (bits >> k) & 1u;
    return t;
}

Tournament Tournament::from_rule(std::function<bool(int, int)> less_fn) {
    Tournament t;
    t.rule_ = std::move(less_fn);
    return t;
}

Tournament Tournament::from_pairs(int n, const std::vector<std::pair<int, int>>& less_pairs) {
    Tournament t = total_order(n);
    std::vector<uint8_t> seen(t.bits_.size(), 0);
    for (auto [i, j] : less_pairs) {
        if (i == j || i < 0 || j < 0 || i >= n || j >= n)
            throw std::invalid_argument("Tournament::from_pairs: bad pair");
        bool forward = i < j;
        std::size_t k = forward ? pair_index(n, i, j) : pair_index(n, j, i);
        if (seen[k]) throw std::invalid_argument("Tournament::from_pairs: duplicate pair");
        seen[k] = 1;
        t.bits_[k] = forward ? 1 : 0;
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
        if (!seen[k]) throw std::invalid_argument("Tournament::from_pairs: pair left undecided");
    return t;
}

int Tournament::size() const {
    if (rule_) throw std::logic_error("Tournament::size: rule-backed");
    return n_;
}

bool Tournament::less(int i, int j) const {
    if (i == j) throw std::invalid_argument("Tournament::less: equal elements");
    if (rule_) return rule_(i, j);
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::invalid_argument("Tournament::less: out of range");
    if (i < j) return bits_[pair_index(n_, i, j)] != 0;
    return bits_[pair_index(n_, j, i)] == 0;
}

Tournament Tournament::reversed() const {
    if (rule_) {
        auto r = rule_;
        return from_rule([r](int i, int j) { return r(j, i); });
    }
    Tournament t = *this;
    for (auto& b : t.bits_) b = b ? 0 : 1;
    return t;
}

bool Tournament::is_transitive() const {
    int n = size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (less(i, j) && less(j, k) && !less(i, k)) return false;
            }
    return true;
}

bool Tournament::same_on(const Tournament& other, int n) const {
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (less(i, j) != other.less(i, j)) return false;
    return true;
}

// --- construction ----------------------------------------------------------------

SelPtr canonical_selection(const SymbolicSet& carrier, bool reverse) {
    auto s = std::make_shared<Selection>();
    s->carrier = carrier;
    s->node = CanonicalNode{reverse};
    return s;
}

SelPtr canonical_selection(const SymbolicSpace& sp, bool reverse) {
    return canonical_selection(SymbolicSet::full_set(sp), reverse);
}

SelPtr sieve_selection(std::shared_ptr<const SieveBackend> backend) {
    auto s = std::make_shared<Selection>();
    s->carrier = SymbolicSet::full_set(backend->space());
    s->node = SieveNode{std::move(backend)};
    return s;
}

SelPtr combine_invariant(const SymbolicSet& carrier, std::vector<SymbolicSet> parts,
                         Tournament top, std::vector<SelPtr> children) {
    if (parts.empty()) throw std::invalid_argument("combine_invariant: no parts");
    if (children.size() != parts.size())
        throw std::invalid_argument("combine_invariant: children/parts size mismatch");
    SymbolicSet cover = SymbolicSet::empty_set(*carrier.space());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].is_empty()) throw std::invalid_argument("combine_invariant: empty part");
        if (!(children[i]->carrier == parts[i]))
            throw std::invalid_argument("combine_invariant: child carrier does not cover its part");
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (!set_intersect(parts[i], parts[j]).is_empty())
                throw std::invalid_argument("combine_invariant: overlapping parts");
        cover = set_union(cover, parts[i]);
    }
    if (!(cover == carrier)) throw std::invalid_argument("combine_invariant: parts do not cover carrier");
    if (parts.size() == 1) return children[0];
    auto s = std::make_shared<Selection>();
    s->carrier = carrier;
    s->node = InvariantNode{std::move(parts), std::move(top), std::move(children)};
    return s;
}

SelPtr combine_invariant_canonical(const SymbolicSet& carrier, std::vector<SymbolicSet> parts,
                                   Tournament top, bool reverse_children) {
    std::vector<SelPtr> children;
    children.reserve(parts.size());
    for (const SymbolicSet& p : parts) children.push_back(canonical_selection(p, reverse_children));
    return combine_invariant(carrier, std::move(parts), std::move(top), std::move(children));
}

// --- evaluation ----------------------------------------------------------------

namespace {
int part_of(const InvariantNode& inv, const Rational& q) {
    for (std::size_t i = 0; i < inv.parts.size(); ++i)
        if (inv.parts[i].contains(q)) return static_cast<int>(i);
    return -1;
}
} // namespace

bool sel_less(const Selection& s, const Rational& x, const Rational& y) {
    if (x == y) return false;
    if (s.is_canonical()) {
        if (!s.carrier.contains(x) || !s.carrier.contains(y))
            throw std::invalid_argument("sel_less: element outside carrier");
        return s.canonical().reverse ? y < x : x < y;
    }
    if (s.is_invariant()) {
        const InvariantNode& inv = s.invariant();
        int px = part_of(inv, x), py = part_of(inv, y);
        if (px < 0 || py < 0) throw std::invalid_argument("sel_less: element outside carrier");
        if (px == py) return sel_less(*inv.children[static_cast<std::size_t>(px)], x, y);
        return inv.top.less(px, py);
    }
    return s.sieve().backend->less(x, y);
}

Rational select(const Selection& s, const Rational& x, const Rational& y) {
    if (x == y) return x;
    return sel_less(s, x, y) ? x : y;
}

SymbolicSet interval_below(const Selection& s, const Rational& x) {
    if (s.is_canonical()) {
        if (!s.carrier.contains(x)) throw std::invalid_argument("interval_below: outside carrier");
        return set_intersect(s.carrier,
                             s.canonical().reverse
                                 ? SymbolicSet::interval(*s.carrier.space(), x, false, std::nullopt, true)
                                 : SymbolicSet::interval(*s.carrier.space(), std::nullopt, true, x, false));
    }
    if (s.is_invariant()) {
        const InvariantNode& inv = s.invariant();
        int px = part_of(inv, x);
        if (px < 0) throw std::invalid_argument("interval_below: outside carrier");
        SymbolicSet out = interval_below(*inv.children[static_cast<std::size_t>(px)], x);
        for (std::size_t q = 0; q < inv.parts.size(); ++q)
            if (static_cast<int>(q) != px && inv.top.less(static_cast<int>(q), px))
                out = set_union(out, inv.parts[q]);
        return out;
    }
    return s.sieve().backend->below(x);
}

SymbolicSet interval_above(const Selection& s, const Rational& x) {
    if (s.is_canonical()) {
        if (!s.carrier.contains(x)) throw std::invalid_argument("interval_above: outside carrier");
        return set_intersect(s.carrier,
                             s.canonical().reverse
                                 ? SymbolicSet::interval(*s.carrier.space(), std::nullopt, true, x, false)
                                 : SymbolicSet::interval(*s.carrier.space(), x, false, std::nullopt, true));
    }
    if (s.is_invariant()) {
        const InvariantNode& inv = s.invariant();
        int px = part_of(inv, x);
        if (px < 0) throw std::invalid_argument("interval_above: outside carrier");
        SymbolicSet out = interval_above(*inv.children[static_cast<std::size_t>(px)], x);
        for (std::size_t q = 0; q < inv.parts.size(); ++q)
            if (static_cast<int>(q) != px && inv.top.less(px, static_cast<int>(q)))
                out = set_union(out, inv.parts[q]);
        return out;
    }
    return s.sieve().backend->above(x);
}

std::vector<Rational> interval_below(const Tournament& t, const std::vector<Rational>& carrier,
                                     const Rational& x) {
    auto it = std::find(carrier.begin(), carrier.end(), x);
    if (it == carrier.end()) throw std::invalid_argument("interval_below: x not in carrier");
    int ix = static_cast<int>(it - carrier.begin());
    std::vector<Rational> out;
    for (int i = 0; i < static_cast<int>(carrier.size()); ++i)
        if (i != ix && t.less(i, ix)) out.push_back(carrier[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<Rational> interval_above(const Tournament& t, const std::vector<Rational>& carrier,
                                     const Rational& x) {
    auto it = std::find(carrier.begin(), carrier.end(), x);
    if (it == carrier.end()) throw std::invalid_argument("interval_above: x not in carrier");
    int ix = static_cast<int>(it - carrier.begin());
    std::vector<Rational> out;
    for (int i = 0; i < static_cast<int>(carrier.size()); ++i)
        if (i != ix && t.less(ix, i)) out.push_back(carrier[static_cast<std::size_t>(i)]);
    return out;
}

std::pair<SymbolicSet, SymbolicSet> set_intervals(const Selection& s, const SymbolicSet& a) {
    if (a.is_empty()) throw std::invalid_argument("set_intervals: empty set");
    if (s.is_canonical()) {
        SymbolicSet below = set_intersect(s.carrier, ray_below(a));
        SymbolicSet above = set_intersect(s.carrier, ray_above(a));
        if (s.canonical().reverse) return {above, below};
        return {below, above};
    }
    if (s.is_invariant()) {
        const InvariantNode& inv = s.invariant();
        std::vector<int> meets;
        for (std::size_t q = 0; q < inv.parts.size(); ++q)
            if (!set_intersect(inv.parts[q], a).is_empty()) meets.push_back(static_cast<int>(q));
        SymbolicSet below = SymbolicSet::empty_set(*s.carrier.space());
        SymbolicSet above = SymbolicSet::empty_set(*s.carrier.space());
        for (std::size_t q = 0; q < inv.parts.size(); ++q) {
            int qi = static_cast<int>(q);
            bool below_all = true, above_all = true;
            for (int m : meets) {
                if (m == qi) continue;
                (inv.top.less(qi, m) ? above_all : below_all) = false;
            }
            bool qmeets = std::find(meets.begin(), meets.end(), qi) != meets.end();
            if (below_all) {
                if (qmeets) {
                    auto sub = set_intervals(*inv.children[q], set_intersect(inv.parts[q], a));
                    below = set_union(below, sub.first);
                } else {
                    below = set_union(below, inv.parts[q]);
                }
            }
            if (above_all) {
                if (qmeets) {
                    auto sub = set_intervals(*inv.children[q], set_intersect(inv.parts[q], a));
                    above = set_union(above, sub.second);
                } else {
                    above = set_union(above, inv.parts[q]);
                }
            }
        }
        return {below, above};
    }
    throw Undetermined("set_intervals: unsupported for sieve selections; use interval queries");
}

DecisiveCertificate is_decisive(const Selection& s, const std::vector<SymbolicSet>& parts) {
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (!set_intersect(parts[i], parts[j]).is_empty())
                throw std::invalid_argument("is_decisive: overlapping parts");
    DecisiveCertificate cert;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            Rational xi = sample_point(parts[i]);
            Rational xj = sample_point(parts[j]);
            bool fwd = sel_less(s, xi, xj);
            const SymbolicSet& lower = fwd ? parts[i] : parts[j];
            const SymbolicSet& upper = fwd ? parts[j] : parts[i];
            SymbolicSet below_upper = set_intervals(s, upper).first;
            if (lower.subset_of(below_upper)) continue;
            DecisiveViolation v;
            v.part_a = static_cast<int>(fwd ? i : j); // the lower part
            v.part_b = static_cast<int>(fwd ? j : i);
            v.x = fwd ? xi : xj;
            v.y = fwd ? xj : xi;
            // a lower point that fails to sit below all of upper, and the
            // upper point it fails against
            Rational x2 = sample_point(set_difference(lower, below_upper));
            Rational y2 = sample_point(set_difference(upper, interval_above(s, x2)));
            v.x2 = x2;
            v.y2 = y2;
            cert.violation = v;
            return cert;
        }
    }
    cert.decisive = true;
    return cert;
}

std::string DecisiveCertificate::to_string() const {
    if (decisive) return "decisive";
    std::ostringstream os;
    os << "violation: parts " << violation->part_a << "," << violation->part_b << "; "
       << violation->x << " < " << violation->y << " but " << violation->y2 << " <= " << violation->x2;
    return os.str();
}

bool is_circular(const Selection& s, const Rational& x, const Rational& y, const Rational& z) {
    if (x == y || y == z || x == z) throw std::invalid_argument("is_circular: repeated elements");
    return sel_less(s, x, y) && sel_less(s, y, z) && sel_less(s, z, x);
}

namespace {
// U <_s V for whole sets, decided exactly
bool all_less(const Selection& s, const SymbolicSet& u, const SymbolicSet& v) {
    try {
        return u.subset_of(set_intervals(s, v).first);
    } catch (const Undetermined&) {
        return false;
    }
}
} // namespace

std::optional<std::pair<SymbolicSet, SymbolicSet>>
continuity_box(const Selection& s, const Rational& x, const Rational& y, int budget) {
    if (!sel_less(s, x, y)) throw std::invalid_argument("continuity_box: needs x <_s y");
    const SymbolicSpace& sp = *s.carrier.space();
    std::vector<std::pair<SymbolicSet, SymbolicSet>> cands;

    if (s.is_sieve()) {
        if (auto box = s.sieve().backend->continuity_box(x, y)) cands.push_back(*box);
    }
    if (s.is_invariant()) {
        const InvariantNode& inv = s.invariant();
        int px = part_of(inv, x), py = part_of(inv, y);
        if (px >= 0 && py >= 0 && px != py)
            cands.emplace_back(inv.parts[static_cast<std::size_t>(px)],
                               inv.parts[static_cast<std::size_t>(py)]);
    }
    // natural-order cuts at the midpoint, full width and component-restricted
    Rational lo = min(x, y), hi = max(x, y);
    Rational m = (lo + hi) * rat(1, 2);
    SymbolicSet left = SymbolicSet::interval(sp, std::nullopt, true, m, false);
    SymbolicSet right = SymbolicSet::interval(sp, m, false, std::nullopt, true);
    SymbolicSet ux = left.contains(x) ? left : right;
    SymbolicSet vy = left.contains(y) ? left : right;
    cands.emplace_back(set_intersect(s.carrier, ux), set_intersect(s.carrier, vy));
    if (sp.contains(x) && sp.contains(y)) {
        SymbolicSet cx = SymbolicSet::component_set(sp, component_of(sp, x));
        SymbolicSet cy = SymbolicSet::component_set(sp, component_of(sp, y));
        cands.emplace_back(set_intersect(cx, ux), set_intersect(cy, vy));
        cands.emplace_back(cx, cy);
    }

    int tried = 0;
    for (const auto& [u, v] : cands) {
        if (tried++ >= budget) break;
        if (u.is_empty() || v.is_empty()) continue;
        if (!u.contains(x) || !v.contains(y)) continue;
        if (!u.is_open() || !v.is_open()) continue;
        if (s.is_sieve()) {
            // backend boxes come verified; natural-order candidates are
            // checked pointwise on witnesses plus the backend's set check
            if (!s.sieve().backend->box_ordered(u, v)) continue;
        } else if (!all_less(s, u, v)) {
            continue;
        }
        return std::make_pair(u, v);
    }
    return std::nullopt;
}

Tournament restrict_to_tournament(const Selection& s, const std::vector<Rational>& points) {
    int n = static_cast<int>(points.size());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool ij = sel_less(s, points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
            pairs.emplace_back(ij ? i : j, ij ? j : i);
        }
    return Tournament::from_pairs(n, pairs);
}

Rational sample_point(const SymbolicSet& set) {
    const SymbolicSpace& sp = *set.space();
    for (int i = 0; i < sp.region_count(); ++i) {
        const Region& r = sp.regions[static_cast<std::size_t>(i)];
        const RegionTrace& t = set.trace(i);
        if (r.is_point()) {
            if (std::get<bool>(t)) return r.point().p;
        } else if (r.is_segment()) {
            const SegTrace& st = std::get<SegTrace>(t);
            if (!st.empty()) {
                const SubIv& iv = st.ivs.front();
                if (iv.lo == iv.hi) return iv.lo;
                if (iv.lo_in) return iv.lo;
                return (iv.lo + iv.hi) * rat(1, 2);
            }
        } else {
            const FamTrace& ft = std::get<FamTrace>(t);
            if (ft.limit_in) return r.family().limit;
            const SegTrace* mt = nullptr;
            if (!ft.partial.empty()) mt = &ft.partial.begin()->second;
            SegTrace whole;
            if (!mt && ft.tail_from) {
                whole = SegTrace{{SubIv{r.family().member_lo(*ft.tail_from),
                                        r.family().member_hi(*ft.tail_from), true, true}}};
                mt = &whole;
            }
            if (mt && !mt->empty()) {
                const SubIv& iv = mt->ivs.front();
                if (iv.lo == iv.hi || iv.lo_in) return iv.lo;
                return (iv.lo + iv.hi) * rat(1, 2);
            }
        }
    }
    throw std::invalid_argument("sample_point: empty set");
}

// --- descriptors ----------------------------------------------------------------

std::string Selection::descriptor() const {
    if (is_canonical()) return canonical().reverse ? "canonical(rev)" : "canonical(fwd)";
    if (is_sieve()) return "sieve-invariant";
    const InvariantNode& inv = invariant();
    std::ostringstream os;
    os << "invariant(top=pairs(";
    int n = static_cast<int>(inv.parts.size());
    bool first = true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!first) os << ",";
            first = false;
            if (inv.top.less(i, j)) os << i << "<" << j;
            else os << j << "<" << i;
        }
    os << "); parts=[";
    for (int i = 0; i < n; ++i) {
        if (i) os << " | ";
        os << inv.parts[static_cast<std::size_t>(i)].to_string();
    }
    os << "])";
    return os.str();
}

namespace {
std::vector<std::string> split_str(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(sep, start);
        if (end == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}
} // namespace

SelPtr parse_descriptor(const SymbolicSpace& sp, const std::string& raw) {
    std::string text = strip(raw);
    if (text == "canonical(fwd)") return canonical_selection(sp, false);
    if (text == "canonical(rev)") return canonical_selection(sp, true);
    if (text.rfind("invariant(", 0) != 0 || text.back() != ')')
        throw std::invalid_argument("bad selection descriptor: " + text);
    std::string body = text.substr(10, text.size() - 11);
    Tournament top;
    bool have_top = false, reverse_children = false;
    std::string parts_kind;
    for (const std::string& field_raw : split_str(body, ';')) {
        std::string field = strip(field_raw);
        if (field.rfind("top=", 0) == 0) {
            std::string val = field.substr(4);
            if (val.rfind("order(", 0) == 0 && val.back() == ')') {
                auto names = split_str(val.substr(6, val.size() - 7), '<');
                std::vector<std::pair<int, int>> pairs;
                for (std::size_t i = 0; i < names.size(); ++i)
                    for (std::size_t j = i + 1; j < names.size(); ++j)
                        pairs.emplace_back(std::stoi(strip(names[i])), std::stoi(strip(names[j])));
                top = Tournament::from_pairs(static_cast<int>(names.size()), pairs);
                have_top = true;
            } else if (val.rfind("pairs(", 0) == 0 && val.back() == ')') {
                std::vector<std::pair<int, int>> pairs;
                int maxi = -1;
                for (const std::string& pr : split_str(val.substr(6, val.size() - 7), ',')) {
                    auto sides = split_str(strip(pr), '<');
                    if (sides.size() != 2) throw std::invalid_argument("bad pair in descriptor: " + pr);
                    int a = std::stoi(strip(sides[0])), b = std::stoi(strip(sides[1]));
                    pairs.emplace_back(a, b);
                    maxi = std::max({maxi, a, b});
                }
                top = Tournament::from_pairs(maxi + 1, pairs);
                have_top = true;
            } else {
                throw std::invalid_argument("bad top= in descriptor: " + val);
            }
        } else if (field.rfind("parts=", 0) == 0) {
            parts_kind = field.substr(6);
        } else if (field == "children=rev") {
            reverse_children = true;
        } else if (field == "children=fwd") {
        } else {
            throw std::invalid_argument("bad descriptor field: " + field);
        }
    }
    if (!have_top) throw std::invalid_argument("descriptor missing top=");
    if (parts_kind != "components")
        throw std::invalid_argument("descriptor supports parts=components only");
    if (!sp.finite_component_count())
        throw std::invalid_argument("parts=components needs finitely many components");
    std::vector<SymbolicSet> parts;
    for (int i = 0; i < sp.region_count(); ++i)
        parts.push_back(SymbolicSet::component_set(sp, make_component(sp, i, ComponentRef::kWhole)));
    return combine_invariant_canonical(SymbolicSet::full_set(sp), std::move(parts), std::move(top),
                                       reverse_children);
}

} // namespace seltop
