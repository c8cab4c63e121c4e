#include "seltop/model.hpp"

#include <algorithm>
#include <sstream>

namespace seltop {

Rational FamilyRegion::member_lo(int n) const {
    Rational scale = pow(ratio, n);
    return side == Side::Right ? limit + scale * seg_lo : limit - scale * seg_hi;
}

Rational FamilyRegion::member_hi(int n) const {
    Rational scale = pow(ratio, n);
    return side == Side::Right ? limit + scale * seg_hi : limit - scale * seg_lo;
}

Rational Region::span_lo() const {
    if (is_point()) return point().p;
    if (is_segment()) return segment().lo;
    const FamilyRegion& f = family();
    return f.side == Side::Right ? f.limit : f.limit - f.seg_hi;
}

Rational Region::span_hi() const {
    if (is_point()) return point().p;
    if (is_segment()) return segment().hi;
    const FamilyRegion& f = family();
    return f.side == Side::Right ? f.limit + f.seg_hi : f.limit;
}

std::optional<int> SymbolicSpace::region_at(const Rational& q) const {
    for (int i = 0; i < region_count(); ++i) {
        if (q < regions[static_cast<std::size_t>(i)].span_lo()) return std::nullopt;
        if (q <= regions[static_cast<std::size_t>(i)].span_hi()) return i;
    }
    return std::nullopt;
}

bool SymbolicSpace::contains(const Rational& q) const {
    auto ri = region_at(q);
    if (!ri) return false;
    const Region& r = regions[static_cast<std::size_t>(*ri)];
    if (r.is_point()) return q == r.point().p;
    if (r.is_segment()) {
        const SegmentRegion& s = r.segment();
        if (q == s.lo) return !s.lo_open;
        if (q == s.hi) return !s.hi_open;
        return true;
    }
    const FamilyRegion& f = r.family();
    if (q == f.limit) return true;
    // walk members toward the limit until q can no longer be inside one
    for (int n = 0;; ++n) {
        Rational lo = f.member_lo(n), hi = f.member_hi(n);
        if (f.side == Side::Right) {
            if (q > hi) return false;       // in the gap above member n
            if (q >= lo) return true;       // inside member n
        } else {
            if (q < lo) return false;
            if (q <= hi) return true;
        }
    }
}

bool SymbolicSpace::has_family() const {
    for (const Region& r : regions)
        if (r.is_family()) return true;
    return false;
}

std::optional<int> SymbolicSpace::finite_component_count() const {
    if (has_family()) return std::nullopt;
    return region_count();
}

std::string ComponentRef::to_string() const {
    std::ostringstream os;
    if (is_singleton()) {
        os << "{" << lo << "}";
    } else {
        os << (lo_in ? "[" : "(") << lo << "," << hi << (hi_in ? "]" : ")");
    }
    return os.str();
}

ComponentRef make_component(const SymbolicSpace& sp, int region, int member) {
    const Region& r = sp.regions[static_cast<std::size_t>(region)];
    ComponentRef c;
    c.region = region;
    c.member = member;
    if (r.is_point()) {
        c.member = ComponentRef::kWhole;
        c.lo = c.hi = r.point().p;
    } else if (r.is_segment()) {
        c.member = ComponentRef::kWhole;
        const SegmentRegion& s = r.segment();
        c.lo = s.lo;
        c.hi = s.hi;
        c.lo_in = !s.lo_open;
        c.hi_in = !s.hi_open;
    } else {
        const FamilyRegion& f = r.family();
        if (member == ComponentRef::kLimit) {
            c.lo = c.hi = f.limit;
        } else {
            if (member < 0) throw std::invalid_argument("make_component: bad member index");
            c.lo = f.member_lo(member);
            c.hi = f.member_hi(member);
        }
    }
    return c;
}

ComponentRef component_of(const SymbolicSpace& sp, const Rational& q) {
    auto ri = sp.region_at(q);
    if (!ri || !sp.contains(q)) throw std::invalid_argument("component_of: point not in space");
    const Region& r = sp.regions[static_cast<std::size_t>(*ri)];
    if (!r.is_family()) return make_component(sp, *ri, ComponentRef::kWhole);
    const FamilyRegion& f = r.family();
    if (q == f.limit) return make_component(sp, *ri, ComponentRef::kLimit);
    for (int n = 0;; ++n) {
        if (q >= f.member_lo(n) && q <= f.member_hi(n)) return make_component(sp, *ri, n);
    }
}

std::pair<int, int> lr_flags(const SymbolicSpace& sp, const ComponentRef& c) {
    const Region& r = sp.regions[static_cast<std::size_t>(c.region)];
    if (!r.is_family() || c.member != ComponentRef::kLimit) return {0, 0};
    // Members accumulate at the limit from exactly one side.
    return r.family().side == Side::Left ? std::pair<int, int>{1, 0} : std::pair<int, int>{0, 1};
}

int scale_level(const ComponentRef& c) {
    Rational d = c.diam();
    if (d.is_zero()) throw std::invalid_argument("scale_level: singleton component");
    int n = 0;
    Rational scale(1);
    while (scale > d) {
        scale = scale * rat(1, 2);
        ++n;
    }
    return n;
}

std::vector<Rational> component_witnesses(const ComponentRef& c) {
    if (c.is_singleton()) return {c.lo};
    Rational quarter = (c.hi - c.lo) * rat(1, 4);
    std::vector<Rational> w;
    w.push_back(c.lo_in ? c.lo : c.lo + quarter);
    w.push_back((c.lo + c.hi) * rat(1, 2));
    w.push_back(c.hi_in ? c.hi : c.hi - quarter);
    return w;
}

std::vector<Rational> purisch_witnesses(const SymbolicSpace& sp, int depth) {
    if (depth < 0) throw std::invalid_argument("purisch_witnesses: negative depth");
    std::vector<Rational> out;
    for (int i = 0; i < sp.region_count(); ++i) {
        const Region& r = sp.regions[static_cast<std::size_t>(i)];
        if (r.is_family()) {
            auto add = [&](const ComponentRef& c) {
                for (const Rational& q : component_witnesses(c)) out.push_back(q);
            };
            add(make_component(sp, i, ComponentRef::kLimit));
            for (int n = 0; n <= depth; ++n) add(make_component(sp, i, n));
        } else {
            for (const Rational& q : component_witnesses(make_component(sp, i, ComponentRef::kWhole)))
                out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// --- parser -----------------------------------------------------------------

namespace {

struct LineLexer {
    const std::string& s;
    int line;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size() || s[pos] == '#';
    }
    int col() const { return static_cast<int>(pos) + 1; }
    std::string token() {
        skip_ws();
        if (done()) throw ParseError(line, col(), "unexpected end of line");
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t' && s[pos] != '#') ++pos;
        return s.substr(start, pos - start);
    }
};

Rational parse_rat(LineLexer& lx, const std::string& tok) {
    try {
        return Rational::parse(tok);
    } catch (const std::exception&) {
        throw ParseError(lx.line, lx.col(), "bad rational '" + tok + "'");
    }
}

// key=value fields of a family line
std::string field(LineLexer& lx, const std::string& tok, const std::string& key) {
    if (tok.size() <= key.size() + 1 || tok.compare(0, key.size(), key) != 0 || tok[key.size()] != '=')
        throw ParseError(lx.line, lx.col(), "expected " + key + "=<...>, got '" + tok + "'");
    return tok.substr(key.size() + 1);
}

} // namespace

SymbolicSpace parse_model(const std::string& text) {
    SymbolicSpace sp;
    bool have_space_line = false;
    std::vector<int> region_lines;
    std::vector<Rational> merged_points;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        LineLexer lx{raw, lineno};
        if (lx.done()) continue;
        std::string verb = lx.token();
        if (verb == "space") {
            sp.name = lx.token();
            have_space_line = true;
            continue;
        }
        Region reg;
        if (verb == "point") {
            reg.v = PointRegion{parse_rat(lx, lx.token())};
        } else if (verb == "segment") {
            SegmentRegion s;
            s.lo = parse_rat(lx, lx.token());
            s.hi = parse_rat(lx, lx.token());
            while (!lx.done()) {
                std::string flag = lx.token();
                if (flag == "open-left") s.lo_open = true;
                else if (flag == "open-right") s.hi_open = true;
                else throw ParseError(lineno, lx.col(), "unknown segment flag '" + flag + "'");
            }
            if (!(s.lo < s.hi)) throw ParseError(lineno, 1, "segment needs lo < hi");
            reg.v = s;
        } else if (verb == "family") {
            FamilyRegion f;
            f.limit = parse_rat(lx, field(lx, lx.token(), "limit"));
            std::string side = field(lx, lx.token(), "side");
            if (side == "left") f.side = Side::Left;
            else if (side == "right") f.side = Side::Right;
            else throw ParseError(lineno, lx.col(), "side must be left or right");
            f.ratio = parse_rat(lx, field(lx, lx.token(), "ratio"));
            std::string seg = field(lx, lx.token(), "seg");
            auto dots = seg.find("..");
            if (dots == std::string::npos) throw ParseError(lineno, lx.col(), "seg needs <a>..<b>");
            f.seg_lo = parse_rat(lx, seg.substr(0, dots));
            f.seg_hi = parse_rat(lx, seg.substr(dots + 2));
            if (!(f.ratio > Rational(0) && f.ratio < Rational(1)))
                throw ParseError(lineno, 1, "ratio must lie in (0,1)");
            if (!(Rational(0) < f.seg_lo && f.seg_lo < f.seg_hi))
                throw ParseError(lineno, 1, "seg needs 0 < a < b");
            // successive members must stay disjoint: ratio*b < a
            if (!(f.ratio * f.seg_hi < f.seg_lo))
                throw ParseError(lineno, 1, "family self-intersects: ratio*" + f.seg_hi.to_string() +
                                                " >= " + f.seg_lo.to_string());
            reg.v = f;
        } else {
            throw ParseError(lineno, 1, "unknown directive '" + verb + "'");
        }
        if (!lx.done()) throw ParseError(lineno, lx.col(), "trailing tokens");
        sp.regions.push_back(std::move(reg));
        region_lines.push_back(lineno);
    }

    if (!have_space_line) throw ParseError(lineno, 1, "missing 'space <name>' line");
    // Merge explicit points that coincide with a family limit.
    for (std::size_t i = 0; i < sp.regions.size();) {
        bool merged = false;
        if (sp.regions[i].is_point()) {
            for (const Region& other : sp.regions) {
                if (other.is_family() && other.family().limit == sp.regions[i].point().p) {
                    merged_points.push_back(sp.regions[i].point().p);
                    sp.regions.erase(sp.regions.begin() + static_cast<std::ptrdiff_t>(i));
                    region_lines.erase(region_lines.begin() + static_cast<std::ptrdiff_t>(i));
                    merged = true;
                    break;
                }
            }
        }
        if (!merged) ++i;
    }
    if (sp.regions.empty()) throw ParseError(lineno, 1, "model has no regions");

    // Positional order with positive gaps between consecutive region closures.
    for (std::size_t i = 0; i + 1 < sp.regions.size(); ++i) {
        const Region& a = sp.regions[i];
        const Region& b = sp.regions[i + 1];
        if (!(a.span_hi() < b.span_lo())) {
            std::ostringstream os;
            os << "regions " << i << " and " << i + 1 << " overlap or touch (spans ["
               << a.span_lo() << "," << a.span_hi() << "] and [" << b.span_lo() << "," << b.span_hi() << "])";
            throw ParseError(region_lines[i + 1], 1, os.str());
        }
    }
    return sp;
}

std::string model_summary(const SymbolicSpace& sp, int depth) {
    std::ostringstream os;
    os << "space " << sp.name << ": " << sp.region_count() << " region(s), ";
    auto n = sp.finite_component_count();
    if (n) os << *n << " component(s)\n";
    else os << "infinitely many components\n";
    for (int i = 0; i < sp.region_count(); ++i) {
        const Region& r = sp.regions[static_cast<std::size_t>(i)];
        os << "  region " << i << ": ";
        if (r.is_point()) {
            os << "point " << r.point().p;
        } else if (r.is_segment()) {
            const SegmentRegion& s = r.segment();
            os << "segment " << (s.lo_open ? "(" : "[") << s.lo << "," << s.hi << (s.hi_open ? ")" : "]");
        } else {
            const FamilyRegion& f = r.family();
            os << "family limit=" << f.limit << " side=" << (f.side == Side::Left ? "left" : "right")
               << " ratio=" << f.ratio << " seg=" << f.seg_lo << ".." << f.seg_hi
               << "  members to depth " << depth << ":";
            for (int k = 0; k <= depth; ++k)
                os << " [" << f.member_lo(k) << "," << f.member_hi(k) << "]";
        }
        os << "\n";
    }
    os << "  witnesses:";
    for (const Rational& w : purisch_witnesses(sp, depth)) os << " " << w;
    os << "\n";
    return os.str();
}

} // namespace seltop
