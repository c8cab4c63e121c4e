#pragma once

#include "seltop/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace seltop {

// A suborderable model is a finite list of regions on the rational line,
// pairwise separated by positive gaps. A geometric family region packs the
// one accumulation pattern we support: countably many closed segments
// shrinking geometrically toward a limit point that belongs to the region.

enum class Side { Left, Right };

struct PointRegion {
    Rational p;
};

struct SegmentRegion {
    Rational lo, hi;
    bool lo_open = false, hi_open = false;
};

struct FamilyRegion {
    Rational limit;
    Side side = Side::Right;
    Rational ratio;        // in (0,1)
    Rational seg_lo, seg_hi; // 0 < seg_lo < seg_hi, ratio*seg_hi < seg_lo

    // member n, side Right: limit + ratio^n * [seg_lo, seg_hi]
    //           side Left:  limit - ratio^n * [seg_hi, seg_lo]
    Rational member_lo(int n) const;
    Rational member_hi(int n) const;
    Rational member_diam(int n) const { return member_hi(n) - member_lo(n); }
};

struct Region {
    std::variant<PointRegion, SegmentRegion, FamilyRegion> v;

    bool is_point() const { return std::holds_alternative<PointRegion>(v); }
    bool is_segment() const { return std::holds_alternative<SegmentRegion>(v); }
    bool is_family() const { return std::holds_alternative<FamilyRegion>(v); }
    const FamilyRegion& family() const { return std::get<FamilyRegion>(v); }
    const SegmentRegion& segment() const { return std::get<SegmentRegion>(v); }
    const PointRegion& point() const { return std::get<PointRegion>(v); }

    // Closure span of the whole region (families include the limit).
    Rational span_lo() const;
    Rational span_hi() const;
};

class SymbolicSpace {
public:
    std::string name;
    std::vector<Region> regions;

    int region_count() const { return static_cast<int>(regions.size()); }
    // Index of the region whose closure span contains q, if any.
    std::optional<int> region_at(const Rational& q) const;
    bool contains(const Rational& q) const;
    bool has_family() const;
    // Number of components; nullopt when infinite.
    std::optional<int> finite_component_count() const;
};

// Reference to one component of a model.
struct ComponentRef {
    static constexpr int kWhole = -2; // point or segment region
    static constexpr int kLimit = -1; // family limit singleton

    int region = 0;
    int member = kWhole;
    Rational lo, hi;
    bool lo_in = true, hi_in = true;

    bool is_singleton() const { return lo == hi; }
    Rational diam() const { return hi - lo; }
    friend bool operator==(const ComponentRef& a, const ComponentRef& b) {
        return a.region == b.region && a.member == b.member;
    }
    std::string to_string() const;
};

ComponentRef make_component(const SymbolicSpace& sp, int region, int member);
// Component containing q; throws if q is not in the space.
ComponentRef component_of(const SymbolicSpace& sp, const Rational& q);

// l(C)/r(C): whether points of the space strictly below/above C accumulate
// at an endpoint belonging to C. On these models that happens exactly at a
// family limit, approached from the member side.
std::pair<int, int> lr_flags(const SymbolicSpace& sp, const ComponentRef& c);

// Least n >= 0 with 2^-n <= diam(C); throws for singletons.
int scale_level(const ComponentRef& c);

// Closed transversal witnesses: per component materialized to `depth`
// members per family, both endpoints when attained (quarter-point proxies
// for open ends), plus a midpoint per non-degenerate component.
std::vector<Rational> purisch_witnesses(const SymbolicSpace& sp, int depth);
std::vector<Rational> component_witnesses(const ComponentRef& c);

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int line, int column, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line(line), column(column) {}
};

// Parses the model-file grammar:
//   space <name>
//   point <p>
//   segment <lo> <hi> [open-left] [open-right]
//   family limit=<c> side=<left|right> ratio=<r> seg=<a>..<b>
// '#' starts a comment; rationals are "p/q" or integers; regions must be
// listed in increasing positional order. A `point` equal to a family's
// limit is merged into that family.
SymbolicSpace parse_model(const std::string& text);

std::string model_summary(const SymbolicSpace& sp, int depth);

} // namespace seltop
