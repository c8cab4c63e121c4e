#pragma once

#include "seltop/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace seltop {

// One maximal interval of a trace inside a segment or family member.
// Nonempty: lo < hi, or lo == hi with both ends attained.
struct SubIv {
    Rational lo, hi;
    bool lo_in = true, hi_in = true;

    bool valid() const { return lo < hi || (lo == hi && lo_in && hi_in); }
    friend bool operator==(const SubIv&, const SubIv&) = default;
};

// Canonical trace on one segment (or one family member): sorted, disjoint,
// maximally merged sub-intervals.
struct SegTrace {
    std::vector<SubIv> ivs;
    bool empty() const { return ivs.empty(); }
    friend bool operator==(const SegTrace&, const SegTrace&) = default;
};

// Canonical trace on a family region. tail_from is the minimal k such that
// every member n >= k lies wholly in the set (absent if no such k); members
// below the tail appear in `partial` (wholly or cut), keyed by index.
struct FamTrace {
    bool limit_in = false;
    std::optional<int> tail_from;
    std::map<int, SegTrace> partial;

    bool empty() const { return !limit_in && !tail_from && partial.empty(); }
    friend bool operator==(const FamTrace&, const FamTrace&) = default;
};

using RegionTrace = std::variant<bool, SegTrace, FamTrace>;

// A whole-tail part {limit} ∪ {S_n : n >= from} of a family region.
struct TailRef {
    int region = 0;
    int from = 0;
    friend bool operator==(const TailRef&, const TailRef&) = default;
};

// One block of a clopen set: either a whole component or a whole tail.
using ClopenPart = std::variant<ComponentRef, TailRef>;

struct Bound {
    Rational value;
    bool attained = true;
};

// Thrown when an operation requires a clopen (or open) argument; carries a
// boundary point certifying the failure.
struct NotClopenError : std::invalid_argument {
    Rational witness;
    NotClopenError(const Rational& w, const std::string& what)
        : std::invalid_argument(what + " (boundary point " + w.to_string() + ")"), witness(w) {}
};

// Finite union of generalized order intervals of a model, stored as one
// canonical trace per region, so structural equality is set equality and
// membership of any rational is decidable.
class SymbolicSet {
public:
    SymbolicSet() = default;
    explicit SymbolicSet(const SymbolicSpace* sp);

    static SymbolicSet empty_set(const SymbolicSpace& sp);
    static SymbolicSet full_set(const SymbolicSpace& sp);
    // Order interval with optional (= infinite) endpoints, clipped to the space.
    static SymbolicSet interval(const SymbolicSpace& sp,
                                const std::optional<Rational>& lo, bool lo_in,
                                const std::optional<Rational>& hi, bool hi_in);
    static SymbolicSet point(const SymbolicSpace& sp, const Rational& p);
    static SymbolicSet component_set(const SymbolicSpace& sp, const ComponentRef& c);
    // {S_n : n >= from} of family `region`, optionally with the limit point.
    static SymbolicSet family_tail(const SymbolicSpace& sp, int region, int from, bool include_limit);
    static SymbolicSet part_set(const SymbolicSpace& sp, const ClopenPart& part);

    const SymbolicSpace* space() const { return space_; }
    bool is_empty() const;
    bool contains(const Rational& q) const;
    friend bool operator==(const SymbolicSet& a, const SymbolicSet& b);

    friend SymbolicSet set_union(const SymbolicSet& a, const SymbolicSet& b);
    friend SymbolicSet set_intersect(const SymbolicSet& a, const SymbolicSet& b);
    friend SymbolicSet set_difference(const SymbolicSet& a, const SymbolicSet& b);
    SymbolicSet complement() const;
    bool subset_of(const SymbolicSet& other) const;

    bool is_open() const;
    bool is_closed() const;
    bool is_clopen() const { return is_open() && is_closed(); }
    // A point at which the set fails to be open, if any.
    std::optional<Rational> open_failure() const;
    // A point witnessing failure of openness of the set or its complement.
    std::optional<Rational> boundary_point() const;

    std::optional<Bound> inf() const;
    std::optional<Bound> sup() const;
    // sup distance between points (span length); set must be nonempty.
    Rational diameter() const;

    // Decomposition of a clopen set into whole components and tails,
    // in positional order; throws if not clopen.
    std::vector<ClopenPart> clopen_parts() const;
    // Component count; nullopt when infinite.
    std::optional<int> component_count() const;
    // The components meeting the set (requires clopen), region by region,
    // limit first then members by increasing index; capped at max_items.
    std::vector<ComponentRef> components_prefix(int max_items) const;

    const RegionTrace& trace(int region) const { return tr_[static_cast<std::size_t>(region)]; }
    std::string to_string() const;

private:
    const SymbolicSpace* space_ = nullptr;
    std::vector<RegionTrace> tr_;

};

Rational part_min_position(const SymbolicSpace& sp, const ClopenPart& p);
std::string part_to_string(const SymbolicSpace& sp, const ClopenPart& p);
// Number of components of a part: 1 for a component, nullopt for a tail.
std::optional<int> part_component_count(const ClopenPart& p);

// --- order intervals and metric balls -------------------------------------

// Open ball around a nonempty set in the standard convex metric |x - y|.
SymbolicSet metric_ball(const SymbolicSet& a, const Rational& eps);

// (<-,A) / (A,->): points strictly below / above every point of A; and the
// complementary closed rays (<-,A] = X \ (A,->), [A,->) = X \ (<-,A).
SymbolicSet ray_below(const SymbolicSet& a);
SymbolicSet ray_above(const SymbolicSet& a);
SymbolicSet ray_below_closed(const SymbolicSet& a);
SymbolicSet ray_above_closed(const SymbolicSet& a);

// --- the component-neighbourhood machinery ---------------------------------

// Delta(C, eps): C itself when both flags vanish, otherwise the eps/2 ball
// cut by the closed ray on each non-accumulating side.
SymbolicSet delta_neighborhood(const SymbolicSpace& sp, const ComponentRef& c, const Rational& eps);
// Case split with explicit flags (the derived flags of these models never
// realize the both-sides case, which verifiers still want to exercise).
SymbolicSet delta_by_flags(const SymbolicSpace& sp, const ComponentRef& c, const Rational& eps,
                           int l_flag, int r_flag);

// Components of clopen U with diameter >= eps (finite list, positional).
std::vector<ComponentRef> big_components(const SymbolicSpace& sp, const SymbolicSet& u, const Rational& eps);

// Admissible clopen sets: a single component, or infinitely many components.
bool is_admissible(const SymbolicSpace& sp, const SymbolicSet& u);
// ... and additionally small (diam < eps) or trapped in Delta(C, eps) for a
// big component C of U.
bool is_admissible_at(const SymbolicSpace& sp, const SymbolicSet& u, const Rational& eps);

// Splits an admissible clopen set with infinitely many components into two
// admissible clopen halves, deterministically; returns (positionally lower,
// positionally higher).
std::pair<SymbolicSet, SymbolicSet> split_clopen(const SymbolicSpace& sp, const SymbolicSet& u);

// Canonical clopen V with C ⊆ V ⊆ U for open U ⊇ C: the component itself
// when clopen, else the limit plus the least-index whole tail inside U.
SymbolicSet clopen_separation(const SymbolicSpace& sp, const ComponentRef& c, const SymbolicSet& u);

// Least eps = 2^-k whose Delta neighborhood fits inside open U ⊇ C.
std::optional<Rational> shrink_to_fit(const SymbolicSpace& sp, const ComponentRef& c,
                                      const SymbolicSet& u, int max_halvings);

// Lazy enumeration of the components meeting an open set: regions in
// positional order, within a family the limit first then members by
// increasing index. Terminates iff finitely many.
class ComponentStream {
public:
    explicit ComponentStream(SymbolicSet restrict_to); // throws NotClopenError if not open
    std::optional<ComponentRef> next();

private:
    SymbolicSet set_;
    int region_ = 0;
    bool limit_done_ = false;
    std::optional<int> member_; // next member index to consider
};

} // namespace seltop
