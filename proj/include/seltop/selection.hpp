#pragma once

#include "seltop/symbolic_set.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace seltop {

// Raised when an operation cannot answer within its supported shapes or
// budget; never a wrong answer.
struct Undetermined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A weak selection on a finite carrier 0..n-1: for every unordered pair a
// chosen element, i.e. a complete antisymmetric relation. Backed by an
// explicit bit matrix or by a rule (for lazily materialized carriers).
class Tournament {
public:
    Tournament() = default;
    static Tournament total_order(int n); // 0 < 1 < ... < n-1
    // bits indexed lexicographically over pairs (i,j), i<j; bit set means i < j
    static Tournament from_bits(int n, unsigned long long bits);
    static Tournament from_rule(std::function<bool(int, int)> less_fn);
    static Tournament from_pairs(int n, const std::vector<std::pair<int, int>>& less_pairs);

    bool is_rule() const { return static_cast<bool>(rule_); }
    int size() const; // matrix backend only
    // i <_sigma j; arguments must differ
    bool less(int i, int j) const;
    int select(int i, int j) const { return i == j ? i : (less(i, j) ? i : j); }

    Tournament reversed() const;
    bool is_transitive() const; // matrix backend only
    // structural equality on the materialized relation up to n elements
    bool same_on(const Tournament& other, int n) const;

private:
    int n_ = 0;
    std::vector<uint8_t> bits_; // pair (i<j) -> 1 iff i <_sigma j
    std::function<bool(int, int)> rule_;
    static std::size_t pair_index(int n, int i, int j);
};

class Selection;
using SelPtr = std::shared_ptr<const Selection>;

// An order interval that could not be fully resolved within the configured
// depth: the true set lies between `determined` and determined ∪ residue.
// When residue_whole_components holds, the residue consists of whole clopen
// components, so joining any of them onto an open determined part stays open.
struct PartialSet {
    SymbolicSet determined;
    SymbolicSet residue;
    bool residue_whole_components = false;
    bool exact() const { return residue.is_empty(); }
};

// Selection machinery realized by a sieve synthesizer (defined elsewhere);
// selections only need this querying surface.
class SieveBackend {
public:
    virtual ~SieveBackend() = default;
    virtual bool less(const Rational& x, const Rational& y) const = 0; // may throw Undetermined
    virtual SymbolicSet below(const Rational& x) const = 0;            // exact or throws Undetermined
    virtual SymbolicSet above(const Rational& x) const = 0;
    virtual PartialSet below_partial(const Rational& x) const = 0;
    virtual PartialSet above_partial(const Rational& x) const = 0;
    virtual std::optional<std::pair<SymbolicSet, SymbolicSet>>
    continuity_box(const Rational& x, const Rational& y) const = 0;
    // u <_g v for whole sets, decided exactly (false when undecidable in budget)
    virtual bool box_ordered(const SymbolicSet& u, const SymbolicSet& v) const = 0;
    virtual const SymbolicSpace& space() const = 0;
};

struct CanonicalNode {
    bool reverse = false;
};

struct InvariantNode {
    std::vector<SymbolicSet> parts; // pairwise disjoint, covering the carrier
    Tournament top;                 // over part indices
    std::vector<SelPtr> children;   // one per part, carrier = the part
};

struct SieveNode {
    std::shared_ptr<const SieveBackend> backend;
};

// A weak selection with an infinite-capable structured representation: the
// natural (or reversed) order on its carrier, an invariant combination over
// a partition, or a sieve-synthesized selection.
class Selection {
public:
    SymbolicSet carrier;
    std::variant<CanonicalNode, InvariantNode, SieveNode> node;

    bool is_canonical() const { return std::holds_alternative<CanonicalNode>(node); }
    bool is_invariant() const { return std::holds_alternative<InvariantNode>(node); }
    bool is_sieve() const { return std::holds_alternative<SieveNode>(node); }
    const InvariantNode& invariant() const { return std::get<InvariantNode>(node); }
    const CanonicalNode& canonical() const { return std::get<CanonicalNode>(node); }
    const SieveNode& sieve() const { return std::get<SieveNode>(node); }

    std::string descriptor() const;
};

SelPtr canonical_selection(const SymbolicSet& carrier, bool reverse);
SelPtr canonical_selection(const SymbolicSpace& sp, bool reverse);
SelPtr sieve_selection(std::shared_ptr<const SieveBackend> backend);

// sigma*h: acts as `top` across parts and as the per-part child inside each.
// Validates disjointness and coverage; a single part returns its child.
SelPtr combine_invariant(const SymbolicSet& carrier, std::vector<SymbolicSet> parts,
                         Tournament top, std::vector<SelPtr> children);
// convenience: canonical children of one direction on every part
SelPtr combine_invariant_canonical(const SymbolicSet& carrier, std::vector<SymbolicSet> parts,
                                   Tournament top, bool reverse_children = false);

// x <_s y; both points must lie in the carrier.
bool sel_less(const Selection& s, const Rational& x, const Rational& y);
// sigma({x,y}): select(x,x) = x by definition.
Rational select(const Selection& s, const Rational& x, const Rational& y);

// Exact symbolic order intervals at a point.
SymbolicSet interval_below(const Selection& s, const Rational& x);
SymbolicSet interval_above(const Selection& s, const Rational& x);

// Finite-carrier overload: the points strictly below / above x.
std::vector<Rational> interval_below(const Tournament& t, const std::vector<Rational>& carrier,
                                     const Rational& x);
std::vector<Rational> interval_above(const Tournament& t, const std::vector<Rational>& carrier,
                                     const Rational& x);

// {x : x <_s a for all a in A} and its mirror; not open in general.
std::pair<SymbolicSet, SymbolicSet> set_intervals(const Selection& s, const SymbolicSet& a);

struct DecisiveViolation {
    int part_a = 0, part_b = 0;
    Rational x, y;   // x in part_a, y in part_b with x <_s y
    Rational x2, y2; // x2 in part_a, y2 in part_b with y2 <_s x2
};

struct DecisiveCertificate {
    bool decisive = false;
    std::optional<DecisiveViolation> violation;
    std::string to_string() const;
};

// Whether every cross-part pair is uniformly oriented; a violation carries
// two replayable select() witnesses.
DecisiveCertificate is_decisive(const Selection& s, const std::vector<SymbolicSet>& parts);

// x <_s y <_s z <_s x in the given cyclic orientation (rotation invariant).
bool is_circular(const Selection& s, const Rational& x, const Rational& y, const Rational& z);

// Open U ∋ x, V ∋ y with U <_s V, or nullopt within the candidate budget.
std::optional<std::pair<SymbolicSet, SymbolicSet>>
continuity_box(const Selection& s, const Rational& x, const Rational& y, int budget = 16);

// The finite tournament induced on `points` by pairwise select() calls.
Tournament restrict_to_tournament(const Selection& s, const std::vector<Rational>& points);

// Any concrete point of a nonempty set (used to build replayable witnesses).
Rational sample_point(const SymbolicSet& set);

// Textual descriptors: canonical(fwd) | canonical(rev) |
// invariant(top=order(...)|pairs(...); parts=components[; children=rev]).
SelPtr parse_descriptor(const SymbolicSpace& sp, const std::string& text);

} // namespace seltop
