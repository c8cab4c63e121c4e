#pragma once

#include "seltop/builders.hpp"
#include "seltop/selection.hpp"
#include "seltop/sieve.hpp"
#include "seltop/topology.hpp"

#include <map>
#include <memory>

namespace seltop {

// Which builder a node's selection came from, driven by the flags of the
// node's big component.
enum class NodeCase { NoBig, Trivial, LeftAccumulation, RightAccumulation, BothSides };

// The per-node selection over a node's children: circular blocks when no
// big component is around, trivial on singleton nodes, and the one-sided or
// two-sided placements putting the big child's piece at the right end of
// the chain otherwise.
Tournament node_selection(Sieve& sieve, int node_id);
NodeCase node_case(const Sieve::NodeData& node);

// The synthesized sieve-invariant selection: the natural order inside each
// component, the per-node selections across pieces, pair routing through
// the last common node, on-demand expansion capped at depth + 8.
class SynthesizedSelection : public SieveBackend,
                             public std::enable_shared_from_this<SynthesizedSelection> {
public:
    static std::shared_ptr<SynthesizedSelection> synthesize(const SymbolicSpace& sp, int depth);

    // SieveBackend surface
    bool less(const Rational& x, const Rational& y) const override;
    SymbolicSet below(const Rational& x) const override;
    SymbolicSet above(const Rational& x) const override;
    PartialSet below_partial(const Rational& x) const override;
    PartialSet above_partial(const Rational& x) const override;
    std::optional<std::pair<SymbolicSet, SymbolicSet>>
    continuity_box(const Rational& x, const Rational& y) const override;
    bool box_ordered(const SymbolicSet& u, const SymbolicSet& v) const override;
    const SymbolicSpace& space() const override { return sieve_->space(); }

    Sieve& sieve() const { return *sieve_; }
    int depth() const { return depth_; }
    int expansion_cap() const { return depth_ + 8; }
    const Tournament& sigma(int node_id) const; // node_id -1 is the virtual root
    // Swaps in a different per-node selection; exists so the verifiers can
    // be shown to catch inconsistent tables.
    void replace_sigma(int node_id, Tournament t);

    SelPtr as_selection() const; // wraps this backend as a Selection

private:
    std::shared_ptr<Sieve> sieve_;
    int depth_ = 0;
    mutable std::map<int, Tournament> sigma_;

    struct RatLess {
        bool operator()(const Rational& a, const Rational& b) const { return a < b; }
    };
    // pure memo: interval walks repeat across topology targets
    mutable std::map<Rational, std::pair<PartialSet, PartialSet>, RatLess> interval_memo_;
    friend std::pair<PartialSet, PartialSet> interval_of(const SynthesizedSelection&, const Rational&);
};

// Both order intervals at x, exact parts plus whole-component residues for
// branches that never stabilize within the cap.
std::pair<PartialSet, PartialSet> interval_of(const SynthesizedSelection& g, const Rational& x);

// Every materialized level family is decisive under g (exact set-level
// orientation per piece pair, plus pointwise replays on witnesses).
Verdict verify_invariance(const SynthesizedSelection& g, int levels);

// Continuity on sampled pairs: sibling-piece boxes across branches, the
// half-piece boxes at a cut point within a component.
Verdict verify_continuity(const SynthesizedSelection& g, int pair_budget, std::uint64_t seed);

// Per-node openness certificates: every child's piece is open in the
// node-selection topology for canonical within-piece selections of both
// directions, and the big child's piece sits on the correct side of every
// sibling (the routing properties).
Verdict verify_node_certificates(const SynthesizedSelection& g, int levels);

// The synthesized topology against the model topology, including every
// materialized sieve piece as a target.
TopologyCheckReport verify_topology_equality(const SynthesizedSelection& g, int depth, int bound);

} // namespace seltop
