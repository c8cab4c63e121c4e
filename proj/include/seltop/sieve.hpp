#pragma once

#include "seltop/symbolic_set.hpp"
#include "seltop/verdict.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace seltop {

// Scale partition: clopen pieces of an admissible set Z, every piece
// admissible at scale eps, piece count never exactly 2. Big components are
// isolated inside their Delta neighborhoods, the rest is covered by
// small-diameter pieces, splitting family tails member by member.
std::vector<SymbolicSet> partition_admissible(const SymbolicSpace& sp, const SymbolicSet& z,
                                              const Rational& eps);

// Scale partition around a marked component C of Z: exactly one piece U_C
// with C ⊆ U_C ⊆ Delta(C,eps), every other piece wholly below or above C
// with diameter <= 2*eps, and at least 6*l(C) pieces below, 6*r(C) above.
// Z must be admissible at 2*eps and C either big at that scale or trapping
// Z inside Delta(C, 2*eps).
std::vector<SymbolicSet> partition_around(const SymbolicSpace& sp, const SymbolicSet& z,
                                          const Rational& eps, const ComponentRef& c);

// The lazy anti-binary sieve tree: level-n values are admissible at scale
// 2^-n, children partition their parent exactly, and no node (nor the root
// level) has exactly two children. Expansion is memoized on demand; the memo
// is a pure cache (observable behavior identical to eager construction), so
// concurrent use needs external synchronization of the expanding calls.
class Sieve {
public:
    struct NodeData {
        int id = 0;
        int parent = -1; // -1 for level-0 nodes
        int level = 0;
        SymbolicSet value;
        std::optional<ComponentRef> big;  // the unique component of diameter >= 2^-level, if any
        int l_flag = 0, r_flag = 0;       // flags of `big`
        std::vector<int> children;        // filled by expand()
        std::optional<int> big_child;     // child index (into children) containing `big`
        bool expanded = false;
    };

    static std::shared_ptr<Sieve> build(const SymbolicSpace& sp, int depth);

    const SymbolicSpace& space() const { return *space_; }
    int default_depth() const { return depth_; }
    const std::vector<int>& roots() const { return roots_; }
    const NodeData& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    // children of a node, expanding it if needed
    const std::vector<int>& children(int id);
    // every node materialized so far (stable ids)
    int node_count() const { return static_cast<int>(nodes_.size()); }
    // materialize all nodes through the given level
    void ensure_level(int level);

    // the unique chain of nodes containing x, levels 0..to_level
    std::vector<int> branch(const Rational& x, int to_level);
    // some branch node of x whose value is contained in clopen U, searched
    // up to max_level; nullopt when the bound ran out
    std::optional<int> locate_clopen(const Rational& x, const SymbolicSet& u, int max_level);

private:
    const SymbolicSpace* space_ = nullptr;
    int depth_ = 0;
    std::vector<int> roots_;
    std::vector<NodeData> nodes_;

    int add_node(int parent, int level, SymbolicSet value);
    void expand(int id);
};

// Per-level invariant suite for a sieve: level membership at scale 2^-n,
// exact child refinement, anti-binarity, and the big-component sibling
// properties (diameter bound and side counts) at every node with a big
// component at or past its scale level.
Verdict check_sieve_invariants(Sieve& sieve, int depth);

struct SieveReport {
    Verdict verdict;
    std::string text;
};
SieveReport sieve_report(Sieve& sieve, int depth);

} // namespace seltop
