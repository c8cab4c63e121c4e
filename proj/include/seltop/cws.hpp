#pragma once

#include "seltop/topology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace seltop {

// One brute-force candidate: a tournament on the components plus an
// orientation per non-degenerate component. On finite-component models
// every continuous weak selection has this shape (components are clopen and
// carry one of two compatible linear orders), which is the documented
// standing assumption of the search.
struct CandidateSelection {
    unsigned long long tournament_bits = 0;
    unsigned long long orientation_bits = 0;
    Tournament comp_order;
    std::vector<bool> reversed; // per component; degenerate ones stay false

    SelPtr realize(const SymbolicSpace& sp) const;
    std::string to_string() const;
};

// All 2^C(m,2) tournaments times 2^d orientations, d the number of
// non-degenerate components, in deterministic lexicographic order.
std::vector<CandidateSelection> enumerate_candidates(const SymbolicSpace& sp);

// The candidate pair realizing X0 < X1 and X1 < X0 blockwise with the
// natural order inside; the supremum of their topologies opens both halves.
std::pair<CandidateSelection, CandidateSelection>
canonical_pair(const SymbolicSpace& sp, const SymbolicSet& x0, const SymbolicSet& x1);

struct CwsReport {
    int max_k = 3;
    std::optional<int> cws;                    // least k with a passing family
    std::vector<CandidateSelection> witness;   // the lexicographically least winner
    TopologyCheckReport winner_report;         // replayable certificates
    std::vector<std::string> k1_failures;      // first failing target per candidate
    bool orderable = false;
    std::optional<CandidateSelection> order_witness;
    int candidates_examined = 0;

    std::string to_string() const;
    Verdict verdict() const {
        return cws ? Verdict::pass("cws = " + std::to_string(*cws))
                   : Verdict::undetermined(">= " + std::to_string(max_k + 1));
    }
};

// Brute-force cws: least k <= max_k whose supremum of k candidate topologies
// recovers the model topology; exhaustive with reverse-involution pruning
// for k >= 2. Also decides orderability by the transitive sub-search.
CwsReport cws_search(const SymbolicSpace& sp, int max_k = 3, int bound = 4);

struct DichotomyReport {
    CwsReport cws;
    int components = 0;
    bool consistent = false; // cws <= 2 and (cws == 2 iff two components and non-orderable)
    std::string to_string() const;
};

// The semi-orderable dichotomy on one model: cws <= 2, equal to 2 exactly
// when the model has two components and the orderability sub-search fails.
DichotomyReport check_dichotomy(const SymbolicSpace& sp, int bound = 4);

// The >= 3 clopen components construction: circular blocks over the
// component partition with canonical children recover the topology.
std::pair<SelPtr, TopologyCheckReport> circular_blocks_selection(const SymbolicSpace& sp, int bound = 4);

} // namespace seltop
