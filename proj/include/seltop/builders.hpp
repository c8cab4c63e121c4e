#pragma once

#include "seltop/selection.hpp"
#include "seltop/verdict.hpp"

#include <array>
#include <vector>

namespace seltop {

// Maximal family of disjoint triples of 0..n-1, consecutive by index, with
// the last n mod 3 elements left over.
struct TripleGrouping {
    std::vector<std::array<int, 3>> triples;
    std::vector<int> leftover;
};

TripleGrouping triple_grouping(int n); // n != 2

// A selection on n parts whose triples are all circular, triples ordered
// blockwise, the leftover placed below everything (one element) or
// sandwiching the blocks (two elements). Every part becomes open in the
// combined topology for any choice of within-part selections. n != 2.
Tournament build_circular_blocks(int n);
// The countable case: consecutive index triples, no leftover, blocks by index.
Tournament build_circular_blocks_lazy();

// Circular blocks on parts \ {S} with S placed on top and the maximal
// circular triple directly beneath it; the two-element leftover uses the
// modified placement a < Q < b < (other triples). n >= 7.
Tournament build_marked_maximum(int n, int s_index);

// Parts laid out as [Q(0..q-1), S(q), R(q+1..q+r)] with every element of
// Q∪{S} at or below every element of {S}∪R; q, r >= 6.
Tournament build_separator_blocks(int q_count, int r_count);

// Openness certification for a builder output realized over symbolic parts:
// per part, per critical point, a replayable <=B-fold witness intersection.
struct PartCertificate {
    int part = 0;
    OpennessVerdict verdict;
};

struct PartitionCertification {
    Verdict verdict;
    std::vector<PartCertificate> parts;
    int max_fold() const {
        int m = 0;
        for (const PartCertificate& p : parts) m = std::max(m, p.verdict.max_fold());
        return m;
    }
};

PartitionCertification certify_partition_open(const Tournament& top,
                                              const std::vector<SymbolicSet>& parts,
                                              bool reverse_children = false, int bound = 4);

// Critical points of a part used in the certificates: the witness points of
// each of its components (the first one is the canonical subbasic anchor).
std::vector<Rational> part_witnesses(const SymbolicSet& part, int family_depth = 2);

} // namespace seltop
