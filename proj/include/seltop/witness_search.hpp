#pragma once

#include "seltop/verdict.hpp"

#include <vector>

namespace seltop {

// One candidate subbasic set, instantiated at a concrete anchor point.
struct WitnessAtom {
    SubbasicRef ref;
    SymbolicSet set;
};

// Depth-first search for a subset of at most `bound` atoms whose
// intersection stays inside `target`. An atom that excludes nothing of the
// current deficit can never be required, which prunes most combinations.
inline bool search_witness(const std::vector<WitnessAtom>& atoms, const SymbolicSet& target,
                           int bound, std::vector<int>& chosen, SymbolicSet& result,
                           std::size_t start, const SymbolicSet& current) {
    SymbolicSet deficit = set_difference(current, target);
    if (deficit.is_empty()) {
        result = current;
        return true;
    }
    if (static_cast<int>(chosen.size()) >= bound) return false;
    for (std::size_t k = start; k < atoms.size(); ++k) {
        if (deficit.subset_of(atoms[k].set)) continue;
        SymbolicSet next = set_intersect(current, atoms[k].set);
        chosen.push_back(static_cast<int>(k));
        if (search_witness(atoms, target, bound, chosen, result, k + 1, next)) return true;
        chosen.pop_back();
    }
    return false;
}

// Smallest witness first, growing the allowance one atom at a time.
inline bool search_witness_minimal(const std::vector<WitnessAtom>& atoms, const SymbolicSet& target,
                                   int bound, std::vector<int>& chosen, SymbolicSet& result,
                                   const SymbolicSet& start_from) {
    for (int b = 1; b <= bound; ++b) {
        chosen.clear();
        if (search_witness(atoms, target, b, chosen, result, 0, start_from)) return true;
    }
    return false;
}

} // namespace seltop
