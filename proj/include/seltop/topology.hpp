#pragma once

#include "seltop/selection.hpp"
#include "seltop/verdict.hpp"

#include <string>
#include <vector>

namespace seltop {

// A subbase for a selection topology (or a supremum of several): the open
// order intervals of each listed selection, taken together.
struct Subbase {
    const SymbolicSpace* space = nullptr;
    std::vector<SelPtr> selections;

    static Subbase of(const SelPtr& s) { return Subbase{s->carrier.space(), {s}}; }
};

// Smallest topology containing every listed selection topology: the union
// of their subbases decides it.
Subbase supremum_subbase(const std::vector<Subbase>& subs);

struct OpenQueryOptions {
    int bound = 4;       // max subbasic sets per witness intersection
    int depth = 8;       // family truncation depth for critical points
    bool trace_guard = true;
    bool stop_at_first_failure = false; // candidate scans bail on the first bad target
};

// Sound openness decision for the generated topology on these models:
// Open comes with replayable per-point witnesses, NotOpen with a germ
// obstruction, Undetermined only past the configured bounds. On family
// models the verification is depth-bounded (members materialized to
// opts.depth; deeper members are covered only when a whole-tail witness
// exists).
OpennessVerdict is_open(const Subbase& sub, const SymbolicSet& target,
                        const OpenQueryOptions& opts = {});

struct TargetReport {
    std::string name;
    SymbolicSet target;
    OpennessVerdict verdict;
};

struct TopologyCheckReport {
    Verdict verdict;
    std::vector<TargetReport> targets;   // the containment direction: model sets open under sub
    std::vector<std::string> subbasic_failures; // the reverse direction: non-open subbasic sets
    int subbasic_checked = 0;
    int max_fold = 0;
    std::string to_string() const;
};

// Decides whether the generated topology equals the model topology:
// (i) every queried subbasic set is open in the model, and (ii) every
// canonical model-subbasic set (natural rays at witness points, clopen
// regions and tails to depth) is open under the subbase.
TopologyCheckReport topology_equals_model(const Subbase& sub, const OpenQueryOptions& opts = {});

// Replays each Open witness by pure set algebra; true when every
// intersection contains its point and lies inside the target.
bool replay_witnesses(const Subbase& sub, const SymbolicSet& target, const OpennessVerdict& v);

} // namespace seltop
