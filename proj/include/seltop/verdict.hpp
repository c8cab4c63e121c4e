#pragma once

#include "seltop/symbolic_set.hpp"

#include <optional>
#include <string>
#include <vector>

namespace seltop {

// Result type of every verifier: pass, fail with a certificate, or
// undetermined when a configured bound was reached.
struct Verdict {
    enum class Kind { Pass, Fail, Undetermined };
    Kind kind = Kind::Undetermined;
    std::string detail;

    bool passed() const { return kind == Kind::Pass; }
    static Verdict pass(std::string d = "") { return {Kind::Pass, std::move(d)}; }
    static Verdict fail(std::string d) { return {Kind::Fail, std::move(d)}; }
    static Verdict undetermined(std::string d) { return {Kind::Undetermined, std::move(d)}; }
    // exit-code convention: 0 pass, 1 fail, 2 undetermined
    int exit_code() const { return kind == Kind::Pass ? 0 : kind == Kind::Fail ? 1 : 2; }
    std::string kind_name() const {
        return kind == Kind::Pass ? "pass" : kind == Kind::Fail ? "fail" : "undetermined";
    }
};

// One subbasic interval of a selection topology: (<-,at) or (at,->) under
// the selection with the given index in the ambient subbase.
struct SubbasicRef {
    int selection = 0;
    bool above = false;
    Rational at;
    std::string to_string() const {
        return (above ? "(" + at.to_string() + ",->)" : "(<-," + at.to_string() + ")") + "@s" +
               std::to_string(selection);
    }
};

// Replayable openness witness: finitely many subbasic sets whose
// intersection contains `point` and lies inside the target.
struct OpenWitness {
    Rational point;
    std::vector<SubbasicRef> atoms; // empty means the whole-carrier witness
    SymbolicSet intersection;
};

struct OpennessVerdict {
    enum class Kind { Open, NotOpen, Undetermined };
    Kind kind = Kind::Undetermined;
    std::vector<OpenWitness> witnesses;     // Open: one per critical point
    std::optional<Rational> obstruction_at; // NotOpen: the uncoverable point
    std::string detail;
    bool trace_guard_ok = true; // finite-trace necessary-condition check

    bool open() const { return kind == Kind::Open; }
    int max_fold() const {
        int m = 0;
        for (const OpenWitness& w : witnesses) m = std::max(m, static_cast<int>(w.atoms.size()));
        return m;
    }
};

} // namespace seltop
