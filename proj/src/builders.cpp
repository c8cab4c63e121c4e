#include "seltop/builders.hpp"
#include "seltop/witness_search.hpp"

#include <algorithm>
#include <sstream>

namespace seltop {

TripleGrouping triple_grouping(int n) {
    if (n == 2) throw std::invalid_argument("triple_grouping: two parts excluded");
    if (n < 0) throw std::invalid_argument("triple_grouping: negative count");
    TripleGrouping g;
    int full = n / 3;
    for (int k = 0; k < full; ++k) g.triples.push_back({3 * k, 3 * k + 1, 3 * k + 2});
    for (int i = 3 * full; i < n; ++i) g.leftover.push_back(i);
    return g;
}

namespace {

// relation on one circular triple in the fixed orientation 1st<2nd<3rd<1st
bool triple_less(int pos_i, int pos_j) {
    return (pos_i + 1) % 3 == pos_j;
}

// blockwise selection over indices grouped into consecutive triples, with a
// leftover handled by the caller; positions inside a triple are circular
struct BlockLayout {
    // block id and in-block position per element; leftover gets block kind
    std::vector<int> block;   // triple index, or -1 for leftover elements
    std::vector<int> pos;     // position in triple / leftover order
};

BlockLayout layout_of(const TripleGrouping& g, int n) {
    BlockLayout l;
    l.block.assign(static_cast<std::size_t>(n), -1);
    l.pos.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t t = 0; t < g.triples.size(); ++t)
        for (int p = 0; p < 3; ++p) {
            l.block[static_cast<std::size_t>(g.triples[t][static_cast<std::size_t>(p)])] =
                static_cast<int>(t);
            l.pos[static_cast<std::size_t>(g.triples[t][static_cast<std::size_t>(p)])] = p;
        }
    for (std::size_t a = 0; a < g.leftover.size(); ++a)
        l.pos[static_cast<std::size_t>(g.leftover[a])] = static_cast<int>(a);
    return l;
}

} // namespace

Tournament build_circular_blocks(int n) {
    if (n == 2) throw std::invalid_argument("build_circular_blocks: two parts excluded");
    if (n < 1) throw std::invalid_argument("build_circular_blocks: empty partition");
    TripleGrouping g = triple_grouping(n);
    BlockLayout l = layout_of(g, n);
    std::vector<std::pair<int, int>> pairs;
    auto a_count = static_cast<int>(g.leftover.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int bi = l.block[static_cast<std::size_t>(i)], bj = l.block[static_cast<std::size_t>(j)];
            bool less_ij;
            if (bi >= 0 && bi == bj) {
                less_ij = triple_less(l.pos[static_cast<std::size_t>(i)], l.pos[static_cast<std::size_t>(j)]);
            } else if (bi >= 0 && bj >= 0) {
                less_ij = bi < bj;
            } else if (bi < 0 && bj < 0) {
                // both leftover: a < b in leftover order (they differ, n mod 3 = 2)
                less_ij = l.pos[static_cast<std::size_t>(i)] < l.pos[static_cast<std::size_t>(j)];
            } else {
                int left = bi < 0 ? i : j;
                bool left_is_i = bi < 0;
                int apos = l.pos[static_cast<std::size_t>(left)];
                // one leftover element: the first sits below every block, the
                // second (when present) above every block
                bool leftover_below = (a_count == 1) || (apos == 0);
                less_ij = left_is_i ? leftover_below : !leftover_below;
            }
            pairs.emplace_back(less_ij ? i : j, less_ij ? j : i);
        }
    }
    if (n == 1) return Tournament::total_order(1);
    return Tournament::from_pairs(n, pairs);
}

Tournament build_circular_blocks_lazy() {
    return Tournament::from_rule([](int i, int j) {
        if (i / 3 == j / 3) return triple_less(i % 3, j % 3);
        return i / 3 < j / 3;
    });
}

Tournament build_marked_maximum(int n, int s_index) {
    if (n < 7) throw std::invalid_argument("build_marked_maximum: needs at least 7 parts");
    if (s_index < 0 || s_index >= n) throw std::invalid_argument("build_marked_maximum: S outside the partition");
    // the remaining parts keep their index order
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (i != s_index) rest.push_back(i);
    int m = static_cast<int>(rest.size()); // >= 6
    TripleGrouping g = triple_grouping(m);
    BlockLayout l = layout_of(g, m);
    int a_count = static_cast<int>(g.leftover.size());
    // rank of each sub-element in the decisive chain; circular triples share
    // a rank slot. |A|<=1: a < Q0 < Q1 < ... |A|=2: a < Q0 < b < Q1 < ...
    auto chain_rank = [&](int e) {
        int b = l.block[static_cast<std::size_t>(e)];
        if (b >= 0) {
            int base = (a_count == 2 && b >= 1) ? 2 : 1; // shift for b inserted after Q0
            return base + 2 * b;
        }
        int apos = l.pos[static_cast<std::size_t>(e)];
        if (a_count == 1) return 0;
        return apos == 0 ? 0 : 3; // a below all; b between Q0 and Q1
    };
    std::vector<std::pair<int, int>> pairs;
    for (int ii = 0; ii < m; ++ii)
        for (int jj = ii + 1; jj < m; ++jj) {
            int bi = l.block[static_cast<std::size_t>(ii)], bj = l.block[static_cast<std::size_t>(jj)];
            bool less_ij;
            if (bi >= 0 && bi == bj)
                less_ij = triple_less(l.pos[static_cast<std::size_t>(ii)], l.pos[static_cast<std::size_t>(jj)]);
            else
                less_ij = chain_rank(ii) < chain_rank(jj);
            int gi = rest[static_cast<std::size_t>(ii)], gj = rest[static_cast<std::size_t>(jj)];
            pairs.emplace_back(less_ij ? gi : gj, less_ij ? gj : gi);
        }
    for (int gi : rest) pairs.emplace_back(gi, s_index); // S on top
    return Tournament::from_pairs(n, pairs);
}

Tournament build_separator_blocks(int q_count, int r_count) {
    if (q_count < 6 || r_count < 6) throw std::invalid_argument("build_separator_blocks: needs 6 parts per side");
    int n = q_count + 1 + r_count;
    int s = q_count;
    // S-maximal selection on Q ∪ {S}, S-minimal (reversed) on {S} ∪ R
    Tournament on_q = build_marked_maximum(q_count + 1, q_count);
    Tournament on_r = build_marked_maximum(r_count + 1, 0).reversed();
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool less_ij;
            if (i <= s && j <= s) less_ij = on_q.less(i, j);
            else if (i >= s && j >= s) less_ij = on_r.less(i - s, j - s);
            else less_ij = true; // Q strictly below R
            pairs.emplace_back(less_ij ? i : j, less_ij ? j : i);
        }
    return Tournament::from_pairs(n, pairs);
}

// --- openness certification -------------------------------------------------------

std::vector<Rational> part_witnesses(const SymbolicSet& part, int family_depth) {
    std::vector<Rational> out;
    ComponentStream stream(part);
    int families_left = family_depth + 1;
    while (auto c = stream.next()) {
        for (const Rational& w : component_witnesses(*c)) out.push_back(w);
        if (c->member >= 0 && --families_left <= 0) break;
        if (static_cast<int>(out.size()) > 3 * (family_depth + 2)) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PartitionCertification certify_partition_open(const Tournament& top,
                                              const std::vector<SymbolicSet>& parts,
                                              bool reverse_children, int bound) {
    PartitionCertification out;
    if (parts.empty()) {
        out.verdict = Verdict::fail("no parts");
        return out;
    }
    const SymbolicSpace& sp = *parts.front().space();
    SymbolicSet carrier = SymbolicSet::empty_set(sp);
    for (const SymbolicSet& p : parts) carrier = set_union(carrier, p);
    SelPtr g = combine_invariant_canonical(carrier, parts, top, reverse_children);

    // subbasic anchor points: the first witness of every part, plus all
    // witnesses of the part being certified (for within-part cuts)
    std::vector<Rational> anchors;
    for (const SymbolicSet& p : parts) anchors.push_back(part_witnesses(p).front());

    bool all_ok = true;
    std::ostringstream fail_detail;
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        PartCertificate cert;
        cert.part = static_cast<int>(pi);
        if (parts[pi] == carrier) { // single part: the whole carrier is open
            OpenWitness w;
            w.point = sample_point(parts[pi]);
            w.intersection = carrier;
            cert.verdict.kind = OpennessVerdict::Kind::Open;
            cert.verdict.witnesses.push_back(std::move(w));
            out.parts.push_back(std::move(cert));
            continue;
        }
        std::vector<Rational> points = anchors;
        for (const Rational& w : part_witnesses(parts[pi])) points.push_back(w);
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());

        cert.verdict.kind = OpennessVerdict::Kind::Open;
        for (const Rational& x : part_witnesses(parts[pi])) {
            std::vector<WitnessAtom> atoms;
            for (const Rational& p : points) {
                if (!carrier.contains(p)) continue;
                SymbolicSet lo = interval_below(*g, p);
                SymbolicSet hi = interval_above(*g, p);
                if (lo.contains(x)) atoms.push_back({SubbasicRef{0, false, p}, std::move(lo)});
                if (hi.contains(x)) atoms.push_back({SubbasicRef{0, true, p}, std::move(hi)});
            }
            std::vector<int> chosen;
            SymbolicSet result = carrier;
            if (!search_witness_minimal(atoms, parts[pi], bound, chosen, result, carrier)) {
                cert.verdict.kind = OpennessVerdict::Kind::Undetermined;
                cert.verdict.obstruction_at = x;
                cert.verdict.detail = "no witness within bound " + std::to_string(bound);
                all_ok = false;
                fail_detail << "part " << pi << " at " << x << ": no witness; ";
                break;
            }
            OpenWitness w;
            w.point = x;
            for (int k : chosen) w.atoms.push_back(atoms[static_cast<std::size_t>(k)].ref);
            w.intersection = result;
            cert.verdict.witnesses.push_back(std::move(w));
        }
        out.parts.push_back(std::move(cert));
    }
    out.verdict = all_ok ? Verdict::pass("all parts certified open")
                         : Verdict::undetermined(fail_detail.str());
    return out;
}

} // namespace seltop
