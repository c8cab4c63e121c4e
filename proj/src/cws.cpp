#include "seltop/cws.hpp"

#include "seltop/builders.hpp"

#include <algorithm>
#include <sstream>

namespace seltop {

namespace {

std::vector<SymbolicSet> component_parts(const SymbolicSpace& sp) {
    std::vector<SymbolicSet> parts;
    for (int i = 0; i < sp.region_count(); ++i)
        parts.push_back(SymbolicSet::component_set(sp, make_component(sp, i, ComponentRef::kWhole)));
    return parts;
}

std::vector<int> nondegenerate_components(const SymbolicSpace& sp) {
    std::vector<int> out;
    for (int i = 0; i < sp.region_count(); ++i) {
        ComponentRef c = make_component(sp, i, ComponentRef::kWhole);
        if (!c.is_singleton()) out.push_back(i);
    }
    return out;
}

int require_finite_components(const SymbolicSpace& sp) {
    auto m = sp.finite_component_count();
    if (!m) throw std::invalid_argument("brute-force lab requires finitely many components");
    if (*m < 1) throw std::invalid_argument("empty model");
    return *m;
}

} // namespace

SelPtr CandidateSelection::realize(const SymbolicSpace& sp) const {
    auto parts = component_parts(sp);
    std::vector<SelPtr> children;
    for (std::size_t i = 0; i < parts.size(); ++i)
        children.push_back(canonical_selection(parts[i], reversed[i]));
    return combine_invariant(SymbolicSet::full_set(sp), parts, comp_order, std::move(children));
}

std::string CandidateSelection::to_string() const {
    std::ostringstream os;
    os << "candidate(t=" << tournament_bits << ",o=" << orientation_bits << ")";
    return os.str();
}

std::vector<CandidateSelection> enumerate_candidates(const SymbolicSpace& sp) {
    int m = require_finite_components(sp);
    std::vector<int> nondeg = nondegenerate_components(sp);
    int pair_count = m * (m - 1) / 2;
    if (pair_count > 20 || nondeg.size() > 16)
        throw std::invalid_argument("enumerate_candidates: model too large for brute force");
    std::vector<CandidateSelection> out;
    for (unsigned long long t = 0; t < (1ull << pair_count); ++t) {
        for (unsigned long long o = 0; o < (1ull << nondeg.size()); ++o) {
            CandidateSelection c;
            c.tournament_bits = t;
            c.orientation_bits = o;
            c.comp_order = Tournament::from_bits(m, t);
            c.reversed.assign(static_cast<std::size_t>(m), false);
            for (std::size_t k = 0; k < nondeg.size(); ++k)
                if ((o >> k) & 1ull) c.reversed[static_cast<std::size_t>(nondeg[k])] = true;
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::pair<CandidateSelection, CandidateSelection>
canonical_pair(const SymbolicSpace& sp, const SymbolicSet& x0, const SymbolicSet& x1) {
    int m = require_finite_components(sp);
    if (x0.is_empty() || x1.is_empty())
        throw std::invalid_argument("canonical_pair: both halves must be nonempty");
    if (!set_intersect(x0, x1).is_empty() ||
        !(set_union(x0, x1) == SymbolicSet::full_set(sp)))
        throw std::invalid_argument("canonical_pair: not a partition of the space");
    if (auto p = x0.boundary_point()) throw NotClopenError(*p, "canonical_pair: X0 not clopen");
    if (auto p = x1.boundary_point()) throw NotClopenError(*p, "canonical_pair: X1 not clopen");

    std::vector<bool> in_x1;
    for (int i = 0; i < m; ++i)
        in_x1.push_back(x1.contains(sample_point(
            SymbolicSet::component_set(sp, make_component(sp, i, ComponentRef::kWhole)))));

    auto block_order = [&](bool x1_on_top) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                bool less_ij;
                if (in_x1[static_cast<std::size_t>(i)] == in_x1[static_cast<std::size_t>(j)])
                    less_ij = true; // natural inside each half
                else
                    less_ij = (in_x1[static_cast<std::size_t>(j)] == x1_on_top);
                pairs.emplace_back(less_ij ? i : j, less_ij ? j : i);
            }
        return Tournament::from_pairs(m, pairs);
    };

    CandidateSelection g, h;
    g.comp_order = block_order(true); // X0 < X1
    h.comp_order = block_order(false);
    g.reversed.assign(static_cast<std::size_t>(m), false);
    h.reversed.assign(static_cast<std::size_t>(m), false);
    return {g, h};
}

namespace {

// a candidate and its all-reversed image generate the same topology
std::size_t reversed_index(const std::vector<CandidateSelection>& all, std::size_t i,
                           const SymbolicSpace& sp) {
    const CandidateSelection& c = all[i];
    int m = static_cast<int>(c.reversed.size());
    unsigned long long rt = 0;
    int pair_count = m * (m - 1) / 2;
    for (int k = 0; k < pair_count; ++k)
        if (!((c.tournament_bits >> k) & 1ull)) rt |= 1ull << k;
    unsigned long long ro = 0;
    std::vector<int> nondeg = nondegenerate_components(sp);
    for (std::size_t k = 0; k < nondeg.size(); ++k)
        if (!c.reversed[static_cast<std::size_t>(nondeg[k])]) ro |= 1ull << k;
    unsigned long long per_t = 1ull << nondeg.size();
    return static_cast<std::size_t>(rt * per_t + ro);
}

} // namespace

CwsReport cws_search(const SymbolicSpace& sp, int max_k, int bound) {
    CwsReport rep;
    rep.max_k = max_k;
    std::vector<CandidateSelection> all = enumerate_candidates(sp);
    OpenQueryOptions scan_opts;
    scan_opts.bound = bound;
    scan_opts.trace_guard = false;
    scan_opts.stop_at_first_failure = true;
    OpenQueryOptions full_opts;
    full_opts.bound = bound;

    // orderability: transitive arrangements only
    for (const CandidateSelection& c : all) {
        if (!c.comp_order.is_transitive()) continue;
        ++rep.candidates_examined;
        TopologyCheckReport r = topology_equals_model(Subbase::of(c.realize(sp)), scan_opts);
        if (r.verdict.passed()) {
            rep.orderable = true;
            rep.order_witness = c;
            break;
        }
    }

    // k = 1, exhaustive, fail certificates recorded
    for (const CandidateSelection& c : all) {
        ++rep.candidates_examined;
        TopologyCheckReport r = topology_equals_model(Subbase::of(c.realize(sp)), scan_opts);
        if (r.verdict.passed()) {
            if (!rep.cws) {
                rep.cws = 1;
                rep.witness = {c};
                rep.winner_report = topology_equals_model(Subbase::of(c.realize(sp)), full_opts);
            }
        } else {
            std::string first = r.verdict.detail;
            rep.k1_failures.push_back(c.to_string() + ": " + first);
        }
    }
    if (rep.cws) return rep;

    // k >= 2: subsets in lexicographic order, pruned by the all-reversed involution
    std::vector<std::size_t> rev(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) rev[i] = reversed_index(all, i, sp);
    for (int k = 2; k <= max_k; ++k) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        bool more = all.size() >= static_cast<std::size_t>(k);
        while (more) {
            std::vector<std::size_t> mirror;
            for (std::size_t i : idx) mirror.push_back(rev[i]);
            std::sort(mirror.begin(), mirror.end());
            if (!(mirror < idx)) {
                ++rep.candidates_examined;
                std::vector<Subbase> subs;
                for (std::size_t i : idx) subs.push_back(Subbase::of(all[i].realize(sp)));
                Subbase sup = supremum_subbase(subs);
                TopologyCheckReport r = topology_equals_model(sup, scan_opts);
                if (r.verdict.passed()) {
                    rep.cws = k;
                    for (std::size_t i : idx) rep.witness.push_back(all[i]);
                    rep.winner_report = topology_equals_model(sup, full_opts);
                    return rep;
                }
            }
            // next lexicographic k-subset
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] ==
                                   all.size() - static_cast<std::size_t>(k - pos)) --pos;
            if (pos < 0) more = false;
            else {
                ++idx[static_cast<std::size_t>(pos)];
                for (int q = pos + 1; q < k; ++q)
                    idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
            }
        }
    }
    return rep;
}

std::string CwsReport::to_string() const {
    std::ostringstream os;
    if (cws) {
        os << "cws = " << *cws << " with witness set {";
        for (std::size_t i = 0; i < witness.size(); ++i) {
            if (i) os << ", ";
            os << witness[i].to_string();
        }
        os << "}";
    } else {
        os << "cws >= " << max_k + 1 << " (undetermined at the search bound)";
    }
    os << "\norderable: " << (orderable ? "yes" : "no");
    if (order_witness) os << " via " << order_witness->to_string();
    os << "\ncandidates examined: " << candidates_examined;
    os << "\nk=1 failures: " << k1_failures.size() << "\n";
    return os.str();
}

DichotomyReport check_dichotomy(const SymbolicSpace& sp, int bound) {
    DichotomyReport out;
    out.components = require_finite_components(sp);
    out.cws = cws_search(sp, 2, bound);
    bool two_and_unorderable = out.components == 2 && !out.cws.orderable;
    out.consistent = out.cws.cws.has_value() && *out.cws.cws <= 2 &&
                     ((*out.cws.cws == 2) == two_and_unorderable);
    return out;
}

std::string DichotomyReport::to_string() const {
    std::ostringstream os;
    os << "components: " << components << "\n" << cws.to_string();
    os << "dichotomy consistent: " << (consistent ? "yes" : "NO") << "\n";
    return os.str();
}

std::pair<SelPtr, TopologyCheckReport> circular_blocks_selection(const SymbolicSpace& sp, int bound) {
    int m = require_finite_components(sp);
    if (m < 3) throw std::invalid_argument("circular_blocks_selection: needs at least 3 components");
    auto parts = component_parts(sp);
    for (const SymbolicSet& p : parts)
        if (!p.is_clopen()) throw std::invalid_argument("circular_blocks_selection: non-clopen component");
    SelPtr sigma = combine_invariant_canonical(SymbolicSet::full_set(sp), parts, build_circular_blocks(m));
    OpenQueryOptions opts;
    opts.bound = bound;
    TopologyCheckReport rep = topology_equals_model(Subbase::of(sigma), opts);
    return {sigma, rep};
}

} // namespace seltop
