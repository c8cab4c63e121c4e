#include "seltop/sieve.hpp"

#include <algorithm>
#include <sstream>

namespace seltop {

namespace {

void sort_positionally(std::vector<SymbolicSet>& pieces) {
    std::sort(pieces.begin(), pieces.end(), [](const SymbolicSet& a, const SymbolicSet& b) {
        return a.inf()->value < b.inf()->value;
    });
}

// splits tail parts of a clopen set into leading singleton members until
// every produced piece is admissible at scale eps
void cover_small(const SymbolicSpace& sp, const SymbolicSet& y, const Rational& eps,
                 std::vector<SymbolicSet>& out) {
    if (y.is_empty()) return;
    for (const ClopenPart& part : y.clopen_parts()) {
        if (std::holds_alternative<ComponentRef>(part)) {
            out.push_back(SymbolicSet::part_set(sp, part));
            continue;
        }
        TailRef t = std::get<TailRef>(part);
        int j = t.from;
        while (SymbolicSet::family_tail(sp, t.region, j, true).diameter() >= eps) {
            out.push_back(SymbolicSet::component_set(sp, make_component(sp, t.region, j)));
            ++j;
        }
        out.push_back(SymbolicSet::family_tail(sp, t.region, j, true));
    }
}

// the piece with the most components (infinite beats finite; ties go to the
// positionally first), split in two
void split_widest(const SymbolicSpace& sp, std::vector<SymbolicSet>& pieces) {
    int best = -1;
    std::optional<int> best_count;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        auto n = pieces[i].component_count();
        bool better;
        if (best < 0) better = true;
        else if (!n && best_count) better = true;
        else if (!n && !best_count) better = false;
        else if (n && !best_count) better = false;
        else better = *n > *best_count;
        if (better) {
            best = static_cast<int>(i);
            best_count = n ? *n : std::optional<int>();
        }
    }
    SymbolicSet chosen = pieces[static_cast<std::size_t>(best)];
    auto halves = split_clopen(sp, chosen);
    pieces.erase(pieces.begin() + best);
    pieces.push_back(halves.first);
    pieces.push_back(halves.second);
    sort_positionally(pieces);
}

} // namespace

std::vector<SymbolicSet> partition_admissible(const SymbolicSpace& sp, const SymbolicSet& z,
                                              const Rational& eps) {
    if (!is_admissible(sp, z)) throw std::invalid_argument("partition_admissible: Z not admissible");
    if (is_admissible_at(sp, z, eps)) return {z};

    std::vector<SymbolicSet> pieces;
    SymbolicSet taken = SymbolicSet::empty_set(sp);
    for (const ComponentRef& c : big_components(sp, z, eps)) {
        SymbolicSet room = set_difference(set_intersect(delta_neighborhood(sp, c, eps), z), taken);
        SymbolicSet uc = clopen_separation(sp, c, room);
        pieces.push_back(uc);
        taken = set_union(taken, uc);
    }
    cover_small(sp, set_difference(z, taken), eps, pieces);
    if (pieces.size() == 2) split_widest(sp, pieces);
    sort_positionally(pieces);
    return pieces;
}

std::vector<SymbolicSet> partition_around(const SymbolicSpace& sp, const SymbolicSet& z,
                                          const Rational& eps, const ComponentRef& c) {
    Rational two_eps = eps * Rational(2);
    if (!is_admissible_at(sp, z, two_eps))
        throw std::invalid_argument("partition_around: Z not admissible at 2*eps");
    SymbolicSet cs = SymbolicSet::component_set(sp, c);
    if (!cs.subset_of(z)) throw std::invalid_argument("partition_around: C not inside Z");
    if (!(c.diam() >= two_eps) && !z.subset_of(delta_neighborhood(sp, c, two_eps)))
        throw std::invalid_argument("partition_around: C neither big at 2*eps nor trapping Z");

    auto [l, r] = lr_flags(sp, c);

    // U_C: clopen between C and Delta(C,eps) ∩ Z, leaving at least six
    // components of Z on each accumulating side
    SymbolicSet room = set_intersect(delta_neighborhood(sp, c, eps), z);
    SymbolicSet uc = clopen_separation(sp, c, room);
    if (l == 1 || r == 1) {
        // C is a family limit; push the tail start deep enough to exclude
        // six members of Z on the accumulating side
        const FamTrace& zt = std::get<FamTrace>(z.trace(c.region));
        const FamTrace& ut = std::get<FamTrace>(uc.trace(c.region));
        int z_from = zt.tail_from ? *zt.tail_from : 0;
        int u_from = ut.tail_from ? *ut.tail_from : 0;
        int need = std::max(u_from, z_from + 6);
        uc = SymbolicSet::family_tail(sp, c.region, need, true);
    }

    SymbolicSet below = set_difference(set_intersect(z, ray_below(cs)), uc);
    SymbolicSet above = set_difference(set_intersect(z, ray_above(cs)), uc);
    std::vector<SymbolicSet> pieces;
    for (const SymbolicSet* side : {&below, &above}) {
        if (side->is_empty()) continue;
        std::size_t first = pieces.size();
        if (side->component_count()) {
            // finitely many components: one piece each
            ComponentStream stream(*side);
            while (auto comp = stream.next())
                pieces.push_back(SymbolicSet::component_set(sp, *comp));
        } else {
            auto sub = partition_admissible(sp, *side, eps);
            for (SymbolicSet& p : sub) pieces.push_back(std::move(p));
            // the accumulating side owes at least six pieces
            while (pieces.size() - first < 6) {
                std::vector<SymbolicSet> tail_pieces(pieces.begin() + static_cast<std::ptrdiff_t>(first),
                                                     pieces.end());
                pieces.resize(first);
                split_widest(sp, tail_pieces);
                for (SymbolicSet& p : tail_pieces) pieces.push_back(std::move(p));
            }
        }
    }
    pieces.push_back(uc);
    sort_positionally(pieces);
    if (pieces.size() == 2) split_widest(sp, pieces);
    return pieces;
}

// --- the sieve tree -------------------------------------------------------------

std::shared_ptr<Sieve> Sieve::build(const SymbolicSpace& sp, int depth) {
    if (depth < 1) throw std::invalid_argument("Sieve: depth must be at least 1");
    if (sp.finite_component_count())
        throw std::invalid_argument(
            "Sieve: the model has finitely many components; use the brute-force lab instead");
    auto sieve = std::make_shared<Sieve>();
    sieve->space_ = &sp;
    sieve->depth_ = depth;
    auto root_pieces = partition_admissible(sp, SymbolicSet::full_set(sp), Rational(1));
    for (SymbolicSet& piece : root_pieces)
        sieve->roots_.push_back(sieve->add_node(-1, 0, std::move(piece)));
    return sieve;
}

int Sieve::add_node(int parent, int level, SymbolicSet value) {
    NodeData d;
    d.id = static_cast<int>(nodes_.size());
    d.parent = parent;
    d.level = level;
    Rational scale = pow(rat(1, 2), level);
    auto bigs = big_components(*space_, value, scale);
    if (!bigs.empty()) {
        if (bigs.size() > 1) throw std::logic_error("Sieve: several big components at one node");
        d.big = bigs.front();
        auto [l, r] = lr_flags(*space_, *d.big);
        d.l_flag = l;
        d.r_flag = r;
    }
    d.value = std::move(value);
    nodes_.push_back(std::move(d));
    return nodes_.back().id;
}

void Sieve::expand(int id) {
    // copy what we need: add_node growing nodes_ invalidates references
    if (nodes_[static_cast<std::size_t>(id)].expanded) return;
    const int level = nodes_[static_cast<std::size_t>(id)].level;
    const std::optional<ComponentRef> big = nodes_[static_cast<std::size_t>(id)].big;
    const SymbolicSet value = nodes_[static_cast<std::size_t>(id)].value;

    Rational child_scale = pow(rat(1, 2), level + 1);
    std::vector<SymbolicSet> pieces = big ? partition_around(*space_, value, child_scale, *big)
                                          : partition_admissible(*space_, value, child_scale);
    SymbolicSet big_set = big ? SymbolicSet::component_set(*space_, *big) : SymbolicSet::empty_set(*space_);
    std::vector<int> kids;
    std::optional<int> big_child;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (big && big_set.subset_of(pieces[i])) big_child = static_cast<int>(i);
        kids.push_back(add_node(id, level + 1, std::move(pieces[i])));
    }
    nodes_[static_cast<std::size_t>(id)].big_child = big_child;
    nodes_[static_cast<std::size_t>(id)].children = std::move(kids);
    nodes_[static_cast<std::size_t>(id)].expanded = true;
}

const std::vector<int>& Sieve::children(int id) {
    expand(id);
    return nodes_[static_cast<std::size_t>(id)].children;
}

void Sieve::ensure_level(int level) {
    for (int id = 0; id < node_count(); ++id)
        if (node(id).level < level) expand(id);
}

std::vector<int> Sieve::branch(const Rational& x, int to_level) {
    if (!space_->contains(x)) throw std::invalid_argument("branch: point not in space");
    std::vector<int> out;
    const std::vector<int>* layer = &roots_;
    while (static_cast<int>(out.size()) <= to_level) {
        int found = -1;
        for (int id : *layer)
            if (node(id).value.contains(x)) {
                found = id;
                break;
            }
        if (found < 0) throw std::logic_error("branch: level does not cover the point");
        out.push_back(found);
        if (static_cast<int>(out.size()) > to_level) break;
        layer = &children(found);
    }
    return out;
}

std::optional<int> Sieve::locate_clopen(const Rational& x, const SymbolicSet& u, int max_level) {
    if (auto p = u.boundary_point()) throw NotClopenError(*p, "locate_clopen: U is not clopen");
    if (!u.contains(x)) throw std::invalid_argument("locate_clopen: x not in U");
    std::vector<int> chain = branch(x, max_level);
    for (int id : chain)
        if (node(id).value.subset_of(u)) return id;
    return std::nullopt;
}

// --- invariants -------------------------------------------------------------------

Verdict check_sieve_invariants(Sieve& sieve, int depth) {
    const SymbolicSpace& sp = sieve.space();
    sieve.ensure_level(depth);
    std::ostringstream why;

    // root level: anti-binary and a partition of the space
    if (sieve.roots().size() == 2) return Verdict::fail("root level has exactly two nodes");
    {
        SymbolicSet acc = SymbolicSet::empty_set(sp);
        for (int id : sieve.roots()) acc = set_union(acc, sieve.node(id).value);
        if (!(acc == SymbolicSet::full_set(sp))) return Verdict::fail("root level does not cover the space");
    }

    for (int id = 0; id < sieve.node_count(); ++id) {
        const Sieve::NodeData& nd = sieve.node(id);
        Rational scale = pow(rat(1, 2), nd.level);
        if (!is_admissible_at(sp, nd.value, scale)) {
            why << "node " << id << " at level " << nd.level << " not admissible at 2^-" << nd.level;
            return Verdict::fail(why.str());
        }
        if (!nd.expanded) continue;
        if (nd.children.size() == 2) {
            why << "node " << id << " has exactly two children";
            return Verdict::fail(why.str());
        }
        SymbolicSet acc = SymbolicSet::empty_set(sp);
        for (int kid : nd.children) acc = set_union(acc, sieve.node(kid).value);
        if (!(acc == nd.value)) {
            why << "children of node " << id << " do not partition it";
            return Verdict::fail(why.str());
        }
        for (std::size_t a = 0; a < nd.children.size(); ++a)
            for (std::size_t b = a + 1; b < nd.children.size(); ++b)
                if (!set_intersect(sieve.node(nd.children[a]).value, sieve.node(nd.children[b]).value)
                         .is_empty()) {
                    why << "children of node " << id << " overlap";
                    return Verdict::fail(why.str());
                }

        // sibling properties around a big component
        if (nd.big && nd.level >= scale_level(*nd.big)) {
            if (!nd.big_child) {
                why << "node " << id << " lost its big component";
                return Verdict::fail(why.str());
            }
            SymbolicSet cs = SymbolicSet::component_set(sp, *nd.big);
            SymbolicSet below = ray_below(cs);
            SymbolicSet above = ray_above(cs);
            Rational sibling_bound = pow(rat(1, 2), nd.level - 1); // 2^{-n+1}
            int below_count = 0, above_count = 0;
            for (std::size_t k = 0; k < nd.children.size(); ++k) {
                if (static_cast<int>(k) == *nd.big_child) continue;
                const SymbolicSet& sv = sieve.node(nd.children[k]).value;
                bool is_below = sv.subset_of(below);
                bool is_above = sv.subset_of(above);
                if (!is_below && !is_above) {
                    why << "sibling " << k << " of node " << id << " straddles the big component";
                    return Verdict::fail(why.str());
                }
                if (sv.diameter() > sibling_bound) {
                    why << "sibling " << k << " of node " << id << " too wide";
                    return Verdict::fail(why.str());
                }
                (is_below ? below_count : above_count) += 1;
            }
            if (below_count < 6 * nd.l_flag || above_count < 6 * nd.r_flag) {
                why << "node " << id << " has too few siblings on an accumulating side";
                return Verdict::fail(why.str());
            }
        }
    }
    return Verdict::pass("sieve invariants hold to depth " + std::to_string(depth));
}

SieveReport sieve_report(Sieve& sieve, int depth) {
    SieveReport rep;
    rep.verdict = check_sieve_invariants(sieve, depth);
    std::ostringstream os;
    const SymbolicSpace& sp = sieve.space();
    (void)sp;
    std::vector<std::vector<int>> levels(static_cast<std::size_t>(depth) + 1);
    for (int id = 0; id < sieve.node_count(); ++id)
        if (sieve.node(id).level <= depth)
            levels[static_cast<std::size_t>(sieve.node(id).level)].push_back(id);
    for (int n = 0; n <= depth; ++n) {
        os << "level " << n << " (" << levels[static_cast<std::size_t>(n)].size() << " pieces):\n";
        for (int id : levels[static_cast<std::size_t>(n)]) {
            const Sieve::NodeData& nd = sieve.node(id);
            os << "  node " << id << ": " << nd.value.to_string();
            if (nd.big) os << "  [big " << nd.big->to_string() << " l=" << nd.l_flag << " r=" << nd.r_flag << "]";
            os << "\n";
        }
    }
    os << "invariants: " << rep.verdict.kind_name();
    if (!rep.verdict.detail.empty()) os << " (" << rep.verdict.detail << ")";
    os << "\n";
    rep.text = os.str();
    return rep;
}

} // namespace seltop
