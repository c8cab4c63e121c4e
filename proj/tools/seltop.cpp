// Command-line front end: model checking, the partition builders with their
// openness certificates, sieve construction and invariant reports, the
// synthesized selection with its verification suites, brute-force cws and
// the semi-orderable dichotomy. Exit codes: 0 pass, 1 fail, 2 undetermined.

#include "CLI11.hpp"

#include "seltop/builders.hpp"
#include "seltop/cws.hpp"
#include "seltop/synthesizer.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace seltop;

namespace {

SymbolicSpace load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::vector<SymbolicSet> component_parts(const SymbolicSpace& sp) {
    std::vector<SymbolicSet> parts;
    auto m = sp.finite_component_count();
    if (!m) throw std::runtime_error("this command needs a finite-component model");
    for (int i = 0; i < sp.region_count(); ++i)
        parts.push_back(SymbolicSet::component_set(sp, make_component(sp, i, ComponentRef::kWhole)));
    return parts;
}

// builders without a model are realized over synthetic unit segments
SymbolicSpace synthetic_segments(int n) {
    std::ostringstream os;
    os << "space parts" << n << "\n";
    for (int i = 0; i < n; ++i) os << "segment " << 2 * i << " " << 2 * i + 1 << "\n";
    return parse_model(os.str());
}

int report_certification(const Tournament& top, const SymbolicSpace& sp, bool rev, int bound) {
    auto parts = component_parts(sp);
    SelPtr sel = combine_invariant_canonical(SymbolicSet::full_set(sp), parts, top, rev);
    std::cout << "descriptor: " << sel->descriptor() << "\n";
    auto cert = certify_partition_open(top, parts, rev, bound);
    for (const PartCertificate& pc : cert.parts) {
        std::cout << "part " << pc.part << ": "
                  << (pc.verdict.open() ? "open" : "NOT certified") << "\n";
        for (const OpenWitness& w : pc.verdict.witnesses) {
            std::cout << "  at " << w.point << ":";
            if (w.atoms.empty()) std::cout << " whole carrier";
            for (const SubbasicRef& a : w.atoms) std::cout << " " << a.to_string();
            std::cout << "\n";
        }
    }
    std::cout << "certification: " << cert.verdict.kind_name() << " (max fold " << cert.max_fold()
              << ")\n";
    return cert.verdict.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact weak-selection laboratory for suborderable models"};
    app.require_subcommand(1);

    std::string model_path;
    int depth = 8;
    int max_k = 3;
    int bound = 4;
    int parts_n = 0;
    int max_part = -1;
    int q_count = 6, r_count = 6;
    int pairs = 1000;
    std::uint64_t seed = 1;
    std::string children = "fwd";
    std::string verify = "all";
    std::string report = "text";

    auto* mc = app.add_subcommand("model-check", "parse and validate a model file");
    mc->add_option("--model", model_path)->required();
    mc->add_option("--depth", depth);

    auto* l23 = app.add_subcommand("build-l23", "circular-block selection over a partition");
    l23->add_option("--parts", parts_n);
    l23->add_option("--model", model_path);
    l23->add_option("--children", children)->check(CLI::IsMember({"fwd", "rev"}));
    l23->add_option("--bound", bound);

    auto* l25 = app.add_subcommand("build-l25", "selection with a marked maximal part");
    l25->add_option("--parts", parts_n);
    l25->add_option("--model", model_path);
    l25->add_option("--max-part", max_part)->required();
    l25->add_option("--children", children)->check(CLI::IsMember({"fwd", "rev"}));
    l25->add_option("--bound", bound);

    auto* c26 = app.add_subcommand("build-c26", "two-block selection around a separator");
    c26->add_option("--q", q_count);
    c26->add_option("--r", r_count);
    c26->add_option("--model", model_path);
    c26->add_option("--max-part", max_part);
    c26->add_option("--bound", bound);

    auto* sv = app.add_subcommand("sieve", "build the lazy sieve and check its invariants");
    sv->add_option("--model", model_path)->required();
    sv->add_option("--depth", depth);
    sv->add_option("--report", report);

    auto* sy = app.add_subcommand("synth", "synthesize the sieve-invariant selection and verify");
    sy->add_option("--model", model_path)->required();
    sy->add_option("--depth", depth);
    sy->add_option("--verify", verify)
        ->check(CLI::IsMember({"invariance", "continuity", "topology", "all"}));
    sy->add_option("--pairs", pairs);
    sy->add_option("--seed", seed);
    sy->add_option("--bound", bound);

    auto* cw = app.add_subcommand("cws", "brute-force cws number");
    cw->add_option("--model", model_path)->required();
    cw->add_option("--max-k", max_k);
    cw->add_option("--bound", bound);

    auto* th = app.add_subcommand("theorem21", "semi-orderable dichotomy report");
    th->add_option("--model", model_path)->required();
    th->add_option("--bound", bound);

    CLI11_PARSE(app, argc, argv);

    try {
        if (mc->parsed()) {
            SymbolicSpace sp = load_model(model_path);
            std::cout << model_summary(sp, depth);
            std::cout << "model ok\n";
            return 0;
        }
        if (l23->parsed() || l25->parsed() || c26->parsed()) {
            bool rev = children == "rev";
            if (c26->parsed()) {
                if (!model_path.empty()) {
                    if (max_part < 0) throw std::runtime_error("build-c26 with a model needs --max-part");
                    SymbolicSpace sp = load_model(model_path);
                    parts_n = *sp.finite_component_count();
                    q_count = max_part;
                    r_count = parts_n - 1 - max_part;
                    return report_certification(build_separator_blocks(q_count, r_count), sp, false, bound);
                }
                SymbolicSpace sp = synthetic_segments(q_count + 1 + r_count);
                return report_certification(build_separator_blocks(q_count, r_count), sp, false, bound);
            }
            if (model_path.empty() && parts_n <= 0)
                throw std::runtime_error("builders need --parts or --model");
            SymbolicSpace sp = model_path.empty() ? synthetic_segments(parts_n) : load_model(model_path);
            if (!model_path.empty()) parts_n = *sp.finite_component_count();
            if (l23->parsed()) {
                TripleGrouping g = triple_grouping(parts_n);
                std::cout << "parts: " << parts_n << ", triples: " << g.triples.size()
                          << ", leftover: " << g.leftover.size() << "\n";
                return report_certification(build_circular_blocks(parts_n), sp, rev, bound);
            }
            return report_certification(build_marked_maximum(parts_n, max_part), sp, rev, bound);
        }
        if (sv->parsed()) {
            SymbolicSpace sp = load_model(model_path);
            auto sieve = Sieve::build(sp, depth);
            SieveReport rep = sieve_report(*sieve, depth);
            std::cout << rep.text;
            return rep.verdict.exit_code();
        }
        if (sy->parsed()) {
            SymbolicSpace sp = load_model(model_path);
            auto g = SynthesizedSelection::synthesize(sp, depth);
            int rc = 0;
            auto merge = [&](const Verdict& v, const std::string& name) {
                std::cout << name << ": " << v.kind_name();
                if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
                std::cout << "\n";
                rc = std::max(rc, v.exit_code());
            };
            if (verify == "invariance" || verify == "all")
                merge(verify_invariance(*g, depth), "invariance");
            if (verify == "continuity" || verify == "all")
                merge(verify_continuity(*g, pairs, seed), "continuity");
            if (verify == "all") merge(verify_node_certificates(*g, depth), "node certificates");
            if (verify == "topology" || verify == "all") {
                TopologyCheckReport rep = verify_topology_equality(*g, depth, bound);
                std::cout << rep.to_string();
                rc = std::max(rc, rep.verdict.exit_code());
            }
            return rc;
        }
        if (cw->parsed()) {
            SymbolicSpace sp = load_model(model_path);
            CwsReport rep = cws_search(sp, max_k, bound);
            std::cout << rep.to_string();
            if (rep.cws) {
                std::cout << "winner certificates:\n" << rep.winner_report.to_string();
                for (const std::string& f : rep.k1_failures)
                    std::cout << "  k=1 " << f << "\n";
            }
            return rep.verdict().exit_code();
        }
        if (th->parsed()) {
            SymbolicSpace sp = load_model(model_path);
            DichotomyReport rep = check_dichotomy(sp, bound);
            std::cout << rep.to_string();
            return rep.consistent ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 1;
    } catch (const Undetermined& e) {
        std::cerr << "undetermined: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
