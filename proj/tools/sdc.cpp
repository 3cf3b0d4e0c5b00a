// Command-line front end: weight data, equivalence, automorphisms,
// decomposition plumbing and the classification drivers, over generator
// matrices given as files or catalog names.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "sdcode/catalog.hpp"
#include "sdcode/classify.hpp"
#include "sdcode/decomp.hpp"
#include "sdcode/equiv.hpp"
#include "sdcode/gf2core.hpp"

using namespace sdcode;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

int default_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? (int)hc : 1;
}

std::string code_summary(const BinaryCode& c) {
    std::string s = "[" + std::to_string(c.n()) + "," + std::to_string(c.k());
    if (c.k() <= 24) {
        auto mw = min_weight(c);
        s += "," + std::to_string(mw ? mw->weight : 0);
    }
    return s + "]";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-dual code decomposition and classification tools"};
    app.require_subcommand(1);

    std::string in_a, in_b, out_path, spec_text, dataset_dir, expect_path, phi_uri, pi_uri, label;
    int mod_p = 0, cycles = 0;
    bool with_matrices = false, progress = false;
    int threads = default_threads();

    auto* c_wenum = app.add_subcommand("wenum", "weight distribution of a code");
    c_wenum->add_option("code", in_a, "generator matrix file or catalog:NAME")->required();

    auto* c_mind = app.add_subcommand("mindist", "minimum nonzero weight of a code");
    c_mind->add_option("code", in_a)->required();

    auto* c_canon = app.add_subcommand("canon", "canonical key digest and |Aut|");
    c_canon->add_option("code", in_a)->required();

    auto* c_aut = app.add_subcommand("aut", "automorphism group order and generators");
    c_aut->add_option("code", in_a)->required();

    auto* c_equiv = app.add_subcommand("equiv", "decide permutation equivalence of two codes");
    c_equiv->add_option("a", in_a)->required();
    c_equiv->add_option("b", in_b)->required();

    auto* c_split = app.add_subcommand("split", "decompose a code fixed by an order-p map");
    c_split->add_option("code", in_a)->required();
    c_split->add_option("--spec", spec_text, "automorphism type, e.g. p=7,c=6,f=2")->required();

    auto* c_asm = app.add_subcommand("assemble", "assemble a code from projected and module parts");
    c_asm->add_option("--pi", pi_uri, "projected code (file or catalog:NAME)")->required();
    c_asm->add_option("--phi", phi_uri, "module code (file or catalog:NAME)")->required();
    c_asm->add_option("--spec", spec_text, "automorphism type, e.g. p=7,c=6,f=2")->required();
    c_asm->add_option("--p", mod_p, "ring prime when --phi is a plain file");
    c_asm->add_option("-o,--out", out_path, "write the generator matrix here");

    auto* c_cls = app.add_subcommand("classify", "classify extremal [44,22,8] codes");
    c_cls->add_option("--spec", spec_text,
                      "order-7 run: p=7 (both types), p=7,c=6,f=2 or p=7,c=3,f=23");
    c_cls->add_option("--dataset", dataset_dir, "dataset directory for specs covering type (3,23)");
    c_cls->add_option("--pi", pi_uri, "restricted order-3 run: projected code");
    c_cls->add_option("--phi", phi_uri, "restricted order-3 run: module code");
    c_cls->add_option("--cycles", cycles, "leading cycle-coordinate count of --pi (default 10)");
    c_cls->add_option("--label", label, "run label in the report");
    c_cls->add_option("--expect", expect_path, "expected count table; mismatches fail");
    c_cls->add_option("--threads", threads, "worker threads for weight filtering");
    c_cls->add_flag("--matrices", with_matrices, "print generator matrices of representatives");
    c_cls->add_flag("--progress", progress, "progress notes on stderr");
    c_cls->add_option("-o,--out", out_path, "write the report here");

    auto* c_cat = app.add_subcommand("catalog", "list catalog entries");

    auto* c_imp = app.add_subcommand("import", "validate a dataset directory against its manifest");
    c_imp->add_option("dir", in_a)->required();

    auto* c_ds = app.add_subcommand("dataset", "derive the three [23,10,8] codes from scratch");
    c_ds->add_option("--derive", out_path, "write members and manifest into this directory")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_wenum->parsed()) {
            BinaryCode code = resolve_binary(in_a);
            WeightDistribution wd = weight_distribution(code);
            std::cout << "# " << code_summary(code) << "\n";
            for (int w = 0; w <= wd.n; ++w) {
                if (wd.at(w)) std::cout << w << ' ' << wd.at(w) << "\n";
            }
        } else if (c_mind->parsed()) {
            BinaryCode code = resolve_binary(in_a);
            auto mw = min_weight(code);
            if (!mw) throw std::runtime_error("zero code has no nonzero weight");
            std::cout << mw->weight << "\n";
        } else if (c_canon->parsed()) {
            BinaryCode code = resolve_binary(in_a);
            CanonicalResult cr = canonical_form(code);
            std::cout << "key " << hex64(fnv1a64(cr.key)) << " aut " << cr.aut.order << "\n";
        } else if (c_aut->parsed()) {
            BinaryCode code = resolve_binary(in_a);
            AutGroupResult ag = automorphism_group(code);
            std::cout << "order " << ag.order << "\n";
            for (const auto& g : ag.gens) std::cout << g.to_cycles() << "\n";
        } else if (c_equiv->parsed()) {
            BinaryCode a = resolve_binary(in_a), b = resolve_binary(in_b);
            auto map = equivalence_map(a, b);
            if (!map) {
                std::cout << "INEQUIVALENT\n";
                return 1;
            }
            std::cout << "EQUIVALENT " << map->to_cycles() << "\n";
        } else if (c_split->parsed()) {
            BinaryCode code = resolve_binary(in_a);
            AutomorphismSpec sigma = AutomorphismSpec::parse_compact(spec_text);
            if (!sigma.fixes(code))
                throw std::runtime_error("the standard order-" + std::to_string(sigma.p) +
                                         " map does not fix this code");
            SplitResult sr = split(code, sigma);
            BinaryCode cpi = project_pi(sr.fixed_subcode, sigma);
            ModuleCode cphi = map_phi(sr.cycle_subcode, sigma);
            std::cout << "# " << sigma.describe() << "\n# projected code " << code_summary(cpi)
                      << "\n" << cpi.to_text() << "# module code\n" << cphi.to_text();
        } else if (c_asm->parsed()) {
            BinaryCode cpi = resolve_binary(pi_uri);
            ModuleCode cphi = resolve_module(phi_uri, mod_p);
            AutomorphismSpec sigma = AutomorphismSpec::parse_compact(spec_text);
            CompatibilityCheck cc = check_compatibility(cpi, cphi);
            if (!cc.ok()) {
                std::string why;
                if (!cc.pi_self_dual) why += " projected-not-self-dual";
                if (!cc.phi_module_closed) why += " module-not-x-closed";
                if (!cc.phi_components_even) why += " components-not-even";
                if (!cc.phi_dimension) why += " wrong-module-dimension";
                if (!cc.phi_pairing) why += " pairing-nonzero";
                throw std::runtime_error("incompatible pair:" + why);
            }
            BinaryCode code = assemble(cpi, cphi, sigma);
            std::string text = "# assembled " + code_summary(code) + ", self-dual: " +
                               (code.is_self_dual() ? "yes" : "no") + "\n" + code.to_text();
            emit(text, out_path);
        } else if (c_cls->parsed()) {
            ClassifyOptions opt;
            opt.threads = threads;
            opt.progress = progress;
            ClassificationReport rep;
            if (!spec_text.empty()) {
                rep = classify_spec(spec_text, dataset_dir, opt);
            } else if (!pi_uri.empty() && !phi_uri.empty()) {
                BinaryCode cpi = resolve_binary(pi_uri);
                ModuleCode cphi = resolve_module(phi_uri, 3);
                if (!cycles) cycles = 10;
                if (label.empty()) label = pi_uri + " + " + phi_uri;
                rep = classify_3_restricted(cpi, cycles, cphi, label, opt);
                rep.input_checksums["pi"] = hex64(fnv1a64(cpi.to_text()));
                rep.input_checksums["phi"] = hex64(fnv1a64(cphi.to_text()));
            } else {
                throw std::invalid_argument("classify needs --spec or both --pi and --phi");
            }
            emit(rep.render(with_matrices), out_path);
            if (!expect_path.empty()) {
                std::string mismatch = check_expect(rep, read_expect(expect_path));
                if (!mismatch.empty()) {
                    std::cerr << "expectation mismatch: " << mismatch << "\n";
                    return 1;
                }
                std::cout << "# matches " << expect_path << "\n";
            }
        } else if (c_cat->parsed()) {
            Catalog cat = Catalog::open_default();
            std::cout << "# catalog root " << cat.root() << "\n";
            for (const auto& e : cat.entries()) {
                std::cout << e.name << " kind=" << e.kind << " file=" << e.file
                          << " checksum=" << e.checksum;
                for (const auto& [k, v] : e.params) std::cout << ' ' << k << '=' << v;
                std::cout << "\n";
            }
        } else if (c_imp->parsed()) {
            DatasetExpectation exp = dataset_expectation_from_manifest(in_a);
            ImportedDataset ds = import_dataset(in_a, exp);
            std::cout << "ok: " << ds.codes.size() << " members, checksum " << ds.checksum << "\n";
            for (const auto& name : ds.names) std::cout << "  " << name << "\n";
        } else if (c_ds->parsed()) {
            ImportedDataset ds = materialize_so_23_10_8(out_path);
            std::cout << "ok: " << ds.codes.size() << " members, checksum " << ds.checksum << "\n";
            for (const auto& name : ds.names) std::cout << "  " << name << "\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
