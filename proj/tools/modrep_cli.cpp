// Command-line surface for the workbench: module inspection, tensor
// products, decomposition, Heller translates, vertices, tensor closures, and
// the packaged reproduction run.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "modrep/modrep.hpp"

using namespace modrep;
namespace fs = std::filesystem;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_STRUCTURAL_MISMATCH = 1;
constexpr int EXIT_INPUT_ERROR = 2;
constexpr int EXIT_BUDGET = 3;

GroupPtr load_group_for(const std::string& mrep_path, const std::string& group_override) {
    if (!group_override.empty()) return read_group_file(group_override);
    // look for <groupname>.grp next to the module file
    std::ifstream in(mrep_path);
    if (!in) throw ParseError("cannot open " + mrep_path);
    std::string line, group_name;
    while (std::getline(in, line)) {
        auto t = detail::tokens(line);
        if (t.size() >= 2 && t[0] == "group") {
            group_name = t[1];
            break;
        }
    }
    if (group_name.empty()) throw ParseError(mrep_path + ": no group header");
    fs::path dir = fs::path(mrep_path).parent_path();
    fs::path cand = dir / (group_name + ".grp");
    if (!fs::exists(cand)) {
        // shipped names use lower-case files
        std::string lower = group_name;
        for (auto& c : lower) c = char(tolower(c));
        cand = dir / (lower + ".grp");
    }
    if (!fs::exists(cand))
        throw ParseError("cannot locate group file for " + group_name + " near " + mrep_path +
                         " (use --group)");
    return read_group_file(cand.string());
}

std::string pim_label_of_group(const PimCatalog& cat, const std::string& label) {
    return label;
    (void)cat;
}

PimCatalog catalog_for(const GroupPtr& g, const Field& f, uint64_t seed) {
    if (g->is_2group()) return build_pim_catalog(g, f, "", SimpleCatalog{{{"K", Module::trivial(g, f), 1}}}, seed);
    if (g->name == "G168") return build_pim_catalog(g, f, "H", bootstrap_simples(g, f), seed);
    throw std::runtime_error("no PIM catalog recipe for group " + g->name);
}

void print_decomposition(const Decomposition& d, const PimCatalog& cat) {
    bool first = true;
    auto sep = [&]() {
        if (!first) std::cout << " + ";
        first = false;
    };
    for (auto& p : d.parts) {
        sep();
        if (p.multiplicity != 1) std::cout << p.multiplicity << "*";
        std::cout << "[" << p.rep.dim() << "-dim"
                  << (p.cert == CertLevel::Certified ? "" : ", probabilistic") << "]";
    }
    for (auto& [l, k] : d.pim_mults) {
        sep();
        if (k != 1) std::cout << k << "*";
        std::cout << pim_label_of_group(cat, l);
    }
    if (first) std::cout << "0";
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modrep: modular representation workbench in characteristic 2"};
    app.require_subcommand(1);
    uint64_t seed = 1;
    unsigned threads = 1;
    bool verbose = false;
    app.add_option("--seed", seed, "master random seed")->capture_default_str();
    app.add_option("--threads", threads, "internal parallelism cap")->capture_default_str();
    app.add_flag("--verbose", verbose, "chatty progress output");

    std::string file1, file2, outfile, group_path, data_dir = "data", ideal_name = "projective";
    std::string table_path;
    int omega_count = 1;
    uint32_t max_classes = 64, max_dim = 8192;
    bool as_json = false;

    auto* info = app.add_subcommand("info", "inspect a .grp or .mrep file");
    info->add_option("file", file1)->required();
    info->add_option("--group", group_path, "explicit .grp file for modules");

    auto* tens = app.add_subcommand("tensor", "tensor product of two modules");
    tens->add_option("file1", file1)->required();
    tens->add_option("file2", file2)->required();
    tens->add_option("-o,--output", outfile)->required();
    tens->add_option("--group", group_path);

    auto* dec = app.add_subcommand("decompose", "indecomposable direct summands");
    dec->add_option("file", file1)->required();
    dec->add_option("--group", group_path);
    dec->add_flag("--json", as_json);

    auto* om = app.add_subcommand("omega", "Heller translate(s)");
    om->add_option("file", file1)->required();
    om->add_option("-n", omega_count, "number of applications (negative for inverse)")
        ->capture_default_str();
    om->add_option("--group", group_path);
    om->add_option("-o,--output", outfile);

    auto* vx = app.add_subcommand("vertex", "vertex of an indecomposable module over the 2-group");
    vx->add_option("file", file1)->required();
    vx->add_option("--group", group_path, "explicit .grp file")->required();

    auto* cl = app.add_subcommand("closure", "tensor closure modulo an ideal");
    cl->add_option("file", file1)->required();
    cl->add_option("--ideal", ideal_name, "projective | cyclic")->capture_default_str();
    cl->add_option("--max-classes", max_classes)->capture_default_str();
    cl->add_option("--max-dim", max_dim)->capture_default_str();
    cl->add_option("--group", group_path);
    cl->add_option("--expected", table_path, "expected table to compare against");
    cl->add_flag("--json", as_json);

    auto* rj = app.add_subcommand("reproduce-j1", "run the packaged reproduction and audits");
    rj->add_option("--data", data_dir, "data directory")->capture_default_str();
    rj->add_flag("--json", as_json);

    CLI11_PARSE(app, argc, argv);
    set_thread_count(threads);

    try {
        if (info->parsed()) {
            if (file1.size() > 4 && file1.substr(file1.size() - 4) == ".grp") {
                GroupPtr g = read_group_file(file1);
                std::cout << "group " << g->name << ": " << g->order() << " elements on " << g->npoints
                          << " points, " << g->gens.size() << " generators\n";
                for (auto& [name, words] : g->subgroups) {
                    auto idx = subgroup_element_indices(*g, words);
                    std::cout << "  subgroup " << name << ": order " << idx.size() << "\n";
                }
                return EXIT_OK;
            }
            GroupPtr g = load_group_for(file1, group_path);
            MrepFile f = read_mrep_file(file1, g);
            validate_module(f.module, Rng(seed));
            std::cout << f.name << ": " << f.module.dim() << "-dimensional module for " << g->name
                      << " over " << f.module.field().name() << "\n";
            std::cout << "  invariants: generators invertible, relation spot-checks passed\n";
            if (has_radical_recipe(f.module)) {
                HeadData hd = head_data(f.module, catalog_for(g, f.module.field(), seed).simples);
                std::cout << "  radical dimension " << hd.rad.dim() << "\n";
            }
            return EXIT_OK;
        }
        if (tens->parsed()) {
            GroupPtr g = load_group_for(file1, group_path);
            MrepFile a = read_mrep_file(file1, g), b = read_mrep_file(file2, g);
            Module t = tensor(a.module, b.module);
            write_mrep_file(outfile, a.name + "x" + b.name, t);
            std::cout << "wrote " << outfile << " (" << t.dim() << "-dimensional)\n";
            return EXIT_OK;
        }
        if (dec->parsed()) {
            GroupPtr g = load_group_for(file1, group_path);
            MrepFile f = read_mrep_file(file1, g);
            PimCatalog cat = catalog_for(g, f.module.field(), seed);
            Decomposition d = decompose(f.module, cat, {seed});
            if (as_json) {
                json j;
                j["schema"] = "modrep-decomposition-1";
                json parts = json::array();
                for (auto& p : d.parts)
                    parts.push_back({{"dim", p.rep.dim()},
                                     {"multiplicity", p.multiplicity},
                                     {"certified", p.cert == CertLevel::Certified}});
                j["parts"] = parts;
                j["projectives"] = d.pim_mults;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << f.name << " = ";
                print_decomposition(d, cat);
            }
            return d.budget_exceeded ? EXIT_BUDGET : EXIT_OK;
        }
        if (om->parsed()) {
            GroupPtr g = load_group_for(file1, group_path);
            MrepFile f = read_mrep_file(file1, g);
            PimCatalog cat = catalog_for(g, f.module.field(), seed);
            Module cur = strip_projective_heller(f.module, cat).remainder;
            for (int i = 0; i < std::abs(omega_count); ++i)
                cur = omega_count > 0 ? omega_of(cur, cat) : omega_inverse_of(cur, cat);
            std::cout << "Omega^" << omega_count << "(" << f.name << ") has dimension " << cur.dim()
                      << "\n";
            if (!outfile.empty()) {
                write_mrep_file(outfile, "Om" + std::to_string(omega_count) + f.name, cur);
                std::cout << "wrote " << outfile << "\n";
            }
            return EXIT_OK;
        }
        if (vx->parsed()) {
            GroupPtr g = read_group_file(group_path);
            MrepFile f = read_mrep_file(file1, g);
            SubgroupLattice lat = build_subgroup_lattice(g);
            auto cert = certify_indecomposable(f.module, seed);
            if (cert.kind == IndecomposabilityResult::Split) {
                std::cout << f.name << " is decomposable; vertex undefined\n";
                return EXIT_INPUT_ERROR;
            }
            size_t v = vertex(f.module, lat);
            std::cout << "vertex(" << f.name << ") = " << lat.subs[v].name << " (order "
                      << lat.subs[v].order << ")\n";
            return EXIT_OK;
        }
        if (cl->parsed()) {
            GroupPtr g = load_group_for(file1, group_path);
            MrepFile f = read_mrep_file(file1, g);
            PimCatalog cat = catalog_for(g, f.module.field(), seed);
            ClosureOptions opts;
            opts.seed = seed;
            opts.limits = {max_classes, max_dim};
            if (ideal_name == "projective")
                opts.ideal = IdealKind::ProjectiveOnly;
            else if (ideal_name == "cyclic")
                opts.ideal = IdealKind::CyclicOrTrivialVertex;
            else
                throw ParseError("unknown ideal: " + ideal_name);
            opts.label_prefix = opts.ideal == IdealKind::CyclicOrTrivialVertex ? "D" : "C";
            ClosureResult cr = tensor_closure(f.module, f.name, cat, opts);
            json out = closure_to_json(cr);
            if (cr.status == ClosureResult::Closed) out["witness"] = witness_to_json(polynomial_witness(cr));
            int code = cr.status == ClosureResult::Closed ? EXIT_OK : EXIT_BUDGET;
            if (!table_path.empty()) {
                CompareReport rep = compare_expected(cr, read_expected_table_file(table_path), cat);
                out["comparison"] = compare_to_json(rep);
                if (!rep.all_structural_or_better()) code = EXIT_STRUCTURAL_MISMATCH;
            }
            if (as_json) {
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "closure(" << f.name << "): "
                          << (cr.status == ClosureResult::Closed ? "Closed" : "budget exceeded") << " with "
                          << cr.catalog.size() << " classes\n";
                for (auto& e : cr.catalog) std::cout << "  " << e.label << " (dim " << e.dim << ")\n";
                for (auto& r : cr.rows) {
                    std::cout << f.name << "*" << r.x << " =";
                    for (auto& [l, k] : r.parts) std::cout << " + " << k << "*" << l;
                    for (auto& [l, k] : r.ideal) std::cout << " + " << k << "*" << l;
                    std::cout << "\n";
                }
            }
            return code;
        }
        if (rj->parsed()) {
            ReproduceReport rep = reproduce_j1(data_dir, seed, verbose);
            if (as_json)
                std::cout << reproduce_to_json(rep).dump(2) << "\n";
            else
                print_reproduce_report(std::cout, rep);
            return rep.exit_code();
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    }
    return EXIT_OK;
}
