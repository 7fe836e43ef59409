#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "ortholab/suite.hpp"

using namespace ortholab;

namespace {

constexpr int kPass = 0, kFail = 1, kInputError = 2;

// Thrown to leave a command with an exit code once output is written.
struct Exit {
    int code;
};

const char* kCommandList = R"(Commands:
  lattice check <file>                 validate the ortholattice axioms
  lattice classify <file>              separative / orthomodular / modular / distributive / Boolean
  lattice decompose <file>             type profile, or p_T, q_T and homogeneous parts with --ideal
  lattice complete <file>              cut completion of a preorthogonality {m, rel}
  alg annihilators <file>              annihilator, biannihilator and range data of an element
  alg septhm <file>                    separate and epsilon_separate for {B, C} supports
  alg lattice <file>                   annihilator lattice generated by {elements: [...]}
  alg suite                            matrix-algebra property suite
  cell analyze <file>                  semicontinuity, interior, closure, regularization
  cell lattice <files...>              lattice of regular maps generated by the inputs
  suite [lattice files...]             property suite over all modules
  fixtures list                        built-in fixtures
  fixtures dump <id>                   payload of one fixture
Exit codes: 0 pass, 1 property failure, 2 input error.)";

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

Ortholattice load_lattice(const Json& body)
{
    try {
        return lattice_from_json(body);
    } catch (const LatticeError& e) {
        LatticeSpec s = lattice_spec_from_json(body);
        Json witness = Json::array();
        for (Elem w : e.witness())
            witness.push_back(w >= 0 && w < static_cast<int>(s.names.size()) ? Json(s.names[w]) : Json(w));
        print(Json{{"valid", false}, {"axiom", e.axiom()}, {"witness", witness}});
        std::cerr << "lattice axiom violated: " << e.what() << "\n";
        throw Exit{e.axiom() == "bad-shape" || e.axiom() == "too-large" ? kInputError : kFail};
    }
}

Ortholattice load_lattice_file(const std::string& path) { return load_lattice(read_json_file(path)); }

void emit_lattice(const Ortholattice& L, const std::string& format, Json extra = Json::object())
{
    if (format == "dot") {
        std::cout << emit_dot(L);
        return;
    }
    extra["lattice"] = lattice_to_json(L);
    print(extra);
}

Element support_of(const Json& j) { return range_projection(element_from_json(j)); }

std::vector<Element> elements_of(const Json& j)
{
    std::vector<Element> out;
    if (j.is_object() && j.contains("elements")) {
        for (const Json& e : j["elements"]) out.push_back(element_from_json(e));
    } else {
        out.push_back(element_from_json(j));
    }
    if (out.empty()) throw IoError("parse-error", "no elements given");
    return out;
}

Json suite_and_exit_code(const SuiteConfig& cfg, int& code)
{
    SuiteReport r = run_suite(cfg);
    code = r.ok() ? kPass : kFail;
    return suite_report_json(r);
}

Json describe_cells(const CellFunction& f, const std::vector<bool>& mask)
{
    Json out = Json::array();
    for (int c = 0; c < f.cell_count(); ++c)
        if (mask[c]) out.push_back(f.complex.describe(c));
    return out;
}

Json dims_json(const CellFunction& f) { return f.dims(); }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ortho-lab: finite ortholattices, block matrix annihilators and piecewise projection maps"};
    app.footer(kCommandList);
    app.require_subcommand(1);

    std::string file, ideal_file, format = "json", fixture_id, config_file, modules;
    std::vector<std::string> files;
    std::uint64_t seed = 1;
    int count = 100, depth = kDefaultDepth, cap = 64;
    double tol = kIdentityTol, eps = 0.1;

    auto add_format = [&](CLI::App* c) {
        c->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot"}));
    };
    auto add_suite_flags = [&](CLI::App* c) {
        c->add_option("--seed", seed, "Random seed");
        c->add_option("--count", count, "Random instances per property")->check(CLI::Range(0, 1000000));
        c->add_option("--tol", tol, "Tolerance for numeric identities")->check(CLI::PositiveNumber);
    };

    auto* lattice = app.add_subcommand("lattice", "Ortholattice commands");
    lattice->require_subcommand(1);
    auto* l_check = lattice->add_subcommand("check", "Validate the ortholattice axioms");
    l_check->add_option("file", file, "Lattice JSON")->required();
    add_format(l_check);
    auto* l_classify = lattice->add_subcommand("classify", "Classify a lattice");
    l_classify->add_option("file", file, "Lattice JSON")->required();
    auto* l_decompose = lattice->add_subcommand("decompose", "Type decomposition report");
    l_decompose->add_option("file", file, "Lattice JSON")->required();
    l_decompose->add_option("--ideal", ideal_file, "Ideal JSON {members: [names]}");
    l_decompose->add_option("--depth", depth, "Family size for the type ideal check")->check(CLI::Range(2, 6));
    auto* l_complete = lattice->add_subcommand("complete", "Cut completion of a preorthogonality");
    l_complete->add_option("file", file, "Preorthogonality JSON {m, rel}")->required();
    add_format(l_complete);

    auto* alg = app.add_subcommand("alg", "Block matrix algebra commands");
    alg->require_subcommand(1);
    auto* a_ann = alg->add_subcommand("annihilators", "Annihilator data of an element");
    a_ann->add_option("file", file, "Element JSON")->required();
    auto* a_sep = alg->add_subcommand("septhm", "Separate B from C");
    a_sep->add_option("file", file, "JSON {B: element, C: element}")->required();
    a_sep->add_option("--eps", eps, "Separation tolerance")->check(CLI::Range(1e-6, 1.0));
    auto* a_lat = alg->add_subcommand("lattice", "Generated annihilator lattice");
    a_lat->add_option("file", file, "Element JSON or {elements: [...]}")->required();
    a_lat->add_option("--cap", cap, "Largest lattice to generate")->check(CLI::Range(2, 64));
    add_format(a_lat);
    auto* a_suite = alg->add_subcommand("suite", "Matrix-algebra property suite");
    add_suite_flags(a_suite);

    auto* cell = app.add_subcommand("cell", "Piecewise projection map commands");
    cell->require_subcommand(1);
    auto* c_an = cell->add_subcommand("analyze", "Semicontinuity and regularization");
    c_an->add_option("file", file, "Cell function JSON")->required();
    auto* c_lat = cell->add_subcommand("lattice", "Lattice of regular maps generated by the inputs");
    c_lat->add_option("files", files, "Cell function JSON files")->required();
    c_lat->add_option("--cap", cap, "Largest lattice to generate")->check(CLI::Range(2, 64));
    add_format(c_lat);

    auto* suite = app.add_subcommand("suite", "Property suite over all modules");
    suite->add_option("files", files, "Extra lattice JSON files to validate");
    add_suite_flags(suite);
    suite->add_option("--depth", depth, "Family size for type ideal and type relation checks")->check(CLI::Range(2, 6));
    suite->add_option("--modules", modules, "Comma-separated modules (lattice,typedecomp,matalg,cellfun,cli)");
    suite->add_option("--config", config_file, "Config JSON {seed, count, depth, tol, modules}");

    auto* fx = app.add_subcommand("fixtures", "Built-in fixtures");
    fx->require_subcommand(1);
    auto* fx_list = fx->add_subcommand("list", "List fixtures");
    auto* fx_dump = fx->add_subcommand("dump", "Dump one fixture");
    fx_dump->add_option("id", fixture_id, "Fixture id")->required();
    add_format(fx_dump);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kInputError;
    }

    try {
        if (l_check->parsed()) {
            Ortholattice L = load_lattice_file(file);
            emit_lattice(L, format, Json{{"valid", true}, {"size", L.size()}});
        } else if (l_classify->parsed()) {
            print(classification_report(load_lattice_file(file)));
        } else if (l_decompose->parsed()) {
            Ortholattice L = load_lattice_file(file);
            if (!ideal_file.empty()) {
                ElemSet T = element_set_from_json(L, read_json_file(ideal_file));
                Json r = ideal_report(L, T, depth);
                print(r);
                if (!r["type_ideal"]["holds"].get<bool>()) return kFail;
            } else {
                Json classes = Json::object();
                for (TypeClass cls : {TypeClass::D, TypeClass::M, TypeClass::O, TypeClass::EQ})
                    classes[type_class_name(cls)] = ideal_report(L, type_class_ideal(L, cls, TypeMode::Full), depth);
                print(Json{{"type_profile", decomposition_report(L, type_profile(L))}, {"classes", classes}});
            }
        } else if (l_complete->parsed()) {
            Json j = read_json_file(file);
            if (!j.is_object() || !j.contains("m") || !j.contains("rel"))
                throw IoError("parse-error", "expected {m, rel}");
            PreorthogonalitySpec spec;
            try {
                spec.m = j["m"].get<int>();
                spec.rel = j["rel"].get<std::vector<std::vector<int>>>();
            } catch (const Json::exception& e) {
                throw IoError("parse-error", e.what());
            }
            Completion c = complete_by_cuts(spec);
            Json emb = Json::array();
            for (Elem e : c.embedding) emb.push_back(c.lattice.name(e));
            emit_lattice(c.lattice, format, Json{{"embedding", emb}});
        } else if (a_ann->parsed()) {
            Element a = element_from_json(read_json_file(file));
            auto [left, right] = biannihilator(a);
            Json spec = Json::array();
            if (a.hermitian_defect() <= 1e-10)
                for (double v : eig_hermitian(a).values) spec.push_back(v);
            print(Json{{"rank", rank_vector(range_projection(a))},
                       {"annihilator", element_to_json(annihilator({a}).support)},
                       {"biannihilator", element_to_json(left.support)},
                       {"adjoint_biannihilator", element_to_json(right.support)},
                       {"spectrum", a.hermitian_defect() <= 1e-10 ? spec : Json(nullptr)}});
        } else if (a_sep->parsed()) {
            Json j = read_json_file(file);
            if (!j.is_object() || !j.contains("B") || !j.contains("C"))
                throw IoError("parse-error", "expected {B, C}");
            Annihilator B = corner(support_of(j["B"])), C = corner(support_of(j["C"]));
            auto result_json = [](const SeparationResult& r) {
                return Json{{"ok", r.ok},      {"lambda", r.lambda}, {"mu", r.mu}, {"delta", r.delta},
                            {"bd", r.bd},      {"cd_sq", r.cd_sq},   {"D", element_to_json(r.D.support)}};
            };
            SeparationResult s = separate(B, C, eps);
            Json out{{"eps", eps}, {"separate", result_json(s)}};
            bool ok = s.ok;
            if (proj_leq(B.support, C.support) && !same_projection(B.support, C.support)) {
                SeparationResult es = epsilon_separate(B, C, eps);
                out["epsilon_separate"] = result_json(es);
                ok = ok && es.ok;
            }
            print(out);
            if (!ok) return kFail;
        } else if (a_lat->parsed()) {
            std::vector<Annihilator> gens;
            for (const Element& e : elements_of(read_json_file(file))) gens.push_back(corner(range_projection(e)));
            AnnihilatorLattice g = generate_annihilator_lattice(gens, cap);
            emit_lattice(g.lattice, format, Json{{"classification", classification_report(g.lattice)}});
        } else if (a_suite->parsed()) {
            SuiteConfig cfg;
            cfg.seed = seed;
            cfg.count = count;
            cfg.tol = tol;
            cfg.modules = {"matalg"};
            int code = kPass;
            print(suite_and_exit_code(cfg, code));
            return code;
        } else if (c_an->parsed()) {
            CellFunction f = cellfun_from_json(read_json_file(file));
            Semicontinuity s = semicontinuity(f);
            Json out{{"cells", f.cell_count()}, {"dims", dims_json(f)}, {"projection_valued", f.is_projection_valued()}};
            out["lsc"] = s.lsc;
            out["usc"] = s.usc;
            out["continuity"] = describe_cells(f, s.continuity);
            out["open_dense_continuity"] = s.open_dense;
            if (f.is_projection_valued()) {
                out["regular"] = is_regular(f);
                out["interior"] = cellfun_to_json(interior(f));
                out["closure"] = cellfun_to_json(closure(f));
                out["regularization"] = cellfun_to_json(regularize(f));
            }
            print(out);
        } else if (c_lat->parsed()) {
            std::vector<CellFunction> gens;
            for (const std::string& path : files) gens.push_back(regularize(cellfun_from_json(read_json_file(path))));
            CellLattice cl = export_lattice(gens, cap);
            emit_lattice(cl.lattice, format, Json{{"classification", classification_report(cl.lattice)}});
        } else if (suite->parsed()) {
            SuiteConfig cfg;
            if (!config_file.empty()) {
                Json j;
                try {
                    j = read_json_file(config_file);
                } catch (const IoError& e) {
                    throw IoError("config-parse-error", e.what());
                }
                cfg = parse_suite_config(j);
            }
            if (suite->count("--seed")) cfg.seed = seed;
            if (suite->count("--count")) cfg.count = count;
            if (suite->count("--depth")) cfg.depth = depth;
            if (suite->count("--tol")) cfg.tol = tol;
            if (suite->count("--modules")) {
                Json mods = Json::array();
                std::size_t start = 0;
                while (start <= modules.size()) {
                    std::size_t end = modules.find(',', start);
                    if (end == std::string::npos) end = modules.size();
                    mods.push_back(modules.substr(start, end - start));
                    start = end + 1;
                }
                cfg.modules = parse_suite_config(Json{{"modules", mods}}).modules;
            }
            for (const std::string& path : files) cfg.lattices.emplace_back(path, read_json_file(path));
            int code = kPass;
            print(suite_and_exit_code(cfg, code));
            return code;
        } else if (fx_list->parsed()) {
            Json out = Json::array();
            for (const Fixture& f : fixtures())
                out.push_back(Json{{"id", f.id}, {"kind", fixture_kind_name(f.kind)}, {"provenance", f.provenance}});
            print(out);
        } else if (fx_dump->parsed()) {
            const Fixture* f = find_fixture(fixture_id);
            if (!f) throw IoError("parse-error", "unknown fixture '" + fixture_id + "'");
            if (format == "dot") {
                if (f->kind != FixtureKind::Lattice) throw IoError("parse-error", "DOT output needs a lattice fixture");
                std::cout << emit_dot(lattice_from_json(f->payload));
            } else {
                print(Json{{"id", f->id},
                           {"kind", fixture_kind_name(f->kind)},
                           {"provenance", f->provenance},
                           {"payload", f->payload}});
            }
        }
    } catch (const Exit& e) {
        return e.code;
    } catch (const IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const LatticeError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const TypeError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kInputError;
    } catch (const MatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const CellError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
    return kPass;
}
