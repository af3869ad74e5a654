// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Exit status: 0 all checks passed, 1 a mathematical
// check failed, 2 usage or input error.

#include <hopfrep/acceptance.hpp>
#include <hopfrep/catalog.hpp>
#include <hopfrep/fusion.hpp>
#include <hopfrep/io.hpp>
#include <hopfrep/module.hpp>
#include <hopfrep/presentation.hpp>
#include <hopfrep/structure.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace hopfrep;
using hopfrep::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool json_out = false;

    Options options() const { return Options{seed_given ? seed : resolve_seed(seed)}; }
};

int emit(const json& j, bool ok) {
    std::cout << dump(j);
    return ok ? kPass : kFail;
}

Module load(const std::string& path) {
    json j;
    try {
        j = read_json_file(path);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    return module_from_json(j);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw UsageError("cannot write " + p.string());
    out << text;
}

// "a=-2..2" gives the nonzero integers in the range; otherwise a comma list
// of scalars, with an optional "a=" prefix.
std::vector<Scalar> parse_grid(std::string text) {
    if (auto eq = text.find('='); eq != std::string::npos) text = text.substr(eq + 1);
    std::vector<Scalar> out;
    if (auto dots = text.find(".."); dots != std::string::npos) {
        long lo = 0, hi = 0;
        try {
            lo = std::stol(text.substr(0, dots));
            hi = std::stol(text.substr(dots + 2));
        } catch (...) {
            throw UsageError("bad grid range " + text);
        }
        for (long v = lo; v <= hi; ++v)
            if (v != 0) out.emplace_back(v);
    } else {
        std::stringstream ss(text);
        for (std::string item; std::getline(ss, item, ',');) {
            Scalar s = Scalar::parse(item);
            if (s.is_zero()) throw UsageError("grid values must be nonzero");
            out.push_back(s);
        }
    }
    if (out.empty()) throw UsageError("empty grid");
    return out;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

json tags_json(const std::vector<FamilyTag>& tags) {
    json a = json::array();
    for (auto& t : tags) a.push_back(t.str());
    return a;
}

json certificate_json(const Certificate& c) {
    json j;
    j["ok"] = c.ok;
    json v = json::array();
    for (auto& x : c.violations) v.push_back({{"relation", x.relation}, {"residual", to_json(x.residual)}});
    j["violations"] = v;
    j["block_constraints"] = c.block_constraints;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

// ---------------------------------------------------------------- alg

int alg_identities(const Config& cfg, const std::string& name, int n_max, const std::string& file) {
    Presentation P = build_presentation(name);
    std::vector<IdentityResult> res = identity_suite(P, n_max, default_identity_params());
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw UsageError("cannot open " + file);
        for (std::string line; std::getline(in, line);)
            if (auto r = verify_identity_line(P, line)) res.push_back(*r);
    }
    std::size_t good = 0;
    json fails = json::array();
    for (auto& r : res) {
        if (r.ok) ++good;
        else fails.push_back({{"label", r.label}, {"residual", P.str(r.residual)}});
    }
    if (cfg.json_out)
        return emit({{"algebra", name}, {"n_max", n_max}, {"checked", res.size()}, {"passed", good}, {"failures", fails}},
                    fails.empty());
    for (auto& f : fails) std::cout << "FAIL " << f["label"].get<std::string>() << ": " << f["residual"].get<std::string>() << "\n";
    std::cout << name << ": " << good << "/" << res.size() << " identities reduce to 0\n";
    return fails.empty() ? kPass : kFail;
}

int alg_hopf_axioms(const Config& cfg, const std::string& name) {
    Presentation P = build_presentation(name);
    auto checks = check_hopf_axioms(P);
    std::size_t good = 0;
    json fails = json::array();
    for (auto& c : checks) {
        if (c.ok) ++good;
        else fails.push_back({{"axiom", c.axiom}, {"element", c.element}});
    }
    if (cfg.json_out) return emit({{"algebra", name}, {"checked", checks.size()}, {"passed", good}, {"failures", fails}}, fails.empty());
    for (auto& f : fails)
        std::cout << "FAIL " << f["axiom"].get<std::string>() << " on " << f["element"].get<std::string>() << "\n";
    std::cout << name << ": " << good << "/" << checks.size() << " Hopf axiom checks hold\n";
    return fails.empty() ? kPass : kFail;
}

// ---------------------------------------------------------------- mod

int mod_new(const std::string& tag, const std::string& file, long ext) {
    if (tag.empty() == file.empty()) throw UsageError("mod new takes exactly one of --tag and --file");
    Module V;
    if (!tag.empty()) {
        std::optional<FieldDesc> f;
        if (ext) f = make_field(ext);
        V = make(parse_tag(tag), f);
    } else {
        V = load(file);
        if (ext) V = with_field(V, make_field(ext));
    }
    return emit(to_json(V), true);
}

int mod_verify(const std::string& file) {
    json j;
    try {
        j = read_json_file(file);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    try {
        Module V = module_from_json(j);
        return emit(certificate_json(certify(V)), true);
    } catch (const CertificationError& e) {
        return emit(certificate_json(e.cert), false);
    }
}

int mod_decompose(const Config& cfg, const std::string& file) {
    Module V = load(file);
    Options opt = cfg.options();
    DecompositionReport d = decompose(V, opt);
    json j = to_json(d);
    json tags = json::array(), parts = json::array();
    for (auto& p : d.parts) {
        tags.push_back(classify_indecomposable(p.module, opt).str());
        parts.push_back(to_json(p.module));
    }
    j["summands"] = tags;
    j["parts"] = parts;
    j["dims"] = d.dims();
    return emit(j, d.certified);
}

int mod_classify(const Config& cfg, const std::string& file) {
    Module V = load(file);
    Options opt = cfg.options();
    std::vector<FamilyTag> tags;
    for (auto& p : decompose(V, opt).parts) tags.push_back(classify_indecomposable(p.module, opt));
    json arr = json::array();
    bool all = true;
    for (auto& t : tags) {
        arr.push_back(to_json(t));
        all = all && !t.unclassified();
    }
    return emit({{"summands", arr}, {"classified", all}}, true);
}

int mod_hom(const std::string& a, const std::string& b) {
    Module V = load(a), W = load(b);
    require_same_category(V, W, "hom");
    HomSpace H = hom_space(V, W);
    json basis = json::array();
    for (auto& m : H.basis) basis.push_back(to_json(m));
    return emit({{"dim", H.dim()}, {"basis", basis}}, true);
}

int mod_ext1(const std::string& a, const std::string& b) {
    Module V = load(a), W = load(b);
    ExtResult e = ext1(V, W);
    json reps = json::array();
    for (auto& m : e.representatives) reps.push_back(to_json(m));
    return emit({{"dim", e.dim}, {"cocycles", e.cocycles}, {"coboundaries", e.coboundaries}, {"representatives", reps}},
                true);
}

int mod_homology(const Config& cfg, const std::string& file) {
    Module V = load(file);
    Homology h = x1_homology(V);
    Options opt = cfg.options();
    auto part = [&](const Module& M) {
        json j = to_json(M);
        json tags = json::array();
        if (M.dim > 0)
            for (auto& p : decompose(M, opt).parts) tags.push_back(classify_indecomposable(p.module, opt).str());
        j["summands"] = tags;
        return j;
    };
    return emit({{"kernel", part(h.kg)}, {"image", part(h.ig)}, {"homology", part(h.hg)}}, true);
}

// ---------------------------------------------------------------- fusion

int fusion_table(const Config& cfg, const std::string& grid_text, const std::string& out_dir) {
    std::vector<Scalar> grid = parse_grid(grid_text);
    Options opt = cfg.options();
    auto cells = verify_fusion_table(grid, opt);
    bool ok = true;
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_cell;
    std::map<std::string, std::string> sample;
    json jcells = json::array();
    for (auto& c : cells) {
        ok = ok && c.ok;
        auto& [good, total] = per_cell[c.cell];
        ++total;
        if (c.ok) ++good;
        if (!sample.count(c.cell) || !c.ok) sample[c.cell] = (c.instance.empty() ? "" : c.instance + ": ") + c.detail;
        jcells.push_back({{"cell", c.cell}, {"instance", c.instance}, {"ok", c.ok}, {"result", c.detail}});
    }
    std::ostringstream txt;
    std::size_t w = 0;
    for (auto& [cell, _] : per_cell) w = std::max(w, cell.size());
    for (auto& [cell, n] : per_cell)
        txt << std::left << std::setw(static_cast<int>(w)) << cell << "  " << std::setw(9)
            << (std::to_string(n.first) + "/" + std::to_string(n.second)) << "  " << sample[cell] << "\n";
    if (!out_dir.empty()) {
        FusionStore store(std::filesystem::path(out_dir) / "records");
        json records = json::array();
        auto members = family_members({"k", "U", "W"}, grid);
        for (auto& l : members)
            for (auto& r : members) {
                json rec = store.get(l, r, opt);
                json res = json::array();
                for (auto& t : rec["result"]) res.push_back(t["tag"]);
                records.push_back({{"left", l.str()}, {"right", r.str()}, {"result", res},
                                   {"record", FusionStore::key(l, r, opt.seed) + ".json"}});
            }
        json grid_j = json::array();
        for (auto& g : grid) grid_j.push_back(g.str());
        write_file(std::filesystem::path(out_dir) / "table.json",
                   dump({{"grid", grid_j}, {"seed", opt.seed}, {"ok", ok}, {"cells", jcells}, {"products", records}}));
        write_file(std::filesystem::path(out_dir) / "table.txt", txt.str());
    }
    if (cfg.json_out) return emit({{"ok", ok}, {"cells", jcells}}, ok);
    std::cout << txt.str();
    return ok ? kPass : kFail;
}

int fusion_verify_V(const Config& cfg, std::size_t n, std::size_t m) {
    if (m < 1 || n < 1) throw UsageError("--n and --m must be positive");
    VFormulaCheck c = verify_V_formula(n, m, cfg.options());
    return emit({{"n", n}, {"m", m}, {"dims", c.dims}, {"expected", c.expected}, {"unipotent", c.unipotent},
                 {"commutes", c.commutes}, {"ok", c.ok()}},
                c.ok());
}

int fusion_super_jordan(const Config& cfg) {
    bool ok = true;
    json items = json::array();
    for (auto& it : super_jordan_tensors(cfg.options())) {
        ok = ok && it.ok;
        items.push_back({{"label", it.label}, {"ok", it.ok}, {"detail", it.detail}});
    }
    return emit({{"ok", ok}, {"items", items}}, ok);
}

int fusion_closure(const Config& cfg, const std::string& families, const std::string& grid_text) {
    ClosureReport r = monoidal_closure(split_list(families), parse_grid(grid_text), cfg.options());
    // an escape is a finding about the families, not a failed check
    return emit({{"families", r.families}, {"pairs", r.pairs}, {"closed", r.closed()}, {"escapes", r.escapes}}, true);
}

// ---------------------------------------------------------------- suite

int suite_acceptance(const Config& cfg) {
    AcceptanceReport rep = run_acceptance(cfg.options(), &std::cerr);
    if (cfg.json_out) std::cout << dump(to_json(rep));
    else std::cout << rep.text();
    return rep.ok() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact representation theory of small Hopf algebras"};
    app.require_subcommand(1);
    Config cfg;
    auto* seed_opt = app.add_option("--seed", cfg.seed, "PRNG seed (default 0, or HOPFREP_SEED)");
    app.add_flag("--json", cfg.json_out, "JSON output where text is the default");

    std::function<int()> run;

    // alg
    auto* alg = app.add_subcommand("alg", "identities and Hopf axioms")->require_subcommand(1);
    std::string alg_name, id_file;
    int n_max = 8;
    auto* ids = alg->add_subcommand("identities", "reduce the identity suite to normal form");
    ids->add_option("algebra", alg_name)->required()->check(CLI::IsMember({"L", "H", "Hbar", "K"}));
    ids->add_option("--n-max", n_max)->check(CLI::Range(1, 64));
    ids->add_option("--file", id_file, "extra identities, one 'lhs == rhs' per line");
    ids->callback([&] { run = [&] { return alg_identities(cfg, alg_name, n_max, id_file); }; });
    auto* ax = alg->add_subcommand("hopf-axioms", "check coassociativity, counit and antipode");
    ax->add_option("algebra", alg_name)->required()->check(CLI::IsMember({"L", "H", "Hbar", "K"}));
    ax->callback([&] { run = [&] { return alg_hopf_axioms(cfg, alg_name); }; });

    // mod
    auto* mod = app.add_subcommand("mod", "module operations")->require_subcommand(1);
    std::string tag, f1, f2;
    long ext = 0;
    auto* mnew = mod->add_subcommand("new", "build a catalog module or re-emit a file");
    mnew->add_option("--tag", tag, "e.g. 'U(a=1,b=2)'");
    mnew->add_option("--file", f1);
    mnew->add_option("--ext", ext, "work over Q(sqrt d)");
    mnew->callback([&] { run = [&] { return mod_new(tag, f1, ext); }; });
    auto unary = [&](const char* name, const char* help, std::function<int()> body) {
        auto* c = mod->add_subcommand(name, help);
        c->add_option("file", f1)->required();
        c->callback([&run, body] { run = body; });
    };
    auto binary = [&](const char* name, const char* help, std::function<int()> body) {
        auto* c = mod->add_subcommand(name, help);
        c->add_option("first", f1)->required();
        c->add_option("second", f2)->required();
        c->callback([&run, body] { run = body; });
    };
    unary("verify", "certify the defining relations", [&] { return mod_verify(f1); });
    unary("dual", "dual module", [&] { return emit(to_json(dual(load(f1))), true); });
    unary("decompose", "Krull-Schmidt decomposition", [&] { return mod_decompose(cfg, f1); });
    unary("classify", "catalog tags of the summands", [&] { return mod_classify(cfg, f1); });
    unary("homology", "x1 homology of a K-module", [&] { return mod_homology(cfg, f1); });
    unary("restrict", "restrict a K-module to H", [&] { return emit(to_json(restrict_K_to_H(load(f1))), true); });
    unary("inflate", "inflate an L-module to K", [&] { return emit(to_json(inflate_L_to_K(load(f1))), true); });
    binary("tensor", "tensor product", [&] { return emit(to_json(tensor(load(f1), load(f2))), true); });
    binary("hom", "intertwiners from the first module to the second", [&] { return mod_hom(f1, f2); });
    binary("ext1", "extensions of the first module by the second", [&] { return mod_ext1(f1, f2); });

    // fusion
    auto* fus = app.add_subcommand("fusion", "tensor product sweeps")->require_subcommand(1);
    std::string grid_text = "1,-1,2,-2,1/2", out_dir, families = "k,U,W";
    std::size_t vn = 4, vm = 3;
    auto* table = fus->add_subcommand("table", "check the k/U/W fusion table");
    table->add_option("--grid", grid_text, "a=-2..2 or a comma list");
    table->add_option("--out", out_dir, "write table.json, table.txt and fusion records here");
    table->callback([&] { run = [&] { return fusion_table(cfg, grid_text, out_dir); }; });
    auto* vf = fus->add_subcommand("verify-V", "decompose V(n) x V(m)");
    vf->add_option("--n", vn);
    vf->add_option("--m", vm);
    vf->callback([&] { run = [&] { return fusion_verify_V(cfg, vn, vm); }; });
    fus->add_subcommand("super-jordan", "tensor products over K")->callback([&] {
        run = [&] { return fusion_super_jordan(cfg); };
    });
    auto* clo = fus->add_subcommand("closure", "which summands leave the given families");
    clo->add_option("--families", families);
    clo->add_option("--grid", grid_text);
    clo->callback([&] { run = [&] { return fusion_closure(cfg, families, grid_text); }; });

    // suite
    auto* suite = app.add_subcommand("suite", "test suites")->require_subcommand(1);
    suite->add_subcommand("acceptance", "run every acceptance criterion")->callback([&] {
        run = [&] { return suite_acceptance(cfg); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    cfg.seed_given = seed_opt->count() > 0;
    try {
        return run();
    } catch (const CertificationError& e) {
        std::cout << dump({{"error", e.what()}, {"certificate", certificate_json(e.cert)}});
        return kFail;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
