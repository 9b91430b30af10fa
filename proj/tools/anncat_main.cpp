#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anncat/annfunctor.hpp"
#include "anncat/errors.hpp"
#include "anncat/hochschild.hpp"
#include "anncat/json_io.hpp"
#include "anncat/maclane.hpp"
#include "anncat/presets.hpp"

namespace {

using anncat::Json;

[[noreturn]] void ill(const std::string& detail) {
    throw anncat::ValidationError("IllFormedInput", detail);
}

struct Options {
    std::string file;
    std::string ring;
    std::string bimodule;
    std::string theory;
    int degree = 0;
    bool verify = false;
    bool strong = false;
};

Json load_document(const Options& opt) {
    if (opt.file.empty()) return Json::object();
    std::ifstream in(opt.file);
    if (!in) ill("cannot open problem file " + opt.file);
    Json doc = Json::parse(in);
    if (!doc.is_object()) ill("problem file must hold a JSON object");
    return doc;
}

const Json& require_field(const Json& doc, const char* key,
                          const std::string& hint) {
    if (!doc.contains(key))
        ill("missing \"" + std::string(key) + "\" (" + hint + ")");
    return doc.at(key);
}

Json new_report() {
    Json conventions;
    conventions["normalized_cochains"] = true;
    conventions["z3_relations"] = "M1-M10 verbatim";
    Json rep;
    rep["conventions"] = conventions;
    return rep;
}

int emit(const Json& rep, int code) {
    std::cout << rep.dump(2) << "\n";
    return code;
}

anncat::FiniteRing resolve_ring(const Json& doc, const Options& opt) {
    if (doc.contains("ring")) return anncat::ring_from_json(doc.at("ring"));
    if (!opt.ring.empty()) return anncat::ring_preset(opt.ring);
    ill("no ring given (problem file \"ring\" or --ring)");
}

anncat::FiniteBimodule resolve_bimodule(const anncat::FiniteRing& r,
                                        const Json& doc, const Options& opt) {
    if (doc.contains("bimodule"))
        return anncat::bimodule_from_json(r, doc.at("bimodule"));
    if (!opt.bimodule.empty()) return anncat::bimodule_preset(r, opt.bimodule);
    ill("no bimodule given (problem file \"bimodule\" or --bimodule)");
}

anncat::ReducedAnnCategory resolve_category(const Json& doc, const char* key,
                                            const Options& opt) {
    Json c = doc.contains(key) ? doc.at(key) : Json::object();
    if (!c.is_object()) ill(std::string(key) + " must be an object");
    anncat::FiniteRing r = c.contains("ring")
                               ? anncat::ring_from_json(c.at("ring"))
                               : resolve_ring(doc, opt);
    anncat::FiniteBimodule m =
        c.contains("bimodule") ? anncat::bimodule_from_json(r, c.at("bimodule"))
                               : resolve_bimodule(r, doc, opt);
    anncat::Cochain3 h = c.contains("h")
                             ? anncat::cochain3_from_json(r, m, c.at("h"))
                             : anncat::zero_cochain3(r, m);
    return anncat::make_reduced_category(std::move(r), std::move(m),
                                         std::move(h));
}

// Source, target, the ring map between them, and the target coefficients
// viewed over the source ring (the carrier of witnesses and obstructions).
struct FunctorSetup {
    anncat::ReducedAnnCategory src, tgt;
    anncat::RingHom p;
    anncat::FiniteBimodule mt;
};

FunctorSetup resolve_setup(const Json& doc, const Options& opt) {
    FunctorSetup s{resolve_category(doc, "source", opt),
                   resolve_category(doc, "target", opt),
                   {},
                   {}};
    s.p = anncat::hom_from_json(s.src.r, s.tgt.r,
                                doc.contains("p") ? doc.at("p") : Json("id"));
    s.mt = anncat::transported_module(s.src, s.tgt, s.p);
    return s;
}

anncat::EquivariantMap resolve_q(const FunctorSetup& s, const Json& doc) {
    return anncat::equivariant_from_json(
        s.src.r, s.src.m, s.tgt.m, s.p,
        doc.contains("q") ? doc.at("q") : Json("id"));
}

std::vector<int> unrank(int n, int arity, std::size_t idx) {
    std::vector<int> t(arity);
    for (int i = arity; i-- > 0;) {
        t[i] = static_cast<int>(idx % n);
        idx /= n;
    }
    return t;
}

Json failures_json(const anncat::CheckReport& rep) {
    Json a = Json::array();
    for (const anncat::CheckFailure& f : rep.failures) {
        Json e;
        e["relation"] = f.relation;
        e["witness"] = f.witness;
        a.push_back(e);
    }
    return a;
}

// First nonzero entry per component of a degree-3 value, labeled like the
// functor-structure checks.
anncat::CheckReport component_failures(const anncat::FiniteRing& r,
                                       const anncat::Cochain3& d) {
    anncat::CheckReport rep;
    auto scan = [&](const char* name, const std::vector<int>& tab, int arity) {
        for (std::size_t i = 0; i < tab.size(); ++i)
            if (tab[i] != 0) {
                rep.failures.push_back({name, unrank(r.n, arity, i)});
                return;
            }
    };
    scan("sigma", d.sigma, 4);
    scan("alpha", d.alpha, 3);
    scan("lambda", d.lambda, 3);
    scan("rho", d.rho, 3);
    return rep;
}

anncat::CheckReport pair_failures(const anncat::FiniteRing& r,
                                  const anncat::Cochain2& d) {
    anncat::CheckReport rep;
    auto scan = [&](const char* name, const std::vector<int>& tab) {
        for (std::size_t i = 0; i < tab.size(); ++i)
            if (tab[i] != 0) {
                rep.failures.push_back({name, unrank(r.n, 2, i)});
                return;
            }
    };
    scan("mu", d.mu);
    scan("nu", d.nu);
    return rep;
}

anncat::CheckReport hoch_failures(const anncat::FiniteRing& r,
                                  const anncat::HochCochain& df) {
    anncat::CheckReport rep;
    for (std::size_t i = 0; i < df.f.size(); ++i)
        if (df.f[i] != 0) {
            rep.failures.push_back({"delta", unrank(r.n, df.degree, i)});
            break;
        }
    return rep;
}

int run_check_cocycle(const Options& opt, const Json& doc) {
    anncat::FiniteRing r = resolve_ring(doc, opt);
    anncat::FiniteBimodule m = resolve_bimodule(r, doc, opt);
    const Json& cj =
        require_field(doc, "cochain", "the table to test, keyed by shape");
    if (!cj.is_object()) ill("cochain must be an object");
    anncat::CheckReport failures;
    if (cj.contains("sigma")) {
        failures = anncat::is_z3(r, m, anncat::cochain3_from_json(r, m, cj));
    } else if (cj.contains("mu")) {
        anncat::Cochain2 g = anncat::cochain2_from_json(r, m, cj);
        failures = component_failures(r, anncat::d2(r, m, g));
    } else if (cj.contains("u")) {
        anncat::Cochain1 u = anncat::cochain1_from_json(r, m, cj);
        failures = pair_failures(r, anncat::d1(r, m, u));
    } else if (cj.contains("degree")) {
        anncat::HochCochain f = anncat::hoch_from_json(r, m, cj);
        if (f.degree == 3)
            failures = anncat::is_z3(r, m, anncat::embed_to_maclane(r, m, f));
        else
            failures = hoch_failures(r, anncat::hoch_d(r, m, f));
    } else {
        ill("cochain object matches no known shape "
            "(sigma/alpha/lambda/rho, mu/nu, u, or degree/f)");
    }
    Json rep = new_report();
    rep["cocycle"] = failures.ok();
    rep["failures"] = failures_json(failures);
    return emit(rep, failures.ok() ? 0 : 1);
}

int run_cohomology(const Options& opt, const Json& doc) {
    if (opt.theory != "maclane" && opt.theory != "hochschild")
        ill("--theory must be maclane or hochschild");
    if (opt.degree != 2 && opt.degree != 3) ill("--degree must be 2 or 3");
    anncat::FiniteRing r = resolve_ring(doc, opt);
    anncat::FiniteBimodule m = resolve_bimodule(r, doc, opt);
    anncat::AbelianGroup group =
        opt.theory == "maclane"
            ? anncat::cohomology_group(r, m, opt.degree).group
            : anncat::hoch_cohomology_group(r, m, opt.degree).group;
    Json rep = new_report();
    rep["invariant_factors"] = anncat::group_to_json(group)["invariant_factors"];
    return emit(rep, 0);
}

int run_obstruction(const Options& opt, const Json& doc) {
    FunctorSetup s = resolve_setup(doc, opt);
    anncat::EquivariantMap q = resolve_q(s, doc);
    anncat::Cochain3 k = anncat::obstruction(s.p, q, s.src, s.tgt);
    Json rep = new_report();
    rep["obstruction"] = anncat::cochain3_to_json(s.src.r, s.mt, k);
    rep["zero"] = (k == anncat::zero_cochain3(s.src.r, s.mt));
    return emit(rep, 0);
}

int run_exists(const Options& opt, const Json& doc) {
    FunctorSetup s = resolve_setup(doc, opt);
    anncat::EquivariantMap q = resolve_q(s, doc);
    Json rep = new_report();
    if (opt.verify) {
        const Json& wj =
            require_field(doc, "witness", "the structure pair to check");
        anncat::AnnFunctorStructure f{
            s.p, q, anncat::cochain2_from_json(s.src.r, s.mt, wj)};
        anncat::CheckReport check = anncat::is_functor(f, s.src, s.tgt);
        rep["verified"] = check.ok();
        rep["failures"] = failures_json(check);
        return emit(rep, check.ok() ? 0 : 1);
    }
    std::optional<anncat::AnnFunctorStructure> f =
        anncat::functor_exists(s.p, q, s.src, s.tgt);
    rep["exists"] = f.has_value();
    rep["witness"] =
        f ? anncat::cochain2_to_json(s.src.r, s.mt, f->g) : Json(nullptr);
    return emit(rep, f ? 0 : 1);
}

int run_classify(const Options& opt, const Json& doc) {
    FunctorSetup s = resolve_setup(doc, opt);
    anncat::EquivariantMap q = resolve_q(s, doc);
    std::vector<anncat::AnnFunctorStructure> reps =
        anncat::classify_functors(s.p, q, s.src, s.tgt);
    Json rep = new_report();
    rep["count"] = static_cast<int>(reps.size());
    Json arr = Json::array();
    for (const anncat::AnnFunctorStructure& f : reps)
        arr.push_back(anncat::cochain2_to_json(s.src.r, s.mt, f.g));
    rep["representatives"] = arr;
    return emit(rep, reps.empty() ? 1 : 0);
}

int run_aut(const Options& opt, const Json& doc) {
    FunctorSetup s = resolve_setup(doc, opt);
    anncat::EquivariantMap q = resolve_q(s, doc);
    anncat::AnnFunctorStructure f{s.p, q,
                                  anncat::zero_cochain2(s.src.r, s.mt)};
    Json rep = new_report();
    Json arr = Json::array();
    if (opt.strong) {
        auto [group, gens] = anncat::strong_aut(f, s.src, s.tgt);
        rep["invariant_factors"] =
            anncat::group_to_json(group)["invariant_factors"];
        for (const anncat::HochCochain& g : gens)
            arr.push_back(anncat::hoch_to_json(s.src.r, s.mt, g));
    } else {
        auto [group, gens] = anncat::aut_group(f, s.src, s.tgt);
        rep["invariant_factors"] =
            anncat::group_to_json(group)["invariant_factors"];
        for (const anncat::Cochain1& g : gens)
            arr.push_back(anncat::cochain1_to_json(s.src.r, s.mt, g));
    }
    rep["generators"] = arr;
    return emit(rep, 0);
}

int run_strong_exists(const Options& opt, const Json& doc) {
    FunctorSetup s = resolve_setup(doc, opt);
    anncat::StrongReport sr = anncat::strong_functor_exists(s.p, s.src, s.tgt);
    Json rep = new_report();
    if (opt.verify) {
        const Json& wj =
            require_field(doc, "witness", "the bi-additive table to check");
        anncat::HochCochain w = anncat::hoch_from_json(s.src.r, s.mt, wj);
        if (w.degree != 2) ill("a strong witness must have degree 2");
        bool ok = sr.sigma_star_zero && sr.alpha_multilinear;
        if (ok) {
            anncat::Cochain3 hstar = anncat::pullback(s.p, s.tgt.h);
            anncat::HochCochain alpha_star =
                anncat::make_hoch_cochain(s.src.r, s.mt, 3, hstar.alpha);
            ok = (anncat::hoch_d(s.src.r, s.mt, w) == alpha_star);
        }
        rep["verified"] = ok;
        return emit(rep, ok ? 0 : 1);
    }
    rep["sigma_star_zero"] = sr.sigma_star_zero;
    rep["alpha_multilinear"] = sr.alpha_multilinear;
    rep["hochschild_class_zero"] = sr.hochschild_class_zero;
    rep["exists"] = sr.exists;
    rep["witness"] = sr.witness
                         ? anncat::hoch_to_json(s.src.r, s.mt, *sr.witness)
                         : Json(nullptr);
    return emit(rep, sr.exists ? 0 : 1);
}

int run_strong_classify(const Options& opt, const Json& doc) {
    FunctorSetup s = resolve_setup(doc, opt);
    std::vector<anncat::HochCochain> reps =
        anncat::strong_classify(s.p, s.src, s.tgt);
    Json rep = new_report();
    rep["count"] = static_cast<int>(reps.size());
    Json arr = Json::array();
    for (const anncat::HochCochain& w : reps)
        arr.push_back(anncat::hoch_to_json(s.src.r, s.mt, w));
    rep["representatives"] = arr;
    return emit(rep, reps.empty() ? 1 : 0);
}

int run_sigma_from_structure(const Options& opt, const Json& doc) {
    anncat::FiniteRing r = resolve_ring(doc, opt);
    anncat::FiniteBimodule m = resolve_bimodule(r, doc, opt);
    std::vector<int> xi = anncat::value_table_from_json(
        r, m, require_field(doc, "xi", "a three-argument value table"), 3,
        "xi");
    std::vector<int> eta = anncat::value_table_from_json(
        r, m, require_field(doc, "eta", "a two-argument value table"), 2,
        "eta");
    anncat::StructurePair sp =
        anncat::make_structure_pair(r, m, std::move(xi), std::move(eta));
    Json rep = new_report();
    rep["sigma"] = anncat::value_table_to_json(
        r, m, anncat::build_sigma_from_structure(r, m, sp), 4);
    return emit(rep, 0);
}

} // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    CLI::App app{"Exact Mac Lane and Hochschild cohomology over finite rings, "
                 "with functor existence and classification"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", opt.file, "JSON problem file");
        cmd->add_option("--ring", opt.ring,
                        "ring preset (Z2, Z3, Z4, Z6, Z2xZ2)");
        cmd->add_option("--bimodule", opt.bimodule,
                        "bimodule preset (regular, trivial, Z<m>)");
        return cmd;
    };

    CLI::App* c_check = add_common(app.add_subcommand(
        "check-cocycle", "test a cochain against its cocycle conditions"));
    CLI::App* c_cohom = add_common(app.add_subcommand(
        "cohomology", "invariant factors of a cohomology group"));
    c_cohom->add_option("--theory", opt.theory, "maclane or hochschild")
        ->required();
    c_cohom->add_option("--degree", opt.degree, "2 or 3")->required();
    CLI::App* c_obstr = add_common(app.add_subcommand(
        "obstruction", "degree-3 obstruction of a functor type"));
    CLI::App* c_exists = add_common(app.add_subcommand(
        "exists", "decide functor existence for a type (p, q)"));
    c_exists->add_flag("--verify", opt.verify,
                       "check a provided witness instead of solving");
    CLI::App* c_classify = add_common(app.add_subcommand(
        "classify", "one structure pair per congruence class"));
    CLI::App* c_aut = add_common(
        app.add_subcommand("aut", "automorphism group of a functor type"));
    c_aut->add_flag("--strong", opt.strong, "multilinear variant");
    CLI::App* c_sexists = add_common(app.add_subcommand(
        "strong-exists", "decide strong functor existence for a ring map p"));
    c_sexists->add_flag("--verify", opt.verify,
                        "check a provided witness instead of solving");
    CLI::App* c_sclassify = add_common(app.add_subcommand(
        "strong-classify", "one bi-additive table per strong class"));
    CLI::App* c_sigma = add_common(app.add_subcommand(
        "sigma-from-structure",
        "alternation defect of a raw structure pair"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
            return app.exit(e);
        std::cerr << e.get_name() << ": " << e.what() << "\n";
        return 2;
    }

    try {
        Json doc = load_document(opt);
        if (app.got_subcommand(c_check)) return run_check_cocycle(opt, doc);
        if (app.got_subcommand(c_cohom)) return run_cohomology(opt, doc);
        if (app.got_subcommand(c_obstr)) return run_obstruction(opt, doc);
        if (app.got_subcommand(c_exists)) return run_exists(opt, doc);
        if (app.got_subcommand(c_classify)) return run_classify(opt, doc);
        if (app.got_subcommand(c_aut)) return run_aut(opt, doc);
        if (app.got_subcommand(c_sexists)) return run_strong_exists(opt, doc);
        if (app.got_subcommand(c_sclassify))
            return run_strong_classify(opt, doc);
        if (app.got_subcommand(c_sigma))
            return run_sigma_from_structure(opt, doc);
        return 2;
    } catch (const anncat::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "IllFormedInput: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "InternalError: " << e.what() << "\n";
        return 2;
    }
}
