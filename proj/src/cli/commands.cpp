#include "gatlab/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gatlab/builtin.hpp"
#include "gatlab/io/print.hpp"
#include "gatlab/io/workspace.hpp"
#include "gatlab/search.hpp"
#include "gatlab/suite.hpp"

namespace gatlab::cli {

namespace {

namespace fs = std::filesystem;
using io::Report;
using Json = Report::Json;

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorKind::Usage, message); }

std::string normal(const std::string& path) { return io::resolve_path("", path); }

std::string theory_ref(const std::string& ref) { return ref == "Cat" || ref == "Cat_eq" ? ref : normal(ref); }

bool same_theory(const Theory& a, const Theory& b) { return &a == &b || io::print_theory(a) == io::print_theory(b); }

Json error_detail(const Error& e) { return Json{{"error", std::string(to_string(e.kind()))}, {"message", e.describe()}}; }

Tuple parse_tuple(const FiniteModel& m, const std::string& text) {
    Tuple out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        const std::string name = item.substr(b, e - b + 1);
        auto el = m.find_element(name);
        if (!el) usage("model " + m.name() + " has no element '" + name + "'");
        out.push_back(*el);
    }
    return out;
}

void check_file(Report& report, io::Workspace& ws, const std::string& path,
                const std::shared_ptr<const Theory>& theory) {
    const std::string name = "check " + path;
    const auto kind = io::kind_of(path);
    if (!kind) usage("cannot tell the kind of " + path + " from its extension");
    try {
        switch (*kind) {
        case io::FileKind::Theory: {
            const auto th = ws.theory(path);
            report.add_verdict(name, true,
                               Json{{"theory", th->name()},
                                    {"sorts", th->sorts().size()},
                                    {"ops", th->ops().size()},
                                    {"equations", th->equations().size()}});
            break;
        }
        case io::FileKind::Formula: {
            const auto f = ws.formulas(path, theory);
            report.add_verdict(name, true, Json{{"formulas", f->formulas.size()}});
            break;
        }
        case io::FileKind::Model: {
            const ModelCheck c = check_model(*ws.model(path));
            report.add_verdict(name, c.ok, c.ok ? Json::object() : Json{{"message", c.message}});
            break;
        }
        case io::FileKind::Hom: {
            const HomCheck c = check_hom(ws.hom(path)->hom);
            report.add_verdict(name, c.ok, c.ok ? Json::object() : Json{{"message", c.message}});
            break;
        }
        case io::FileKind::Category: {
            const auto problem = ws.category(path)->validate();
            report.add_verdict(name, !problem, problem ? Json{{"message", *problem}} : Json::object());
            break;
        }
        case io::FileKind::Functor: {
            const auto problem = validate(ws.functor(path)->functor);
            report.add_verdict(name, !problem, problem ? Json{{"message", *problem}} : Json::object());
            break;
        }
        case io::FileKind::Proof: {
            const auto p = ws.proof(path);
            const ProofVerdict v = check_proof(*p->theory, p->root, ws.fuel());
            const bool pass = p->expect_reject ? !v.accepted && v.failing_rule == *p->expect_reject : v.accepted;
            report.add_verdict(name, pass, Json{{"accepted", v.accepted}});
            break;
        }
        case io::FileKind::SuiteConfig: {
            const io::SuiteConfig c = ws.config(path);
            report.add_verdict(name, true, Json{{"keys", c.values.size()}});
            break;
        }
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Usage || e.kind() == ErrorKind::Io) throw;
        report.add_verdict(name, false, error_detail(e));
    }
}

void run_check(Report& report, io::Workspace& ws, const Options& opt) {
    if (opt.files.empty()) usage("check needs at least one file");
    const auto theory = opt.theory.empty() ? nullptr : ws.theory(theory_ref(opt.theory));
    for (const std::string& f : opt.files) check_file(report, ws, normal(f), theory);
}

void run_eval(Report& report, io::Workspace& ws, const Options& opt) {
    if (opt.model.empty() || opt.formula.empty()) usage("eval needs --model and --formula");
    const auto model = ws.model(normal(opt.model));
    std::shared_ptr<const Theory> th = opt.theory.empty() ? nullptr : ws.theory(theory_ref(opt.theory));
    if (th && !same_theory(*th, model->theory()))
        usage("model " + model->name() + " is a model of " + model->theory().name() + ", not of " + th->name());
    const auto file = ws.formulas(normal(opt.formula), th ? th : nullptr);
    if (!same_theory(*file->theory, model->theory()))
        usage("formulas of " + file->theory->name() + " cannot be evaluated in a model of " +
              model->theory().name());
    std::vector<const FormulaInContext*> chosen;
    for (const FormulaInContext& f : file->formulas)
        if (opt.name.empty() || f.name == opt.name) chosen.push_back(&f);
    if (chosen.empty()) usage(opt.name.empty() ? "formula file is empty" : "no formula named " + opt.name);
    std::size_t checks = 0, holds = 0;
    for (const FormulaInContext* f : chosen) {
        std::vector<Tuple> points;
        if (opt.at) {
            Tuple x = parse_tuple(*model, *opt.at);
            if (x.size() != f->context.size())
                usage(f->name + " has " + std::to_string(f->context.size()) + " free variables, --at gives " +
                      std::to_string(x.size()));
            const auto all = enumerate_context(*model, f->context);
            if (std::find(all.begin(), all.end(), x) == all.end())
                usage(tuple_to_string(*model, x) + " is not an element of the context of " + f->name);
            points.push_back(std::move(x));
        } else {
            points = enumerate_context(*model, f->context);
        }
        for (const Tuple& x : points) {
            const bool v = eval_formula(*model, f->formula, x);
            ++checks;
            holds += v;
            report.add_verdict(f->name + " at " + tuple_to_string(*model, x), v, Json{{"value", v}});
        }
    }
    report.add_counter("eval", checks, holds);
}

void run_prove(Report& report, io::Workspace& ws, const Options& opt) {
    if (opt.files.empty()) usage("prove needs at least one proof file");
    for (const std::string& path : opt.files) {
        const auto p = ws.proof(normal(path));
        const ProofVerdict v = check_proof(*p->theory, p->root, ws.fuel());
        Json detail{{"accepted", v.accepted}};
        bool pass = v.accepted;
        if (!v.accepted) {
            detail["error"] = std::string(to_string(v.error));
            detail["failing_rule"] = v.failing_rule;
            detail["path"] = v.path;
            detail["message"] = v.message;
        }
        if (p->expect_reject) {
            detail["expected_rejection"] = *p->expect_reject;
            pass = !v.accepted && v.failing_rule == *p->expect_reject;
        } else if (v.accepted && opt.bound) {
            const CountermodelSearch s =
                find_countermodel(p->theory, v.conclusion.context, v.conclusion.lhs, v.conclusion.rhs, *opt.bound);
            detail["models_searched"] = s.stats.models;
            detail["countermodel"] = s.found.has_value();
            pass = !s.found;
        }
        report.add_verdict("proof " + p->name, pass, detail);
    }
}

void run_countermodel(Report& report, io::Workspace& ws, const Options& opt) {
    if (opt.formula.empty() || opt.lhs.empty() || opt.rhs.empty())
        usage("countermodel needs --formula, --lhs and --rhs");
    std::shared_ptr<const Theory> th = opt.theory.empty() ? nullptr : ws.theory(theory_ref(opt.theory));
    const auto file = ws.formulas(normal(opt.formula), th);
    const FormulaInContext* phi = file->find(opt.lhs);
    const FormulaInContext* psi = file->find(opt.rhs);
    if (!phi) usage("no formula named " + opt.lhs);
    if (!psi) usage("no formula named " + opt.rhs);
    if (!(phi->context == psi->context))
        throw Error(ErrorKind::ContextMismatch, opt.lhs + " and " + opt.rhs + " live in different contexts");
    const std::size_t bound = opt.bound.value_or(3);
    const CountermodelSearch s = find_countermodel(file->theory, phi->context, phi->formula, psi->formula, bound);
    report.add_counter("countermodel.models", s.stats.models, s.stats.models);
    report.add_counter("countermodel.nodes", s.stats.nodes, s.stats.nodes);
    if (s.found) {
        const FiniteModel& m = *s.found->model;
        report.add_witness("countermodel", Json{{"at", tuple_to_string(m, s.found->at)},
                                                {"model", io::print_model(m, opt.theory.empty() ? file->theory_ref
                                                                                                : opt.theory)}});
    }
    report.add_verdict(opt.lhs + " entails " + opt.rhs + " in all models up to size " + std::to_string(bound),
                       !s.found, Json{{"countermodel", s.found.has_value()}});
}

void run_fib_check(Report& report, io::Workspace& ws, const Options& opt) {
    if (opt.hom.empty()) usage("fib-check needs --hom");
    const auto hf = ws.hom(normal(opt.hom));
    const ModelHom& h = hf->hom;
    const HomCheck c = check_hom(h);
    report.add_verdict("homomorphism", c.ok, c.ok ? Json::object() : Json{{"message", c.message}});
    if (!c.ok) return;
    const AnodyneResult a = is_anodyne_fibration(h);
    if (a.failure) report.add_witness("anodyne", describe(h, *a.failure));
    report.add_verdict("anodyne", a.anodyne, Json{{"anodyne", a.anodyne}});
    if (!opt.formula.empty()) {
        const auto file = ws.formulas(normal(opt.formula), opt.theory.empty() ? nullptr : ws.theory(theory_ref(opt.theory)));
        if (!same_theory(*file->theory, h.source->theory()))
            usage("formulas of " + file->theory->name() + " do not apply to models of " + h.source->theory().name());
        const InvarianceReport r = invariance_suite(h, file->formulas);
        report.add_counter("invariance", r.checks, r.agreements);
        if (r.first_violation)
            report.add_witness("invariance", r.first_violation->formula + " at " +
                                                 tuple_to_string(*h.source, r.first_violation->at));
        report.add_verdict("formulas preserved and reflected", r.ok());
    }
}

void run_invariance(Report& report, io::Workspace& ws, const Options& opt) {
    if (opt.config.empty()) usage("invariance needs --config");
    const std::string config_path = normal(opt.config);
    const io::SuiteConfig cfg = ws.config(config_path);
    std::vector<std::string> suites = cfg.get_list("suites");
    if (suites.empty())
        suites = {"substitution", "naturality", "anodyne", "beck_chevalley", "homotopy", "equivalence", "proofs"};
    const auto seed = opt.seed ? *opt.seed : static_cast<std::uint64_t>(cfg.get_int("seed", 0));
    const auto samples = opt.samples ? *opt.samples : static_cast<std::size_t>(cfg.get_int("samples", 10000));
    const auto cap = opt.exhaustive ? 0 : static_cast<std::size_t>(cfg.get_int("cap", 0));
    const auto max_objects = static_cast<std::size_t>(cfg.get_int("max_objects", 3));
    const auto max_parallel = static_cast<std::size_t>(cfg.get_int("max_parallel", 2));
    if (opt.exhaustive && max_objects > 3) usage("exhaustive mode is limited to categories with at most 3 objects");

    suite::SubstitutionOptions sub;
    sub.seed = seed;
    sub.samples = samples;
    sub.max_length = static_cast<std::size_t>(cfg.get_int("max_length", 4));
    sub.max_depth = static_cast<std::size_t>(cfg.get_int("max_depth", 3));

    std::optional<suite::FunctorCorpus> corpus;
    auto functors = [&]() -> const suite::FunctorCorpus& {
        if (!corpus) corpus = suite::functor_corpus(max_objects, max_parallel);
        return *corpus;
    };
    auto formulas = [&]() -> const std::vector<FormulaInContext>& {
        const std::string ref = cfg.get_string("formulas");
        if (ref.empty()) usage(config_path + " names no formula corpus (formulas = \"...\")");
        const auto file = ws.formulas(io::resolve_path(config_path, ref));
        if (!same_theory(*file->theory, *cat_eq_theory()))
            usage("the formula corpus must be written over Cat_eq");
        return file->formulas;
    };

    Json parameters{{"seed", seed}, {"samples", samples}, {"cap", cap}, {"exhaustive", opt.exhaustive}};
    report.add_witness("parameters", parameters);
    for (const std::string& s : suites) {
        if (s == "substitution") {
            const std::string ref = cfg.get_string("theory", "Cat_eq");
            suite::substitution(report, ws.theory(theory_ref(ref == "Cat" || ref == "Cat_eq" ? ref
                                                                                          : io::resolve_path(config_path, ref))),
                                sub);
        } else if (s == "naturality") {
            suite::naturality(report, functors().categories, sub);
        } else if (s == "anodyne") {
            suite::anodyne(report, functors(), formulas(), cap);
        } else if (s == "beck_chevalley") {
            suite::beck_chevalley(report, functors(), formulas());
        } else if (s == "homotopy") {
            suite::homotopy(report, functors(), formulas(), cap);
        } else if (s == "equivalence") {
            suite::equivalence(report, functors(), formulas(), cap);
        } else if (s == "proofs") {
            std::vector<std::shared_ptr<const io::ProofFile>> library;
            for (const std::string& ref : cfg.get_list("proofs"))
                library.push_back(ws.proof(io::resolve_path(config_path, ref)));
            suite::proofs(report, library, static_cast<std::size_t>(cfg.get_int("bound", 3)));
        } else {
            usage("unknown suite '" + s + "'");
        }
    }
}

void run_corpus(Report& report, const Options& opt) {
    if (opt.out.empty()) usage("corpus needs --out");
    for (const GeneratedFile& g : generated_corpus()) {
        const fs::path target = fs::path(opt.out) / g.path;
        if (opt.verify) {
            std::string existing;
            bool same = false;
            try {
                existing = io::read_file(target.string());
                same = existing == g.text;
            } catch (const Error&) {
            }
            report.add_verdict("up to date " + g.path, same);
            continue;
        }
        fs::create_directories(target.parent_path());
        std::ofstream out(target, std::ios::binary);
        out << g.text;
        if (!out) throw Error(ErrorKind::Io, "cannot write " + target.string());
        report.add_verdict("wrote " + g.path, true);
    }
}

} // namespace

std::vector<GeneratedFile> generated_corpus() {
    std::vector<GeneratedFile> out;
    out.push_back({"theories/cat.gat", cat_theory_source()});
    out.push_back({"theories/cat_eq.gat", cat_eq_theory_source()});
    out.push_back({"theories/bicat_eq.gat", bicat_eq_theory_source()});
    out.push_back({"theories/chain_f2_3.gat", chain_theory_source(3)});
    const std::vector<std::string> sig_files = {"sig_eq_graph", "sig_eq_pointed", "sig_eq_two_sorted"};
    for (std::size_t i = 0; i < sample_signatures().size(); ++i)
        out.push_back({"theories/" + sig_files[i] + ".gat", sigma_theory_source(sample_signatures()[i])});

    const std::vector<CategoryPtr> cats = {terminal_category(), discrete_category(2), walking_arrow(), walking_iso(),
                                           parallel_pair()};
    for (const CategoryPtr& c : cats) {
        out.push_back({"categories/" + c->name() + ".gcat", io::print_category(*c)});
        out.push_back({"models/" + c->name() + ".gmod", io::print_model(*to_model(*c), "Cat_eq")});
    }

    auto functor_named = [](std::string name, CategoryPtr a, CategoryPtr b, std::vector<std::uint32_t> objects) {
        std::optional<Functor> found;
        for_each_functor(a, b, [&](const Functor& f) {
            if (f.on_objects != objects) return true;
            found = f;
            return false;
        });
        found->name = std::move(name);
        return *found;
    };
    // walking_iso → point collapses an isomorphism; walking_arrow → walking_iso
    // is bijective on objects but not full.
    const std::vector<std::pair<Functor, std::pair<std::string, std::string>>> functors = {
        {functor_named("collapse_iso", walking_iso(), terminal_category(), {0, 0}), {"walking_iso", "point"}},
        {functor_named("arrow_into_iso", walking_arrow(), walking_iso(), {0, 1}), {"walking_arrow", "walking_iso"}},
    };
    for (const auto& [f, ends] : functors) {
        out.push_back({"functors/" + f.name + ".gfun",
                       io::print_functor(f, "../categories/" + ends.first + ".gcat",
                                         "../categories/" + ends.second + ".gcat")});
        ModelHom h = to_hom(f);
        h.name = f.name;
        out.push_back({"homs/" + f.name + ".ghom",
                       io::print_hom(h, "../models/" + ends.first + ".gmod", "../models/" + ends.second + ".gmod")});
    }
    return out;
}

io::Report run(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    Report report(opt.command);
    io::Workspace ws(opt.fuel);
    static const std::map<std::string, std::function<void(Report&, io::Workspace&, const Options&)>> commands = {
        {"check", run_check},
        {"eval", run_eval},
        {"prove", run_prove},
        {"countermodel", run_countermodel},
        {"fib-check", run_fib_check},
        {"invariance", run_invariance},
        {"corpus", [](Report& r, io::Workspace&, const Options& o) { run_corpus(r, o); }},
    };
    auto it = commands.find(opt.command);
    if (it == commands.end()) usage("unknown command '" + opt.command + "'");
    it->second(report, ws, opt);
    report.add_inputs(ws.inputs());
    report.set_wall_time_ms(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
    return report;
}

} // namespace gatlab::cli
