#include "doctest.h"

#include <filesystem>

#include "gatlab/cli.hpp"
#include "gatlab/io/print.hpp"
#include "gatlab/io/report.hpp"
#include "gatlab/suite.hpp"
#include "support.hpp"

using namespace gatlab;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> corpus_files(const std::string& dir) {
    std::vector<std::string> out;
    for (const auto& e : fs::directory_iterator(test::corpus(dir))) out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

io::Resolver resolver_for(io::Workspace& ws, const std::string& path) {
    io::Resolver r;
    r.theory = [&ws, path](const std::string& ref) {
        if (ref == "Cat" || ref == "Cat_eq") return ws.theory(ref);
        return ws.theory(io::resolve_path(path, ref));
    };
    r.model = [&ws, path](const std::string& ref) { return ws.model(io::resolve_path(path, ref)); };
    r.category = [&ws, path](const std::string& ref) { return ws.category(io::resolve_path(path, ref)); };
    return r;
}

void same_theory(const Theory& a, const Theory& b) {
    CHECK(a.name() == b.name());
    REQUIRE(a.sorts().size() == b.sorts().size());
    REQUIRE(a.ops().size() == b.ops().size());
    REQUIRE(a.equations().size() == b.equations().size());
    for (std::size_t i = 0; i < a.sorts().size(); ++i) {
        CHECK(a.sorts()[i].name == b.sorts()[i].name);
        CHECK(a.sorts()[i].telescope == b.sorts()[i].telescope);
    }
    for (std::size_t i = 0; i < a.ops().size(); ++i) {
        CHECK(a.ops()[i].name == b.ops()[i].name);
        CHECK(a.ops()[i].telescope == b.ops()[i].telescope);
        CHECK(a.ops()[i].result == b.ops()[i].result);
    }
    for (std::size_t i = 0; i < a.equations().size(); ++i) {
        const Equation& x = a.equations()[i];
        const Equation& y = b.equations()[i];
        CHECK(x.name == y.name);
        CHECK(x.telescope == y.telescope);
        REQUIRE(x.is_term_equation() == y.is_term_equation());
        if (x.is_term_equation()) {
            const auto& s = std::get<TermEquation>(x.body);
            const auto& t = std::get<TermEquation>(y.body);
            CHECK(s.lhs == t.lhs);
            CHECK(s.rhs == t.rhs);
            CHECK(s.at == t.at);
        } else {
            CHECK(std::get<TypeEquation>(x.body).lhs == std::get<TypeEquation>(y.body).lhs);
            CHECK(std::get<TypeEquation>(x.body).rhs == std::get<TypeEquation>(y.body).rhs);
        }
    }
    CHECK(a.confluent() == b.confluent());
    CHECK(a.equality_sorts() == b.equality_sorts());
    CHECK(a.order() == b.order());
}

void same_model(const FiniteModel& a, const FiniteModel& b) {
    REQUIRE(a.element_count() == b.element_count());
    for (Elem e = 0; e < a.element_count(); ++e) {
        CHECK(a.element_name(e) == b.element_name(e));
        CHECK(a.element_sort(e) == b.element_sort(e));
    }
    for (SymbolId s = 0; s < a.theory().sorts().size(); ++s) CHECK(a.carriers(s) == b.carriers(s));
    for (SymbolId o = 0; o < a.theory().ops().size(); ++o) CHECK(a.table(o) == b.table(o));
}

void same_node(const ProofNode& a, const ProofNode& b) {
    CHECK(a.rule == b.rule);
    CHECK(a.index == b.index);
    CHECK(a.conclusion.context == b.conclusion.context);
    CHECK(a.conclusion.lhs == b.conclusion.lhs);
    CHECK(a.conclusion.rhs == b.conclusion.rhs);
    REQUIRE(a.premises.size() == b.premises.size());
    for (std::size_t i = 0; i < a.premises.size(); ++i) same_node(a.premises[i], b.premises[i]);
}

const io::Report::Json* verdict(const io::Report& r, const std::string& name) {
    for (const auto& v : r.verdicts())
        if (v["name"] == name) return &v;
    return nullptr;
}

} // namespace

TEST_CASE("theories round-trip through the printer") {
    io::Workspace ws;
    for (const std::string& path : corpus_files("theories")) {
        CAPTURE(path);
        const auto th = ws.theory(path);
        const std::string printed = io::print_theory(*th);
        const auto again = io::parse_theory(printed, path).theory;
        same_theory(*th, *again);
        CHECK(io::print_theory(*again) == printed);
    }
}

TEST_CASE("formula files round-trip through the printer") {
    for (const std::string& path : {test::corpus("formulas/corpus.gfm"), test::corpus("formulas/entailments.gfm")}) {
        CAPTURE(path);
        io::Workspace ws;
        const auto file = ws.formulas(path);
        const std::string printed = io::print_formula_file(*file);
        const auto again = io::parse_formula_file(printed, path, resolver_for(ws, path));
        REQUIRE(again.formulas.size() == file->formulas.size());
        for (std::size_t i = 0; i < file->formulas.size(); ++i) {
            CHECK(again.formulas[i].name == file->formulas[i].name);
            CHECK(again.formulas[i].context == file->formulas[i].context);
            CHECK(again.formulas[i].formula == file->formulas[i].formula);
        }
    }
}

TEST_CASE("models, homs, categories and functors round-trip through the printer") {
    io::Workspace ws;
    for (const std::string& path : corpus_files("models")) {
        CAPTURE(path);
        const auto m = ws.model(path);
        const auto again = io::parse_model(io::print_model(*m, "Cat_eq"), path, resolver_for(ws, path));
        same_model(*m, again);
    }
    for (const std::string& path : corpus_files("categories")) {
        CAPTURE(path);
        const auto c = ws.category(path);
        const FinCategory again = io::parse_category(io::print_category(*c), path);
        CHECK(io::print_category(again) == io::print_category(*c));
        CHECK(again.arrow_count() == c->arrow_count());
    }
    for (const std::string& path : corpus_files("homs")) {
        CAPTURE(path);
        const auto h = ws.hom(path);
        const auto again =
            io::parse_hom(io::print_hom(h->hom, h->source_ref, h->target_ref), path, resolver_for(ws, path));
        CHECK(again.hom.image == h->hom.image);
        CHECK(again.hom.source == h->hom.source);
        CHECK(again.hom.target == h->hom.target);
    }
    for (const std::string& path : corpus_files("functors")) {
        CAPTURE(path);
        const auto f = ws.functor(path);
        const auto again = io::parse_functor(io::print_functor(f->functor, f->source_ref, f->target_ref), path,
                                             resolver_for(ws, path));
        CHECK(again.functor.on_objects == f->functor.on_objects);
        CHECK(again.functor.on_arrows == f->functor.on_arrows);
    }
}

TEST_CASE("proofs round-trip through the printer") {
    io::Workspace ws;
    for (const std::string& path : corpus_files("proofs")) {
        CAPTURE(path);
        const auto p = ws.proof(path);
        const std::string printed = io::print_proof(*p);
        const auto again = io::parse_proof(printed, path, resolver_for(ws, path));
        CHECK(again.name == p->name);
        CHECK(again.expect_reject == p->expect_reject);
        same_node(p->root, again.root);
        CHECK(io::print_proof(again) == printed);
    }
}

TEST_CASE("the shipped corpus matches the generator") {
    cli::Options opt;
    opt.command = "corpus";
    opt.out = GATLAB_CORPUS_DIR;
    opt.verify = true;
    CHECK(cli::run(opt).ok());
}

TEST_CASE("formulas with object equality or ill-typed equality are rejected") {
    cli::Options opt;
    opt.command = "check";
    opt.files = {test::corpus("formulas/skeletal.gfm"), test::corpus("formulas/identities_only_isos.gfm")};
    const io::Report r = cli::run(opt);
    CHECK_FALSE(r.ok());
    REQUIRE(r.verdicts().size() == 2);
    CHECK(r.verdicts()[0]["detail"]["error"] == "Syntax");
    CHECK(r.verdicts()[1]["detail"]["error"] == "TypeMismatch");
    CHECK(r.verdicts()[1]["detail"]["message"].get<std::string>().find("Unknown") != std::string::npos);
}

TEST_CASE("an empty theory file is an error") {
    try {
        io::parse_theory("", "empty.gat");
        FAIL("expected a syntax error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Syntax);
        CHECK(std::string(e.what()).find("empty.gat:1:1") != std::string::npos);
    }
}

TEST_CASE("diagnostics carry line and column") {
    try {
        io::parse_theory("theory T {\n  sort A;\n  op f : B;\n}", "t.gat");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownSymbol);
        CHECK(std::string(e.what()).find("t.gat:3:") != std::string::npos);
    }
}

TEST_CASE("every corpus file checks") {
    cli::Options opt;
    opt.command = "check";
    for (const char* dir : {"theories", "categories", "models", "functors", "homs", "proofs"})
        for (const std::string& f : corpus_files(dir)) opt.files.push_back(f);
    opt.files.push_back(test::corpus("formulas/corpus.gfm"));
    opt.files.push_back(test::corpus("formulas/entailments.gfm"));
    const io::Report r = cli::run(opt);
    for (const auto& v : r.verdicts()) {
        CAPTURE(v.dump());
        CHECK(v["pass"] == true);
    }
}

TEST_CASE("eval, fib-check and prove commands") {
    cli::Options eval;
    eval.command = "eval";
    eval.theory = test::corpus("theories/cat_eq.gat");
    eval.model = test::corpus("models/walking_arrow.gmod");
    eval.formula = test::corpus("formulas/is_terminal.gfm");
    eval.at = "y";
    const io::Report r = cli::run(eval);
    CHECK(r.ok());
    REQUIRE(r.verdicts().size() == 1);
    eval.at = "x";
    CHECK_FALSE(cli::run(eval).ok());

    cli::Options fib;
    fib.command = "fib-check";
    fib.hom = test::corpus("homs/collapse_iso.ghom");
    const io::Report f = cli::run(fib);
    CHECK(f.ok());
    const auto* anodyne = verdict(f, "anodyne");
    REQUIRE(anodyne);
    CHECK((*anodyne)["detail"]["anodyne"] == true);
    fib.hom = test::corpus("homs/arrow_into_iso.ghom");
    CHECK_FALSE(cli::run(fib).ok());

    cli::Options prove;
    prove.command = "prove";
    prove.files = {test::corpus("proofs/proof_bot_elim.gpf"), test::corpus("proofs/broken_trans.gpf")};
    CHECK(cli::run(prove).ok());
}

TEST_CASE("countermodel command") {
    cli::Options opt;
    opt.command = "countermodel";
    opt.formula = test::corpus("formulas/entailments.gfm");
    opt.lhs = "isTerminal";
    opt.rhs = "isInitial";
    opt.bound = 2;
    const io::Report r = cli::run(opt);
    CHECK_FALSE(r.ok());
    CHECK(r.to_json(false)["witnesses"].size() == 1);
    opt.lhs = "falsity";
    opt.rhs = "someObject";
    CHECK(cli::run(opt).ok());
}

TEST_CASE("usage errors propagate") {
    cli::Options opt;
    opt.command = "eval";
    CHECK_THROWS_AS(cli::run(opt), Error);
    opt.command = "frobnicate";
    CHECK_THROWS_AS(cli::run(opt), Error);
}

TEST_CASE("sampled suites are deterministic") {
    auto once = [] {
        io::Report report("invariance");
        suite::SubstitutionOptions opt;
        opt.samples = 200;
        suite::substitution(report, cat_eq_theory(), opt);
        suite::naturality(report, enumerate_categories(2, 2), opt);
        return report.dump(false);
    };
    const std::string a = once();
    CHECK(a == once());
    CHECK(a.find("wall_time_ms") == std::string::npos);
}

TEST_CASE("reports") {
    io::Report r("demo");
    r.add_verdict("a", true);
    r.add_counter("c", 3, 3);
    CHECK(r.ok());
    r.add_verdict("b", false, {{"why", "no"}});
    CHECK_FALSE(r.ok());
    r.set_wall_time_ms(12);
    const auto j = r.to_json(true);
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "demo");
    CHECK(j["wall_time_ms"] == 12);
    CHECK(r.summary().find("FAIL  b") != std::string::npos);
}
