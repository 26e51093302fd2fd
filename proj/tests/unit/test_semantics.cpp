#include "doctest.h"

#include "gatlab/builtin.hpp"
#include "gatlab/category.hpp"
#include "gatlab/model.hpp"
#include "gatlab/suite.hpp"
#include "support.hpp"

using namespace gatlab;

namespace {

std::shared_ptr<const FiniteModel> walking_arrow_file() {
    static io::Workspace ws;
    return ws.model(test::corpus("models/walking_arrow.gmod"));
}

// One object with arrows id, a, b and g ∘ f = g for non-identities.
std::shared_ptr<const FinCategory> left_zero_monoid() {
    auto c = std::make_shared<FinCategory>("left_zero");
    const auto o = c->add_object("o");
    const auto a = c->add_arrow("a", o, o);
    const auto b = c->add_arrow("b", o, o);
    for (auto g : {a, b})
        for (auto f : {a, b}) c->set_comp(g, f, g);
    return c;
}

} // namespace

TEST_CASE("the walking arrow is a model of Cat_eq") {
    const auto m = walking_arrow_file();
    const ModelCheck r = check_model(*m);
    CHECK(r.ok);
    CHECK(check_model(*to_model(*walking_arrow())).ok);
}

TEST_CASE("a broken associativity entry is located") {
    const auto cat = left_zero_monoid();
    REQUIRE_FALSE(cat->validate().has_value());
    const auto good = to_model(*cat);
    REQUIRE(check_model(*good).ok);

    FiniteModel bad = *good;
    const auto& th = bad.theory();
    const SymbolId comp = *th.find_op("comp");
    const Elem o = test::element(bad, "o");
    const Elem a = test::element(bad, "a");
    const Elem b = test::element(bad, "b");
    // Units survive a ∘ a := b, associativity does not.
    bad.set_op(comp, {o, o, o, a, a}, b);
    const ModelCheck r = check_model(bad);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.equation.has_value());
    CHECK(th.equations()[*r.equation].name == "assoc");

    // The witness (x, y, z, w, f, g, h) really violates h ∘ (g ∘ f) = (h ∘ g) ∘ f.
    REQUIRE(r.witness.size() == 7);
    auto c = [&](Elem f, Elem g) { return *bad.op_value(comp, {o, o, o, f, g}); };
    const Elem f = r.witness[4], g = r.witness[5], h = r.witness[6];
    CHECK(c(f, c(g, h)) != c(c(f, g), h));
    CHECK(r.message.find("assoc") != std::string::npos);
}

TEST_CASE("the empty model of Cat_eq is valid") {
    const auto th = cat_eq_theory();
    FiniteModel m(th, "empty");
    m.declare_carrier(*th->find_sort("Ob"), {});
    CHECK(check_model(m).ok);
}

TEST_CASE("missing entries are reported") {
    const auto th = cat_eq_theory();
    FiniteModel m(th, "partial");
    m.add_element(*th->find_sort("Ob"), {}, "o");
    const ModelCheck r = check_model(m);
    CHECK_FALSE(r.ok);
    CHECK(r.kind == ErrorKind::MissingTableEntry);
}

TEST_CASE("type equations need identical carriers") {
    const auto th = io::parse_theory(
                        "theory T { sort A; sort B (x: A); op f (x: A) : A; typeq shift (x: A) : B(f(x)) == B(x); }",
                        "<test>")
                        .theory;
    const SymbolId A = *th->find_sort("A"), B = *th->find_sort("B");
    const SymbolId f = *th->find_op("f");
    auto build = [&](bool swap) {
        FiniteModel m(th);
        const Elem a0 = m.add_element(A, {}, "a0");
        const Elem a1 = m.add_element(A, {}, "a1");
        m.add_element(B, {a0}, "b0");
        m.add_element(B, {a1}, "b1");
        m.set_op(f, {a0}, swap ? a1 : a0);
        m.set_op(f, {a1}, swap ? a0 : a1);
        return m;
    };
    CHECK(check_model(build(false)).ok);
    CHECK_FALSE(check_model(build(true)).ok);
}

TEST_CASE("enumerate_context") {
    const auto th = cat_eq_theory();
    const auto m = walking_arrow_file();
    const auto unit = enumerate_context(*m, Context{});
    REQUIRE(unit.size() == 1);
    CHECK(unit.front().empty());

    const Elem x = test::element(*m, "x"), y = test::element(*m, "y");
    const auto pairs = enumerate_context(*m, test::ctx(*th, "(x y: Ob)"));
    CHECK(pairs == std::vector<Tuple>{{x, x}, {x, y}, {y, x}, {y, y}});

    const auto arrows = enumerate_context(*m, test::ctx(*th, "(x y: Ob, f: Hom(x, y))"));
    CHECK(arrows == std::vector<Tuple>{{x, x, test::element(*m, "id_x")},
                                       {x, y, test::element(*m, "f")},
                                       {y, y, test::element(*m, "id_y")}});
}

TEST_CASE("eval_term") {
    const auto th = cat_eq_theory();
    const auto m = walking_arrow_file();
    const Context one = test::ctx(*th, "(x: Ob)");
    const Elem x = test::element(*m, "x");
    CHECK(eval_term(*m, Term::var(0), {x}) == x);
    CHECK(eval_term(*m, test::term(*th, one, "id(x)"), {x}) == test::element(*m, "id_x"));

    io::Workspace ws;
    const auto iso = ws.model(test::corpus("models/walking_iso.gmod"));
    const Context c = test::ctx(*th, "(x y: Ob, f: Hom(x, y), g: Hom(y, x))");
    const Tuple t{test::element(*iso, "x"), test::element(*iso, "y"), test::element(*iso, "f"),
                  test::element(*iso, "g")};
    CHECK(eval_term(*iso, test::term(*th, c, "comp(x, y, x, f, g)"), t) == test::element(*iso, "id_x"));
    CHECK(eval_term(*iso, test::term(*th, c, "comp(y, x, y, g, f)"), t) == test::element(*iso, "id_y"));
}

TEST_CASE("eval_formula on the walking arrow") {
    const auto m = walking_arrow_file();
    const Elem x = test::element(*m, "x"), y = test::element(*m, "y");
    CHECK(eval_formula(*m, Formula::top(), {x}));
    CHECK_FALSE(eval_formula(*m, Formula::bot(), {x}));

    const auto& terminal = test::corpus_formula("isTerminal");
    CHECK(eval_formula(*m, terminal.formula, {y}));
    CHECK_FALSE(eval_formula(*m, terminal.formula, {x}));

    const auto& initial = test::corpus_formula("isInitial");
    CHECK(eval_formula(*m, initial.formula, {x}));
    CHECK_FALSE(eval_formula(*m, initial.formula, {y}));

    const auto& epi = test::corpus_formula("isEpi");
    CHECK(eval_formula(*m, epi.formula, {x, y, test::element(*m, "f")}));
    const auto& retraction = test::corpus_formula("hasRetraction");
    CHECK_FALSE(eval_formula(*m, retraction.formula, {x, y, test::element(*m, "f")}));
    CHECK(eval_formula(*m, retraction.formula, {x, x, test::element(*m, "id_x")}));
}

TEST_CASE("conjunction and disjunction are all and any") {
    const auto m = walking_arrow_file();
    const Elem x = test::element(*m, "x"), y = test::element(*m, "y");
    const auto& terminal = test::corpus_formula("isTerminal").formula;
    const auto& initial = test::corpus_formula("isInitial").formula;
    for (Elem e : {x, y}) {
        const bool t = eval_formula(*m, terminal, {e});
        const bool i = eval_formula(*m, initial, {e});
        CHECK(eval_formula(*m, Formula::conjunction({terminal, initial}), {e}) == (t && i));
        CHECK(eval_formula(*m, Formula::disjunction({terminal, initial}), {e}) == (t || i));
    }
}

TEST_CASE("satisfying lists the extension of a formula") {
    const auto m = walking_arrow_file();
    const auto& terminal = test::corpus_formula("isTerminal");
    CHECK(satisfying(*m, terminal.context, terminal.formula) == std::vector<Tuple>{{test::element(*m, "y")}});
}

TEST_CASE("evaluation is natural on sampled substitutions") {
    io::Report report("test");
    suite::SubstitutionOptions opt;
    opt.samples = 300;
    suite::naturality(report, enumerate_categories(3, 1), opt);
    CHECK(report.ok());
}
