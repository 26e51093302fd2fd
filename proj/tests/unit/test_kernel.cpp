#include "doctest.h"

#include <functional>
#include <map>
#include <optional>
#include <set>

#include "gatlab/builtin.hpp"
#include "gatlab/category.hpp"
#include "gatlab/io/parse.hpp"
#include "gatlab/kernel.hpp"
#include "gatlab/model.hpp"
#include "gatlab/random.hpp"
#include "gatlab/search.hpp"
#include "support.hpp"

using namespace gatlab;

namespace {

ErrorKind error_of(const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Usage;
}

std::shared_ptr<const Theory> theory_from(const std::string& text) {
    return io::parse_theory(text, "<test>").theory;
}

// Exhaustive one-step rewriting, written against the equation list only.
bool match(const Term& pat, const Term& t, std::vector<std::optional<Term>>& sub) {
    if (pat.is_var()) {
        auto& slot = sub.at(pat.index);
        if (slot) return *slot == t;
        slot = t;
        return true;
    }
    if (!t.is_app() || t.index != pat.index || t.args.size() != pat.args.size()) return false;
    for (std::size_t i = 0; i < pat.args.size(); ++i)
        if (!match(pat.args[i], t.args[i], sub)) return false;
    return true;
}

Term instantiate(const Term& pat, const std::vector<std::optional<Term>>& sub) {
    if (pat.is_var()) return *sub.at(pat.index);
    std::vector<Term> args;
    for (const Term& a : pat.args) args.push_back(instantiate(a, sub));
    return Term::app(pat.index, std::move(args));
}

void one_step(const Theory& th, const Term& t, std::vector<Term>& out) {
    for (const Equation& eq : th.equations()) {
        const auto* te = std::get_if<TermEquation>(&eq.body);
        if (!te || te->lhs.is_var()) continue;
        std::vector<std::optional<Term>> sub(eq.telescope.size());
        if (match(te->lhs, t, sub)) {
            bool bound = true;
            for (const auto& s : sub) bound = bound && s.has_value();
            if (bound) out.push_back(instantiate(te->rhs, sub));
        }
    }
    if (t.is_var()) return;
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        std::vector<Term> inner;
        one_step(th, t.args[i], inner);
        for (Term& r : inner) {
            Term copy = t;
            copy.args[i] = std::move(r);
            out.push_back(std::move(copy));
        }
    }
}

std::vector<Term> all_normal_forms(const Theory& th, const Context& c, const Term& start) {
    std::map<std::string, Term> seen;
    std::vector<Term> frontier{start};
    std::map<std::string, Term> normal;
    seen.emplace(th.to_string(c, start), start);
    while (!frontier.empty()) {
        Term t = frontier.back();
        frontier.pop_back();
        std::vector<Term> next;
        one_step(th, t, next);
        if (next.empty()) normal.emplace(th.to_string(c, t), t);
        for (Term& n : next)
            if (seen.emplace(th.to_string(c, n), n).second) frontier.push_back(n);
    }
    std::vector<Term> out;
    for (auto& [_, t] : normal) out.push_back(t);
    return out;
}

} // namespace

TEST_CASE("Cat elaborates with two sorts, two operations and three equations") {
    const auto th = cat_theory();
    CHECK(th->sorts().size() == 2);
    CHECK(th->ops().size() == 2);
    CHECK(th->equations().size() == 3);
    CHECK(th->confluent());
}

TEST_CASE("the empty theory has no axioms") {
    Theory th = elaborate_theory(RawTheory{"Empty", {}});
    CHECK(th.sorts().empty());
    CHECK(th.ops().empty());
    CHECK(th.equations().empty());
    CHECK(th.order().empty());
}

TEST_CASE("Cat_eq elaborates with an equality sort for Hom") {
    const auto th = cat_eq_theory();
    CHECK(th->sorts().size() == 3);
    CHECK(th->ops().size() == 3);
    CHECK(th->equations().size() == 5);
    CHECK_FALSE(th->confluent());
    REQUIRE(th->equality_sorts().size() == 1);
    CHECK(th->equality_sorts().begin()->first == *th->find_sort("Hom"));
    CHECK(th->equality_sorts().begin()->second == *th->find_sort("Eq"));
}

TEST_CASE("contexts are checked entry by entry") {
    const auto th = cat_theory();
    CHECK_NOTHROW(check_context(*th, test::ctx(*th, "(x y: Ob, f: Hom(x, y))")));
    CHECK_NOTHROW(check_context(*th, Context{}));
    CHECK(error_of([&] { test::ctx(*th, "(f: Hom(x, y))"); }) == ErrorKind::UnknownSymbol);

    const TypeExpr dangling{*th->find_sort("Hom"), {Term::var(0), Term::var(1)}};
    CHECK(error_of([&] { check_context(*th, Context({dangling})); }) == ErrorKind::OutOfRange);
}

TEST_CASE("infer_type instantiates declared result types") {
    const auto th = cat_theory();
    const Context c = test::ctx(*th, "(x y z: Ob, f: Hom(x, y), g: Hom(y, z))");
    CHECK(infer_type(*th, c, test::term(*th, c, "comp(x, y, z, f, g)")) ==
          test::last_type(*th, "(x y z: Ob, t: Hom(x, z))"));

    const Context one = test::ctx(*th, "(x: Ob)");
    CHECK(infer_type(*th, one, Term::var(0)) == test::last_type(*th, "(t: Ob)"));
    CHECK(infer_type(*th, one, test::term(*th, one, "id(x)")) == test::last_type(*th, "(x: Ob, t: Hom(x, x))"));

    CHECK(error_of([&] { infer_type(*th, c, test::term(*th, c, "comp(x, y, z, g, f)")); }) ==
          ErrorKind::TypeMismatch);
    CHECK(error_of([&] { infer_type(*th, c, test::term(*th, c, "id(x, y)")); }) == ErrorKind::ArityMismatch);
}

TEST_CASE("ill-typed arguments report the equality verdict") {
    const auto th = cat_theory();
    const Context c = test::ctx(*th, "(x y: Ob, f: Hom(x, y))");
    try {
        infer_type(*th, c, test::term(*th, c, "comp(x, x, y, f, f)"));
        FAIL("expected TypeMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TypeMismatch);
        REQUIRE(e.verdict().has_value());
        CHECK(*e.verdict() == Verdict::No);
    }
}

TEST_CASE("elaboration errors") {
    CHECK(error_of([] { theory_from("theory T { sort A (x: B); }"); }) == ErrorKind::UnknownSymbol);
    CHECK(error_of([] { theory_from("theory T { sort A; sort A; }"); }) == ErrorKind::DuplicateSymbol);
    CHECK(error_of([] { theory_from("theory T { sort A; op c : A; op f (x: A) : A; eq e () : f(c, c) == c : A; }"); }) ==
          ErrorKind::ArityMismatch);
    CHECK(error_of([] {
              theory_from("theory T { sort A; sort B; op a : A; op b : B; eq e () : a == b : A; }");
          }) == ErrorKind::TypeMismatch);
}

TEST_CASE("equality of types and terms") {
    const auto th = cat_theory();
    const Context c = test::ctx(*th, "(x y: Ob, f: Hom(x, y))");
    const TypeExpr hom_xy = c[2];
    CHECK(terms_equal(*th, c, test::term(*th, c, "comp(x, x, y, id(x), f)"), Term::var(2), hom_xy) == Verdict::Yes);
    const TypeExpr ob = c[0];
    CHECK(types_equal(*th, c, ob, ob) == Verdict::Yes);

    const Context two = test::ctx(*th, "(x y: Ob)");
    const Term idx = test::term(*th, two, "id(x)");
    const Term idy = test::term(*th, two, "id(y)");
    const TypeExpr hom_xx = test::last_type(*th, "(x y: Ob, t: Hom(x, x))");
    CHECK(terms_equal(*th, two, idx, idy, hom_xx) == Verdict::No);
    CHECK(types_equal(*th, two, test::last_type(*th, "(x y: Ob, t: Hom(x, x))"),
                      test::last_type(*th, "(x y: Ob, t: Hom(y, y))")) == Verdict::No);

    // Without the confluence pragma distinct normal forms stay undecided.
    const auto eq = cat_eq_theory();
    const Context two_eq = test::ctx(*eq, "(x y: Ob)");
    CHECK(terms_equal(*eq, two_eq, test::term(*eq, two_eq, "id(x)"), test::term(*eq, two_eq, "id(y)"),
                      test::last_type(*eq, "(x y: Ob, t: Hom(x, x))")) == Verdict::Unknown);
}

TEST_CASE("id(x) and id(y) differ in the discrete category on two objects") {
    const auto eq = cat_eq_theory();
    const auto m = to_model(*discrete_category(2));
    const Context two = test::ctx(*eq, "(x y: Ob)");
    const Term idx = test::term(*eq, two, "id(x)");
    const Term idy = test::term(*eq, two, "id(y)");
    bool separated = false;
    for (const Tuple& x : enumerate_context(*m, two))
        separated = separated || eval_term(*m, idx, x) != eval_term(*m, idy, x);
    CHECK(separated);
}

TEST_CASE("hypotheses of an equality sort rewrite") {
    const auto eq = cat_eq_theory();
    const Context c = test::ctx(*eq, "(x y: Ob, f g: Hom(x, y), a: Eq(x, y, f, g))");
    CHECK(terms_equal(*eq, c, Term::var(2), Term::var(3), c[2]) == Verdict::Yes);
    const Context no_hyp = c.prefix(4);
    CHECK(terms_equal(*eq, no_hyp, Term::var(2), Term::var(3), c[2]) == Verdict::Unknown);
}

TEST_CASE("normalize") {
    const auto th = cat_theory();
    const Context c = test::ctx(*th, "(x y: Ob, f: Hom(x, y))");
    CHECK(normalize(*th, c, test::term(*th, c, "comp(x, y, y, f, id(y))")).term == Term::var(2));
    const NormalForm v = normalize(*th, c, Term::var(1));
    CHECK(v.term == Term::var(1));
    CHECK(v.steps == 0);
    CHECK_FALSE(v.exhausted);
}

TEST_CASE("the associativity instance has a single normal form under exhaustive rewriting") {
    const auto th = cat_theory();
    const Context c = test::ctx(*th, "(w x y z: Ob, f: Hom(w, x), g: Hom(x, y), h: Hom(y, z))");
    const Term start = test::term(*th, c, "comp(w, x, z, f, comp(x, y, z, g, h))");
    const Term expected = test::term(*th, c, "comp(w, y, z, comp(w, x, y, f, g), h)");
    const auto forms = all_normal_forms(*th, c, start);
    REQUIRE(forms.size() == 1);
    CHECK(forms.front() == expected);
    CHECK(normalize(*th, c, start).term == expected);

    // A larger instance with identities mixed in.
    const Term big = test::term(*th, c, "comp(w, x, z, comp(w, w, x, id(w), f), comp(x, y, z, g, comp(y, z, z, h, id(z))))");
    const auto big_forms = all_normal_forms(*th, c, big);
    REQUIRE(big_forms.size() == 1);
    CHECK(normalize(*th, c, big).term == big_forms.front());
}

TEST_CASE("fuel exhaustion is flagged") {
    const auto th = theory_from("theory Loop { sort A; op a : A; op b : A; eq ab () : a == b : A; eq ba () : b == a : A; }");
    const Context empty;
    const NormalForm n = normalize(*th, empty, test::term(*th, empty, "a"), 50);
    CHECK(n.exhausted);
    CHECK(terms_equal(*th, empty, test::term(*th, empty, "a"), test::term(*th, empty, "a"),
                      test::last_type(*th, "(t: A)"), 50) == Verdict::Yes);
}

TEST_CASE("type equations rewrite types") {
    const auto th = theory_from(
        "theory T { sort A; sort B (x: A); op f (x: A) : A; typeq shift (x: A) : B(f(x)) == B(x); }");
    const Context c = test::ctx(*th, "(x: A)");
    CHECK(types_equal(*th, c, test::last_type(*th, "(x: A, t: B(f(f(x))))"), test::last_type(*th, "(x: A, t: B(x))")) ==
          Verdict::Yes);
}

TEST_CASE("prefixes of every builtin theory elaborate") {
    std::vector<std::string> sources = {cat_theory_source(), cat_eq_theory_source(), bicat_eq_theory_source(),
                                        chain_theory_source(3)};
    for (const Signature& s : sample_signatures()) sources.push_back(sigma_theory_source(s));
    for (const std::string& src : sources) {
        const RawTheory raw = io::parse_raw_theory(src, "<builtin>");
        for (std::size_t i = 0; i <= raw.decls.size(); ++i) {
            RawTheory part{raw.name, {raw.decls.begin(), raw.decls.begin() + static_cast<std::ptrdiff_t>(i)}};
            CHECK_NOTHROW(elaborate_theory(part));
        }
    }
}

TEST_CASE("infer_type is stable under normalize, and equality is reflexive and symmetric") {
    const auto th = cat_eq_theory();
    Rng rng(7);
    std::size_t nontrivial = 0;
    for (int round = 0; round < 20; ++round) {
        const Context c = random_context(*th, rng, 1 + rng.below(4));
        const auto pool = term_pool(*th, c, 2, 48);
        for (const TypedTerm& t : pool) {
            const TypeExpr a = infer_type(*th, c, t.term);
            const NormalForm n = normalize(*th, c, t.term);
            if (n.exhausted) continue;
            CHECK(types_equal(*th, c, infer_type(*th, c, n.term), a) == Verdict::Yes);
            CHECK(terms_equal(*th, c, t.term, t.term, a) == Verdict::Yes);
        }
        for (const TypedTerm& s : pool)
            for (const TypedTerm& t : pool) {
                if (types_equal(*th, c, s.type, t.type) != Verdict::Yes) continue;
                const Verdict st = terms_equal(*th, c, s.term, t.term, s.type);
                const Verdict ts = terms_equal(*th, c, t.term, s.term, t.type);
                CHECK((st == Verdict::Yes) == (ts == Verdict::Yes));
                if (st == Verdict::Yes && !(s.term == t.term)) ++nontrivial;
            }
    }
    CHECK(nontrivial > 0);
}

TEST_CASE("equal terms evaluate equally in every small category") {
    const auto th = cat_eq_theory();
    const auto cats = enumerate_categories(2, 2);
    Rng rng(11);
    std::size_t compared = 0;
    for (int round = 0; round < 12; ++round) {
        const Context c = random_context(*th, rng, 1 + rng.below(4));
        const auto pool = term_pool(*th, c, 2, 40);
        std::vector<std::pair<Term, Term>> equal;
        for (const TypedTerm& s : pool)
            for (const TypedTerm& t : pool)
                if (!(s.term == t.term) && types_equal(*th, c, s.type, t.type) == Verdict::Yes &&
                    terms_equal(*th, c, s.term, t.term, s.type) == Verdict::Yes)
                    equal.emplace_back(s.term, t.term);
        for (const CategoryPtr& cat : cats) {
            const auto m = to_model(*cat);
            for (const Tuple& x : enumerate_context(*m, c))
                for (const auto& [s, t] : equal) {
                    CHECK(eval_term(*m, s, x) == eval_term(*m, t, x));
                    ++compared;
                }
        }
    }
    CHECK(compared > 0);
}
