#include "doctest.h"

#include <set>

#include "gatlab/category.hpp"
#include "gatlab/fibration.hpp"
#include "support.hpp"

using namespace gatlab;

namespace {

Functor to_point(const CategoryPtr& c) {
    const CategoryPtr pt = terminal_category();
    return Functor{"collapse", c, pt, std::vector<std::uint32_t>(c->object_count(), 0),
                   std::vector<std::uint32_t>(c->arrow_count(), pt->identity(0))};
}

// Direct checks on the tables, independent of the library predicates.
bool oracle_surjective(const Functor& f) {
    std::set<std::uint32_t> hit(f.on_objects.begin(), f.on_objects.end());
    return hit.size() == f.target->object_count();
}

bool oracle_fully_faithful(const Functor& f) {
    const FinCategory& a = *f.source;
    const FinCategory& c = *f.target;
    for (std::uint32_t x = 0; x < a.object_count(); ++x)
        for (std::uint32_t y = 0; y < a.object_count(); ++y) {
            std::multiset<std::uint32_t> image;
            for (std::uint32_t g : a.hom(x, y)) image.insert(f.on_arrows[g]);
            const auto& target = c.hom(f.on_objects[x], f.on_objects[y]);
            if (image != std::multiset<std::uint32_t>(target.begin(), target.end())) return false;
        }
    return true;
}

bool same_category(const FinCategory& a, const FinCategory& b) {
    if (a.object_count() != b.object_count() || a.arrow_count() != b.arrow_count()) return false;
    for (std::uint32_t x = 0; x < a.object_count(); ++x)
        if (a.object_name(x) != b.object_name(x) || a.identity(x) != b.identity(x)) return false;
    for (std::uint32_t f = 0; f < a.arrow_count(); ++f) {
        if (a.arrow(f).name != b.arrow(f).name || a.arrow(f).src != b.arrow(f).src ||
            a.arrow(f).tgt != b.arrow(f).tgt)
            return false;
        for (std::uint32_t g = 0; g < a.arrow_count(); ++g)
            if (a.compose(g, f) != b.compose(g, f)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("small categories validate") {
    for (const auto& c : {terminal_category(), empty_category(), walking_arrow(), walking_iso(), parallel_pair(),
                          discrete_category(3)})
        CHECK_FALSE(c->validate().has_value());
}

TEST_CASE("categories round-trip through Cat_eq models") {
    const auto th = cat_eq_theory();
    const auto pt = to_model(*terminal_category());
    CHECK(pt->carriers(*th->find_sort("Ob")).at({}).size() == 1);
    std::size_t homs = 0;
    for (const auto& [index, elems] : pt->carriers(*th->find_sort("Hom"))) homs += elems.size();
    CHECK(homs == 1);

    for (const CategoryPtr& c : enumerate_categories(2, 2)) {
        const auto m = to_model(*c);
        CHECK(check_model(*m).ok);
        CHECK(same_category(from_model(*m), *c));
    }
}

TEST_CASE("nonempty Eq between distinct arrows is rejected") {
    const auto th = cat_eq_theory();
    FiniteModel m = *to_model(*parallel_pair());
    const Tuple index{test::element(m, "x"), test::element(m, "y"), test::element(m, "f"), test::element(m, "g")};
    m.add_element(*th->find_sort("Eq"), index, "bad");
    CHECK_FALSE(check_model(m).ok);
    try {
        from_model(m);
        FAIL("expected InvalidModel");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidModel);
    }
}

TEST_CASE("equivalences") {
    CHECK(is_equivalence(identity_functor(walking_arrow())));
    CHECK(is_equivalence(to_point(walking_iso())));
    const CategoryPtr arrow = walking_arrow();
    const Functor endpoint{"endpoint", terminal_category(), arrow, {1}, {arrow->identity(1)}};
    REQUIRE_FALSE(validate(endpoint).has_value());
    CHECK_FALSE(is_equivalence(endpoint));
    CHECK_FALSE(is_equivalence(to_point(walking_arrow())));
}

TEST_CASE("isofibrations and trivial fibrations") {
    const Functor id = identity_functor(walking_iso());
    CHECK(is_isofibration(id));
    CHECK(is_trivial_fibration(id).holds);
    CHECK(is_trivial_fibration(to_point(walking_iso())).holds);

    const Functor pair = to_point(parallel_pair());
    CHECK(is_isofibration(pair));
    CHECK_FALSE(is_trivial_fibration(pair).holds);
    const auto& gens = generating_cofibrations();
    REQUIRE(gens[2].first == "w");
    const LiftingResult w = has_right_lifting(gens[2].second, pair);
    CHECK_FALSE(w.holds);
    CHECK(has_right_lifting(gens[0].second, pair).holds);

    CHECK(is_isofibration(to_point(walking_arrow())));
    CHECK_FALSE(is_trivial_fibration(to_point(walking_arrow())).holds);
}

TEST_CASE("trivial fibrations are the surjective fully faithful functors") {
    const auto cats = enumerate_categories(2, 2);
    std::size_t checked = 0, trivial = 0;
    for (const CategoryPtr& a : cats)
        for (const CategoryPtr& c : cats)
            for_each_functor(a, c, [&](const Functor& f) {
                const bool expected = oracle_surjective(f) && oracle_fully_faithful(f);
                const bool lifted = is_trivial_fibration(f).holds;
                CHECK(lifted == expected);
                if (lifted) {
                    CHECK(is_anodyne_fibration(to_hom(f)).anodyne);
                    CHECK(is_equivalence(f));
                    ++trivial;
                }
                ++checked;
                return true;
            });
    CHECK(checked > 100);
    CHECK(trivial > 0);
}

TEST_CASE("path objects") {
    const PathObject discrete = path_object(discrete_category(3));
    CHECK(discrete.category->object_count() == 3);
    CHECK(discrete.category->arrow_count() == 3);

    const PathObject iso = path_object(walking_iso());
    CHECK(iso.category->object_count() == 4);

    const PathObject arrow = path_object(walking_arrow());
    CHECK(arrow.category->object_count() == 2);
    CHECK(is_trivial_fibration(arrow.p1).holds);
    CHECK(is_trivial_fibration(arrow.p2).holds);
    CHECK(is_trivial_fibration(iso.p1).holds);
    CHECK(is_anodyne_fibration(iso.h1).anodyne);
}

TEST_CASE("homotopic interpretations") {
    const auto th = cat_eq_theory();
    const Context one = test::ctx(*th, "(x: Ob)");

    const PathObject iso = path_object(walking_iso());
    const Elem x = test::element(*iso.base_model, "x"), y = test::element(*iso.base_model, "y");
    CHECK(are_homotopic(iso, one, {x}, {x}));
    CHECK(are_homotopic(iso, one, {x}, {y}));

    const PathObject arrow = path_object(walking_arrow());
    const Elem ax = test::element(*arrow.base_model, "x"), ay = test::element(*arrow.base_model, "y");
    CHECK(are_homotopic(arrow, one, {ay}, {ay}));
    CHECK_FALSE(are_homotopic(arrow, one, {ax}, {ay}));

    // f and g are isomorphic objects of the arrow category of the walking iso.
    const Context hom = test::ctx(*th, "(x y: Ob, f: Hom(x, y))");
    const Tuple f{x, y, test::element(*iso.base_model, "f")};
    const Tuple g{y, x, test::element(*iso.base_model, "g")};
    CHECK(are_homotopic(iso, hom, f, g));
}

TEST_CASE("first invariance theorem on examples") {
    const PathObject iso = path_object(walking_iso());
    const Elem x = test::element(*iso.base_model, "x"), y = test::element(*iso.base_model, "y");
    const InvarianceCheck t = invariance1_check(test::corpus_formula("isTerminal"), iso, {x}, {y});
    CHECK(t.agree);
    CHECK(t.lhs);
    CHECK(t.rhs);

    const Tuple f{x, y, test::element(*iso.base_model, "f")};
    const Tuple g{y, x, test::element(*iso.base_model, "g")};
    const InvarianceCheck epi = invariance1_check(test::corpus_formula("isEpi"), iso, f, g);
    CHECK(epi.agree);
    CHECK(epi.lhs);

    const PathObject arrow = path_object(walking_arrow());
    const Elem ax = test::element(*arrow.base_model, "x"), ay = test::element(*arrow.base_model, "y");
    try {
        invariance1_check(test::corpus_formula("isTerminal"), arrow, {ax}, {ay});
        FAIL("expected PreconditionUnmet");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PreconditionUnmet);
    }
}

TEST_CASE("second invariance theorem on examples") {
    const Functor id = identity_functor(walking_arrow());
    const auto m = to_model(*walking_arrow());
    for (const auto& phi : test::corpus_formulas()->formulas)
        for (const Tuple& x : enumerate_context(*m, phi.context)) CHECK(invariance2_check(phi, id, x).agree);

    const Functor collapse = to_point(walking_iso());
    const auto iso = to_model(*walking_iso());
    for (const Tuple& x : enumerate_context(*iso, test::corpus_formula("isInitial").context))
        CHECK(invariance2_check(test::corpus_formula("isInitial"), collapse, x).agree);

    const auto arrow = to_model(*walking_arrow());
    try {
        invariance2_check(test::corpus_formula("isTerminal"), to_point(walking_arrow()), {test::element(*arrow, "x")});
        FAIL("expected PreconditionUnmet");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PreconditionUnmet);
    }
}

TEST_CASE("the generated corpus") {
    const auto cats = enumerate_categories(3, 2);
    CHECK(cats.size() == 2282);
    for (const auto& c : cats) CHECK_FALSE(c->validate().has_value());

    const auto infl = inflations(cats, 3);
    CHECK(infl.size() == 2378);
    for (const Functor& f : infl) {
        REQUIRE_FALSE(validate(f).has_value());
        CHECK(oracle_surjective(f));
        CHECK(oracle_fully_faithful(f));
    }

    const auto eqs = equivalences(cats, 3);
    CHECK(eqs.size() == 2984);
    for (const Functor& f : eqs) {
        REQUIRE_FALSE(validate(f).has_value());
        CHECK(is_equivalence(f));
    }
}

TEST_CASE("enumerated categories are pairwise non-isomorphic for two objects") {
    // Two categories are isomorphic when some bijection of objects and
    // arrows preserves sources, targets and composition.
    const auto cats = enumerate_categories(2, 2);
    std::size_t isos = 0;
    for (std::size_t i = 0; i < cats.size(); ++i)
        for (std::size_t j = i + 1; j < cats.size(); ++j) {
            if (cats[i]->object_count() != cats[j]->object_count() ||
                cats[i]->arrow_count() != cats[j]->arrow_count())
                continue;
            for_each_functor(cats[i], cats[j], [&](const Functor& f) {
                if (oracle_surjective(f) && oracle_fully_faithful(f) &&
                    f.source->object_count() == f.target->object_count()) {
                    ++isos;
                    return false;
                }
                return true;
            });
        }
    CHECK(isos == 0);
}
