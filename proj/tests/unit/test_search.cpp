#include "doctest.h"

#include "gatlab/builtin.hpp"
#include "gatlab/io/print.hpp"
#include "gatlab/search.hpp"
#include "support.hpp"

using namespace gatlab;

namespace {

std::shared_ptr<const Theory> sigma(const std::string& name) {
    for (const Signature& s : sample_signatures()) {
        auto th = io::parse_theory(sigma_theory_source(s), "<builtin>").theory;
        if (th->name() == name) return th;
    }
    throw std::runtime_error("no signature " + name);
}

std::size_t count_models(const std::shared_ptr<const Theory>& th, std::size_t bound, bool validate = true) {
    std::size_t n = 0, valid = 0;
    for_each_model(th, bound, [&](const FiniteModel& m) {
        ++n;
        if (!validate || check_model(m).ok) ++valid;
        return true;
    });
    CHECK(valid == n);
    return n;
}

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

TEST_CASE("sample signatures elaborate") {
    const auto graph = sigma("Sig_eq_graph");
    CHECK(graph->sorts().size() == 3);
    CHECK(graph->ops().size() == 1);
    CHECK(graph->equations().size() == 3);
    const auto pointed = sigma("Sig_eq_pointed");
    CHECK(pointed->sorts().size() == 3);
    CHECK(pointed->ops().size() == 2);
    const auto two = sigma("Sig_eq_two_sorted");
    CHECK(two->sorts().size() == 5);
    CHECK(two->ops().size() == 3);
}

TEST_CASE("model counts of sample signatures match closed forms") {
    // Graphs: a vertex set of size n and any relation on it.
    std::size_t graphs = 0;
    for (std::size_t n = 0; n <= 3; ++n) graphs += ipow(2, n * n);
    CHECK(count_models(sigma("Sig_eq_graph"), 3) == graphs);

    // Pointed sets with a predicate: n choices of point, 2^n predicates.
    std::size_t pointed = 0;
    for (std::size_t n = 0; n <= 3; ++n) pointed += n * ipow(2, n);
    CHECK(count_models(sigma("Sig_eq_pointed"), 3) == pointed);

    // Two sorts a, b with a function A → B and a relation on A × B.
    std::size_t two = 0;
    for (std::size_t a = 0; a <= 3; ++a)
        for (std::size_t b = 0; b <= 3; ++b) two += ipow(b, a) * ipow(2, a * b);
    CHECK(count_models(sigma("Sig_eq_two_sorted"), 3, false) == two);
}

TEST_CASE("small Cat models") {
    // Bound 1: the empty category and the point.
    CHECK(count_models(cat_theory(), 1) == 2);
}

TEST_CASE("chain complex theories") {
    auto chain = [](std::size_t n) { return io::parse_theory(chain_theory_source(n), "<builtin>").theory; };
    const auto c3 = chain(3);
    CHECK(c3->sorts().size() == 4);
    CHECK(c3->ops().size() == 8);
    CHECK(c3->equations().size() == 19);

    // Degree 0 is an elementary abelian 2-group with at most two elements
    // (1 or 2 labelled copies). Degree 1 over the trivial group: a group of
    // order 1 or 2 (1 + 2). Over Z/2 (two labellings): C1(1) empty with
    // C1(0) of order 1 or 2 (1 + 2), or C1(1) a coset of C1(0) (1 + 2).
    CHECK(count_models(chain(1), 2) == 1 * (1 + 2) + 2 * ((1 + 2) + (1 + 2)));

    // With every carrier a singleton, each table is forced.
    CHECK(count_models(c3, 1) == 1);
    CHECK(count_models(c3, 2) > 0);
}

TEST_CASE("bicategory theory elaborates") {
    const auto th = io::parse_theory(bicat_eq_theory_source(), "<builtin>").theory;
    CHECK(th->sorts().size() == 4);
    CHECK(th->ops().size() == 12);
    CHECK(th->equations().size() == 13);
}

TEST_CASE("the countermodel search returns the first hit in enumeration order") {
    const auto th = sigma("Sig_eq_graph");
    const Context xy = test::ctx(*th, "(x y: V)");
    const Formula edge = test::formula(*th, xy, "exists (e: E(x, y)). true");
    const Formula back = test::formula(*th, xy, "exists (e: E(y, x)). true");
    const auto hit = find_countermodel(th, xy, edge, back, 2);
    REQUIRE(hit.found);
    const FiniteModel& m = *hit.found->model;
    CHECK(eval_formula(m, edge, hit.found->at));
    CHECK_FALSE(eval_formula(m, back, hit.found->at));

    // No earlier model in the enumeration is a countermodel.
    bool earlier = false;
    for_each_model(th, 2, [&](const FiniteModel& n) {
        for (const Tuple& x : enumerate_context(n, xy))
            if (eval_formula(n, edge, x) && !eval_formula(n, back, x)) {
                earlier = io::print_model(n, "") != io::print_model(m, "");
                return false;
            }
        return true;
    });
    CHECK_FALSE(earlier);
    CHECK_FALSE(find_countermodel(th, xy, edge, edge, 3).found);
}
