#include "gatlab/suite.hpp"

#include <optional>
#include <set>
#include <string>

#include "gatlab/builtin.hpp"
#include "gatlab/parallel.hpp"
#include "gatlab/random.hpp"
#include "gatlab/search.hpp"

namespace gatlab::suite {

namespace {

constexpr std::size_t kAttempts = 64;

using Json = Report::Json;

struct Sample {
    bool drawn = false;
    bool ok = false;
    std::string witness;
};

Tuple apply_morphism(const FiniteModel& m, const ContextMorphism& f, const Tuple& x) {
    Tuple out;
    out.reserve(f.terms.size());
    for (const Term& t : f.terms) out.push_back(eval_term(m, t, x));
    return out;
}

std::size_t length_between(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng.below(hi - lo + 1); }

template <class Run>
std::vector<Sample> run_samples(std::size_t n, Run run) {
    std::vector<Sample> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = run(i); });
    return out;
}

void tally(Report& report, const std::string& name, const std::string& verdict, const std::vector<Sample>& samples,
           std::size_t required) {
    std::size_t drawn = 0, passed = 0;
    const Sample* first = nullptr;
    for (const Sample& s : samples) {
        if (!s.drawn) continue;
        ++drawn;
        if (s.ok)
            ++passed;
        else if (!first)
            first = &s;
    }
    report.add_counter(name, drawn, passed);
    if (first) report.add_witness(name, first->witness);
    Json detail{{"checks", drawn}, {"passed", passed}};
    report.add_verdict(verdict, drawn >= required && passed == drawn, detail);
}

std::string describe_tuple(const FiniteModel& m, const Tuple& x) { return tuple_to_string(m, x); }

void collect_groups(const ProofNode& node, std::set<int>& groups) {
    groups.insert(rule_group(node.rule));
    for (const ProofNode& p : node.premises) collect_groups(p, groups);
}

} // namespace

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + index + 1;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void substitution(Report& report, const std::shared_ptr<const Theory>& th, const SubstitutionOptions& opt) {
    auto samples = run_samples(opt.samples, [&](std::size_t i) {
        Rng rng(sample_seed(opt.seed, i));
        Sample s;
        for (std::size_t attempt = 0; attempt < kAttempts && !s.drawn; ++attempt) {
            const Context theta = random_context(*th, rng, length_between(rng, 1, opt.max_length));
            const Context gamma = random_context(*th, rng, length_between(rng, 1, opt.max_length));
            const Context delta = random_context(*th, rng, length_between(rng, 1, opt.max_length));
            auto g = random_morphism(*th, gamma, theta, rng);
            if (!g) continue;
            auto f = random_morphism(*th, delta, gamma, rng);
            if (!f) continue;
            const Formula phi = random_formula(*th, theta, rng, rng.below(opt.max_depth + 1));
            s.drawn = true;
            try {
                const Formula lhs = subst_formula(*th, compose(*g, *f), phi);
                const Formula rhs = subst_formula(*th, *f, subst_formula(*th, *g, phi));
                s.ok = lhs == rhs;
                if (!s.ok) s.witness = "sample " + std::to_string(i) + ": " + to_string(*th, theta, phi);
            } catch (const Error& e) {
                s.witness = "sample " + std::to_string(i) + ": " + e.describe();
            }
        }
        return s;
    });
    tally(report, "substitution", "substitution is functorial", samples, opt.samples);
}

void naturality(Report& report, const std::vector<CategoryPtr>& categories, const SubstitutionOptions& opt) {
    const auto th = cat_eq_theory();
    auto samples = run_samples(opt.samples, [&](std::size_t i) {
        Rng rng(sample_seed(opt.seed, i));
        Sample s;
        if (categories.empty()) return s;
        for (std::size_t attempt = 0; attempt < kAttempts && !s.drawn; ++attempt) {
            const CategoryPtr& c = categories[rng.below(categories.size())];
            const auto m = to_model(*c);
            const Context gamma = random_context(*th, rng, length_between(rng, 1, opt.max_length));
            const Context delta = random_context(*th, rng, length_between(rng, 1, opt.max_length));
            auto f = random_morphism(*th, delta, gamma, rng);
            if (!f) continue;
            const std::vector<Tuple> xs = enumerate_context(*m, delta);
            if (xs.empty()) continue;
            const Tuple& x = xs[rng.below(xs.size())];
            const Formula psi = random_formula(*th, gamma, rng, rng.below(opt.max_depth + 1));
            s.drawn = true;
            try {
                const bool lhs = eval_formula(*m, subst_formula(*th, *f, psi), x);
                const bool rhs = eval_formula(*m, psi, apply_morphism(*m, *f, x));
                s.ok = lhs == rhs;
                if (!s.ok)
                    s.witness = "sample " + std::to_string(i) + " in " + c->name() + " at " + describe_tuple(*m, x) +
                                ": " + to_string(*th, gamma, psi);
            } catch (const Error& e) {
                s.witness = "sample " + std::to_string(i) + ": " + e.describe();
            }
        }
        return s;
    });
    tally(report, "naturality", "evaluation is natural", samples, opt.samples);
}

FunctorCorpus functor_corpus(std::size_t max_objects, std::size_t max_parallel) {
    FunctorCorpus corpus;
    corpus.categories = enumerate_categories(max_objects, max_parallel);
    corpus.fibrations = inflations(corpus.categories, max_objects);
    corpus.equivalences = equivalences(corpus.categories, max_objects);
    return corpus;
}

void anodyne(Report& report, const FunctorCorpus& corpus, const std::vector<FormulaInContext>& formulas,
             std::size_t cap) {
    struct Outcome {
        bool ff_so = false;
        AnodyneResult anodyne;
        LiftingResult trivial;
        InvarianceReport invariance;
        std::string description;
    };
    const auto& fs = corpus.fibrations;
    std::vector<Outcome> out(fs.size());
    parallel_for(fs.size(), [&](std::size_t i) {
        const Functor& f = fs[i];
        Outcome& o = out[i];
        o.ff_so = is_full(f) && is_faithful(f) && is_surjective_on_objects(f);
        const ModelHom h = to_hom(f);
        o.anodyne = is_anodyne_fibration(h);
        if (o.anodyne.failure) o.description = describe(h, *o.anodyne.failure);
        o.trivial = is_trivial_fibration(f);
        o.invariance = invariance_suite(h, formulas, cap);
        if (o.invariance.first_violation) {
            const auto& v = *o.invariance.first_violation;
            o.description = f.name + ": " + v.formula + " at " + describe_tuple(*h.source, v.at);
        }
    });

    std::size_t ff_so = 0, anodyne_count = 0, trivial = 0;
    InvarianceReport invariance;
    std::optional<std::string> first_not_anodyne, first_not_trivial, first_not_ff_so, first_violation;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const Outcome& o = out[i];
        if (o.ff_so)
            ++ff_so;
        else if (!first_not_ff_so)
            first_not_ff_so = fs[i].name;
        if (o.anodyne.anodyne)
            ++anodyne_count;
        else if (!first_not_anodyne)
            first_not_anodyne = fs[i].name + ": " + o.description;
        if (o.trivial.holds)
            ++trivial;
        else if (!first_not_trivial)
            first_not_trivial = fs[i].name + ": fails lifting against " + o.trivial.generator;
        if (!first_violation && o.invariance.first_violation) first_violation = o.description;
        invariance.merge(o.invariance);
    }
    report.add_counter("anodyne.full_faithful_surjective", fs.size(), ff_so);
    report.add_counter("anodyne.fibrations", fs.size(), anodyne_count);
    report.add_counter("anodyne.trivial_fibrations", fs.size(), trivial);
    report.add_counter("anodyne.invariance", invariance.checks, invariance.agreements);
    if (first_not_ff_so) report.add_witness("anodyne.full_faithful_surjective", *first_not_ff_so);
    if (first_not_anodyne) report.add_witness("anodyne.fibrations", *first_not_anodyne);
    if (first_not_trivial) report.add_witness("anodyne.trivial_fibrations", *first_not_trivial);
    if (first_violation) report.add_witness("anodyne.invariance", *first_violation);

    report.add_verdict("corpus functors are full, faithful and surjective on objects", ff_so == fs.size(),
                       Json{{"functors", fs.size()}});
    report.add_verdict("corpus functors are anodyne fibrations",
                       anodyne_count == fs.size() && trivial == fs.size(), Json{{"functors", fs.size()}});
    report.add_verdict("formulas are invariant under anodyne fibrations", invariance.ok(),
                       Json{{"checks", invariance.checks}, {"agreements", invariance.agreements}});

    // ∅ → 1 is not anodyne, and ∃(y: Ob). ⊤ tells the two apart.
    const auto th = cat_eq_theory();
    const Functor control{"empty_to_point", empty_category(), terminal_category(), {}, {}};
    const ModelHom h = to_hom(control);
    const FormulaInContext exists_object{
        "exists_object", Context{},
        Formula::exists({TypeExpr{*th->find_sort("Ob"), {}}}, Formula::top(), {"y"})};
    const AnodyneResult control_anodyne = is_anodyne_fibration(h);
    const InvarianceReport control_invariance = invariance_suite(h, {exists_object});
    const bool disagrees = !control_invariance.ok();
    if (control_anodyne.failure) report.add_witness("anodyne.negative_control", describe(h, *control_anodyne.failure));
    report.add_verdict("negative control: empty into point is not anodyne and changes exists_object",
                       !control_anodyne.anodyne && disagrees,
                       Json{{"anodyne", control_anodyne.anodyne}, {"disagreement", disagrees}});
}

void beck_chevalley(Report& report, const FunctorCorpus& corpus, const std::vector<FormulaInContext>& formulas) {
    const auto& fs = corpus.fibrations;
    std::vector<std::optional<BeckChevalleyReport>> out(fs.size());
    parallel_for(fs.size(), [&](std::size_t i) {
        const ModelHom h = to_hom(fs[i]);
        if (!is_anodyne_fibration(h).anodyne) return;
        BeckChevalleyReport r = beck_chevalley(h, formulas);
        if (r.first_failure) r.first_failure = fs[i].name + ": " + *r.first_failure;
        out[i] = std::move(r);
    });
    BeckChevalleyReport total;
    std::size_t certified = 0;
    for (const auto& r : out)
        if (r) {
            ++certified;
            total.merge(*r);
        }
    report.add_counter("beck_chevalley.squares", total.squares, total.squares);
    report.add_counter("beck_chevalley.subsets", total.subsets, total.agreements);
    if (total.first_failure) report.add_witness("beck_chevalley", *total.first_failure);
    report.add_verdict("exists commutes with restriction on weak pullback squares", total.ok() && certified > 0,
                       Json{{"homs", certified}, {"squares", total.squares}, {"subsets", total.subsets}});
}

void homotopy(Report& report, const FunctorCorpus& corpus, const std::vector<FormulaInContext>& formulas,
              std::size_t cap) {
    struct Outcome {
        std::size_t checks = 0, agreements = 0, distinct = 0;
        std::optional<std::string> witness;
    };
    const auto& cs = corpus.categories;
    std::vector<Outcome> out(cs.size());
    parallel_for(cs.size(), [&](std::size_t i) {
        const PathObject px = path_object(cs[i]);
        Outcome& o = out[i];
        for (const FormulaInContext& phi : formulas) {
            std::size_t taken = 0;
            for (const auto& [x1, x2] : homotopic_pairs(px, phi.context)) {
                if (cap && taken++ >= cap) break;
                const InvarianceCheck c = invariance1_check(phi, px, x1, x2);
                ++o.checks;
                o.distinct += x1 != x2;
                if (c.agree)
                    ++o.agreements;
                else if (!o.witness)
                    o.witness = cs[i]->name() + ": " + phi.name + " at " + describe_tuple(*px.base_model, x1) +
                                " ~ " + describe_tuple(*px.base_model, x2);
            }
        }
    });
    Outcome total;
    for (const Outcome& o : out) {
        total.checks += o.checks;
        total.agreements += o.agreements;
        total.distinct += o.distinct;
        if (!total.witness && o.witness) total.witness = o.witness;
    }
    report.add_counter("homotopy", total.checks, total.agreements);
    report.add_counter("homotopy.distinct_pairs", total.checks, total.distinct);
    if (total.witness) report.add_witness("homotopy", *total.witness);
    report.add_verdict("homotopic interpretations satisfy the same formulas",
                       total.checks == total.agreements && total.distinct > 0,
                       Json{{"categories", cs.size()}, {"checks", total.checks}, {"distinct_pairs", total.distinct}});
}

void equivalence(Report& report, const FunctorCorpus& corpus, const std::vector<FormulaInContext>& formulas,
                 std::size_t cap) {
    struct Outcome {
        bool equivalence = false;
        bool parity_kept = false;
        InvarianceReport invariance;
        std::string witness;
    };
    const auto& es = corpus.equivalences;
    std::vector<Outcome> out(es.size());
    parallel_for(es.size(), [&](std::size_t i) {
        const Functor& f = es[i];
        Outcome& o = out[i];
        o.equivalence = is_equivalence(f);
        o.parity_kept = f.source->object_count() % 2 == f.target->object_count() % 2;
        const ModelHom h = to_hom(f);
        o.invariance = invariance_suite(h, formulas, cap);
        if (o.invariance.first_violation) {
            const auto& v = *o.invariance.first_violation;
            o.witness = f.name + ": " + v.formula + " at " + describe_tuple(*h.source, v.at);
        }
    });
    std::size_t equivalent = 0, parity_kept = 0;
    InvarianceReport invariance;
    std::optional<std::string> first_violation, first_parity_break, first_not_equivalence;
    for (std::size_t i = 0; i < es.size(); ++i) {
        const Outcome& o = out[i];
        if (o.equivalence)
            ++equivalent;
        else if (!first_not_equivalence)
            first_not_equivalence = es[i].name;
        if (o.parity_kept)
            ++parity_kept;
        else if (!first_parity_break)
            first_parity_break = es[i].name;
        if (!first_violation && o.invariance.first_violation) first_violation = o.witness;
        invariance.merge(o.invariance);
    }
    report.add_counter("equivalence.functors", es.size(), equivalent);
    report.add_counter("equivalence.invariance", invariance.checks, invariance.agreements);
    report.add_counter("equivalence.parity", es.size(), parity_kept);
    if (first_not_equivalence) report.add_witness("equivalence.functors", *first_not_equivalence);
    if (first_violation) report.add_witness("equivalence.invariance", *first_violation);
    if (first_parity_break) report.add_witness("equivalence.parity", *first_parity_break);
    report.add_verdict("corpus functors are equivalences", equivalent == es.size(), Json{{"functors", es.size()}});
    report.add_verdict("formulas are invariant under equivalences", invariance.ok(),
                       Json{{"checks", invariance.checks}, {"agreements", invariance.agreements}});
    report.add_verdict("parity of the object count is not invariant", parity_kept < es.size(),
                       Json{{"equivalences", es.size()}, {"parity_kept", parity_kept}});
}

void proofs(Report& report, const std::vector<std::shared_ptr<const io::ProofFile>>& library, std::size_t bound) {
    struct Outcome {
        bool pass = false;
        Json detail;
        std::set<int> groups;
        std::size_t models = 0;
    };
    std::vector<Outcome> out(library.size());
    parallel_for(library.size(), [&](std::size_t i) {
        const io::ProofFile& pf = *library[i];
        Outcome& o = out[i];
        const ProofVerdict v = check_proof(*pf.theory, pf.root);
        if (pf.expect_reject) {
            o.pass = !v.accepted && v.failing_rule == *pf.expect_reject;
            o.detail = Json{{"expected", *pf.expect_reject},
                            {"accepted", v.accepted},
                            {"failing_rule", v.failing_rule},
                            {"path", v.path}};
            return;
        }
        o.detail = Json{{"accepted", v.accepted}};
        if (!v.accepted) {
            o.detail["failing_rule"] = v.failing_rule;
            o.detail["path"] = v.path;
            o.detail["message"] = v.message;
            return;
        }
        collect_groups(pf.root, o.groups);
        const CountermodelSearch search =
            find_countermodel(pf.theory, v.conclusion.context, v.conclusion.lhs, v.conclusion.rhs, bound);
        o.models = search.stats.models;
        o.detail["models_searched"] = search.stats.models;
        o.detail["countermodel"] = search.found.has_value();
        o.pass = !search.found;
    });
    std::set<int> groups;
    std::size_t accepted = 0, accepted_ok = 0, broken = 0, broken_ok = 0, models = 0;
    for (std::size_t i = 0; i < library.size(); ++i) {
        const Outcome& o = out[i];
        const bool expect_reject = library[i]->expect_reject.has_value();
        (expect_reject ? broken : accepted)++;
        if (o.pass) (expect_reject ? broken_ok : accepted_ok)++;
        groups.insert(o.groups.begin(), o.groups.end());
        models += o.models;
        const std::string name = library[i]->name + (expect_reject ? " is rejected" : " is sound");
        report.add_verdict("proof " + name, o.pass, o.detail);
    }
    report.add_counter("proofs.sound", accepted, accepted_ok);
    report.add_counter("proofs.rejected", broken, broken_ok);
    report.add_counter("proofs.models_searched", models, models);
    Json covered = Json::array();
    for (int g : groups) covered.push_back(g);
    report.add_verdict("accepted proofs cover rule groups 1 to 5", groups == std::set<int>{1, 2, 3, 4, 5},
                       Json{{"groups", covered}});
}

} // namespace gatlab::suite
