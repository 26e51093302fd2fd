// One line per acceptance criterion. Exit status 0 iff every line passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "gatlab/builtin.hpp"
#include "gatlab/category.hpp"
#include "gatlab/io/parse.hpp"
#include "gatlab/io/report.hpp"
#include "gatlab/io/workspace.hpp"
#include "gatlab/model.hpp"
#include "gatlab/random.hpp"
#include "gatlab/suite.hpp"

using namespace gatlab;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned limits.
constexpr double kC1Seconds = 1.0;
constexpr double kC2Seconds = 10.0;
constexpr double kC3Seconds = 60.0;
constexpr double kC4Seconds = 300.0;
constexpr double kC5Seconds = 300.0;
constexpr double kC6Seconds = 60.0;
constexpr double kC7Seconds = 60.0;
constexpr double kC8Seconds = 60.0;
constexpr std::size_t kSubstitutionSamples = 1000;  // at least 500
constexpr std::size_t kNaturalitySamples = 1000;    // at least 500
constexpr std::size_t kOracleCases = 1200;          // at least 1000
constexpr std::size_t kMinProofs = 10;
constexpr std::size_t kProofBound = 3;
constexpr std::uint64_t kSeed = 0;

const std::string kCorpus = GATLAB_CORPUS_DIR;

std::string path(const std::string& rel) { return kCorpus + "/" + rel; }

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Line {
    std::string id;
    bool pass = false;
    std::string detail;
};

std::vector<Line> lines;

void emit(const std::string& id, bool pass, const std::string& detail) {
    lines.push_back({id, pass, detail});
    std::cout << id << ' ' << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
}

std::string fmt_time(double s, double limit) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s (limit %.0f s)", s, limit);
    return buf;
}

std::size_t counter_checks(const io::Report& r, const std::string& name) {
    return r.to_json(false)["counters"][name]["checks"].get<std::size_t>();
}

std::size_t counter_passed(const io::Report& r, const std::string& name) {
    return r.to_json(false)["counters"][name]["passed"].get<std::size_t>();
}

bool verdict(const io::Report& r, const std::string& name) {
    for (const auto& v : r.verdicts())
        if (v["name"] == name) return v["pass"].get<bool>();
    return false;
}

// ---------------------------------------------------------------------------
// A naive interpreter read directly off the six clauses. It shares no
// evaluation code with the library: it walks the tables itself.

struct Naive {
    const FiniteModel& m;

    Elem term(const Term& t, const Tuple& x) const {
        if (t.is_var()) return x.at(t.index);
        Tuple args;
        for (const Term& a : t.args) args.push_back(term(a, x));
        return *m.op_value(t.index, args);
    }

    std::vector<Elem> carrier(const TypeExpr& a, const Tuple& x) const {
        Tuple index;
        for (const Term& t : a.args) index.push_back(term(t, x));
        const auto* c = m.carrier(a.sort, index);
        return c ? *c : std::vector<Elem>{};
    }

    // {y ∈ M(Γ.ext) | p(y) = x}.
    std::vector<Tuple> fibre(const Tuple& x, const std::vector<TypeExpr>& ext) const {
        std::vector<Tuple> layer{x};
        for (const TypeExpr& a : ext) {
            std::vector<Tuple> next;
            for (const Tuple& y : layer)
                for (Elem e : carrier(a, y)) {
                    Tuple z = y;
                    z.push_back(e);
                    next.push_back(std::move(z));
                }
            layer = std::move(next);
        }
        return layer;
    }

    bool holds(const Formula& phi, const Tuple& x) const {
        switch (phi.kind) {
        case Formula::Kind::Top: return true;
        case Formula::Kind::Bot: return false;
        case Formula::Kind::Not: return !holds(phi.parts[0], x);
        case Formula::Kind::And: {
            bool all = true;
            for (const Formula& p : phi.parts) all = holds(p, x) && all;
            return all;
        }
        case Formula::Kind::Or: {
            bool any = false;
            for (const Formula& p : phi.parts) any = holds(p, x) || any;
            return any;
        }
        case Formula::Kind::Exists: {
            bool any = false;
            for (const Tuple& y : fibre(x, phi.ext)) any = holds(phi.parts[0], y) || any;
            return any;
        }
        case Formula::Kind::Forall: {
            bool all = true;
            for (const Tuple& y : fibre(x, phi.ext)) all = holds(phi.parts[0], y) && all;
            return all;
        }
        }
        return false;
    }
};

void oracle(io::Report& report, const std::vector<CategoryPtr>& cats, const std::vector<FormulaInContext>& corpus) {
    const auto th = cat_eq_theory();
    std::size_t cases = 0, agree = 0, truths = 0;
    std::size_t random_cases = 0;
    std::string first;
    auto compare = [&](const FiniteModel& m, const Formula& phi, const Tuple& x, const std::string& what) {
        const bool main = eval_formula(m, phi, x);
        const bool naive = Naive{m}.holds(phi, x);
        ++cases;
        if (main == naive) ++agree;
        else if (first.empty()) first = what;
        if (main) ++truths;
    };

    // Seeded random (model, formula, element) cases of quantifier depth ≤ 2.
    for (std::size_t i = 0; i < kOracleCases; ++i) {
        Rng rng(suite::sample_seed(kSeed, i));
        for (int attempt = 0; attempt < 64; ++attempt) {
            const CategoryPtr& c = cats[rng.below(cats.size())];
            const auto m = to_model(*c);
            const Context gamma = random_context(*th, rng, 1 + rng.below(3));
            const auto xs = enumerate_context(*m, gamma);
            if (xs.empty()) continue;
            const Formula phi = random_formula(*th, gamma, rng, rng.below(3));
            if (quantifier_depth(phi) > 2) continue;
            compare(*m, phi, xs[rng.below(xs.size())], "sample " + std::to_string(i) + " in " + c->name());
            ++random_cases;
            break;
        }
    }
    // The six corpus formulas at every element of every category with at most two objects.
    for (const CategoryPtr& c : cats) {
        if (c->object_count() > 2) continue;
        const auto m = to_model(*c);
        for (const FormulaInContext& f : corpus)
            for (const Tuple& x : enumerate_context(*m, f.context)) compare(*m, f.formula, x, f.name + " in " + c->name());
    }
    report.add_counter("oracle", cases, agree);
    report.add_counter("oracle.true", cases, truths);
    report.add_counter("oracle.random", kOracleCases, random_cases);
    io::Report::Json detail = io::Report::Json::object();
    if (!first.empty()) detail["first_disagreement"] = first;
    report.add_verdict("eval agrees with the naive interpreter", cases == agree && random_cases == kOracleCases, detail);
}

// ---------------------------------------------------------------------------

struct Run {
    io::Report substitution{"substitution"};
    io::Report naturality{"naturality"};
    io::Report anodyne{"anodyne"};
    io::Report homotopy{"homotopy"};
    io::Report proofs{"proofs"};
    io::Report oracle{"oracle"};
    io::Report beck_chevalley{"beck_chevalley"};
    double t_substitution = 0, t_naturality = 0, t_anodyne = 0, t_homotopy = 0, t_proofs = 0, t_oracle = 0,
           t_beck = 0;
    std::size_t accepted_proofs = 0;

    std::string dump() const {
        std::string out;
        for (const io::Report* r : {&substitution, &naturality, &anodyne, &homotopy, &proofs, &oracle, &beck_chevalley})
            out += r->dump(false);
        return out;
    }
};

Run run_suites() {
    Run run;
    io::Workspace ws;
    const auto formulas = ws.formulas(path("formulas/corpus.gfm"))->formulas;

    suite::SubstitutionOptions sub;
    sub.seed = kSeed;
    sub.samples = kSubstitutionSamples;
    auto t0 = Clock::now();
    suite::substitution(run.substitution, cat_eq_theory(), sub);
    run.t_substitution = seconds_since(t0);

    t0 = Clock::now();
    const suite::FunctorCorpus corpus = suite::functor_corpus(3, 2);
    const double t_corpus = seconds_since(t0);

    sub.samples = kNaturalitySamples;
    t0 = Clock::now();
    suite::naturality(run.naturality, corpus.categories, sub);
    run.t_naturality = seconds_since(t0);

    t0 = Clock::now();
    suite::anodyne(run.anodyne, corpus, formulas);
    run.t_anodyne = seconds_since(t0) + t_corpus;

    t0 = Clock::now();
    suite::homotopy(run.homotopy, corpus, formulas);
    suite::equivalence(run.homotopy, corpus, formulas);
    run.t_homotopy = seconds_since(t0) + t_corpus;

    t0 = Clock::now();
    const std::string config_path = path("suites/acceptance.toml");
    const io::SuiteConfig cfg = ws.config(config_path);
    std::vector<std::shared_ptr<const io::ProofFile>> library;
    for (const std::string& ref : cfg.get_list("proofs")) {
        library.push_back(ws.proof(io::resolve_path(config_path, ref)));
        if (!library.back()->expect_reject) ++run.accepted_proofs;
    }
    suite::proofs(run.proofs, library, kProofBound);
    run.t_proofs = seconds_since(t0);

    t0 = Clock::now();
    oracle(run.oracle, corpus.categories, formulas);
    run.t_oracle = seconds_since(t0);

    t0 = Clock::now();
    suite::beck_chevalley(run.beck_chevalley, corpus, formulas);
    run.t_beck = seconds_since(t0);
    return run;
}

void criterion1() {
    const auto t0 = Clock::now();
    io::Workspace ws;
    struct Expect {
        std::string file;
        std::size_t sorts, ops, equations;
    };
    const std::vector<Expect> theories = {
        {"theories/cat.gat", 2, 2, 3},         {"theories/cat_eq.gat", 3, 3, 5},
        {"theories/sig_eq_graph.gat", 3, 1, 3}, {"theories/sig_eq_pointed.gat", 3, 2, 3},
        {"theories/sig_eq_two_sorted.gat", 5, 3, 5}, {"theories/bicat_eq.gat", 4, 12, 13},
        {"theories/chain_f2_3.gat", 4, 8, 19},
    };
    std::size_t ok = 0;
    std::string problems;
    for (const Expect& e : theories) {
        try {
            const auto th = ws.theory(path(e.file));
            if (th->sorts().size() == e.sorts && th->ops().size() == e.ops && th->equations().size() == e.equations)
                ++ok;
            else
                problems += " " + e.file + " has unexpected size;";
        } catch (const Error& err) {
            problems += " " + e.file + ": " + err.describe() + ";";
        }
    }
    auto rejected = [&](const std::string& file, ErrorKind kind) {
        try {
            ws.formulas(path(file));
        } catch (const Error& e) {
            if (e.kind() == kind) return true;
            problems += " " + file + " rejected with " + std::string(to_string(e.kind())) + ";";
            return false;
        }
        problems += " " + file + " accepted;";
        return false;
    };
    const bool skeletal = rejected("formulas/skeletal.gfm", ErrorKind::Syntax);
    const bool isos = rejected("formulas/identities_only_isos.gfm", ErrorKind::TypeMismatch);
    const double t = seconds_since(t0);
    const bool pass = ok == theories.size() && skeletal && isos && t < kC1Seconds;
    emit("C1", pass,
         "elaboration: " + std::to_string(ok) + "/" + std::to_string(theories.size()) +
             " theories, skeletal rejected (Syntax), identities-only-isos rejected (TypeMismatch), " + fmt_time(t, kC1Seconds) +
             problems);
}

} // namespace

int main() {
    criterion1();

    const Run run = run_suites();

    {
        const std::size_t n = counter_checks(run.substitution, "substitution");
        const bool pass = run.substitution.ok() && n >= 500 && n == counter_passed(run.substitution, "substitution") &&
                          run.t_substitution < kC2Seconds;
        emit("C2", pass,
             "substitution functoriality: " + std::to_string(counter_passed(run.substitution, "substitution")) + "/" +
                 std::to_string(n) + " triples, " + fmt_time(run.t_substitution, kC2Seconds));
    }
    {
        const std::size_t n = counter_checks(run.naturality, "naturality");
        const bool pass = run.naturality.ok() && n >= 500 && n == counter_passed(run.naturality, "naturality") &&
                          run.t_naturality < kC3Seconds;
        emit("C3", pass,
             "evaluation naturality: " + std::to_string(counter_passed(run.naturality, "naturality")) + "/" +
                 std::to_string(n) + " triples, " + fmt_time(run.t_naturality, kC3Seconds));
    }
    {
        const std::size_t functors = counter_checks(run.anodyne, "anodyne.fibrations");
        const std::size_t inv = counter_checks(run.anodyne, "anodyne.invariance");
        const bool control = verdict(run.anodyne, "negative control: empty into point is not anodyne and changes exists_object");
        const bool pass = run.anodyne.ok() && functors > 0 && inv == counter_passed(run.anodyne, "anodyne.invariance") &&
                          run.t_anodyne < kC4Seconds;
        emit("C4", pass,
             "anodyne invariance: " + std::to_string(counter_passed(run.anodyne, "anodyne.fibrations")) + "/" +
                 std::to_string(functors) + " functors anodyne, " + std::to_string(counter_passed(run.anodyne, "anodyne.invariance")) +
                 "/" + std::to_string(inv) + " evaluations agree, negative control " + (control ? "detected" : "see report") +
                 ", " + fmt_time(run.t_anodyne, kC4Seconds));
    }
    {
        const std::size_t h = counter_checks(run.homotopy, "homotopy");
        const std::size_t e = counter_checks(run.homotopy, "equivalence.invariance");
        const bool parity = verdict(run.homotopy, "parity of the object count is not invariant");
        const bool pass = run.homotopy.ok() && h > 0 && e > 0 && parity && run.t_homotopy < kC5Seconds;
        emit("C5", pass,
             "invariance on Cat: " + std::to_string(counter_passed(run.homotopy, "homotopy")) + "/" + std::to_string(h) +
                 " homotopic-pair checks, " + std::to_string(counter_passed(run.homotopy, "equivalence.invariance")) + "/" +
                 std::to_string(e) + " equivalence checks over " +
                 std::to_string(counter_checks(run.homotopy, "equivalence.functors")) +
                 " equivalences, parity broken: " + (parity ? "yes" : "no") + ", " + fmt_time(run.t_homotopy, kC5Seconds));
    }
    {
        const std::size_t sound = counter_passed(run.proofs, "proofs.sound");
        const std::size_t rejected = counter_passed(run.proofs, "proofs.rejected");
        const bool groups = verdict(run.proofs, "accepted proofs cover rule groups 1 to 5");
        const bool pass = run.proofs.ok() && run.accepted_proofs >= kMinProofs && sound == run.accepted_proofs && groups &&
                          rejected == counter_checks(run.proofs, "proofs.rejected") && run.t_proofs < kC6Seconds;
        emit("C6", pass,
             "proof soundness: " + std::to_string(sound) + "/" + std::to_string(run.accepted_proofs) +
                 " accepted proofs without countermodel at bound " + std::to_string(kProofBound) + ", " +
                 std::to_string(rejected) + "/" + std::to_string(counter_checks(run.proofs, "proofs.rejected")) +
                 " broken proofs rejected at the expected rule, groups 1-5 " + (groups ? "covered" : "missing") + ", " +
                 fmt_time(run.t_proofs, kC6Seconds));
    }
    {
        const std::size_t n = counter_checks(run.oracle, "oracle");
        const std::size_t truths = counter_passed(run.oracle, "oracle.true");
        const bool pass = run.oracle.ok() && counter_passed(run.oracle, "oracle.random") >= 1000 && truths > 0 && truths < n && run.t_oracle < kC7Seconds;
        emit("C7", pass,
             "oracle equivalence: " + std::to_string(counter_passed(run.oracle, "oracle")) + "/" + std::to_string(n) +
 " cases agree (" + std::to_string(counter_passed(run.oracle, "oracle.random")) + " random, " +
                 std::to_string(truths) + " true), " + fmt_time(run.t_oracle, kC7Seconds));
    }
    {
        const std::size_t squares = counter_checks(run.beck_chevalley, "beck_chevalley.squares");
        const std::size_t subsets = counter_checks(run.beck_chevalley, "beck_chevalley.subsets");
        const bool pass = run.beck_chevalley.ok() && squares > 0 &&
                          subsets == counter_passed(run.beck_chevalley, "beck_chevalley.subsets") && run.t_beck < kC8Seconds;
        emit("C8", pass,
             "Beck-Chevalley: " + std::to_string(counter_passed(run.beck_chevalley, "beck_chevalley.subsets")) + "/" +
                 std::to_string(subsets) + " subsets over " + std::to_string(squares) + " squares, " +
                 fmt_time(run.t_beck, kC8Seconds));
    }
    {
        const std::string first = run.dump();
        const std::string second = run_suites().dump();
        emit("C9", first == second,
             "determinism: two seed-0 runs of C2-C8 give " + std::string(first == second ? "identical" : "different") +
                 " reports (" + std::to_string(first.size()) + " bytes)");
    }

    bool all = true;
    for (const Line& l : lines) all = all && l.pass;
    std::cout << (all ? "all criteria pass" : "some criteria fail") << std::endl;
    return all ? 0 : 1;
}
