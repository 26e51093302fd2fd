#include "gatlab/proof.hpp"

#include <array>
#include <utility>

namespace gatlab {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 14> kRuleNames{{
    {Rule::Refl, "refl"},
    {Rule::Trans, "trans"},
    {Rule::Top, "top"},
    {Rule::Bot, "bot"},
    {Rule::NonContradiction, "non-contradiction"},
    {Rule::ExcludedMiddle, "excluded-middle"},
    {Rule::OrIntro, "or-intro"},
    {Rule::OrElim, "or-elim"},
    {Rule::AndIntro, "and-intro"},
    {Rule::AndElim, "and-elim"},
    {Rule::ExistsAdj, "exists-adj"},
    {Rule::ExistsAdjInv, "exists-adj-inv"},
    {Rule::ForallAdj, "forall-adj"},
    {Rule::ForallAdjInv, "forall-adj-inv"},
}};

class Checker {
public:
    Checker(const Theory& th, std::size_t fuel) : th_(th), fuel_(fuel) {}

    ProofVerdict run(const ProofNode& root) {
        ProofVerdict v;
        try {
            check(root, "root");
            v.accepted = true;
            v.conclusion = root.conclusion;
        } catch (const Failure& f) {
            v.accepted = false;
            v.error = f.kind;
            v.failing_rule = f.rule;
            v.path = f.path;
            v.message = f.message;
        }
        return v;
    }

private:
    struct Failure {
        ErrorKind kind;
        std::string rule;
        std::string path;
        std::string message;
    };

    [[noreturn]] void fail(const ProofNode& n, const std::string& path, ErrorKind kind,
                           const std::string& message) {
        throw Failure{kind, std::string(to_string(n.rule)), path, message};
    }

    void expect(bool ok, const ProofNode& n, const std::string& path, const std::string& what) {
        if (!ok) fail(n, path, ErrorKind::RuleMismatch, what);
    }

    void expect_context(const Context& actual, const Context& expected, const ProofNode& n,
                        const std::string& path, const std::string& what) {
        if (!(actual == expected))
            fail(n, path, ErrorKind::ContextMismatch,
                 what + ": expected context " + th_.to_string(expected) + ", got " +
                     th_.to_string(actual));
    }

    void expect_premises(const ProofNode& n, const std::string& path, std::size_t count) {
        if (n.premises.size() != count)
            fail(n, path, ErrorKind::RuleMismatch,
                 "expects " + std::to_string(count) + " premise(s), got " +
                     std::to_string(n.premises.size()));
    }

    /// p*φ along the display Γ.ext ↠ Γ.
    Formula pull_along_display(const Context& base, const std::vector<TypeExpr>& ext,
                               const std::vector<std::string>& names, const Formula& phi) {
        DisplayMap p = display(base.extended(ext, names), base.size());
        return subst_formula(th_, p.morphism(), phi, fuel_);
    }

    void check(const ProofNode& n, const std::string& path) {
        const Sequent& s = n.conclusion;
        try {
            check_context(th_, s.context, fuel_);
            wf_formula(th_, s.context, s.lhs, fuel_);
            wf_formula(th_, s.context, s.rhs, fuel_);
        } catch (const Error& e) {
            fail(n, path, e.kind(), std::string("ill-formed sequent: ") + e.what() +
                                        (e.path().empty() ? "" : " at " + e.path()));
        }
        for (std::size_t i = 0; i < n.premises.size(); ++i)
            check(n.premises[i], path + "." + std::to_string(i));

        using K = Formula::Kind;
        switch (n.rule) {
        case Rule::Refl:
            expect_premises(n, path, 0);
            expect(s.lhs == s.rhs, n, path, "refl needs identical sides");
            return;
        case Rule::Trans: {
            expect_premises(n, path, 2);
            const Sequent& a = n.premises[0].conclusion;
            const Sequent& b = n.premises[1].conclusion;
            expect_context(a.context, s.context, n, path, "first premise");
            expect_context(b.context, s.context, n, path, "second premise");
            expect(a.lhs == s.lhs, n, path, "first premise must start from the conclusion's left side");
            expect(a.rhs == b.lhs, n, path, "premises must share the middle formula");
            expect(b.rhs == s.rhs, n, path, "second premise must end at the conclusion's right side");
            return;
        }
        case Rule::Top:
            expect_premises(n, path, 0);
            expect(s.rhs.kind == K::Top, n, path, "right side must be true");
            return;
        case Rule::Bot:
            expect_premises(n, path, 0);
            expect(s.lhs.kind == K::Bot, n, path, "left side must be false");
            return;
        case Rule::NonContradiction:
            expect_premises(n, path, 0);
            expect(s.lhs.kind == K::And && s.lhs.parts.size() == 2 &&
                       s.lhs.parts[1] == Formula::negation(s.lhs.parts[0]),
                   n, path, "left side must be and(P, not(P))");
            expect(s.rhs.kind == K::Bot, n, path, "right side must be false");
            return;
        case Rule::ExcludedMiddle:
            expect_premises(n, path, 0);
            expect(s.lhs.kind == K::Top, n, path, "left side must be true");
            expect(s.rhs.kind == K::Or && s.rhs.parts.size() == 2 &&
                       s.rhs.parts[1] == Formula::negation(s.rhs.parts[0]),
                   n, path, "right side must be or(P, not(P))");
            return;
        case Rule::OrIntro: {
            expect(s.lhs.kind == K::Or, n, path, "left side must be a disjunction");
            expect_premises(n, path, s.lhs.parts.size());
            for (std::size_t i = 0; i < n.premises.size(); ++i) {
                const Sequent& p = n.premises[i].conclusion;
                expect_context(p.context, s.context, n, path, "premise " + std::to_string(i));
                expect(p.lhs == s.lhs.parts[i] && p.rhs == s.rhs, n, path,
                       "premise " + std::to_string(i) + " must be disjunct " + std::to_string(i) +
                           " ⊢ right side");
            }
            return;
        }
        case Rule::OrElim: {
            expect_premises(n, path, 1);
            const Sequent& p = n.premises[0].conclusion;
            expect_context(p.context, s.context, n, path, "premise");
            expect(p.lhs.kind == K::Or, n, path, "premise left side must be a disjunction");
            expect(n.index && *n.index < p.lhs.parts.size(), n, path, "missing or invalid :index");
            expect(s.lhs == p.lhs.parts[*n.index], n, path, "left side must be the chosen disjunct");
            expect(s.rhs == p.rhs, n, path, "right side must match the premise");
            return;
        }
        case Rule::AndIntro: {
            expect(s.rhs.kind == K::And, n, path, "right side must be a conjunction");
            expect_premises(n, path, s.rhs.parts.size());
            for (std::size_t i = 0; i < n.premises.size(); ++i) {
                const Sequent& p = n.premises[i].conclusion;
                expect_context(p.context, s.context, n, path, "premise " + std::to_string(i));
                expect(p.lhs == s.lhs && p.rhs == s.rhs.parts[i], n, path,
                       "premise " + std::to_string(i) + " must be left side ⊢ conjunct " +
                           std::to_string(i));
            }
            return;
        }
        case Rule::AndElim: {
            expect_premises(n, path, 1);
            const Sequent& p = n.premises[0].conclusion;
            expect_context(p.context, s.context, n, path, "premise");
            expect(p.rhs.kind == K::And, n, path, "premise right side must be a conjunction");
            expect(n.index && *n.index < p.rhs.parts.size(), n, path, "missing or invalid :index");
            expect(s.rhs == p.rhs.parts[*n.index], n, path, "right side must be the chosen conjunct");
            expect(s.lhs == p.lhs, n, path, "left side must match the premise");
            return;
        }
        case Rule::ExistsAdj: {
            // Ψ ⊢_{Γ.ext} p*Φ  gives  ∃ext Ψ ⊢_Γ Φ
            expect_premises(n, path, 1);
            expect(s.lhs.kind == K::Exists, n, path, "left side must be an existential");
            const Sequent& p = n.premises[0].conclusion;
            expect_context(p.context, s.context.extended(s.lhs.ext, s.lhs.ext_names), n, path,
                           "premise");
            expect(p.lhs == s.lhs.body(), n, path, "premise left side must be the quantified body");
            expect(p.rhs == pull_along_display(s.context, s.lhs.ext, s.lhs.ext_names, s.rhs), n,
                   path, "premise right side must be the right side pulled back along the display");
            return;
        }
        case Rule::ExistsAdjInv: {
            // ∃ext Ψ ⊢_Γ Φ  gives  Ψ ⊢_{Γ.ext} p*Φ
            expect_premises(n, path, 1);
            const Sequent& p = n.premises[0].conclusion;
            expect(p.lhs.kind == K::Exists, n, path, "premise left side must be an existential");
            expect_context(s.context, p.context.extended(p.lhs.ext, p.lhs.ext_names), n, path,
                           "conclusion");
            expect(s.lhs == p.lhs.body(), n, path, "left side must be the quantified body");
            expect(s.rhs == pull_along_display(p.context, p.lhs.ext, p.lhs.ext_names, p.rhs), n,
                   path, "right side must be the premise's right side pulled back");
            return;
        }
        case Rule::ForallAdj: {
            // p*Φ ⊢_{Γ.ext} Ψ  gives  Φ ⊢_Γ ∀ext Ψ
            expect_premises(n, path, 1);
            expect(s.rhs.kind == K::Forall, n, path, "right side must be a universal");
            const Sequent& p = n.premises[0].conclusion;
            expect_context(p.context, s.context.extended(s.rhs.ext, s.rhs.ext_names), n, path,
                           "premise");
            expect(p.rhs == s.rhs.body(), n, path, "premise right side must be the quantified body");
            expect(p.lhs == pull_along_display(s.context, s.rhs.ext, s.rhs.ext_names, s.lhs), n,
                   path, "premise left side must be the left side pulled back along the display");
            return;
        }
        case Rule::ForallAdjInv: {
            // Φ ⊢_Γ ∀ext Ψ  gives  p*Φ ⊢_{Γ.ext} Ψ
            expect_premises(n, path, 1);
            const Sequent& p = n.premises[0].conclusion;
            expect(p.rhs.kind == K::Forall, n, path, "premise right side must be a universal");
            expect_context(s.context, p.context.extended(p.rhs.ext, p.rhs.ext_names), n, path,
                           "conclusion");
            expect(s.rhs == p.rhs.body(), n, path, "right side must be the quantified body");
            expect(s.lhs == pull_along_display(p.context, p.rhs.ext, p.rhs.ext_names, p.lhs), n,
                   path, "left side must be the premise's left side pulled back");
            return;
        }
        }
    }

    const Theory& th_;
    std::size_t fuel_;
};

} // namespace

std::string_view to_string(Rule rule) {
    for (const auto& [r, name] : kRuleNames)
        if (r == rule) return name;
    return "?";
}

std::optional<Rule> rule_from_string(std::string_view name) {
    for (const auto& [r, n] : kRuleNames)
        if (n == name) return r;
    return std::nullopt;
}

int rule_group(Rule rule) {
    switch (rule) {
    case Rule::Refl:
    case Rule::Trans: return 1;
    case Rule::Top:
    case Rule::Bot: return 2;
    case Rule::NonContradiction:
    case Rule::ExcludedMiddle: return 3;
    case Rule::OrIntro:
    case Rule::OrElim:
    case Rule::AndIntro:
    case Rule::AndElim: return 4;
    case Rule::ExistsAdj:
    case Rule::ExistsAdjInv:
    case Rule::ForallAdj:
    case Rule::ForallAdjInv: return 5;
    }
    return 0;
}

ProofVerdict check_proof(const Theory& th, const ProofNode& root, std::size_t fuel) {
    return Checker(th, fuel).run(root);
}

} // namespace gatlab
