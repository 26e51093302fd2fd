#pragma once

#include <string>
#include <vector>

#include "gatlab/syncat.hpp"

namespace gatlab {

/// An equality-free first-order formula. The only atoms are ⊤ and ⊥;
/// content enters through quantification over dependent context
/// extensions. Variables in a quantifier body are levels in the ambient
/// context followed by the extension.
struct Formula {
    enum class Kind : std::uint8_t { Top, Bot, Not, And, Or, Exists, Forall };

    Kind kind = Kind::Top;
    std::vector<Formula> parts; // Not and quantifiers: exactly one (the body)
    std::vector<TypeExpr> ext;
    std::vector<std::string> ext_names;

    static Formula top() { return Formula{Kind::Top, {}, {}, {}}; }
    static Formula bot() { return Formula{Kind::Bot, {}, {}, {}}; }
    static Formula negation(Formula body);
    static Formula conjunction(std::vector<Formula> parts);
    static Formula disjunction(std::vector<Formula> parts);
    /// A zero-length extension yields `body` itself.
    static Formula exists(std::vector<TypeExpr> ext, Formula body,
                          std::vector<std::string> names = {});
    static Formula forall(std::vector<TypeExpr> ext, Formula body,
                          std::vector<std::string> names = {});

    bool is_quantifier() const noexcept { return kind == Kind::Exists || kind == Kind::Forall; }
    const Formula& body() const { return parts.front(); }

    friend bool operator==(const Formula& a, const Formula& b) {
        return a.kind == b.kind && a.ext == b.ext && a.parts == b.parts;
    }
};

std::string_view to_string(Formula::Kind kind);

/// A named formula together with its ambient context.
struct FormulaInContext {
    std::string name;
    Context context;
    Formula formula;
};

std::size_t depth(const Formula& phi);
std::size_t quantifier_depth(const Formula& phi);

/// Throws kernel errors with the formula path prepended.
void wf_formula(const Theory& th, const Context& ctx, const Formula& phi,
                std::size_t fuel = kDefaultFuel);

/// f*φ for f : Δ → Γ and φ in Γ. Quantifier extensions are replaced by the
/// types of the canonical pullback of their display map along f.
Formula subst_formula(const Theory& th, const ContextMorphism& f, const Formula& phi,
                      std::size_t fuel = kDefaultFuel);

/// Surface syntax, as accepted by the formula parser.
std::string to_string(const Theory& th, const Context& ctx, const Formula& phi);

} // namespace gatlab
