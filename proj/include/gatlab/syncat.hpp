#pragma once

#include <vector>

#include "gatlab/kernel.hpp"

namespace gatlab {

/// A substitution ⟨t_0, ..., t_{n-1}⟩ : dom → cod, one term per entry of cod.
struct ContextMorphism {
    Context dom;
    Context cod;
    std::vector<Term> terms;

    friend bool operator==(const ContextMorphism& a, const ContextMorphism& b) {
        return a.dom == b.dom && a.cod == b.cod && a.terms == b.terms;
    }
};

/// Projection of `total` onto its prefix of length `base_length`.
struct DisplayMap {
    Context total;
    std::size_t base_length = 0;

    Context base() const { return total.prefix(base_length); }
    std::vector<TypeExpr> extension() const { return total.suffix(base_length); }
    ContextMorphism morphism() const;
};

/// Checks that every term has the substituted type of its cod entry.
void check_morphism(const Theory& th, const ContextMorphism& f, std::size_t fuel = kDefaultFuel);

ContextMorphism identity(const Context& ctx);

/// g ∘ f, substituting f's terms into g's. Requires f.cod == g.dom.
ContextMorphism compose(const ContextMorphism& g, const ContextMorphism& f);

/// Throws RangeError when k > |total|.
DisplayMap display(const Context& total, std::size_t k);

struct DisplayPullback {
    Context context;         // Δ' = Δ extended by the substituted types
    DisplayMap display;      // Δ' ↠ Δ
    ContextMorphism lift;    // q : Δ' → Γ'
};

/// Canonical pullback of p : Γ' ↠ Γ along f : Δ → Γ. The extension of Δ'
/// lists the entries of Γ' beyond Γ with f's terms substituted, in order.
/// Throws DomainMismatch when f.cod differs from p's base and
/// EqualityUndecided when a substituted entry fails to re-check.
DisplayPullback pullback_display(const Theory& th, const ContextMorphism& f, const DisplayMap& p,
                                 std::size_t fuel = kDefaultFuel);

/// The substituted extension alone: types of Γ' beyond Γ instantiated by
/// f's terms, with the extension's own variables shifted to follow Δ.
std::vector<TypeExpr> pullback_extension(const std::vector<Term>& terms, std::size_t dom_length,
                                         const std::vector<TypeExpr>& extension);

/// f's terms followed by the fresh extension variables: the lift of a
/// substitution through `ext_length` new entries.
std::vector<Term> lift_terms(const std::vector<Term>& terms, std::size_t dom_length,
                             std::size_t ext_length);

} // namespace gatlab
