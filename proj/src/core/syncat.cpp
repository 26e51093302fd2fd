#include "gatlab/syncat.hpp"

namespace gatlab {

ContextMorphism DisplayMap::morphism() const {
    return ContextMorphism{total, base(), identity_subst(base_length)};
}

void check_morphism(const Theory& th, const ContextMorphism& f, std::size_t fuel) {
    if (f.terms.size() != f.cod.size())
        throw Error(ErrorKind::ArityMismatch, "morphism has " + std::to_string(f.terms.size()) +
                                                  " terms for a codomain of length " +
                                                  std::to_string(f.cod.size()));
    for (std::size_t b = 0; b < f.terms.size(); ++b) {
        TypeExpr expected = substitute(f.cod[b], std::span(f.terms.data(), b));
        try {
            check_term(th, f.dom, f.terms[b], expected, fuel);
        } catch (const Error& e) {
            throw e.within("component " + std::to_string(b));
        }
    }
}

ContextMorphism identity(const Context& ctx) {
    return ContextMorphism{ctx, ctx, identity_subst(ctx.size())};
}

ContextMorphism compose(const ContextMorphism& g, const ContextMorphism& f) {
    if (!(f.cod == g.dom))
        throw Error(ErrorKind::DomainMismatch, "cannot compose: codomain of the first morphism "
                                               "differs from the domain of the second");
    std::vector<Term> terms;
    terms.reserve(g.terms.size());
    for (const Term& t : g.terms) terms.push_back(substitute(t, f.terms));
    return ContextMorphism{f.dom, g.cod, std::move(terms)};
}

DisplayMap display(const Context& total, std::size_t k) {
    if (k > total.size())
        throw Error(ErrorKind::RangeError, "display prefix length " + std::to_string(k) +
                                               " exceeds context length " +
                                               std::to_string(total.size()));
    return DisplayMap{total, k};
}

std::vector<Term> lift_terms(const std::vector<Term>& terms, std::size_t dom_length,
                             std::size_t ext_length) {
    std::vector<Term> out = terms;
    for (std::size_t j = 0; j < ext_length; ++j)
        out.push_back(Term::var(static_cast<std::uint32_t>(dom_length + j)));
    return out;
}

std::vector<TypeExpr> pullback_extension(const std::vector<Term>& terms, std::size_t dom_length,
                                         const std::vector<TypeExpr>& extension) {
    std::vector<Term> sigma = lift_terms(terms, dom_length, extension.size());
    std::vector<TypeExpr> out;
    out.reserve(extension.size());
    for (const TypeExpr& a : extension) out.push_back(substitute(a, sigma));
    return out;
}

DisplayPullback pullback_display(const Theory& th, const ContextMorphism& f, const DisplayMap& p,
                                 std::size_t fuel) {
    if (!(f.cod == p.base()))
        throw Error(ErrorKind::DomainMismatch,
                    "pullback: morphism codomain is not the base of the display map");
    const std::size_t n = f.dom.size();
    const std::vector<TypeExpr> ext = p.extension();
    std::vector<TypeExpr> pulled = pullback_extension(f.terms, n, ext);
    Context ctx = f.dom.extended(pulled, p.total.suffix_names(p.base_length));
    for (std::size_t j = 0; j < pulled.size(); ++j) {
        try {
            check_type(th, ctx.prefix(n + j), ctx[n + j], fuel);
        } catch (const Error& e) {
            throw Error(ErrorKind::EqualityUndecided,
                        std::string("pulled back entry does not re-check: ") + e.what(),
                        e.verdict().value_or(Verdict::Unknown))
                .within("extension " + std::to_string(j));
        }
    }
    DisplayMap q_display{ctx, n};
    ContextMorphism lift{ctx, p.total, lift_terms(f.terms, n, ext.size())};
    return DisplayPullback{ctx, std::move(q_display), std::move(lift)};
}

} // namespace gatlab
