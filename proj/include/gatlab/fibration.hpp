#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gatlab/model.hpp"

namespace gatlab {

/// A homomorphism of models. Elements carry their sort, so the family of
/// components is a single image table indexed by source element.
struct ModelHom {
    std::string name;
    std::shared_ptr<const FiniteModel> source;
    std::shared_ptr<const FiniteModel> target;
    std::vector<Elem> image;

    Elem operator()(Elem e) const { return image.at(e); }
    Tuple apply(const Tuple& x) const;
};

ModelHom identity_hom(std::shared_ptr<const FiniteModel> m);

/// g ∘ f. Requires f.target and g.source to be the same model.
ModelHom compose(const ModelHom& g, const ModelHom& f);

struct HomCheck {
    bool ok = true;
    std::string message;
};

/// Typing of every component and naturality for every operation entry.
HomCheck check_hom(const ModelHom& h);

/// A fiber over a source tuple that the hom fails to cover.
struct LiftingFailure {
    SymbolId sort = 0;
    Tuple index;  // τ in M(Θ)
    Elem missed;  // element of N_S(h τ) outside the image of M_S(τ)
};

struct AnodyneResult {
    bool anodyne = true;
    std::optional<LiftingFailure> failure;
};

/// Weak-pullback test on every sort display Θ.S ↠ Θ: the gap map
/// M(Θ.S) → N(Θ.S) ×_{N(Θ)} M(Θ) must be surjective.
AnodyneResult is_anodyne_fibration(const ModelHom& h);

std::string describe(const ModelHom& h, const LiftingFailure& f);

struct InvarianceViolation {
    std::string formula;
    Tuple at;
    bool source_value = false;
    bool target_value = false;
};

struct InvarianceReport {
    std::size_t checks = 0;
    std::size_t agreements = 0;
    std::optional<InvarianceViolation> first_violation;

    bool ok() const noexcept { return checks == agreements; }
    void merge(const InvarianceReport& other);
};

/// Compares eval_M(φ, x) with eval_N(φ, h x) for every formula and every
/// x ∈ M(Γ). `cap` limits the number of samples per formula (0 = all).
InvarianceReport invariance_suite(const ModelHom& h, const std::vector<FormulaInContext>& formulas,
                                  std::size_t cap = 0);

struct BeckChevalleyReport {
    std::size_t squares = 0;
    std::size_t subsets = 0;
    std::size_t agreements = 0;
    std::optional<std::string> first_failure;

    bool ok() const noexcept { return subsets == agreements; }
    void merge(const BeckChevalleyReport& other);
};

/// For each sort display p: M(Θ.S) → M(Θ) and q: N(Θ.S) → N(Θ), compares
/// h*(∃_q P) with ∃_p (h*P) as subsets of M(Θ). P ranges over all
/// singletons and the whole of N(Θ.S), plus the extra subsets given per
/// sort through `formulas` whose context is exactly Θ.S.
BeckChevalleyReport beck_chevalley(const ModelHom& h, const std::vector<FormulaInContext>& formulas);

} // namespace gatlab
