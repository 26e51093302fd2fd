#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gatlab/category.hpp"
#include "gatlab/io/parse.hpp"
#include "gatlab/io/report.hpp"

namespace gatlab::suite {

using io::Report;

/// 64-bit mixer used to derive one independent stream per sample, so that
/// sample i does not depend on how samples are spread over workers.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

struct SubstitutionOptions {
    std::uint64_t seed = 0;
    std::size_t samples = 10000;
    std::size_t max_length = 4;
    std::size_t max_depth = 3;
};

/// subst(g ∘ f, φ) == subst(f, subst(g, φ)) on random triples.
void substitution(Report& report, const std::shared_ptr<const Theory>& th, const SubstitutionOptions& opt);

/// eval(f*ψ)(x) ⟺ eval(ψ)(f ∘ x) on random (M, f, ψ, x) with M drawn from
/// `categories` as Cat₌ models.
void naturality(Report& report, const std::vector<CategoryPtr>& categories, const SubstitutionOptions& opt);

/// Categories up to isomorphism, the full, faithful, surjective-on-objects
/// functors between them (as inflations) and a family of equivalences.
struct FunctorCorpus {
    std::vector<CategoryPtr> categories;
    std::vector<Functor> fibrations;
    std::vector<Functor> equivalences;
};

FunctorCorpus functor_corpus(std::size_t max_objects = 3, std::size_t max_parallel = 2);

/// Every corpus fibration is an anodyne fibration of Cat₌ models, a trivial
/// fibration in the folk sense, and preserves and reflects every formula.
/// Includes the negative control ∅ → 1 with ∃(y: Ob). ⊤. `cap` bounds the
/// samples per (functor, formula); 0 takes all.
void anodyne(Report& report, const FunctorCorpus& corpus, const std::vector<FormulaInContext>& formulas,
             std::size_t cap = 0);

/// ∃-then-restrict against restrict-then-∃ on every sort display square of
/// every corpus fibration.
void beck_chevalley(Report& report, const FunctorCorpus& corpus, const std::vector<FormulaInContext>& formulas);

/// Every homotopic pair of interpretations into each corpus category agrees
/// on every formula.
void homotopy(Report& report, const FunctorCorpus& corpus, const std::vector<FormulaInContext>& formulas,
              std::size_t cap = 0);

/// Every corpus equivalence preserves and reflects every formula, while the
/// parity of the number of objects is not preserved by some equivalence.
void equivalence(Report& report, const FunctorCorpus& corpus, const std::vector<FormulaInContext>& formulas,
                 std::size_t cap = 0);

/// Accepted proofs have no countermodel up to `bound`; proofs marked as
/// broken are rejected at the expected rule. Also reports which rule
/// groups the accepted proofs exercise.
void proofs(Report& report, const std::vector<std::shared_ptr<const io::ProofFile>>& library,
            std::size_t bound = 3);

} // namespace gatlab::suite
