#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gatlab/formula.hpp"

namespace gatlab {

/// Inference rules of the entailment relation, grouped as
///   1 reflexivity / transitivity
///   2 ⊤ and ⊥
///   3 non-contradiction / excluded middle
///   4 universal properties of ⋁ and ⋀ (both directions)
///   5 ∃ ⊣ p* ⊣ ∀ along display maps (both directions)
enum class Rule {
    Refl,
    Trans,
    Top,
    Bot,
    NonContradiction,
    ExcludedMiddle,
    OrIntro,
    OrElim,
    AndIntro,
    AndElim,
    ExistsAdj,
    ExistsAdjInv,
    ForallAdj,
    ForallAdjInv,
};

std::string_view to_string(Rule rule);
std::optional<Rule> rule_from_string(std::string_view name);
int rule_group(Rule rule);

struct Sequent {
    Context context;
    Formula lhs;
    Formula rhs;
};

/// A node concludes `lhs ⊢_context rhs` by `rule` from its premises.
struct ProofNode {
    Rule rule = Rule::Refl;
    Sequent conclusion;
    std::optional<std::size_t> index; // or-elim / and-elim component
    std::vector<ProofNode> premises;
};

struct EntailmentProof {
    std::string name;
    ProofNode root;
};

struct ProofVerdict {
    bool accepted = false;
    Sequent conclusion;       // valid when accepted
    ErrorKind error = ErrorKind::RuleMismatch;
    std::string failing_rule; // tag of the first offending node
    std::string path;         // premise indices from the root, e.g. "root.1.0"
    std::string message;
};

/// Checks every node against its rule schema, bottom-up.
ProofVerdict check_proof(const Theory& th, const ProofNode& root,
                         std::size_t fuel = kDefaultFuel);

} // namespace gatlab
