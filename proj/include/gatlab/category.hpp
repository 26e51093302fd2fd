#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gatlab/fibration.hpp"

namespace gatlab {

/// A finite category with named objects and arrows. Every object owns an
/// identity arrow named "id_<object>"; composites with identities are
/// filled in automatically.
class FinCategory {
public:
    static constexpr std::uint32_t kNone = UINT32_MAX;

    struct Arrow {
        std::string name;
        std::uint32_t src = 0;
        std::uint32_t tgt = 0;
    };

    explicit FinCategory(std::string name = {}) : name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    std::uint32_t add_object(std::string name);
    std::uint32_t add_arrow(std::string name, std::uint32_t src, std::uint32_t tgt);
    /// Records g ∘ f = h.
    void set_comp(std::uint32_t g, std::uint32_t f, std::uint32_t h);

    std::size_t object_count() const noexcept { return objects_.size(); }
    std::size_t arrow_count() const noexcept { return arrows_.size(); }
    const std::string& object_name(std::uint32_t a) const { return objects_.at(a); }
    const Arrow& arrow(std::uint32_t f) const { return arrows_.at(f); }
    std::uint32_t identity(std::uint32_t a) const { return identities_.at(a); }
    bool is_identity(std::uint32_t f) const { return identities_.at(arrows_.at(f).src) == f; }
    /// g ∘ f, or kNone when unset.
    std::uint32_t compose(std::uint32_t g, std::uint32_t f) const { return comp_.at(g).at(f); }
    const std::vector<std::uint32_t>& hom(std::uint32_t a, std::uint32_t b) const {
        return homs_.at(a).at(b);
    }

    std::optional<std::uint32_t> find_object(const std::string& name) const;
    std::optional<std::uint32_t> find_arrow(const std::string& name) const;
    std::optional<std::uint32_t> inverse(std::uint32_t f) const;

    /// Composition table total on composable pairs, typed, unital, associative.
    std::optional<std::string> validate() const;

private:
    std::string name_;
    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<std::uint32_t> identities_;
    std::vector<std::vector<std::uint32_t>> comp_;
    std::vector<std::vector<std::vector<std::uint32_t>>> homs_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

struct Functor {
    std::string name;
    CategoryPtr source;
    CategoryPtr target;
    std::vector<std::uint32_t> on_objects;
    std::vector<std::uint32_t> on_arrows;
};

/// Typing, identities and composites preserved.
std::optional<std::string> validate(const Functor& f);
Functor identity_functor(CategoryPtr c);
Functor compose(const Functor& g, const Functor& f);

/// Calls `visit` on every functor a → c, in lexicographic order of the
/// object map and then the arrow map. Stops when `visit` returns false.
void for_each_functor(const CategoryPtr& a, const CategoryPtr& c,
                      const std::function<bool(const Functor&)>& visit);

// Small named categories.
CategoryPtr terminal_category();
CategoryPtr empty_category();
CategoryPtr discrete_category(std::size_t n);
CategoryPtr walking_arrow();
CategoryPtr walking_iso();
CategoryPtr parallel_pair();

// Cat₌ models. Element layout of to_model: objects first, then arrows,
// then one reflexivity witness r_f per arrow, all in category order.

std::shared_ptr<const FiniteModel> to_model(const FinCategory& c);
/// Throws InvalidModel when the Eq carriers are not singleton-on-the-diagonal
/// or the tables do not form a category.
FinCategory from_model(const FiniteModel& m);
ModelHom to_hom(const Functor& f, std::shared_ptr<const FiniteModel> source,
                std::shared_ptr<const FiniteModel> target);
ModelHom to_hom(const Functor& f);

bool is_full(const Functor& f);
bool is_faithful(const Functor& f);
bool is_surjective_on_objects(const Functor& f);
bool is_essentially_surjective(const Functor& f);
bool is_equivalence(const Functor& f);
bool is_isofibration(const Functor& f);

struct LiftingResult {
    bool holds = true;
    std::string generator; // "u", "v" or "w" on failure
    std::string witness;
};

/// Right lifting property against one cofibration i : a → b.
LiftingResult has_right_lifting(const Functor& i, const Functor& f);

/// The generating cofibrations u: ∅ → 1, v: 1 ⊔ 1 → 2, w: P → 2.
const std::vector<std::pair<std::string, Functor>>& generating_cofibrations();

/// Lifting against u, v and w, checked by enumerating squares.
LiftingResult is_trivial_fibration(const Functor& f);

struct PathObject {
    CategoryPtr base;
    CategoryPtr category; // objects: isomorphisms; arrows: commuting squares
    Functor p1, p2;
    std::shared_ptr<const FiniteModel> base_model;
    std::shared_ptr<const FiniteModel> model;
    ModelHom h1, h2; // p1, p2 on Cat₌ models
};

PathObject path_object(CategoryPtr x);

/// Some h ∈ PX(Γ) with p1 h = x1 and p2 h = x2 (tuples of the base model).
bool are_homotopic(const PathObject& px, const Context& gamma, const Tuple& x1, const Tuple& x2);

/// Every pair (p1 h, p2 h) for h ∈ PX(Γ), without repetition, in order.
std::vector<std::pair<Tuple, Tuple>> homotopic_pairs(const PathObject& px, const Context& gamma);

struct InvarianceCheck {
    bool agree = true;
    bool lhs = false;
    bool rhs = false;
};

/// Throws PreconditionUnmet unless x1 and x2 are homotopic.
InvarianceCheck invariance1_check(const FormulaInContext& phi, const PathObject& px, const Tuple& x1,
                                  const Tuple& x2);
/// Throws PreconditionUnmet unless f is an equivalence.
InvarianceCheck invariance2_check(const FormulaInContext& phi, const Functor& f, const Tuple& x);
/// As above with the Cat₌ hom of an equivalence supplied by the caller.
InvarianceCheck invariance2_check(const FormulaInContext& phi, const ModelHom& f, const Tuple& x);

// Corpus generation.

/// All categories with at most `max_objects` objects and at most
/// `max_parallel` arrows in each hom-set, one per isomorphism class.
std::vector<CategoryPtr> enumerate_categories(std::size_t max_objects, std::size_t max_parallel);

/// For each category d and surjection q onto its objects from at most
/// `max_objects` points, the projection from the category with objects
/// the points and hom-sets d(q x, q y).
std::vector<Functor> inflations(const std::vector<CategoryPtr>& cats, std::size_t max_objects);

/// Inflations, their sections, and retractions onto full subcategories
/// obtained by collapsing isomorphic objects along chosen isomorphisms.
std::vector<Functor> equivalences(const std::vector<CategoryPtr>& cats, std::size_t max_objects);

} // namespace gatlab
