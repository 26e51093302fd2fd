#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "gatlab/formula.hpp"

namespace gatlab {

/// Seeded generator with a platform-independent bounded draw.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform-enough index in [0, n); n must be positive.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

/// A well-typed term with its type in normal form.
struct TypedTerm {
    Term term;
    TypeExpr type;
};

/// Variables of `ctx` and operation applications nested up to `depth`,
/// without repetition, capped at `cap` terms.
std::vector<TypedTerm> term_pool(const Theory& th, const Context& ctx, std::size_t depth = 1,
                                 std::size_t cap = 64);

/// Extends `base` by `length` random entries whose arguments come from
/// term pools.
Context random_context(const Theory& th, Rng& rng, std::size_t length, const Context& base = {});

/// A random well-typed morphism dom → cod, or nothing if the search finds
/// none within its node budget.
std::optional<ContextMorphism> random_morphism(const Theory& th, const Context& dom, const Context& cod,
                                               Rng& rng, std::size_t budget = 2000);

/// A random formula in `ctx` of depth at most `depth`. Quantifier
/// extensions have 1 to `max_ext` entries.
Formula random_formula(const Theory& th, const Context& ctx, Rng& rng, std::size_t depth,
                       std::size_t max_ext = 2);

} // namespace gatlab
