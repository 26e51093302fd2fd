#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>

#include "gatlab/model.hpp"

namespace gatlab {

struct SearchStats {
    std::size_t models = 0; // complete models visited
    std::size_t nodes = 0;  // partial assignments tried
};

/// Enumerates every model of `th` whose carriers (one per sort and
/// telescope tuple) have at most `bound` elements. Carriers are decided
/// with sizes 0, 1, ..., bound and operation entries take values in
/// carrier order, so the sequence is deterministic. Equations prune
/// partial tables as soon as an instance can be evaluated. Stops when
/// `visit` returns false.
SearchStats for_each_model(const std::shared_ptr<const Theory>& th, std::size_t bound,
                           const std::function<bool(const FiniteModel&)>& visit);

struct Countermodel {
    std::shared_ptr<const FiniteModel> model;
    Tuple at; // element of M(Γ) satisfying phi but not psi
};

struct CountermodelSearch {
    std::optional<Countermodel> found;
    SearchStats stats;
};

/// The first model (in for_each_model order) with an x ∈ M(Γ) such that
/// phi(x) holds and psi(x) does not.
CountermodelSearch find_countermodel(const std::shared_ptr<const Theory>& th, const Context& gamma,
                                     const Formula& phi, const Formula& psi, std::size_t bound);

} // namespace gatlab
