#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gatlab/theory.hpp"

namespace gatlab {

/// Categories: Ob, Hom, comp, id with unit and associativity laws.
std::shared_ptr<const Theory> cat_theory();

/// Categories with a sort Eq(f, g) reflecting equality of parallel arrows.
std::shared_ptr<const Theory> cat_eq_theory();

const std::string& cat_theory_source();
const std::string& cat_eq_theory_source();

/// A first-order signature: sorts, function symbols and relation symbols
/// with their argument sorts.
struct Signature {
    struct Function {
        std::string name;
        std::vector<std::string> args;
        std::string result;
    };
    struct Relation {
        std::string name;
        std::vector<std::string> args;
    };
    std::string name;
    std::vector<std::string> sorts;
    std::vector<Function> functions;
    std::vector<Relation> relations;
};

/// The theory whose models are Σ-structures: each sort X comes with an
/// equality sort Eq_X reflecting equality, each function symbol is an
/// operation, and each relation symbol R is a sort R(x...) with at most one
/// element per tuple.
std::string sigma_theory_source(const Signature& sig);

/// Graphs, pointed sets with a predicate, and a two-sorted structure with a
/// function and a relation.
const std::vector<Signature>& sample_signatures();

/// Bicategories with an equality sort on 2-cells. Associator and unitors
/// are invertible 2-cells; pentagon and triangle are not imposed.
const std::string& bicat_eq_theory_source();

/// Chain complexes of F2-vector spaces truncated at degree n. The sort
/// C_k(x) holds the k-chains with boundary x.
std::string chain_theory_source(std::size_t n);

} // namespace gatlab
