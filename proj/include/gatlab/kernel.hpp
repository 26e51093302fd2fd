#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "gatlab/error.hpp"
#include "gatlab/syntax.hpp"
#include "gatlab/theory.hpp"

namespace gatlab {

inline constexpr std::size_t kDefaultFuel = 1000;

struct SourceLoc {
    std::uint32_t line = 0;
    std::uint32_t column = 0;

    std::string to_string() const;
};

// Raw (named, unchecked) declarations as produced by a front end.

struct RawTerm {
    std::string head;
    std::vector<RawTerm> args;
    bool call = false; // written with parentheses, forces an operation
    SourceLoc loc;
};

struct RawType {
    std::string sort;
    std::vector<RawTerm> args;
    SourceLoc loc;
};

struct RawBinder {
    std::string name;
    RawType type;
    SourceLoc loc;
};

using RawTelescope = std::vector<RawBinder>;

struct RawSort {
    std::string name;
    RawTelescope telescope;
    SourceLoc loc;
};

struct RawOp {
    std::string name;
    RawTelescope telescope;
    RawType result;
    SourceLoc loc;
};

struct RawTermEquation {
    std::string name;
    RawTelescope telescope;
    RawTerm lhs;
    RawTerm rhs;
    RawType at;
    SourceLoc loc;
};

struct RawTypeEquation {
    std::string name;
    RawTelescope telescope;
    RawType lhs;
    RawType rhs;
    SourceLoc loc;
};

struct RawPragma {
    std::vector<std::string> words;
    SourceLoc loc;
};

using RawDecl = std::variant<RawSort, RawOp, RawTermEquation, RawTypeEquation, RawPragma>;

struct RawTheory {
    std::string name;
    std::vector<RawDecl> decls;
};

/// Checks every declaration in order against the ones before it.
/// Throws Error (UnknownSymbol, DuplicateSymbol, ArityMismatch,
/// IllFormedTelescope, TypeMismatch, EqualityUndecided).
Theory elaborate_theory(const RawTheory& raw, std::size_t fuel = kDefaultFuel);

/// Resolves names against `scope` (innermost binding wins) and the theory's
/// operations. Does not type-check.
Term resolve_term(const Theory& th, const Context& scope, const RawTerm& raw);
TypeExpr resolve_type(const Theory& th, const Context& scope, const RawType& raw);

/// Resolves and checks binders one by one on top of `base`.
Context elaborate_telescope(const Theory& th, const Context& base, const RawTelescope& tele,
                            std::size_t fuel = kDefaultFuel);

void check_context(const Theory& th, const Context& ctx, std::size_t fuel = kDefaultFuel);
void check_type(const Theory& th, const Context& ctx, const TypeExpr& a,
                std::size_t fuel = kDefaultFuel);
TypeExpr infer_type(const Theory& th, const Context& ctx, const Term& t,
                    std::size_t fuel = kDefaultFuel);
void check_term(const Theory& th, const Context& ctx, const Term& t, const TypeExpr& expected,
                std::size_t fuel = kDefaultFuel);

/// The declared type of `t` instantiated by its arguments, without
/// checking the arguments. Requires `t` to be well formed.
TypeExpr synth_type(const Theory& th, const Context& ctx, const Term& t);

struct NormalForm {
    Term term;
    bool exhausted = false;
    std::size_t steps = 0;
};

struct TypeNormalForm {
    TypeExpr type;
    bool exhausted = false;
    std::size_t steps = 0;
};

/// Innermost-leftmost rewriting with equations oriented left to right.
/// Global rules come from the theory; hypothesis rules are instantiated
/// from variables of `ctx` whose types match an equation's witness entries.
class Rewriter {
public:
    Rewriter(const Theory& th, const Context& ctx, std::size_t fuel = kDefaultFuel);

    NormalForm normalize(const Term& t);
    TypeNormalForm normalize(const TypeExpr& a);

    /// Ground rules contributed by the context.
    const std::vector<std::pair<Term, Term>>& local_rules() const noexcept { return local_; }

private:
    Term norm(const Term& t);
    TypeExpr norm(const TypeExpr& a);
    bool step_budget();

    const Theory& th_;
    const Context& ctx_;
    std::size_t fuel_;
    std::size_t used_ = 0;
    bool exhausted_ = false;
    std::vector<std::pair<Term, Term>> local_;
};

NormalForm normalize(const Theory& th, const Context& ctx, const Term& t,
                     std::size_t fuel = kDefaultFuel);

struct EqualityDecision {
    Verdict verdict = Verdict::Unknown;
    bool exhausted = false;
};

EqualityDecision decide_types_equal(const Theory& th, const Context& ctx, const TypeExpr& a,
                                    const TypeExpr& b, std::size_t fuel = kDefaultFuel);
EqualityDecision decide_terms_equal(const Theory& th, const Context& ctx, const Term& s,
                                    const Term& t, std::size_t fuel = kDefaultFuel);

/// Yes when normal forms coincide; No only for theories declared confluent
/// with no context hypotheses in play; Unknown otherwise.
Verdict types_equal(const Theory& th, const Context& ctx, const TypeExpr& a, const TypeExpr& b,
                    std::size_t fuel = kDefaultFuel);
Verdict terms_equal(const Theory& th, const Context& ctx, const Term& s, const Term& t,
                    const TypeExpr& at, std::size_t fuel = kDefaultFuel);

} // namespace gatlab
