#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gatlab/syntax.hpp"

namespace gatlab {

struct SortDecl {
    std::string name;
    Context telescope;
};

struct OpDecl {
    std::string name;
    Context telescope;
    TypeExpr result;
};

struct TermEquation {
    Term lhs;
    Term rhs;
    TypeExpr at;
};

struct TypeEquation {
    TypeExpr lhs;
    TypeExpr rhs;
};

struct Equation {
    std::string name;
    Context telescope;
    std::variant<TermEquation, TypeEquation> body;

    bool is_term_equation() const { return std::holds_alternative<TermEquation>(body); }
};

enum class DeclKind { Sort, Op, Equation };

struct DeclRef {
    DeclKind kind;
    std::uint32_t index;

    friend bool operator==(const DeclRef&, const DeclRef&) = default;
};

/// An elaborated, checked generalized algebraic theory. Only
/// `elaborate_theory` constructs non-empty instances; afterwards the value
/// is immutable.
class Theory {
public:
    const std::string& name() const noexcept { return name_; }
    const std::vector<SortDecl>& sorts() const noexcept { return sorts_; }
    const std::vector<OpDecl>& ops() const noexcept { return ops_; }
    const std::vector<Equation>& equations() const noexcept { return equations_; }
    /// Declaration order; a witness that every axiom only uses earlier ones.
    const std::vector<DeclRef>& order() const noexcept { return order_; }

    const SortDecl& sort(SymbolId id) const { return sorts_.at(id); }
    const OpDecl& op(SymbolId id) const { return ops_.at(id); }

    std::optional<SymbolId> find_sort(const std::string& name) const;
    std::optional<SymbolId> find_op(const std::string& name) const;

    /// Declared by `pragma confluent`: distinct normal forms are unequal.
    bool confluent() const noexcept { return confluent_; }

    /// Sorts declared (by `pragma equality E`) to reflect equality of
    /// elements of another sort: maps the reflected sort to its Eq sort.
    const std::map<SymbolId, SymbolId>& equality_sorts() const noexcept {
        return equality_sorts_;
    }

    /// Indices of term equations usable as global left-to-right rewrite
    /// rules (left side is an application binding every telescope variable).
    const std::vector<std::uint32_t>& global_rules() const noexcept { return global_rules_; }
    /// Term equations used only through hypotheses present in a context.
    const std::vector<std::uint32_t>& hypothesis_rules() const noexcept {
        return hypothesis_rules_;
    }
    /// Type equations whose left side binds every telescope variable.
    const std::vector<std::uint32_t>& type_rules() const noexcept { return type_rules_; }

    std::string to_string(const Context& ctx, const Term& t) const;
    std::string to_string(const Context& ctx, const TypeExpr& a) const;
    std::string to_string(const Context& ctx) const;

private:
    friend class Elaborator;

    std::string name_;
    std::vector<SortDecl> sorts_;
    std::vector<OpDecl> ops_;
    std::vector<Equation> equations_;
    std::vector<DeclRef> order_;
    bool confluent_ = false;
    std::map<SymbolId, SymbolId> equality_sorts_;
    std::vector<std::uint32_t> global_rules_;
    std::vector<std::uint32_t> hypothesis_rules_;
    std::vector<std::uint32_t> type_rules_;
};

} // namespace gatlab
