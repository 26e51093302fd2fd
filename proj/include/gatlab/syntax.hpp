#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gatlab {

using SymbolId = std::uint32_t;

/// A term over a positional context. Variables are de Bruijn levels:
/// `Var i` names the i-th entry of the ambient telescope, counted from the
/// front, so extending a context never renumbers existing variables.
struct Term {
    enum class Kind : std::uint8_t { Var, App };

    Kind kind = Kind::Var;
    std::uint32_t index = 0; // variable level, or operation id for App
    std::vector<Term> args;

    static Term var(std::uint32_t level) { return Term{Kind::Var, level, {}}; }
    static Term app(SymbolId op, std::vector<Term> args) {
        return Term{Kind::App, op, std::move(args)};
    }

    bool is_var() const noexcept { return kind == Kind::Var; }
    bool is_app() const noexcept { return kind == Kind::App; }

    friend bool operator==(const Term&, const Term&) = default;
};

/// A sort applied to terms, e.g. Hom(x, y).
struct TypeExpr {
    SymbolId sort = 0;
    std::vector<Term> args;

    friend bool operator==(const TypeExpr&, const TypeExpr&) = default;
};

/// A telescope of typed variables; entry i may only mention variables
/// 0..i-1. Names are cosmetic and ignored by equality.
class Context {
public:
    Context() = default;
    explicit Context(std::vector<TypeExpr> entries);
    Context(std::vector<TypeExpr> entries, std::vector<std::string> names);

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const TypeExpr& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<TypeExpr>& entries() const noexcept { return entries_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const noexcept { return names_; }

    void push(TypeExpr type, std::string name = {});
    Context prefix(std::size_t length) const;
    /// Entries [from, size()) as a list, the extension over the prefix of length `from`.
    std::vector<TypeExpr> suffix(std::size_t from) const;
    std::vector<std::string> suffix_names(std::size_t from) const;
    Context extended(const std::vector<TypeExpr>& ext,
                     const std::vector<std::string>& ext_names = {}) const;

    friend bool operator==(const Context& a, const Context& b) {
        return a.entries_ == b.entries_;
    }

private:
    std::vector<TypeExpr> entries_;
    std::vector<std::string> names_;
};

/// Simultaneous substitution of `Var i` by `subst[i]`.
Term substitute(const Term& t, std::span<const Term> subst);
TypeExpr substitute(const TypeExpr& a, std::span<const Term> subst);

/// The identity substitution on the first `n` levels.
std::vector<Term> identity_subst(std::size_t n);

/// One past the largest variable level occurring in `t` (0 if closed).
std::uint32_t var_bound(const Term& t);
std::uint32_t var_bound(const TypeExpr& a);

bool occurs(std::uint32_t level, const Term& t);
bool occurs(std::uint32_t level, const TypeExpr& a);

/// Total syntactic size, used for bounding random generation.
std::size_t term_size(const Term& t);

/// Generated display name for an unnamed variable at `level`.
std::string default_var_name(std::size_t level);

} // namespace gatlab
