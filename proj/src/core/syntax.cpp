#include "gatlab/syntax.hpp"

#include <algorithm>
#include <cassert>

namespace gatlab {

Context::Context(std::vector<TypeExpr> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        names_.push_back(default_var_name(i));
}

Context::Context(std::vector<TypeExpr> entries, std::vector<std::string> names)
    : entries_(std::move(entries)), names_(std::move(names)) {
    names_.resize(entries_.size());
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i].empty()) names_[i] = default_var_name(i);
}

void Context::push(TypeExpr type, std::string name) {
    if (name.empty()) name = default_var_name(entries_.size());
    entries_.push_back(std::move(type));
    names_.push_back(std::move(name));
}

Context Context::prefix(std::size_t length) const {
    assert(length <= size());
    return Context({entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(length)},
                   {names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(length)});
}

std::vector<TypeExpr> Context::suffix(std::size_t from) const {
    assert(from <= size());
    return {entries_.begin() + static_cast<std::ptrdiff_t>(from), entries_.end()};
}

std::vector<std::string> Context::suffix_names(std::size_t from) const {
    assert(from <= size());
    return {names_.begin() + static_cast<std::ptrdiff_t>(from), names_.end()};
}

Context Context::extended(const std::vector<TypeExpr>& ext,
                          const std::vector<std::string>& ext_names) const {
    Context out = *this;
    for (std::size_t i = 0; i < ext.size(); ++i)
        out.push(ext[i], i < ext_names.size() ? ext_names[i] : std::string{});
    return out;
}

Term substitute(const Term& t, std::span<const Term> subst) {
    if (t.is_var()) {
        assert(t.index < subst.size());
        return subst[t.index];
    }
    std::vector<Term> args;
    args.reserve(t.args.size());
    for (const Term& a : t.args) args.push_back(substitute(a, subst));
    return Term::app(t.index, std::move(args));
}

TypeExpr substitute(const TypeExpr& a, std::span<const Term> subst) {
    TypeExpr out{a.sort, {}};
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) out.args.push_back(substitute(t, subst));
    return out;
}

std::vector<Term> identity_subst(std::size_t n) {
    std::vector<Term> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(Term::var(static_cast<std::uint32_t>(i)));
    return out;
}

std::uint32_t var_bound(const Term& t) {
    if (t.is_var()) return t.index + 1;
    std::uint32_t m = 0;
    for (const Term& a : t.args) m = std::max(m, var_bound(a));
    return m;
}

std::uint32_t var_bound(const TypeExpr& a) {
    std::uint32_t m = 0;
    for (const Term& t : a.args) m = std::max(m, var_bound(t));
    return m;
}

bool occurs(std::uint32_t level, const Term& t) {
    if (t.is_var()) return t.index == level;
    return std::any_of(t.args.begin(), t.args.end(),
                       [&](const Term& a) { return occurs(level, a); });
}

bool occurs(std::uint32_t level, const TypeExpr& a) {
    return std::any_of(a.args.begin(), a.args.end(),
                       [&](const Term& t) { return occurs(level, t); });
}

std::size_t term_size(const Term& t) {
    std::size_t n = 1;
    for (const Term& a : t.args) n += term_size(a);
    return n;
}

std::string default_var_name(std::size_t level) { return "v" + std::to_string(level); }

} // namespace gatlab
