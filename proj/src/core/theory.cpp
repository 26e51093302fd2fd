#include "gatlab/theory.hpp"

#include <algorithm>
#include <sstream>

namespace gatlab {

std::optional<SymbolId> Theory::find_sort(const std::string& name) const {
    for (std::size_t i = 0; i < sorts_.size(); ++i)
        if (sorts_[i].name == name) return static_cast<SymbolId>(i);
    return std::nullopt;
}

std::optional<SymbolId> Theory::find_op(const std::string& name) const {
    for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].name == name) return static_cast<SymbolId>(i);
    return std::nullopt;
}

namespace {

void print_term(std::ostream& os, const Theory& th, const Context& ctx, const Term& t) {
    if (t.is_var()) {
        if (t.index < ctx.size())
            os << ctx.name(t.index);
        else
            os << "#" << t.index;
        return;
    }
    os << (t.index < th.ops().size() ? th.op(t.index).name : "?op" + std::to_string(t.index));
    if (t.args.empty()) {
        // A variable of the same name would capture the bare symbol.
        const auto& names = ctx.names();
        if (t.index < th.ops().size() &&
            std::find(names.begin(), names.end(), th.op(t.index).name) != names.end())
            os << "()";
        return;
    }
    os << "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ", ";
        print_term(os, th, ctx, t.args[i]);
    }
    os << ")";
}

void print_type(std::ostream& os, const Theory& th, const Context& ctx, const TypeExpr& a) {
    os << (a.sort < th.sorts().size() ? th.sort(a.sort).name : "?sort" + std::to_string(a.sort));
    if (a.args.empty()) return;
    os << "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) os << ", ";
        print_term(os, th, ctx, a.args[i]);
    }
    os << ")";
}

} // namespace

std::string Theory::to_string(const Context& ctx, const Term& t) const {
    std::ostringstream os;
    print_term(os, *this, ctx, t);
    return os.str();
}

std::string Theory::to_string(const Context& ctx, const TypeExpr& a) const {
    std::ostringstream os;
    print_type(os, *this, ctx, a);
    return os.str();
}

std::string Theory::to_string(const Context& ctx) const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (i) os << ", ";
        os << ctx.name(i) << ": ";
        print_type(os, *this, ctx, ctx[i]);
    }
    os << ")";
    return os.str();
}

} // namespace gatlab
