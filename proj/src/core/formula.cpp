#include "gatlab/formula.hpp"

#include <algorithm>
#include <sstream>

namespace gatlab {

Formula Formula::negation(Formula body) {
    Formula f{Kind::Not, {}, {}, {}};
    f.parts.push_back(std::move(body));
    return f;
}

Formula Formula::conjunction(std::vector<Formula> parts) {
    return Formula{Kind::And, std::move(parts), {}, {}};
}

Formula Formula::disjunction(std::vector<Formula> parts) {
    return Formula{Kind::Or, std::move(parts), {}, {}};
}

Formula Formula::exists(std::vector<TypeExpr> ext, Formula body, std::vector<std::string> names) {
    if (ext.empty()) return body;
    names.resize(ext.size());
    Formula f{Kind::Exists, {}, std::move(ext), std::move(names)};
    f.parts.push_back(std::move(body));
    return f;
}

Formula Formula::forall(std::vector<TypeExpr> ext, Formula body, std::vector<std::string> names) {
    if (ext.empty()) return body;
    names.resize(ext.size());
    Formula f{Kind::Forall, {}, std::move(ext), std::move(names)};
    f.parts.push_back(std::move(body));
    return f;
}

std::string_view to_string(Formula::Kind kind) {
    switch (kind) {
    case Formula::Kind::Top: return "true";
    case Formula::Kind::Bot: return "false";
    case Formula::Kind::Not: return "not";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Or: return "or";
    case Formula::Kind::Exists: return "exists";
    case Formula::Kind::Forall: return "forall";
    }
    return "?";
}

std::size_t depth(const Formula& phi) {
    std::size_t d = 0;
    for (const Formula& p : phi.parts) d = std::max(d, depth(p));
    return phi.parts.empty() ? 0 : d + 1;
}

std::size_t quantifier_depth(const Formula& phi) {
    std::size_t d = 0;
    for (const Formula& p : phi.parts) d = std::max(d, quantifier_depth(p));
    return d + (phi.is_quantifier() ? 1 : 0);
}

void wf_formula(const Theory& th, const Context& ctx, const Formula& phi, std::size_t fuel) {
    switch (phi.kind) {
    case Formula::Kind::Top:
    case Formula::Kind::Bot:
        if (!phi.parts.empty()) throw Error(ErrorKind::ArityMismatch, "atom with subformulas");
        return;
    case Formula::Kind::Not:
        if (phi.parts.size() != 1) throw Error(ErrorKind::ArityMismatch, "not takes one formula");
        try {
            wf_formula(th, ctx, phi.parts[0], fuel);
        } catch (const Error& e) {
            throw e.within("not");
        }
        return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
        for (std::size_t i = 0; i < phi.parts.size(); ++i) {
            try {
                wf_formula(th, ctx, phi.parts[i], fuel);
            } catch (const Error& e) {
                throw e.within(std::string(to_string(phi.kind)) + "." + std::to_string(i));
            }
        }
        return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
        const std::string seg(to_string(phi.kind));
        if (phi.parts.size() != 1 || phi.ext.empty())
            throw Error(ErrorKind::ArityMismatch, "quantifier needs a non-empty extension and a body")
                .within(seg);
        Context inner = ctx;
        for (std::size_t j = 0; j < phi.ext.size(); ++j) {
            try {
                if (var_bound(phi.ext[j]) > inner.size())
                    throw Error(ErrorKind::OutOfRange,
                                "extension entry refers to a variable out of scope");
                check_type(th, inner, phi.ext[j], fuel);
            } catch (const Error& e) {
                throw e.within(seg + " binder " + std::to_string(j));
            }
            inner.push(phi.ext[j], j < phi.ext_names.size() ? phi.ext_names[j] : std::string{});
        }
        try {
            wf_formula(th, inner, phi.parts[0], fuel);
        } catch (const Error& e) {
            throw e.within(seg);
        }
        return;
    }
    }
}

Formula subst_formula(const Theory& th, const ContextMorphism& f, const Formula& phi,
                      std::size_t fuel) {
    switch (phi.kind) {
    case Formula::Kind::Top:
    case Formula::Kind::Bot:
        return phi;
    case Formula::Kind::Not:
        return Formula::negation(subst_formula(th, f, phi.parts[0], fuel));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::vector<Formula> parts;
        parts.reserve(phi.parts.size());
        for (const Formula& p : phi.parts) parts.push_back(subst_formula(th, f, p, fuel));
        return Formula{phi.kind, std::move(parts), {}, {}};
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
        DisplayMap p = display(f.cod.extended(phi.ext, phi.ext_names), f.cod.size());
        DisplayPullback pb = pullback_display(th, f, p, fuel);
        Formula body = subst_formula(th, pb.lift, phi.parts[0], fuel);
        Formula out{phi.kind, {}, pb.display.extension(), phi.ext_names};
        out.parts.push_back(std::move(body));
        return out;
    }
    }
    return phi;
}

namespace {

std::string fresh_name(const Context& scope, const std::string& wanted) {
    auto taken = [&](const std::string& n) {
        return std::find(scope.names().begin(), scope.names().end(), n) != scope.names().end();
    };
    if (!taken(wanted)) return wanted;
    for (int k = 1;; ++k) {
        std::string candidate = wanted + "_" + std::to_string(k);
        if (!taken(candidate)) return candidate;
    }
}

void print(std::ostream& os, const Theory& th, const Context& ctx, const Formula& phi) {
    switch (phi.kind) {
    case Formula::Kind::Top: os << "true"; return;
    case Formula::Kind::Bot: os << "false"; return;
    case Formula::Kind::Not:
        os << "not(";
        print(os, th, ctx, phi.parts[0]);
        os << ")";
        return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
        os << to_string(phi.kind) << "(";
        for (std::size_t i = 0; i < phi.parts.size(); ++i) {
            if (i) os << ", ";
            print(os, th, ctx, phi.parts[i]);
        }
        os << ")";
        return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
        os << to_string(phi.kind) << " (";
        Context inner = ctx;
        for (std::size_t j = 0; j < phi.ext.size(); ++j) {
            std::string wanted = j < phi.ext_names.size() && !phi.ext_names[j].empty()
                                     ? phi.ext_names[j]
                                     : default_var_name(inner.size());
            std::string name = fresh_name(inner, wanted);
            if (j) os << ", ";
            os << name << ": " << th.to_string(inner, phi.ext[j]);
            inner.push(phi.ext[j], name);
        }
        os << "). ";
        print(os, th, inner, phi.parts[0]);
        return;
    }
    }
}

} // namespace

std::string to_string(const Theory& th, const Context& ctx, const Formula& phi) {
    std::ostringstream os;
    print(os, th, ctx, phi);
    return os.str();
}

} // namespace gatlab
