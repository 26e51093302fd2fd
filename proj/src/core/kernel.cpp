#include "gatlab/kernel.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace gatlab {

std::string SourceLoc::to_string() const {
    return std::to_string(line) + ":" + std::to_string(column);
}

namespace {

using Binding = std::vector<std::optional<Term>>;

bool match(const Term& pattern, const Term& t, Binding& binding) {
    if (pattern.is_var()) {
        auto& slot = binding[pattern.index];
        if (slot) return *slot == t;
        slot = t;
        return true;
    }
    if (!t.is_app() || t.index != pattern.index || t.args.size() != pattern.args.size())
        return false;
    for (std::size_t i = 0; i < t.args.size(); ++i)
        if (!match(pattern.args[i], t.args[i], binding)) return false;
    return true;
}

bool match(const TypeExpr& pattern, const TypeExpr& a, Binding& binding) {
    if (pattern.sort != a.sort || pattern.args.size() != a.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!match(pattern.args[i], a.args[i], binding)) return false;
    return true;
}

std::vector<Term> unwrap(const Binding& binding) {
    std::vector<Term> out;
    out.reserve(binding.size());
    for (const auto& b : binding) out.push_back(*b);
    return out;
}

bool all_bound(const Binding& binding) {
    return std::all_of(binding.begin(), binding.end(), [](const auto& b) { return b.has_value(); });
}

void collect_vars(const Term& t, std::set<std::uint32_t>& out) {
    if (t.is_var()) {
        out.insert(t.index);
        return;
    }
    for (const Term& a : t.args) collect_vars(a, out);
}

void collect_vars(const TypeExpr& a, std::set<std::uint32_t>& out) {
    for (const Term& t : a.args) collect_vars(t, out);
}

/// Telescope positions that no other entry depends on. These are the
/// entries a hypothesis-driven equation is instantiated from.
std::vector<std::uint32_t> witness_positions(const Context& tele) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t w = 0; w < tele.size(); ++w) {
        bool used = false;
        for (std::uint32_t j = w + 1; j < tele.size() && !used; ++j)
            used = occurs(w, tele[j]);
        if (!used) out.push_back(w);
    }
    return out;
}

std::string describe_mismatch(const Theory& th, const Context& ctx, const TypeExpr& expected,
                              const TypeExpr& actual, Verdict v) {
    std::ostringstream os;
    os << "expected " << th.to_string(ctx, expected) << ", got " << th.to_string(ctx, actual)
       << " (equality verdict " << to_string(v) << ")";
    return os.str();
}

/// Checks that a term of type `actual` may be used where `expected` is
/// required. Throws TypeMismatch or EqualityUndecided.
void require_type(const Theory& th, const Context& ctx, const TypeExpr& expected,
                  const TypeExpr& actual, std::size_t fuel) {
    if (expected == actual) return;
    EqualityDecision d = decide_types_equal(th, ctx, expected, actual, fuel);
    if (d.verdict == Verdict::Yes) return;
    if (d.exhausted)
        throw Error(ErrorKind::EqualityUndecided,
                    "rewrite fuel exhausted: " + describe_mismatch(th, ctx, expected, actual, d.verdict),
                    d.verdict);
    throw Error(ErrorKind::TypeMismatch, describe_mismatch(th, ctx, expected, actual, d.verdict),
                d.verdict);
}

} // namespace

// ---------------------------------------------------------------------------
// Type checking

TypeExpr synth_type(const Theory& th, const Context& ctx, const Term& t) {
    if (t.is_var()) return ctx[t.index];
    return substitute(th.op(t.index).result, t.args);
}

void check_type(const Theory& th, const Context& ctx, const TypeExpr& a, std::size_t fuel) {
    if (a.sort >= th.sorts().size())
        throw Error(ErrorKind::UnknownSymbol, "unknown sort id " + std::to_string(a.sort));
    const SortDecl& decl = th.sort(a.sort);
    if (a.args.size() != decl.telescope.size())
        throw Error(ErrorKind::ArityMismatch, "sort " + decl.name + " expects " +
                                                  std::to_string(decl.telescope.size()) +
                                                  " arguments, got " + std::to_string(a.args.size()));
    for (std::size_t k = 0; k < a.args.size(); ++k) {
        TypeExpr expected = substitute(decl.telescope[k], std::span(a.args.data(), k));
        try {
            check_term(th, ctx, a.args[k], expected, fuel);
        } catch (const Error& e) {
            throw e.within(decl.name + " argument " + std::to_string(k));
        }
    }
}

TypeExpr infer_type(const Theory& th, const Context& ctx, const Term& t, std::size_t fuel) {
    if (t.is_var()) {
        if (t.index >= ctx.size())
            throw Error(ErrorKind::OutOfRange, "variable level " + std::to_string(t.index) +
                                                   " outside context of length " +
                                                   std::to_string(ctx.size()));
        return ctx[t.index];
    }
    if (t.index >= th.ops().size())
        throw Error(ErrorKind::UnknownSymbol, "unknown operation id " + std::to_string(t.index));
    const OpDecl& decl = th.op(t.index);
    if (t.args.size() != decl.telescope.size())
        throw Error(ErrorKind::ArityMismatch, "operation " + decl.name + " expects " +
                                                  std::to_string(decl.telescope.size()) +
                                                  " arguments, got " + std::to_string(t.args.size()));
    for (std::size_t k = 0; k < t.args.size(); ++k) {
        TypeExpr expected = substitute(decl.telescope[k], std::span(t.args.data(), k));
        try {
            check_term(th, ctx, t.args[k], expected, fuel);
        } catch (const Error& e) {
            throw e.within(decl.name + " argument " + std::to_string(k));
        }
    }
    return substitute(decl.result, t.args);
}

void check_term(const Theory& th, const Context& ctx, const Term& t, const TypeExpr& expected,
                std::size_t fuel) {
    TypeExpr actual = infer_type(th, ctx, t, fuel);
    require_type(th, ctx, expected, actual, fuel);
}

void check_context(const Theory& th, const Context& ctx, std::size_t fuel) {
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (var_bound(ctx[i]) > i)
            throw Error(ErrorKind::OutOfRange,
                        "entry " + std::to_string(i) + " refers to a variable not yet in scope")
                .within("entry " + std::to_string(i));
        try {
            check_type(th, ctx.prefix(i), ctx[i], fuel);
        } catch (const Error& e) {
            throw e.within("entry " + std::to_string(i));
        }
    }
}

// ---------------------------------------------------------------------------
// Rewriting

Rewriter::Rewriter(const Theory& th, const Context& ctx, std::size_t fuel)
    : th_(th), ctx_(ctx), fuel_(fuel) {
    for (std::uint32_t e : th.hypothesis_rules()) {
        const Equation& eq = th.equations()[e];
        const auto& body = std::get<TermEquation>(eq.body);
        const Context& tele = eq.telescope;
        const std::vector<std::uint32_t> witnesses = witness_positions(tele);
        if (witnesses.empty()) continue;

        Binding binding(tele.size());
        // Assign witness positions to context variables, backtracking.
        auto assign = [&](auto&& self, std::size_t k) -> void {
            if (k == witnesses.size()) {
                Binding closed = binding;
                bool progress = true;
                while (progress) {
                    progress = false;
                    for (std::uint32_t p = 0; p < tele.size(); ++p) {
                        if (!closed[p]) continue;
                        std::set<std::uint32_t> vars;
                        collect_vars(tele[p], vars);
                        bool missing = std::any_of(vars.begin(), vars.end(),
                                                   [&](std::uint32_t v) { return !closed[v]; });
                        if (!missing) continue;
                        Binding trial = closed;
                        if (match(tele[p], synth_type(th_, ctx_, *closed[p]), trial)) {
                            closed = std::move(trial);
                            progress = true;
                        }
                    }
                }
                if (!all_bound(closed)) return;
                std::vector<Term> sigma = unwrap(closed);
                Term lhs = substitute(body.lhs, sigma);
                Term rhs = substitute(body.rhs, sigma);
                if (lhs != rhs) local_.emplace_back(std::move(lhs), std::move(rhs));
                return;
            }
            const std::uint32_t w = witnesses[k];
            for (std::uint32_t c = 0; c < ctx_.size(); ++c) {
                Binding saved = binding;
                binding[w] = Term::var(c);
                if (match(tele[w], ctx_[c], binding)) self(self, k + 1);
                binding = std::move(saved);
            }
        };
        assign(assign, 0);
    }
    // Ground rule sides are brought to global normal form so that innermost
    // rewriting can still meet them.
    if (!local_.empty()) {
        std::vector<std::pair<Term, Term>> ground;
        ground.swap(local_);
        for (auto& [l, r] : ground) {
            Term nl = norm(l);
            Term nr = norm(r);
            if (nl == nr) continue;
            // Variable-to-variable rules point at the earlier variable, so
            // symmetric hypotheses cannot rewrite in a cycle.
            if (nl.is_var() && nr.is_var() && nl.index < nr.index) std::swap(nl, nr);
            const std::pair<Term, Term> rule{std::move(nl), std::move(nr)};
            if (std::find(local_.begin(), local_.end(), rule) == local_.end()) local_.push_back(rule);
        }
        used_ = 0;
        exhausted_ = false;
    }
}

bool Rewriter::step_budget() {
    if (used_ >= fuel_) {
        exhausted_ = true;
        return false;
    }
    ++used_;
    return true;
}

Term Rewriter::norm(const Term& t) {
    if (exhausted_) return t;
    Term u = t;
    if (u.is_app())
        for (Term& a : u.args) a = norm(a);
    if (exhausted_) return u;

    if (u.is_app()) {
        for (std::uint32_t e : th_.global_rules()) {
            const Equation& eq = th_.equations()[e];
            const auto& body = std::get<TermEquation>(eq.body);
            Binding binding(eq.telescope.size());
            if (!match(body.lhs, u, binding)) continue;
            if (!step_budget()) return u;
            return norm(substitute(body.rhs, unwrap(binding)));
        }
    }
    for (const auto& [l, r] : local_) {
        if (u != l) continue;
        if (!step_budget()) return u;
        return norm(r);
    }
    return u;
}

TypeExpr Rewriter::norm(const TypeExpr& a) {
    TypeExpr u = a;
    for (Term& t : u.args) t = norm(t);
    if (exhausted_) return u;
    for (std::uint32_t e : th_.type_rules()) {
        const Equation& eq = th_.equations()[e];
        const auto& body = std::get<TypeEquation>(eq.body);
        Binding binding(eq.telescope.size());
        if (!match(body.lhs, u, binding)) continue;
        if (!step_budget()) return u;
        return norm(substitute(body.rhs, unwrap(binding)));
    }
    return u;
}

NormalForm Rewriter::normalize(const Term& t) {
    used_ = 0;
    exhausted_ = false;
    Term out = norm(t);
    return NormalForm{std::move(out), exhausted_, used_};
}

TypeNormalForm Rewriter::normalize(const TypeExpr& a) {
    used_ = 0;
    exhausted_ = false;
    TypeExpr out = norm(a);
    return TypeNormalForm{std::move(out), exhausted_, used_};
}

NormalForm normalize(const Theory& th, const Context& ctx, const Term& t, std::size_t fuel) {
    Rewriter rw(th, ctx, fuel);
    return rw.normalize(t);
}

EqualityDecision decide_types_equal(const Theory& th, const Context& ctx, const TypeExpr& a,
                                    const TypeExpr& b, std::size_t fuel) {
    if (a == b) return {Verdict::Yes, false};
    Rewriter rw(th, ctx, fuel);
    TypeNormalForm na = rw.normalize(a);
    TypeNormalForm nb = rw.normalize(b);
    const bool exhausted = na.exhausted || nb.exhausted;
    if (!exhausted && na.type == nb.type) return {Verdict::Yes, false};
    if (!exhausted && th.confluent() && rw.local_rules().empty()) return {Verdict::No, false};
    return {Verdict::Unknown, exhausted};
}

EqualityDecision decide_terms_equal(const Theory& th, const Context& ctx, const Term& s,
                                    const Term& t, std::size_t fuel) {
    if (s == t) return {Verdict::Yes, false};
    Rewriter rw(th, ctx, fuel);
    NormalForm ns = rw.normalize(s);
    NormalForm nt = rw.normalize(t);
    const bool exhausted = ns.exhausted || nt.exhausted;
    if (!exhausted && ns.term == nt.term) return {Verdict::Yes, false};
    if (!exhausted && th.confluent() && rw.local_rules().empty()) return {Verdict::No, false};
    return {Verdict::Unknown, exhausted};
}

Verdict types_equal(const Theory& th, const Context& ctx, const TypeExpr& a, const TypeExpr& b,
                    std::size_t fuel) {
    return decide_types_equal(th, ctx, a, b, fuel).verdict;
}

Verdict terms_equal(const Theory& th, const Context& ctx, const Term& s, const Term& t,
                    const TypeExpr&, std::size_t fuel) {
    return decide_terms_equal(th, ctx, s, t, fuel).verdict;
}

// ---------------------------------------------------------------------------
// Name resolution

Term resolve_term(const Theory& th, const Context& scope, const RawTerm& raw) {
    if (!raw.call && raw.args.empty()) {
        for (std::size_t i = scope.size(); i-- > 0;)
            if (scope.name(i) == raw.head) return Term::var(static_cast<std::uint32_t>(i));
    }
    auto op = th.find_op(raw.head);
    if (!op) {
        bool is_var = std::find(scope.names().begin(), scope.names().end(), raw.head) !=
                      scope.names().end();
        if (is_var)
            throw Error(ErrorKind::ArityMismatch,
                        raw.loc.to_string() + ": variable " + raw.head + " cannot be applied");
        throw Error(ErrorKind::UnknownSymbol,
                    raw.loc.to_string() + ": unknown variable or operation '" + raw.head + "'");
    }
    const OpDecl& decl = th.op(*op);
    if (raw.args.size() != decl.telescope.size())
        throw Error(ErrorKind::ArityMismatch,
                    raw.loc.to_string() + ": operation " + decl.name + " expects " +
                        std::to_string(decl.telescope.size()) + " arguments, got " +
                        std::to_string(raw.args.size()));
    std::vector<Term> args;
    args.reserve(raw.args.size());
    for (const RawTerm& a : raw.args) args.push_back(resolve_term(th, scope, a));
    return Term::app(*op, std::move(args));
}

TypeExpr resolve_type(const Theory& th, const Context& scope, const RawType& raw) {
    auto sort = th.find_sort(raw.sort);
    if (!sort)
        throw Error(ErrorKind::UnknownSymbol,
                    raw.loc.to_string() + ": unknown sort '" + raw.sort + "'");
    const SortDecl& decl = th.sort(*sort);
    if (raw.args.size() != decl.telescope.size())
        throw Error(ErrorKind::ArityMismatch,
                    raw.loc.to_string() + ": sort " + decl.name + " expects " +
                        std::to_string(decl.telescope.size()) + " arguments, got " +
                        std::to_string(raw.args.size()));
    TypeExpr out{*sort, {}};
    for (const RawTerm& a : raw.args) out.args.push_back(resolve_term(th, scope, a));
    return out;
}

Context elaborate_telescope(const Theory& th, const Context& base, const RawTelescope& tele,
                            std::size_t fuel) {
    Context ctx = base;
    for (std::size_t i = 0; i < tele.size(); ++i) {
        const RawBinder& b = tele[i];
        try {
            TypeExpr type = resolve_type(th, ctx, b.type);
            try {
                check_type(th, ctx, type, fuel);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::EqualityUndecided) throw;
                throw Error(e.kind() == ErrorKind::TypeMismatch ? ErrorKind::IllFormedTelescope
                                                                 : e.kind(),
                            b.loc.to_string() + ": " + e.what(),
                            e.verdict().value_or(Verdict::Unknown));
            }
            ctx.push(std::move(type), b.name);
        } catch (const Error& e) {
            throw e.within("binder " + std::to_string(i) + " (" + b.name + ")");
        }
    }
    return ctx;
}

// ---------------------------------------------------------------------------
// Elaboration

class Elaborator {
public:
    explicit Elaborator(std::size_t fuel) : fuel_(fuel) {}

    Theory run(const RawTheory& raw) {
        th_.name_ = raw.name;
        for (std::size_t i = 0; i < raw.decls.size(); ++i) {
            std::visit([&](const auto& d) { declare(d); }, raw.decls[i]);
        }
        return std::move(th_);
    }

private:
    void ensure_fresh(const std::string& name, const SourceLoc& loc) {
        if (th_.find_sort(name) || th_.find_op(name))
            throw Error(ErrorKind::DuplicateSymbol,
                        loc.to_string() + ": symbol '" + name + "' already declared");
    }

    Context telescope(const RawTelescope& tele) {
        return elaborate_telescope(th_, Context{}, tele, fuel_);
    }

    void declare(const RawSort& d) {
        try {
            ensure_fresh(d.name, d.loc);
            SortDecl decl{d.name, telescope(d.telescope)};
            th_.order_.push_back({DeclKind::Sort, static_cast<std::uint32_t>(th_.sorts_.size())});
            th_.sorts_.push_back(std::move(decl));
        } catch (const Error& e) {
            throw e.within("sort " + d.name + " (" + d.loc.to_string() + ")");
        }
    }

    void declare(const RawOp& d) {
        try {
            ensure_fresh(d.name, d.loc);
            Context tele = telescope(d.telescope);
            TypeExpr result = resolve_type(th_, tele, d.result);
            try {
                check_type(th_, tele, result, fuel_);
            } catch (const Error& e) {
                throw e.within("result type");
            }
            th_.order_.push_back({DeclKind::Op, static_cast<std::uint32_t>(th_.ops_.size())});
            th_.ops_.push_back(OpDecl{d.name, std::move(tele), std::move(result)});
        } catch (const Error& e) {
            throw e.within("op " + d.name + " (" + d.loc.to_string() + ")");
        }
    }

    std::string equation_label(const std::string& name) const {
        return name.empty() ? "equation #" + std::to_string(th_.equations_.size()) : "equation " + name;
    }

    void declare(const RawTermEquation& d) {
        try {
            Context tele = telescope(d.telescope);
            TypeExpr at = resolve_type(th_, tele, d.at);
            check_type(th_, tele, at, fuel_);
            Term lhs = resolve_term(th_, tele, d.lhs);
            Term rhs = resolve_term(th_, tele, d.rhs);
            try {
                check_term(th_, tele, lhs, at, fuel_);
            } catch (const Error& e) {
                throw e.within("left side");
            }
            try {
                check_term(th_, tele, rhs, at, fuel_);
            } catch (const Error& e) {
                throw e.within("right side");
            }
            const auto index = static_cast<std::uint32_t>(th_.equations_.size());
            std::set<std::uint32_t> lhs_vars;
            collect_vars(lhs, lhs_vars);
            if (lhs.is_app() && lhs_vars.size() == tele.size())
                th_.global_rules_.push_back(index);
            else
                th_.hypothesis_rules_.push_back(index);
            th_.order_.push_back({DeclKind::Equation, index});
            th_.equations_.push_back(
                Equation{d.name, std::move(tele), TermEquation{std::move(lhs), std::move(rhs), std::move(at)}});
        } catch (const Error& e) {
            throw e.within(equation_label(d.name) + " (" + d.loc.to_string() + ")");
        }
    }

    void declare(const RawTypeEquation& d) {
        try {
            Context tele = telescope(d.telescope);
            TypeExpr lhs = resolve_type(th_, tele, d.lhs);
            TypeExpr rhs = resolve_type(th_, tele, d.rhs);
            check_type(th_, tele, lhs, fuel_);
            check_type(th_, tele, rhs, fuel_);
            const auto index = static_cast<std::uint32_t>(th_.equations_.size());
            std::set<std::uint32_t> lhs_vars;
            collect_vars(lhs, lhs_vars);
            if (lhs_vars.size() == tele.size()) th_.type_rules_.push_back(index);
            th_.order_.push_back({DeclKind::Equation, index});
            th_.equations_.push_back(Equation{d.name, std::move(tele), TypeEquation{std::move(lhs), std::move(rhs)}});
        } catch (const Error& e) {
            throw e.within(equation_label(d.name) + " (" + d.loc.to_string() + ")");
        }
    }

    void declare(const RawPragma& d) {
        try {
            pragma(d);
        } catch (const Error& e) {
            throw e.within("pragma (" + d.loc.to_string() + ")");
        }
    }

    void pragma(const RawPragma& d) {
        if (d.words.size() == 1 && d.words[0] == "confluent") {
            th_.confluent_ = true;
            return;
        }
        if (d.words.size() == 2 && d.words[0] == "equality") {
            declare_equality(d.words[1], d.loc);
            return;
        }
        std::string text;
        for (const auto& w : d.words) text += (text.empty() ? "" : " ") + w;
        throw Error(ErrorKind::Syntax, d.loc.to_string() + ": unknown pragma '" + text + "'");
    }

    // An equality sort E reflects a sort S when
    //   E(xs..., a: S(xs), b: S(xs))
    // i.e. its telescope is S's telescope followed by two elements of S.
    void declare_equality(const std::string& name, const SourceLoc& loc) {
        auto eq = th_.find_sort(name);
        if (!eq)
            throw Error(ErrorKind::UnknownSymbol,
                        loc.to_string() + ": pragma equality names unknown sort '" + name + "'");
        const Context& tele = th_.sort(*eq).telescope;
        auto bad = [&](const std::string& why) {
            return Error(ErrorKind::IllFormedTelescope,
                         loc.to_string() + ": sort " + name + " cannot reflect equality: " + why);
        };
        if (tele.size() < 2) throw bad("needs at least two entries");
        const std::size_t n = tele.size() - 2;
        const TypeExpr& a = tele[n];
        const TypeExpr& b = tele[n + 1];
        if (a != b) throw bad("last two entries must have the same type");
        if (th_.sort(a.sort).telescope.size() != n) throw bad("prefix must match the reflected sort");
        if (a.args != identity_subst(n)) throw bad("reflected sort must be applied to the prefix");
        th_.equality_sorts_[a.sort] = *eq;
    }

    Theory th_;
    std::size_t fuel_;
};

Theory elaborate_theory(const RawTheory& raw, std::size_t fuel) {
    return Elaborator(fuel).run(raw);
}

} // namespace gatlab
