#include "gatlab/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gatlab {

FiniteModel::FiniteModel(std::shared_ptr<const Theory> theory, std::string name)
    : theory_(std::move(theory)), name_(std::move(name)) {
    carriers_.resize(theory_->sorts().size());
    tables_.resize(theory_->ops().size());
}

void FiniteModel::declare_carrier(SymbolId sort, const Tuple& index) {
    carriers_.at(sort).try_emplace(index);
}

Elem FiniteModel::add_element(SymbolId sort, const Tuple& index, std::string name) {
    const auto e = static_cast<Elem>(names_.size());
    names_.push_back(std::move(name));
    sorts_.push_back(sort);
    carriers_.at(sort)[index].push_back(e);
    return e;
}

void FiniteModel::set_op(SymbolId op, const Tuple& args, Elem value) {
    tables_.at(op)[args] = value;
}

const std::vector<Elem>* FiniteModel::carrier(SymbolId sort, const Tuple& index) const {
    const auto& table = carriers_.at(sort);
    auto it = table.find(index);
    return it == table.end() ? nullptr : &it->second;
}

std::optional<Elem> FiniteModel::op_value(SymbolId op, const Tuple& args) const {
    const auto& table = tables_.at(op);
    auto it = table.find(args);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::optional<Elem> FiniteModel::find_element(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<Elem>(i);
    return std::nullopt;
}

std::string tuple_to_string(const FiniteModel& m, const Tuple& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ", ";
        os << (x[i] < m.element_count() ? m.element_name(x[i]) : "?");
    }
    os << ")";
    return os.str();
}

Elem eval_term(const FiniteModel& m, const Term& t, const Tuple& x) {
    if (t.is_var()) return x.at(t.index);
    Tuple args;
    args.reserve(t.args.size());
    for (const Term& a : t.args) args.push_back(eval_term(m, a, x));
    auto v = m.op_value(t.index, args);
    if (!v)
        throw Error(ErrorKind::MissingTableEntry, "no table entry for " + m.theory().op(t.index).name +
                                                      tuple_to_string(m, args));
    return *v;
}

const std::vector<Elem>& eval_type(const FiniteModel& m, const TypeExpr& a, const Tuple& x) {
    Tuple index;
    index.reserve(a.args.size());
    for (const Term& t : a.args) index.push_back(eval_term(m, t, x));
    const auto* c = m.carrier(a.sort, index);
    if (!c)
        throw Error(ErrorKind::MissingTableEntry, "no carrier for " + m.theory().sort(a.sort).name +
                                                      tuple_to_string(m, index));
    return *c;
}

namespace {

bool extend(const FiniteModel& m, Tuple& x, const std::vector<TypeExpr>& ext, std::size_t j,
            const std::function<bool(const Tuple&)>& visit) {
    if (j == ext.size()) return visit(x);
    const std::vector<Elem>& c = eval_type(m, ext[j], x);
    for (Elem e : c) {
        x.push_back(e);
        bool go_on = extend(m, x, ext, j + 1, visit);
        x.pop_back();
        if (!go_on) return false;
    }
    return true;
}

} // namespace

bool for_each_extension(const FiniteModel& m, const Tuple& x, const std::vector<TypeExpr>& ext,
                        const std::function<bool(const Tuple&)>& visit) {
    Tuple y = x;
    return extend(m, y, ext, 0, visit);
}

std::vector<Tuple> enumerate_context(const FiniteModel& m, const Context& ctx) {
    std::vector<Tuple> out;
    for_each_extension(m, Tuple{}, ctx.entries(), [&](const Tuple& x) {
        out.push_back(x);
        return true;
    });
    return out;
}

bool eval_formula(const FiniteModel& m, const Formula& phi, const Tuple& x) {
    using K = Formula::Kind;
    switch (phi.kind) {
    case K::Top: return true;
    case K::Bot: return false;
    case K::Not: return !eval_formula(m, phi.parts[0], x);
    case K::And:
        for (const Formula& p : phi.parts)
            if (!eval_formula(m, p, x)) return false;
        return true;
    case K::Or:
        for (const Formula& p : phi.parts)
            if (eval_formula(m, p, x)) return true;
        return false;
    case K::Exists: {
        bool found = false;
        for_each_extension(m, x, phi.ext, [&](const Tuple& y) {
            found = eval_formula(m, phi.parts[0], y);
            return !found;
        });
        return found;
    }
    case K::Forall: {
        bool all = true;
        for_each_extension(m, x, phi.ext, [&](const Tuple& y) {
            all = eval_formula(m, phi.parts[0], y);
            return all;
        });
        return all;
    }
    }
    return false;
}

std::vector<Tuple> satisfying(const FiniteModel& m, const Context& ctx, const Formula& phi) {
    std::vector<Tuple> out;
    for (Tuple& x : enumerate_context(m, ctx))
        if (eval_formula(m, phi, x)) out.push_back(std::move(x));
    return out;
}

ModelCheck check_model(const FiniteModel& m) {
    const Theory& th = m.theory();
    ModelCheck report;
    auto violation = [&](ErrorKind kind, std::string message) {
        report.ok = false;
        report.kind = kind;
        report.message = std::move(message);
        return report;
    };

    try {
        for (const DeclRef& d : th.order()) {
            if (d.kind == DeclKind::Sort) {
                const SortDecl& s = th.sort(d.index);
                std::vector<Tuple> tuples = enumerate_context(m, s.telescope);
                std::set<Tuple> expected(tuples.begin(), tuples.end());
                for (const Tuple& t : tuples)
                    if (!m.carrier(d.index, t))
                        return violation(ErrorKind::MissingTableEntry,
                                         "sort " + s.name + " has no carrier at " + tuple_to_string(m, t));
                for (const auto& [index, elems] : m.carriers(d.index))
                    if (!expected.count(index))
                        return violation(ErrorKind::InvalidModel,
                                         "sort " + s.name + " has a carrier at " +
                                             tuple_to_string(m, index) +
                                             ", which is not a tuple of its telescope");
            } else if (d.kind == DeclKind::Op) {
                const OpDecl& o = th.op(d.index);
                std::vector<Tuple> tuples = enumerate_context(m, o.telescope);
                std::set<Tuple> expected(tuples.begin(), tuples.end());
                for (const Tuple& t : tuples) {
                    auto v = m.op_value(d.index, t);
                    if (!v)
                        return violation(ErrorKind::MissingTableEntry,
                                         "operation " + o.name + " has no value at " + tuple_to_string(m, t));
                    const std::vector<Elem>& c = eval_type(m, o.result, t);
                    if (std::find(c.begin(), c.end(), *v) == c.end())
                        return violation(ErrorKind::InvalidModel,
                                         "operation " + o.name + " at " + tuple_to_string(m, t) +
                                             " yields " + m.element_name(*v) +
                                             ", outside its result carrier");
                }
                for (const auto& [args, value] : m.table(d.index))
                    if (!expected.count(args))
                        return violation(ErrorKind::InvalidModel,
                                         "operation " + o.name + " has an entry at " +
                                             tuple_to_string(m, args) +
                                             ", which is not a tuple of its telescope");
            } else {
                const Equation& eq = th.equations()[d.index];
                const std::string label = eq.name.empty() ? "#" + std::to_string(d.index) : eq.name;
                for (const Tuple& t : enumerate_context(m, eq.telescope)) {
                    bool holds = false;
                    if (const auto* te = std::get_if<TermEquation>(&eq.body)) {
                        holds = eval_term(m, te->lhs, t) == eval_term(m, te->rhs, t);
                    } else {
                        const auto& ty = std::get<TypeEquation>(eq.body);
                        holds = eval_type(m, ty.lhs, t) == eval_type(m, ty.rhs, t);
                    }
                    if (!holds) {
                        violation(ErrorKind::InvalidModel,
                                  "equation " + label + " fails at " + tuple_to_string(m, t));
                        report.equation = d.index;
                        report.witness = t;
                        return report;
                    }
                }
            }
        }
    } catch (const Error& e) {
        return violation(e.kind(), e.what());
    }
    return report;
}

} // namespace gatlab
