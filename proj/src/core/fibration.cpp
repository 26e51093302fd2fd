#include "gatlab/fibration.hpp"

#include <algorithm>
#include <set>

namespace gatlab {

Tuple ModelHom::apply(const Tuple& x) const {
    Tuple out;
    out.reserve(x.size());
    for (Elem e : x) out.push_back(image.at(e));
    return out;
}

ModelHom identity_hom(std::shared_ptr<const FiniteModel> m) {
    ModelHom h{"id", m, m, {}};
    h.image.resize(m->element_count());
    for (Elem e = 0; e < h.image.size(); ++e) h.image[e] = e;
    return h;
}

ModelHom compose(const ModelHom& g, const ModelHom& f) {
    if (f.target != g.source)
        throw Error(ErrorKind::DomainMismatch, "cannot compose " + g.name + " after " + f.name);
    ModelHom out{g.name + "." + f.name, f.source, g.target, {}};
    out.image.reserve(f.image.size());
    for (Elem e : f.image) out.image.push_back(g.image.at(e));
    return out;
}

namespace {

bool same_signature(const Theory& a, const Theory& b) {
    if (a.sorts().size() != b.sorts().size() || a.ops().size() != b.ops().size()) return false;
    for (std::size_t i = 0; i < a.sorts().size(); ++i)
        if (a.sorts()[i].name != b.sorts()[i].name) return false;
    for (std::size_t i = 0; i < a.ops().size(); ++i)
        if (a.ops()[i].name != b.ops()[i].name) return false;
    return true;
}

Context sort_display_context(const Theory& th, SymbolId s) {
    const Context& tele = th.sort(s).telescope;
    return tele.extended({TypeExpr{s, identity_subst(tele.size())}}, {"_e"});
}

} // namespace

HomCheck check_hom(const ModelHom& h) {
    const FiniteModel& m = *h.source;
    const FiniteModel& n = *h.target;
    const Theory& th = m.theory();
    if (!same_signature(th, n.theory())) return {false, "source and target are models of different theories"};
    if (h.image.size() != m.element_count())
        return {false, "image table has " + std::to_string(h.image.size()) + " entries for " +
                           std::to_string(m.element_count()) + " source elements"};
    for (SymbolId s = 0; s < th.sorts().size(); ++s) {
        for (const auto& [index, elems] : m.carriers(s)) {
            const Tuple mapped = h.apply(index);
            const auto* c = n.carrier(s, mapped);
            for (Elem e : elems) {
                if (!c || std::find(c->begin(), c->end(), h.image[e]) == c->end())
                    return {false, "element " + m.element_name(e) + " of " + th.sort(s).name +
                                       tuple_to_string(m, index) + " is not sent into " +
                                       th.sort(s).name + tuple_to_string(n, mapped)};
            }
        }
    }
    for (SymbolId o = 0; o < th.ops().size(); ++o) {
        for (const auto& [args, value] : m.table(o)) {
            const Tuple mapped = h.apply(args);
            auto v = n.op_value(o, mapped);
            if (!v || *v != h.image[value])
                return {false, "operation " + th.op(o).name + " is not preserved at " +
                                   tuple_to_string(m, args)};
        }
    }
    return {};
}

AnodyneResult is_anodyne_fibration(const ModelHom& h) {
    const FiniteModel& m = *h.source;
    const FiniteModel& n = *h.target;
    for (SymbolId s = 0; s < m.theory().sorts().size(); ++s) {
        for (const auto& [index, elems] : m.carriers(s)) {
            const auto* fiber = n.carrier(s, h.apply(index));
            if (!fiber) continue;
            std::set<Elem> hit;
            for (Elem e : elems) hit.insert(h.image[e]);
            for (Elem b : *fiber)
                if (!hit.count(b)) return {false, LiftingFailure{s, index, b}};
        }
    }
    return {};
}

std::string describe(const ModelHom& h, const LiftingFailure& f) {
    const FiniteModel& m = *h.source;
    const FiniteModel& n = *h.target;
    return "sort " + m.theory().sort(f.sort).name + ": " + n.element_name(f.missed) + " in the fiber over " +
           tuple_to_string(n, h.apply(f.index)) + " has no preimage over " + tuple_to_string(m, f.index);
}

void InvarianceReport::merge(const InvarianceReport& other) {
    checks += other.checks;
    agreements += other.agreements;
    if (!first_violation && other.first_violation) first_violation = other.first_violation;
}

InvarianceReport invariance_suite(const ModelHom& h, const std::vector<FormulaInContext>& formulas,
                                  std::size_t cap) {
    InvarianceReport report;
    for (const FormulaInContext& phi : formulas) {
        std::size_t taken = 0;
        for (const Tuple& x : enumerate_context(*h.source, phi.context)) {
            if (cap && taken++ >= cap) break;
            const bool a = eval_formula(*h.source, phi.formula, x);
            const bool b = eval_formula(*h.target, phi.formula, h.apply(x));
            ++report.checks;
            if (a == b)
                ++report.agreements;
            else if (!report.first_violation)
                report.first_violation = InvarianceViolation{phi.name, x, a, b};
        }
    }
    return report;
}

void BeckChevalleyReport::merge(const BeckChevalleyReport& other) {
    squares += other.squares;
    subsets += other.subsets;
    agreements += other.agreements;
    if (!first_failure && other.first_failure) first_failure = other.first_failure;
}

BeckChevalleyReport beck_chevalley(const ModelHom& h, const std::vector<FormulaInContext>& formulas) {
    const FiniteModel& m = *h.source;
    const FiniteModel& n = *h.target;
    const Theory& th = m.theory();
    BeckChevalleyReport report;
    for (SymbolId s = 0; s < th.sorts().size(); ++s) {
        const Context total = sort_display_context(th, s);
        const std::size_t k = total.size() - 1;
        const Context base = total.prefix(k);
        const std::vector<Tuple> w = enumerate_context(m, total); // W = M(Θ.S)
        const std::vector<Tuple> x = enumerate_context(n, total); // X = N(Θ.S)
        const std::vector<Tuple> y = enumerate_context(m, base);  // Y = M(Θ)
        ++report.squares;

        std::vector<std::pair<std::string, std::set<Tuple>>> subsets;
        for (const Tuple& t : x) subsets.push_back({"{" + tuple_to_string(n, t) + "}", {t}});
        subsets.push_back({"all", std::set<Tuple>(x.begin(), x.end())});
        for (const FormulaInContext& phi : formulas) {
            if (!(phi.context == total)) continue;
            auto sat = satisfying(n, total, phi.formula);
            subsets.push_back({phi.name, std::set<Tuple>(sat.begin(), sat.end())});
        }

        auto truncate = [k](const Tuple& t) { return Tuple(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k)); };
        for (const auto& [label, p] : subsets) {
            // ∃_q P ⊆ N(Θ), then restrict along h.
            std::set<Tuple> exists_q;
            for (const Tuple& t : p) exists_q.insert(truncate(t));
            // Restrict P along h to M(Θ.S), then ∃_p.
            std::set<Tuple> exists_p;
            for (const Tuple& t : w)
                if (p.count(h.apply(t))) exists_p.insert(truncate(t));
            bool agree = true;
            for (const Tuple& t : y) {
                if (exists_q.count(h.apply(t)) != exists_p.count(t)) {
                    agree = false;
                    if (!report.first_failure)
                        report.first_failure = "sort " + th.sort(s).name + ", subset " + label + ", at " +
                                               tuple_to_string(m, t);
                    break;
                }
            }
            ++report.subsets;
            if (agree) ++report.agreements;
        }
    }
    return report;
}

} // namespace gatlab
