#include "gatlab/search.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gatlab {

namespace {

using MaybeElem = std::optional<Elem>;

void collect(const Term& t, std::set<SymbolId>& ops) {
    if (t.is_var()) return;
    ops.insert(t.index);
    for (const Term& a : t.args) collect(a, ops);
}

void collect(const TypeExpr& a, std::set<SymbolId>& sorts, std::set<SymbolId>& ops) {
    sorts.insert(a.sort);
    for (const Term& t : a.args) collect(t, ops);
}

void collect(const Context& c, std::set<SymbolId>& sorts, std::set<SymbolId>& ops) {
    for (const TypeExpr& a : c.entries()) collect(a, sorts, ops);
}

struct Symbols {
    std::set<SymbolId> sorts, ops;
};

/// A model under construction: carriers and table entries are added and
/// removed in stack order while the search backtracks.
class Search {
public:
    Search(std::shared_ptr<const Theory> th, std::size_t bound,
           const std::function<bool(const FiniteModel&)>& visit)
        : th_(std::move(th)), bound_(bound), visit_(visit) {
        const Theory& t = *th_;
        carriers_.resize(t.sorts().size());
        tables_.resize(t.ops().size());
        sort_done_.assign(t.sorts().size(), false);
        op_done_.assign(t.ops().size(), false);
        for (const SortDecl& s : t.sorts()) {
            Symbols deps;
            collect(s.telescope, deps.sorts, deps.ops);
            sort_deps_.push_back(std::move(deps));
        }
        for (const OpDecl& o : t.ops()) {
            Symbols deps;
            collect(o.telescope, deps.sorts, deps.ops);
            collect(o.result, deps.sorts, deps.ops);
            op_deps_.push_back(std::move(deps));
        }
        for (const Equation& e : t.equations()) {
            Symbols s;
            collect(e.telescope, s.sorts, s.ops);
            if (const auto* te = std::get_if<TermEquation>(&e.body)) {
                collect(te->lhs, s.ops);
                collect(te->rhs, s.ops);
                collect(te->at, s.sorts, s.ops);
            } else {
                const auto& ty = std::get<TypeEquation>(e.body);
                collect(ty.lhs, s.sorts, s.ops);
                collect(ty.rhs, s.sorts, s.ops);
            }
            equation_symbols_.push_back(std::move(s));
        }
        sort_mentions_.resize(t.sorts().size());
        op_mentions_.resize(t.ops().size());
        for (std::size_t i = 0; i < equation_symbols_.size(); ++i) {
            for (SymbolId id : equation_symbols_[i].sorts) sort_mentions_[id].push_back(i);
            for (SymbolId id : equation_symbols_[i].ops) op_mentions_[id].push_back(i);
        }
    }

    SearchStats run() {
        next_stage();
        return stats_;
    }

private:
    enum class Kind { Sort, Op };
    struct Stage {
        Kind kind;
        SymbolId symbol;
        std::vector<Tuple> items;
    };

    // Partial evaluation: nullopt when an entry is still undecided.
    MaybeElem eval(const Term& t, const Tuple& x) const {
        if (t.is_var()) return x.at(t.index);
        Tuple args;
        args.reserve(t.args.size());
        for (const Term& a : t.args) {
            auto v = eval(a, x);
            if (!v) return std::nullopt;
            args.push_back(*v);
        }
        const auto& table = tables_[t.index];
        auto it = table.find(args);
        if (it == table.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<Elem>* eval(const TypeExpr& a, const Tuple& x) const {
        Tuple index;
        index.reserve(a.args.size());
        for (const Term& t : a.args) {
            auto v = eval(t, x);
            if (!v) return nullptr;
            index.push_back(*v);
        }
        const auto& table = carriers_[a.sort];
        auto it = table.find(index);
        return it == table.end() ? nullptr : &it->second;
    }

    /// Tuples of the telescope whose types can be evaluated; returns false
    /// when `visit` stops.
    bool extensions(const Context& tele, Tuple& x, const std::function<bool(const Tuple&)>& visit) const {
        if (x.size() == tele.size()) return visit(x);
        const auto* c = eval(tele[x.size()], x);
        if (!c) return true;
        for (Elem e : *c) {
            x.push_back(e);
            const bool go_on = extensions(tele, x, visit);
            x.pop_back();
            if (!go_on) return false;
        }
        return true;
    }

    bool ready(const Symbols& s) const {
        return std::all_of(s.sorts.begin(), s.sorts.end(), [&](SymbolId id) { return sort_done_[id]; }) &&
               std::all_of(s.ops.begin(), s.ops.end(), [&](SymbolId id) { return op_done_[id]; });
    }

    bool equation_holds(std::size_t index) const {
        const Equation& e = th_->equations()[index];
        Tuple x;
        return extensions(e.telescope, x, [&](const Tuple& t) {
            if (const auto* te = std::get_if<TermEquation>(&e.body)) {
                auto l = eval(te->lhs, t);
                auto r = eval(te->rhs, t);
                return !l || !r || *l == *r;
            }
            const auto& ty = std::get<TypeEquation>(e.body);
            const auto* l = eval(ty.lhs, t);
            const auto* r = eval(ty.rhs, t);
            return !l || !r || *l == *r;
        });
    }

    /// Equations mentioning `symbol` whose sorts are decided, apart from
    /// `partial`, whose carriers may be only partly known.
    bool check(const std::vector<std::vector<std::size_t>>& mentions, SymbolId symbol,
               std::optional<SymbolId> partial = std::nullopt) const {
        for (std::size_t i : mentions[symbol]) {
            const Symbols& s = equation_symbols_[i];
            if (!std::all_of(s.sorts.begin(), s.sorts.end(),
                             [&](SymbolId id) { return sort_done_[id] || id == partial; }))
                continue;
            if (!equation_holds(i)) return false;
        }
        return true;
    }

    std::vector<Tuple> tuples(const Context& tele) const {
        std::vector<Tuple> out;
        Tuple x;
        extensions(tele, x, [&](const Tuple& t) {
            out.push_back(t);
            return true;
        });
        return out;
    }

    /// Picks the ready declaration with the fewest entries, earliest first.
    void next_stage() {
        if (stop_) return;
        std::optional<Stage> best;
        for (SymbolId s = 0; s < th_->sorts().size(); ++s) {
            if (sort_done_[s] || !ready(sort_deps_[s])) continue;
            auto items = tuples(th_->sort(s).telescope);
            if (!best || items.size() < best->items.size()) best = Stage{Kind::Sort, s, std::move(items)};
        }
        for (SymbolId o = 0; o < th_->ops().size(); ++o) {
            if (op_done_[o] || !ready(op_deps_[o])) continue;
            auto items = tuples(th_->op(o).telescope);
            if (!best || items.size() < best->items.size()) best = Stage{Kind::Op, o, std::move(items)};
        }
        if (!best) {
            leaf();
            return;
        }
        stages_.push_back(std::move(*best));
        step(stages_.size() - 1, 0);
        stages_.pop_back();
    }

    void step(std::size_t stage, std::size_t item) {
        if (stop_) return;
        // stages_ may reallocate below; copy what is needed.
        const Kind kind = stages_[stage].kind;
        const SymbolId symbol = stages_[stage].symbol;
        if (item == stages_[stage].items.size()) {
            if (kind == Kind::Sort) {
                sort_done_[symbol] = true;
                if (check(sort_mentions_, symbol)) next_stage();
                sort_done_[symbol] = false;
            } else {
                op_done_[symbol] = true;
                next_stage();
                op_done_[symbol] = false;
            }
            return;
        }
        const Tuple index = stages_[stage].items[item];
        if (kind == Kind::Sort) {
            auto& carrier = carriers_[symbol][index];
            for (std::size_t size = 0; size <= bound_ && !stop_; ++size) {
                if (size > 0) {
                    carrier.push_back(static_cast<Elem>(element_sorts_.size()));
                    element_sorts_.push_back(symbol);
                    element_index_.push_back(index);
                }
                ++stats_.nodes;
                if (check(sort_mentions_, symbol, symbol)) step(stage, item + 1);
            }
            for (std::size_t k = 0; k < carrier.size(); ++k) {
                element_sorts_.pop_back();
                element_index_.pop_back();
            }
            carriers_[symbol].erase(index);
            return;
        }
        const auto* result = eval(th_->op(symbol).result, index);
        if (!result) return;
        const std::vector<Elem> choices = *result;
        auto& table = tables_[symbol];
        for (Elem v : choices) {
            if (stop_) break;
            table[index] = v;
            ++stats_.nodes;
            if (check(op_mentions_, symbol)) step(stage, item + 1);
        }
        table.erase(index);
    }

    void leaf() {
        const Theory& t = *th_;
        FiniteModel m(th_, "search" + std::to_string(stats_.models));
        for (SymbolId s = 0; s < t.sorts().size(); ++s)
            for (const auto& [index, elems] : carriers_[s]) m.declare_carrier(s, index);
        std::vector<std::size_t> per_sort(t.sorts().size(), 0);
        for (std::size_t e = 0; e < element_sorts_.size(); ++e) {
            const SymbolId s = element_sorts_[e];
            m.add_element(s, element_index_[e], t.sort(s).name + std::to_string(per_sort[s]++));
        }
        for (SymbolId o = 0; o < t.ops().size(); ++o)
            for (const auto& [args, v] : tables_[o]) m.set_op(o, args, v);
        ++stats_.models;
        if (!visit_(m)) stop_ = true;
    }

    std::shared_ptr<const Theory> th_;
    std::size_t bound_;
    const std::function<bool(const FiniteModel&)>& visit_;
    std::vector<std::map<Tuple, std::vector<Elem>>> carriers_;
    std::vector<std::map<Tuple, Elem>> tables_;
    std::vector<SymbolId> element_sorts_;
    std::vector<Tuple> element_index_;
    std::vector<bool> sort_done_, op_done_;
    std::vector<Symbols> sort_deps_, op_deps_, equation_symbols_;
    std::vector<std::vector<std::size_t>> sort_mentions_, op_mentions_;
    std::vector<Stage> stages_;
    SearchStats stats_;
    bool stop_ = false;
};

} // namespace

SearchStats for_each_model(const std::shared_ptr<const Theory>& th, std::size_t bound,
                           const std::function<bool(const FiniteModel&)>& visit) {
    return Search(th, bound, visit).run();
}

CountermodelSearch find_countermodel(const std::shared_ptr<const Theory>& th, const Context& gamma,
                                     const Formula& phi, const Formula& psi, std::size_t bound) {
    CountermodelSearch out;
    out.stats = for_each_model(th, bound, [&](const FiniteModel& m) {
        for (const Tuple& x : enumerate_context(m, gamma)) {
            if (eval_formula(m, phi, x) && !eval_formula(m, psi, x)) {
                out.found = Countermodel{std::make_shared<FiniteModel>(m), x};
                return false;
            }
        }
        return true;
    });
    return out;
}

} // namespace gatlab
