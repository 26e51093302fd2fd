#include "gatlab/random.hpp"

#include <algorithm>

#include "gatlab/kernel.hpp"

namespace gatlab {

namespace {

/// Fills the telescope `tele` with pool terms, entry by entry; `choose`
/// orders the candidates and the first complete filling wins.
template <class Order>
bool fill(const std::vector<TypedTerm>& pool, Rewriter& rw, const Context& tele, std::vector<Term>& args,
          std::size_t& budget, Order&& order) {
    if (args.size() == tele.size()) return true;
    if (budget == 0) return false;
    --budget;
    const TypeNormalForm want = rw.normalize(substitute(tele[args.size()], args));
    if (want.exhausted) return false;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (pool[i].type == want.type) candidates.push_back(i);
    order(candidates);
    for (std::size_t i : candidates) {
        args.push_back(pool[i].term);
        if (fill(pool, rw, tele, args, budget, order)) return true;
        args.pop_back();
    }
    return false;
}

} // namespace

std::vector<TypedTerm> term_pool(const Theory& th, const Context& ctx, std::size_t depth, std::size_t cap) {
    Rewriter rw(th, ctx);
    std::vector<TypedTerm> pool;
    for (std::size_t i = 0; i < ctx.size() && pool.size() < cap; ++i)
        pool.push_back(TypedTerm{Term::var(static_cast<std::uint32_t>(i)), rw.normalize(ctx[i]).type});
    for (std::size_t level = 0; level < depth; ++level) {
        const std::vector<TypedTerm> previous = pool;
        for (SymbolId o = 0; o < th.ops().size() && pool.size() < cap; ++o) {
            const OpDecl& op = th.op(o);
            // Every filling of the telescope from the previous level.
            std::vector<Term> args;
            auto all = [&](auto&& self) -> void {
                if (pool.size() >= cap) return;
                if (args.size() == op.telescope.size()) {
                    Term t = Term::app(o, args);
                    if (std::none_of(pool.begin(), pool.end(), [&](const TypedTerm& p) { return p.term == t; })) {
                        const TypeNormalForm ty = rw.normalize(substitute(op.result, args));
                        if (!ty.exhausted) pool.push_back(TypedTerm{std::move(t), ty.type});
                    }
                    return;
                }
                const TypeNormalForm want = rw.normalize(substitute(op.telescope[args.size()], args));
                if (want.exhausted) return;
                for (const TypedTerm& p : previous) {
                    if (!(p.type == want.type)) continue;
                    args.push_back(p.term);
                    self(self);
                    args.pop_back();
                }
            };
            all(all);
        }
    }
    return pool;
}

Context random_context(const Theory& th, Rng& rng, std::size_t length, const Context& base) {
    Context ctx = base;
    for (std::size_t step = 0; step < length; ++step) {
        const std::vector<TypedTerm> pool = term_pool(th, ctx);
        Rewriter rw(th, ctx);
        std::vector<SymbolId> sorts(th.sorts().size());
        for (SymbolId s = 0; s < sorts.size(); ++s) sorts[s] = s;
        rng.shuffle(sorts);
        bool pushed = false;
        for (SymbolId s : sorts) {
            std::vector<Term> args;
            std::size_t budget = 200;
            if (fill(pool, rw, th.sort(s).telescope, args, budget, [&](auto& c) { rng.shuffle(c); })) {
                ctx.push(TypeExpr{s, std::move(args)});
                pushed = true;
                break;
            }
        }
        if (!pushed) break;
    }
    return ctx;
}

std::optional<ContextMorphism> random_morphism(const Theory& th, const Context& dom, const Context& cod, Rng& rng,
                                               std::size_t budget) {
    const std::vector<TypedTerm> pool = term_pool(th, dom, 2, 256);
    Rewriter rw(th, dom);
    std::vector<Term> terms;
    if (!fill(pool, rw, cod, terms, budget, [&](auto& c) { rng.shuffle(c); })) return std::nullopt;
    return ContextMorphism{dom, cod, std::move(terms)};
}

Formula random_formula(const Theory& th, const Context& ctx, Rng& rng, std::size_t depth, std::size_t max_ext) {
    if (depth == 0) return rng.below(2) ? Formula::top() : Formula::bot();
    switch (rng.below(7)) {
    case 0: return Formula::top();
    case 1: return Formula::bot();
    case 2: return Formula::negation(random_formula(th, ctx, rng, depth - 1, max_ext));
    case 3:
    case 4: {
        std::vector<Formula> parts;
        const std::size_t n = rng.below(3);
        for (std::size_t i = 0; i < n + 1; ++i) parts.push_back(random_formula(th, ctx, rng, depth - 1, max_ext));
        Formula f{rng.below(2) ? Formula::Kind::And : Formula::Kind::Or, std::move(parts), {}, {}};
        return f;
    }
    default: {
        const Context ext = random_context(th, rng, 1 + rng.below(max_ext), ctx);
        if (ext.size() == ctx.size()) return Formula::top();
        Formula body = random_formula(th, ext, rng, depth - 1, max_ext);
        std::vector<std::string> names;
        for (std::size_t i = ctx.size(); i < ext.size(); ++i) names.push_back("q" + std::to_string(i));
        return rng.below(2) ? Formula::exists(ext.suffix(ctx.size()), std::move(body), std::move(names))
                            : Formula::forall(ext.suffix(ctx.size()), std::move(body), std::move(names));
    }
    }
}

} // namespace gatlab
