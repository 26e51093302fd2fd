#include "gatlab/category.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gatlab/builtin.hpp"

namespace gatlab {

namespace {
constexpr std::uint32_t kNone = FinCategory::kNone;
}

// ---------------------------------------------------------------------------
// FinCategory

std::uint32_t FinCategory::add_object(std::string name) {
    const auto a = static_cast<std::uint32_t>(objects_.size());
    objects_.push_back(name);
    for (auto& row : homs_) row.emplace_back();
    homs_.emplace_back(objects_.size());
    identities_.push_back(kNone);
    const auto id = add_arrow("id_" + name, a, a);
    identities_[a] = id;
    set_comp(id, id, id);
    return a;
}

std::uint32_t FinCategory::add_arrow(std::string name, std::uint32_t src, std::uint32_t tgt) {
    const auto f = static_cast<std::uint32_t>(arrows_.size());
    arrows_.push_back(Arrow{std::move(name), src, tgt});
    for (auto& row : comp_) row.push_back(kNone);
    comp_.emplace_back(arrows_.size(), kNone);
    homs_.at(src).at(tgt).push_back(f);
    if (identities_[src] != kNone) set_comp(f, identities_[src], f);
    if (identities_[tgt] != kNone) set_comp(identities_[tgt], f, f);
    return f;
}

void FinCategory::set_comp(std::uint32_t g, std::uint32_t f, std::uint32_t h) { comp_.at(g).at(f) = h; }

std::optional<std::uint32_t> FinCategory::find_object(const std::string& name) const {
    for (std::uint32_t a = 0; a < objects_.size(); ++a)
        if (objects_[a] == name) return a;
    return std::nullopt;
}

std::optional<std::uint32_t> FinCategory::find_arrow(const std::string& name) const {
    for (std::uint32_t f = 0; f < arrows_.size(); ++f)
        if (arrows_[f].name == name) return f;
    return std::nullopt;
}

std::optional<std::uint32_t> FinCategory::inverse(std::uint32_t f) const {
    const Arrow& a = arrows_.at(f);
    for (std::uint32_t g : hom(a.tgt, a.src))
        if (compose(g, f) == identity(a.src) && compose(f, g) == identity(a.tgt)) return g;
    return std::nullopt;
}

std::optional<std::string> FinCategory::validate() const {
    for (std::uint32_t g = 0; g < arrows_.size(); ++g) {
        for (std::uint32_t f = 0; f < arrows_.size(); ++f) {
            const std::uint32_t h = comp_[g][f];
            if (arrows_[f].tgt != arrows_[g].src) {
                if (h != kNone) return "composite " + arrows_[g].name + " . " + arrows_[f].name + " of non-composable arrows";
                continue;
            }
            if (h == kNone) return "missing composite " + arrows_[g].name + " . " + arrows_[f].name;
            if (arrows_[h].src != arrows_[f].src || arrows_[h].tgt != arrows_[g].tgt)
                return "composite " + arrows_[g].name + " . " + arrows_[f].name + " has the wrong endpoints";
        }
    }
    for (std::uint32_t f = 0; f < arrows_.size(); ++f) {
        if (comp_[f][identity(arrows_[f].src)] != f || comp_[identity(arrows_[f].tgt)][f] != f)
            return "unit law fails at " + arrows_[f].name;
    }
    for (std::uint32_t f = 0; f < arrows_.size(); ++f) {
        for (std::uint32_t g = 0; g < arrows_.size(); ++g) {
            if (arrows_[f].tgt != arrows_[g].src) continue;
            for (std::uint32_t h = 0; h < arrows_.size(); ++h) {
                if (arrows_[g].tgt != arrows_[h].src) continue;
                if (comp_[comp_[h][g]][f] != comp_[h][comp_[g][f]])
                    return "associativity fails at " + arrows_[h].name + " . " + arrows_[g].name + " . " +
                           arrows_[f].name;
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Functors

std::optional<std::string> validate(const Functor& f) {
    const FinCategory& c = *f.source;
    const FinCategory& d = *f.target;
    if (f.on_objects.size() != c.object_count() || f.on_arrows.size() != c.arrow_count())
        return "maps do not cover the source category";
    for (std::uint32_t a = 0; a < c.object_count(); ++a)
        if (f.on_objects[a] >= d.object_count()) return "object " + c.object_name(a) + " has no valid image";
    for (std::uint32_t g = 0; g < c.arrow_count(); ++g) {
        const auto h = f.on_arrows[g];
        if (h >= d.arrow_count()) return "arrow " + c.arrow(g).name + " has no valid image";
        if (d.arrow(h).src != f.on_objects[c.arrow(g).src] || d.arrow(h).tgt != f.on_objects[c.arrow(g).tgt])
            return "arrow " + c.arrow(g).name + " is sent to an arrow with the wrong endpoints";
    }
    for (std::uint32_t a = 0; a < c.object_count(); ++a)
        if (f.on_arrows[c.identity(a)] != d.identity(f.on_objects[a]))
            return "identity of " + c.object_name(a) + " is not preserved";
    for (std::uint32_t g = 0; g < c.arrow_count(); ++g)
        for (std::uint32_t k = 0; k < c.arrow_count(); ++k) {
            if (c.arrow(k).tgt != c.arrow(g).src) continue;
            if (f.on_arrows[c.compose(g, k)] != d.compose(f.on_arrows[g], f.on_arrows[k]))
                return "composite " + c.arrow(g).name + " . " + c.arrow(k).name + " is not preserved";
        }
    return std::nullopt;
}

Functor identity_functor(CategoryPtr c) {
    Functor f{"id_" + c->name(), c, c, {}, {}};
    f.on_objects.resize(c->object_count());
    std::iota(f.on_objects.begin(), f.on_objects.end(), 0u);
    f.on_arrows.resize(c->arrow_count());
    std::iota(f.on_arrows.begin(), f.on_arrows.end(), 0u);
    return f;
}

Functor compose(const Functor& g, const Functor& f) {
    if (f.target != g.source) throw Error(ErrorKind::DomainMismatch, "cannot compose " + g.name + " after " + f.name);
    Functor out{g.name + "." + f.name, f.source, g.target, {}, {}};
    for (auto a : f.on_objects) out.on_objects.push_back(g.on_objects[a]);
    for (auto h : f.on_arrows) out.on_arrows.push_back(g.on_arrows[h]);
    return out;
}

void for_each_functor(const CategoryPtr& a, const CategoryPtr& c,
                      const std::function<bool(const Functor&)>& visit) {
    Functor f{"", a, c, std::vector<std::uint32_t>(a->object_count(), 0),
              std::vector<std::uint32_t>(a->arrow_count(), kNone)};
    std::vector<std::uint32_t> free_arrows;
    for (std::uint32_t g = 0; g < a->arrow_count(); ++g)
        if (!a->is_identity(g)) free_arrows.push_back(g);

    // Composites among assigned arrows must already agree.
    auto consistent = [&](std::uint32_t g) {
        for (std::uint32_t k = 0; k < a->arrow_count(); ++k) {
            const auto fk = f.on_arrows[k];
            if (fk == kNone) continue;
            if (a->arrow(k).tgt == a->arrow(g).src) {
                const auto h = f.on_arrows[a->compose(g, k)];
                if (h != kNone && h != c->compose(f.on_arrows[g], fk)) return false;
            }
            if (a->arrow(g).tgt == a->arrow(k).src) {
                const auto h = f.on_arrows[a->compose(k, g)];
                if (h != kNone && h != c->compose(fk, f.on_arrows[g])) return false;
            }
        }
        for (std::uint32_t k = 0; k < a->arrow_count(); ++k)
            for (std::uint32_t l = 0; l < a->arrow_count(); ++l) {
                if (a->arrow(l).tgt != a->arrow(k).src || a->compose(k, l) != g) continue;
                if (f.on_arrows[k] != kNone && f.on_arrows[l] != kNone &&
                    c->compose(f.on_arrows[k], f.on_arrows[l]) != f.on_arrows[g])
                    return false;
            }
        return true;
    };

    bool stop = false;
    auto arrows = [&](auto&& self, std::size_t k) -> void {
        if (stop) return;
        if (k == free_arrows.size()) {
            if (!visit(f)) stop = true;
            return;
        }
        const auto g = free_arrows[k];
        for (auto h : c->hom(f.on_objects[a->arrow(g).src], f.on_objects[a->arrow(g).tgt])) {
            f.on_arrows[g] = h;
            if (consistent(g)) self(self, k + 1);
            if (stop) break;
        }
        f.on_arrows[g] = kNone;
    };
    auto objects = [&](auto&& self, std::size_t k) -> void {
        if (stop) return;
        if (k == a->object_count()) {
            for (std::uint32_t o = 0; o < a->object_count(); ++o)
                f.on_arrows[a->identity(o)] = c->identity(f.on_objects[o]);
            arrows(arrows, 0);
            for (std::uint32_t o = 0; o < a->object_count(); ++o) f.on_arrows[a->identity(o)] = kNone;
            return;
        }
        for (std::uint32_t o = 0; o < c->object_count() && !stop; ++o) {
            f.on_objects[k] = o;
            self(self, k + 1);
        }
    };
    objects(objects, 0);
}

// ---------------------------------------------------------------------------
// Named categories

CategoryPtr terminal_category() {
    static const CategoryPtr c = [] {
        auto c = std::make_shared<FinCategory>("point");
        c->add_object("pt");
        return c;
    }();
    return c;
}

CategoryPtr empty_category() {
    static const CategoryPtr c = std::make_shared<FinCategory>("empty");
    return c;
}

CategoryPtr discrete_category(std::size_t n) {
    auto c = std::make_shared<FinCategory>("discrete" + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) c->add_object("o" + std::to_string(i));
    return c;
}

CategoryPtr walking_arrow() {
    static const CategoryPtr c = [] {
        auto c = std::make_shared<FinCategory>("walking_arrow");
        const auto a = c->add_object("x");
        const auto b = c->add_object("y");
        c->add_arrow("f", a, b);
        return c;
    }();
    return c;
}

CategoryPtr walking_iso() {
    static const CategoryPtr c = [] {
        auto c = std::make_shared<FinCategory>("walking_iso");
        const auto a = c->add_object("x");
        const auto b = c->add_object("y");
        const auto f = c->add_arrow("f", a, b);
        const auto g = c->add_arrow("g", b, a);
        c->set_comp(g, f, c->identity(a));
        c->set_comp(f, g, c->identity(b));
        return c;
    }();
    return c;
}

CategoryPtr parallel_pair() {
    static const CategoryPtr c = [] {
        auto c = std::make_shared<FinCategory>("parallel_pair");
        const auto a = c->add_object("x");
        const auto b = c->add_object("y");
        c->add_arrow("f", a, b);
        c->add_arrow("g", a, b);
        return c;
    }();
    return c;
}

// ---------------------------------------------------------------------------
// Cat₌ models

namespace {

struct CatSymbols {
    SymbolId ob, hom, eq, id, comp, r;
};

const CatSymbols& cat_symbols() {
    static const CatSymbols s = [] {
        const Theory& th = *cat_eq_theory();
        return CatSymbols{*th.find_sort("Ob"), *th.find_sort("Hom"), *th.find_sort("Eq"),
                          *th.find_op("id"),   *th.find_op("comp"),  *th.find_op("r")};
    }();
    return s;
}

} // namespace

std::shared_ptr<const FiniteModel> to_model(const FinCategory& c) {
    const CatSymbols& s = cat_symbols();
    auto m = std::make_shared<FiniteModel>(cat_eq_theory(), c.name());
    const auto n = static_cast<Elem>(c.object_count());
    const auto arrows = static_cast<Elem>(c.arrow_count());
    auto ob = [](std::uint32_t a) { return static_cast<Elem>(a); };
    auto ar = [n](std::uint32_t f) { return n + f; };
    auto rf = [n, arrows](std::uint32_t f) { return n + arrows + f; };

    m->declare_carrier(s.ob, {});
    for (std::uint32_t a = 0; a < c.object_count(); ++a) m->add_element(s.ob, {}, c.object_name(a));
    for (std::uint32_t a = 0; a < c.object_count(); ++a)
        for (std::uint32_t b = 0; b < c.object_count(); ++b) m->declare_carrier(s.hom, {ob(a), ob(b)});
    for (std::uint32_t f = 0; f < c.arrow_count(); ++f)
        m->add_element(s.hom, {ob(c.arrow(f).src), ob(c.arrow(f).tgt)}, c.arrow(f).name);
    for (std::uint32_t a = 0; a < c.object_count(); ++a)
        for (std::uint32_t b = 0; b < c.object_count(); ++b)
            for (auto f : c.hom(a, b))
                for (auto g : c.hom(a, b)) m->declare_carrier(s.eq, {ob(a), ob(b), ar(f), ar(g)});
    for (std::uint32_t f = 0; f < c.arrow_count(); ++f) {
        const auto& a = c.arrow(f);
        m->add_element(s.eq, {ob(a.src), ob(a.tgt), ar(f), ar(f)}, "r_" + a.name);
    }
    for (std::uint32_t a = 0; a < c.object_count(); ++a) m->set_op(s.id, {ob(a)}, ar(c.identity(a)));
    for (std::uint32_t f = 0; f < c.arrow_count(); ++f) {
        const auto& af = c.arrow(f);
        for (std::uint32_t z = 0; z < c.object_count(); ++z)
            for (auto g : c.hom(af.tgt, z))
                m->set_op(s.comp, {ob(af.src), ob(af.tgt), ob(z), ar(f), ar(g)}, ar(c.compose(g, f)));
        m->set_op(s.r, {ob(af.src), ob(af.tgt), ar(f)}, rf(f));
    }
    return m;
}

FinCategory from_model(const FiniteModel& m) {
    const Theory& th = m.theory();
    auto sort = [&](const char* name) {
        auto s = th.find_sort(name);
        if (!s) throw Error(ErrorKind::InvalidModel, std::string("not a Cat_eq model: no sort ") + name);
        return *s;
    };
    auto op = [&](const char* name) {
        auto o = th.find_op(name);
        if (!o) throw Error(ErrorKind::InvalidModel, std::string("not a Cat_eq model: no operation ") + name);
        return *o;
    };
    const SymbolId ob = sort("Ob"), hom = sort("Hom"), eq = sort("Eq");
    const SymbolId id = op("id"), comp = op("comp"), r = op("r");
    const ModelCheck mc = check_model(m);
    if (!mc.ok) throw Error(ErrorKind::InvalidModel, "not a model: " + mc.message);

    FinCategory c(m.name());
    const auto* objects = m.carrier(ob, {});
    std::map<Elem, std::uint32_t> object_of, arrow_of;
    for (Elem e : *objects) object_of[e] = c.add_object(m.element_name(e));
    for (Elem x : *objects)
        for (Elem y : *objects) {
            const Elem ident = *m.op_value(id, {x});
            for (Elem f : *m.carrier(hom, {x, y})) {
                if (x == y && f == ident)
                    arrow_of[f] = c.identity(object_of[x]);
                else
                    arrow_of[f] = c.add_arrow(m.element_name(f), object_of[x], object_of[y]);
            }
        }
    for (const auto& [args, value] : m.table(comp)) c.set_comp(arrow_of[args[4]], arrow_of[args[3]], arrow_of[value]);
    for (Elem x : *objects)
        for (Elem y : *objects)
            for (Elem f : *m.carrier(hom, {x, y}))
                for (Elem g : *m.carrier(hom, {x, y})) {
                    const auto& witnesses = *m.carrier(eq, {x, y, f, g});
                    const std::size_t want = f == g ? 1 : 0;
                    if (witnesses.size() != want)
                        throw Error(ErrorKind::InvalidModel,
                                    "Eq(" + m.element_name(f) + ", " + m.element_name(g) + ") has " +
                                        std::to_string(witnesses.size()) + " elements, expected " +
                                        std::to_string(want));
                    if (want && witnesses[0] != *m.op_value(r, {x, y, f}))
                        throw Error(ErrorKind::InvalidModel, "Eq(f, f) must be {r_f}");
                }
    if (auto err = c.validate()) throw Error(ErrorKind::InvalidModel, *err);
    return c;
}

ModelHom to_hom(const Functor& f, std::shared_ptr<const FiniteModel> source,
                std::shared_ptr<const FiniteModel> target) {
    const FinCategory& c = *f.source;
    const FinCategory& d = *f.target;
    const auto nc = static_cast<Elem>(c.object_count()), mc = static_cast<Elem>(c.arrow_count());
    const auto nd = static_cast<Elem>(d.object_count()), md = static_cast<Elem>(d.arrow_count());
    ModelHom h{f.name, std::move(source), std::move(target), {}};
    h.image.resize(nc + 2 * mc);
    for (Elem a = 0; a < nc; ++a) h.image[a] = f.on_objects[a];
    for (Elem g = 0; g < mc; ++g) {
        h.image[nc + g] = nd + f.on_arrows[g];
        h.image[nc + mc + g] = nd + md + f.on_arrows[g];
    }
    return h;
}

ModelHom to_hom(const Functor& f) { return to_hom(f, to_model(*f.source), to_model(*f.target)); }

// ---------------------------------------------------------------------------
// Classes of functors

bool is_full(const Functor& f) {
    const FinCategory& c = *f.source;
    const FinCategory& d = *f.target;
    for (std::uint32_t a = 0; a < c.object_count(); ++a)
        for (std::uint32_t b = 0; b < c.object_count(); ++b) {
            std::set<std::uint32_t> hit;
            for (auto g : c.hom(a, b)) hit.insert(f.on_arrows[g]);
            if (hit.size() != d.hom(f.on_objects[a], f.on_objects[b]).size()) return false;
        }
    return true;
}

bool is_faithful(const Functor& f) {
    const FinCategory& c = *f.source;
    for (std::uint32_t a = 0; a < c.object_count(); ++a)
        for (std::uint32_t b = 0; b < c.object_count(); ++b) {
            std::set<std::uint32_t> hit;
            for (auto g : c.hom(a, b)) hit.insert(f.on_arrows[g]);
            if (hit.size() != c.hom(a, b).size()) return false;
        }
    return true;
}

bool is_surjective_on_objects(const Functor& f) {
    std::set<std::uint32_t> hit(f.on_objects.begin(), f.on_objects.end());
    return hit.size() == f.target->object_count();
}

bool is_essentially_surjective(const Functor& f) {
    const FinCategory& d = *f.target;
    for (std::uint32_t y = 0; y < d.object_count(); ++y) {
        bool reached = false;
        for (auto x : f.on_objects) {
            for (auto g : d.hom(x, y))
                if (d.inverse(g)) reached = true;
            if (reached) break;
        }
        if (!reached) return false;
    }
    return true;
}

bool is_equivalence(const Functor& f) { return is_full(f) && is_faithful(f) && is_essentially_surjective(f); }

bool is_isofibration(const Functor& f) {
    const FinCategory& c = *f.source;
    const FinCategory& d = *f.target;
    for (std::uint32_t a = 0; a < c.object_count(); ++a) {
        const auto fa = f.on_objects[a];
        for (std::uint32_t y = 0; y < d.object_count(); ++y)
            for (auto g : d.hom(fa, y)) {
                if (!d.inverse(g)) continue;
                bool lifted = false;
                for (std::uint32_t b = 0; b < c.object_count() && !lifted; ++b)
                    for (auto k : c.hom(a, b))
                        if (f.on_arrows[k] == g && c.inverse(k)) {
                            lifted = true;
                            break;
                        }
                if (!lifted) return false;
            }
    }
    return true;
}

LiftingResult has_right_lifting(const Functor& i, const Functor& f) {
    LiftingResult result;
    const CategoryPtr& a = i.source;
    const CategoryPtr& b = i.target;
    for_each_functor(a, f.source, [&](const Functor& top) {
        for_each_functor(b, f.target, [&](const Functor& bottom) {
            // The square commutes: f ∘ top = bottom ∘ i.
            for (std::uint32_t o = 0; o < a->object_count(); ++o)
                if (f.on_objects[top.on_objects[o]] != bottom.on_objects[i.on_objects[o]]) return true;
            for (std::uint32_t g = 0; g < a->arrow_count(); ++g)
                if (f.on_arrows[top.on_arrows[g]] != bottom.on_arrows[i.on_arrows[g]]) return true;
            bool lifted = false;
            for_each_functor(b, f.source, [&](const Functor& diag) {
                for (std::uint32_t o = 0; o < a->object_count(); ++o)
                    if (diag.on_objects[i.on_objects[o]] != top.on_objects[o]) return true;
                for (std::uint32_t g = 0; g < a->arrow_count(); ++g)
                    if (diag.on_arrows[i.on_arrows[g]] != top.on_arrows[g]) return true;
                for (std::uint32_t o = 0; o < b->object_count(); ++o)
                    if (f.on_objects[diag.on_objects[o]] != bottom.on_objects[o]) return true;
                for (std::uint32_t g = 0; g < b->arrow_count(); ++g)
                    if (f.on_arrows[diag.on_arrows[g]] != bottom.on_arrows[g]) return true;
                lifted = true;
                return false;
            });
            if (lifted) return true;
            result.holds = false;
            std::string w = "square with top";
            for (std::uint32_t g = 0; g < a->arrow_count(); ++g)
                w += " " + a->arrow(g).name + "->" + f.source->arrow(top.on_arrows[g]).name;
            w += " and bottom";
            for (std::uint32_t g = 0; g < b->arrow_count(); ++g)
                w += " " + b->arrow(g).name + "->" + f.target->arrow(bottom.on_arrows[g]).name;
            w += " has no diagonal";
            result.witness = w;
            return false;
        });
        return result.holds;
    });
    return result;
}

const std::vector<std::pair<std::string, Functor>>& generating_cofibrations() {
    static const std::vector<std::pair<std::string, Functor>> gens = [] {
        std::vector<std::pair<std::string, Functor>> out;
        // u: ∅ → 1
        out.push_back({"u", Functor{"u", empty_category(), terminal_category(), {}, {}}});
        // v: 1 ⊔ 1 → 2
        static const CategoryPtr two_points = discrete_category(2);
        const CategoryPtr arrow = walking_arrow();
        out.push_back({"v", Functor{"v", two_points, arrow, {0, 1}, {arrow->identity(0), arrow->identity(1)}}});
        // w: P → 2, both parallel arrows to the arrow
        const CategoryPtr p = parallel_pair();
        Functor w{"w", p, arrow, {0, 1}, std::vector<std::uint32_t>(p->arrow_count())};
        for (std::uint32_t g = 0; g < p->arrow_count(); ++g)
            w.on_arrows[g] = p->is_identity(g) ? arrow->identity(p->arrow(g).src) : *arrow->find_arrow("f");
        out.push_back({"w", w});
        return out;
    }();
    return gens;
}

LiftingResult is_trivial_fibration(const Functor& f) {
    for (const auto& [name, gen] : generating_cofibrations()) {
        LiftingResult r = has_right_lifting(gen, f);
        if (!r.holds) {
            r.generator = name;
            return r;
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Path objects and homotopy

PathObject path_object(CategoryPtr x) {
    auto px = std::make_shared<FinCategory>("P" + x->name());
    std::vector<std::uint32_t> iso_of; // path object -> arrow of x
    for (std::uint32_t i = 0; i < x->arrow_count(); ++i)
        if (x->inverse(i)) {
            px->add_object("iso_" + x->arrow(i).name);
            iso_of.push_back(i);
        }
    Functor p1{"p1", px, x, {}, {}};
    Functor p2{"p2", px, x, {}, {}};
    for (auto i : iso_of) {
        p1.on_objects.push_back(x->arrow(i).src);
        p2.on_objects.push_back(x->arrow(i).tgt);
    }
    // Arrows (u, v) : i → j with v ∘ i = j ∘ u, keyed by endpoints and components.
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t> square;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> comps; // per path arrow: (u, v)
    comps.resize(px->arrow_count());
    for (std::uint32_t o = 0; o < px->object_count(); ++o) {
        const auto ido = px->identity(o);
        const auto& iso = x->arrow(iso_of[o]);
        comps[ido] = {x->identity(iso.src), x->identity(iso.tgt)};
        square[{o, o, comps[ido].first, comps[ido].second}] = ido;
    }
    std::size_t counter = 0;
    for (std::uint32_t s = 0; s < px->object_count(); ++s)
        for (std::uint32_t t = 0; t < px->object_count(); ++t) {
            const auto i = iso_of[s], j = iso_of[t];
            const auto& ai = x->arrow(i);
            const auto& aj = x->arrow(j);
            for (auto u : x->hom(ai.src, aj.src))
                for (auto v : x->hom(ai.tgt, aj.tgt)) {
                    if (x->compose(v, i) != x->compose(j, u)) continue;
                    if (square.count({s, t, u, v})) continue;
                    const auto g = px->add_arrow("sq" + std::to_string(counter++), s, t);
                    comps.push_back({u, v});
                    square[{s, t, u, v}] = g;
                }
        }
    for (std::uint32_t g = 0; g < px->arrow_count(); ++g)
        for (std::uint32_t f = 0; f < px->arrow_count(); ++f) {
            if (px->arrow(f).tgt != px->arrow(g).src) continue;
            const auto u = x->compose(comps[g].first, comps[f].first);
            const auto v = x->compose(comps[g].second, comps[f].second);
            px->set_comp(g, f, square.at({px->arrow(f).src, px->arrow(g).tgt, u, v}));
        }
    for (const auto& [u, v] : comps) {
        p1.on_arrows.push_back(u);
        p2.on_arrows.push_back(v);
    }
    PathObject out;
    out.base = x;
    out.category = px;
    out.p1 = std::move(p1);
    out.p2 = std::move(p2);
    out.base_model = to_model(*x);
    out.model = to_model(*px);
    out.h1 = to_hom(out.p1, out.model, out.base_model);
    out.h2 = to_hom(out.p2, out.model, out.base_model);
    return out;
}

bool are_homotopic(const PathObject& px, const Context& gamma, const Tuple& x1, const Tuple& x2) {
    if (x1.size() != gamma.size() || x2.size() != gamma.size()) return false;
    Tuple h;
    auto search = [&](auto&& self, std::size_t j) -> bool {
        if (j == gamma.size()) return true;
        for (Elem e : eval_type(*px.model, gamma[j], h)) {
            if (px.h1(e) != x1[j] || px.h2(e) != x2[j]) continue;
            h.push_back(e);
            if (self(self, j + 1)) return true;
            h.pop_back();
        }
        return false;
    };
    return search(search, 0);
}

std::vector<std::pair<Tuple, Tuple>> homotopic_pairs(const PathObject& px, const Context& gamma) {
    std::vector<std::pair<Tuple, Tuple>> out;
    std::set<std::pair<Tuple, Tuple>> seen;
    for (const Tuple& h : enumerate_context(*px.model, gamma)) {
        std::pair<Tuple, Tuple> p{px.h1.apply(h), px.h2.apply(h)};
        if (seen.insert(p).second) out.push_back(std::move(p));
    }
    return out;
}

InvarianceCheck invariance1_check(const FormulaInContext& phi, const PathObject& px, const Tuple& x1,
                                  const Tuple& x2) {
    if (!are_homotopic(px, phi.context, x1, x2))
        throw Error(ErrorKind::PreconditionUnmet, "interpretations " + tuple_to_string(*px.base_model, x1) + " and " +
                                                      tuple_to_string(*px.base_model, x2) + " are not homotopic");
    InvarianceCheck c;
    c.lhs = eval_formula(*px.base_model, phi.formula, x1);
    c.rhs = eval_formula(*px.base_model, phi.formula, x2);
    c.agree = c.lhs == c.rhs;
    return c;
}

InvarianceCheck invariance2_check(const FormulaInContext& phi, const ModelHom& f, const Tuple& x) {
    InvarianceCheck c;
    c.lhs = eval_formula(*f.source, phi.formula, x);
    c.rhs = eval_formula(*f.target, phi.formula, f.apply(x));
    c.agree = c.lhs == c.rhs;
    return c;
}

InvarianceCheck invariance2_check(const FormulaInContext& phi, const Functor& f, const Tuple& x) {
    if (!is_equivalence(f)) throw Error(ErrorKind::PreconditionUnmet, "functor " + f.name + " is not an equivalence");
    return invariance2_check(phi, to_hom(f), x);
}

// ---------------------------------------------------------------------------
// Corpus generation

namespace {

std::string object_label(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }

/// Hom-set sizes of a category shape, row-major.
using Shape = std::vector<std::size_t>;

bool shape_is_canonical(const Shape& s, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    do {
        Shape t(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) t[perm[a] * n + perm[b]] = s[a * n + b];
        if (t < s) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

struct Skeleton {
    std::size_t n = 0;
    std::vector<std::uint32_t> src, tgt;
    std::vector<bool> identity;
    std::vector<std::vector<std::vector<std::uint32_t>>> hom;
};

Skeleton make_skeleton(const Shape& s, std::size_t n) {
    Skeleton k;
    k.n = n;
    k.hom.assign(n, std::vector<std::vector<std::uint32_t>>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t i = 0; i < s[a * n + b]; ++i) {
                const auto f = static_cast<std::uint32_t>(k.src.size());
                k.src.push_back(static_cast<std::uint32_t>(a));
                k.tgt.push_back(static_cast<std::uint32_t>(b));
                k.identity.push_back(a == b && i == 0);
                k.hom[a][b].push_back(f);
            }
    return k;
}

/// Enumerates composition tables on a skeleton; identities are arrow 0 of
/// each endo hom-set.
void enumerate_tables(const Skeleton& k, const std::function<void(const std::vector<std::uint32_t>&)>& emit) {
    const std::size_t m = k.src.size();
    std::vector<std::uint32_t> comp(m * m, kNone);
    auto idx = [m](std::uint32_t g, std::uint32_t f) { return g * m + f; };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t g = 0; g < m; ++g)
        for (std::uint32_t f = 0; f < m; ++f) {
            if (k.tgt[f] != k.src[g]) continue;
            if (k.identity[g]) comp[idx(g, f)] = f;
            else if (k.identity[f]) comp[idx(g, f)] = g;
            else pairs.push_back({g, f});
        }
    auto at = [&](std::uint32_t g, std::uint32_t f) { return comp[idx(g, f)]; };
    auto triple_ok = [&](std::uint32_t h, std::uint32_t g, std::uint32_t f) {
        const auto hg = at(h, g), gf = at(g, f);
        if (hg == kNone || gf == kNone) return true;
        const auto l = at(hg, f), r = at(h, gf);
        return l == kNone || r == kNone || l == r;
    };
    // Checks every triple in which the pair (g, f) occurs in some position.
    auto check = [&](std::uint32_t g, std::uint32_t f) {
        for (std::uint32_t e = 0; e < m; ++e) {
            if (k.tgt[e] == k.src[f] && !triple_ok(g, f, e)) return false;
            if (k.tgt[g] == k.src[e] && !triple_ok(e, g, f)) return false;
        }
        for (std::uint32_t a = 0; a < m; ++a)
            for (std::uint32_t b = 0; b < m; ++b) {
                if (k.tgt[b] != k.src[a]) continue;
                if (at(a, b) == g && k.tgt[f] == k.src[b] && !triple_ok(a, b, f)) return false;
                if (at(a, b) == f && k.src[g] == k.tgt[a] && !triple_ok(g, a, b)) return false;
            }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t p) -> void {
        if (p == pairs.size()) {
            emit(comp);
            return;
        }
        const auto [g, f] = pairs[p];
        for (auto h : k.hom[k.src[f]][k.tgt[g]]) {
            comp[idx(g, f)] = h;
            if (check(g, f)) self(self, p + 1);
        }
        comp[idx(g, f)] = kNone;
    };
    rec(rec, 0);
}

/// Smallest relabelled table over object automorphisms of the shape and
/// swaps inside hom-sets.
std::vector<std::uint32_t> canonical_code(const Skeleton& k, const Shape& s, const std::vector<std::uint32_t>& comp) {
    const std::size_t n = k.n, m = k.src.size();
    std::vector<std::uint32_t> best;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    do {
        bool automorphism = true;
        for (std::size_t a = 0; a < n && automorphism; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (s[perm[a] * n + perm[b]] != s[a * n + b]) {
                    automorphism = false;
                    break;
                }
        if (!automorphism) continue;
        // Hom-sets with two non-identity arrows may be swapped.
        std::vector<std::pair<std::size_t, std::size_t>> swappable;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const std::size_t free = k.hom[a][b].size() - (a == b ? 1 : 0);
                if (free == 2) swappable.push_back({a, b});
            }
        for (std::size_t mask = 0; mask < (std::size_t{1} << swappable.size()); ++mask) {
            std::vector<std::uint32_t> sigma(m);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    const auto& from = k.hom[a][b];
                    const auto& to = k.hom[perm[a]][perm[b]];
                    for (std::size_t i = 0; i < from.size(); ++i) sigma[from[i]] = to[i];
                }
            for (std::size_t bit = 0; bit < swappable.size(); ++bit) {
                if (!(mask >> bit & 1)) continue;
                const auto [a, b] = swappable[bit];
                const auto& from = k.hom[a][b];
                const std::size_t o = from.size() - 2;
                std::swap(sigma[from[o]], sigma[from[o + 1]]);
            }
            std::vector<std::uint32_t> code(m * m, kNone);
            for (std::uint32_t g = 0; g < m; ++g)
                for (std::uint32_t f = 0; f < m; ++f) {
                    const auto h = comp[g * m + f];
                    if (h != kNone) code[sigma[g] * m + sigma[f]] = sigma[h];
                }
            if (best.empty() || code < best) best = std::move(code);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

CategoryPtr build_category(const Skeleton& k, const std::vector<std::uint32_t>& comp, const std::string& name) {
    auto c = std::make_shared<FinCategory>(name);
    const std::size_t m = k.src.size();
    for (std::size_t a = 0; a < k.n; ++a) c->add_object(object_label(a));
    std::vector<std::uint32_t> arrow(m);
    for (std::uint32_t f = 0; f < m; ++f) {
        if (k.identity[f]) {
            arrow[f] = c->identity(k.src[f]);
            continue;
        }
        const std::size_t pos = static_cast<std::size_t>(
            std::find(k.hom[k.src[f]][k.tgt[f]].begin(), k.hom[k.src[f]][k.tgt[f]].end(), f) -
            k.hom[k.src[f]][k.tgt[f]].begin());
        const std::size_t number = k.src[f] == k.tgt[f] ? pos - 1 : pos;
        arrow[f] = c->add_arrow(object_label(k.src[f]) + object_label(k.tgt[f]) + std::to_string(number), k.src[f], k.tgt[f]);
    }
    for (std::uint32_t g = 0; g < m; ++g)
        for (std::uint32_t f = 0; f < m; ++f)
            if (comp[g * m + f] != kNone) c->set_comp(arrow[g], arrow[f], arrow[comp[g * m + f]]);
    return c;
}

/// The full subcategory on `objects`, with the map from its arrows to c's.
std::pair<CategoryPtr, std::vector<std::uint32_t>> full_subcategory(const FinCategory& c,
                                                                     const std::vector<std::uint32_t>& objects,
                                                                     const std::string& name) {
    auto s = std::make_shared<FinCategory>(name);
    std::vector<std::uint32_t> to_c;
    std::map<std::uint32_t, std::uint32_t> from_c;
    for (auto o : objects) {
        const auto so = s->add_object(c.object_name(o));
        to_c.resize(s->arrow_count());
        to_c[s->identity(so)] = c.identity(o);
        from_c[c.identity(o)] = s->identity(so);
    }
    for (std::uint32_t i = 0; i < objects.size(); ++i)
        for (std::uint32_t j = 0; j < objects.size(); ++j)
            for (auto f : c.hom(objects[i], objects[j])) {
                if (c.is_identity(f)) continue;
                const auto sf = s->add_arrow(c.arrow(f).name, i, j);
                to_c.resize(s->arrow_count());
                to_c[sf] = f;
                from_c[f] = sf;
            }
    for (std::uint32_t g = 0; g < s->arrow_count(); ++g)
        for (std::uint32_t f = 0; f < s->arrow_count(); ++f)
            if (s->arrow(f).tgt == s->arrow(g).src) s->set_comp(g, f, from_c.at(c.compose(to_c[g], to_c[f])));
    return {s, to_c};
}

} // namespace

std::vector<CategoryPtr> enumerate_categories(std::size_t max_objects, std::size_t max_parallel) {
    std::vector<CategoryPtr> out;
    for (std::size_t n = 0; n <= max_objects; ++n) {
        Shape s(n * n, 0);
        auto shapes = [&](auto&& self, std::size_t cell) -> void {
            if (cell == n * n) {
                if (!shape_is_canonical(s, n)) return;
                const Skeleton k = make_skeleton(s, n);
                std::set<std::vector<std::uint32_t>> seen;
                enumerate_tables(k, [&](const std::vector<std::uint32_t>& comp) {
                    if (!seen.insert(canonical_code(k, s, comp)).second) return;
                    std::string name = "c" + std::to_string(n);
                    for (auto v : s) name += std::to_string(v);
                    name += "_" + std::to_string(seen.size() - 1);
                    out.push_back(build_category(k, comp, name));
                });
                return;
            }
            const bool diagonal = cell / n == cell % n;
            for (std::size_t v = diagonal ? 1 : 0; v <= max_parallel; ++v) {
                s[cell] = v;
                self(self, cell + 1);
            }
        };
        shapes(shapes, 0);
    }
    return out;
}

std::vector<Functor> inflations(const std::vector<CategoryPtr>& cats, std::size_t max_objects) {
    std::vector<Functor> out;
    for (const CategoryPtr& d : cats) {
        const std::size_t k = d->object_count();
        for (std::size_t m = std::max<std::size_t>(k, 0); m <= max_objects; ++m) {
            if (k == 0 && m > 0) break;
            // Non-decreasing surjections [m] → [k]: one per isomorphism class
            // of the inflated category over d.
            std::vector<std::uint32_t> q(m);
            auto rec = [&](auto&& self, std::size_t i) -> void {
                if (i == m) {
                    if (m && q.back() + 1 != k) return;
                    auto c = std::make_shared<FinCategory>();
                    std::string label;
                    for (auto v : q) label += std::to_string(v);
                    c->set_name(d->name() + "_x" + (label.empty() ? "e" : label));
                    for (std::size_t x = 0; x < m; ++x) c->add_object(d->object_name(q[x]) + std::to_string(x));
                    // over[x][y][i]: arrow of c above the i-th arrow of d(q x, q y).
                    std::vector<std::vector<std::vector<std::uint32_t>>> over(m, std::vector<std::vector<std::uint32_t>>(m));
                    Functor f{"infl_" + c->name(), nullptr, d, {}, {}};
                    for (std::size_t x = 0; x < m; ++x) f.on_objects.push_back(q[x]);
                    f.on_arrows.resize(c->arrow_count());
                    for (std::uint32_t x = 0; x < m; ++x) f.on_arrows[c->identity(x)] = d->identity(q[x]);
                    for (std::uint32_t x = 0; x < m; ++x)
                        for (std::uint32_t y = 0; y < m; ++y)
                            for (auto g : d->hom(q[x], q[y])) {
                                std::uint32_t a;
                                if (x == y && g == d->identity(q[x])) {
                                    a = c->identity(x);
                                } else {
                                    a = c->add_arrow(d->arrow(g).name + "_" + std::to_string(x) + std::to_string(y), x, y);
                                    f.on_arrows.push_back(g);
                                }
                                over[x][y].push_back(a);
                            }
                    auto lift = [&](std::uint32_t x, std::uint32_t y, std::uint32_t g) {
                        const auto& h = d->hom(q[x], q[y]);
                        return over[x][y][static_cast<std::size_t>(std::find(h.begin(), h.end(), g) - h.begin())];
                    };
                    for (std::uint32_t g = 0; g < c->arrow_count(); ++g)
                        for (std::uint32_t h = 0; h < c->arrow_count(); ++h) {
                            if (c->arrow(h).tgt != c->arrow(g).src) continue;
                            c->set_comp(g, h, lift(c->arrow(h).src, c->arrow(g).tgt,
                                                   d->compose(f.on_arrows[g], f.on_arrows[h])));
                        }
                    f.source = c;
                    out.push_back(std::move(f));
                    return;
                }
                const std::uint32_t lo = i == 0 ? 0 : q[i - 1];
                for (std::uint32_t v = lo; v < k && v <= lo + 1; ++v) {
                    if (i == 0 && v != 0) break;
                    q[i] = v;
                    self(self, i + 1);
                }
            };
            rec(rec, 0);
        }
    }
    return out;
}

std::vector<Functor> equivalences(const std::vector<CategoryPtr>& cats, std::size_t max_objects) {
    std::vector<Functor> out = inflations(cats, max_objects);
    const std::size_t inflated = out.size();
    // Sections of each inflation: one point chosen in every fiber.
    for (std::size_t i = 0; i < inflated; ++i) {
        const Functor infl = out[i];
        const FinCategory& c = *infl.source;
        const FinCategory& d = *infl.target;
        std::vector<std::vector<std::uint32_t>> fibers(d.object_count());
        for (std::uint32_t x = 0; x < c.object_count(); ++x) fibers[infl.on_objects[x]].push_back(x);
        if (std::all_of(fibers.begin(), fibers.end(), [](const auto& v) { return v.size() == 1; })) continue;
        std::vector<std::uint32_t> choice(d.object_count());
        auto rec = [&](auto&& self, std::size_t y) -> void {
            if (y == d.object_count()) {
                Functor s{"sect_" + c.name(), infl.target, infl.source, choice, {}};
                std::string label;
                for (auto v : choice) label += std::to_string(v);
                s.name += "_" + label;
                for (std::uint32_t g = 0; g < d.arrow_count(); ++g) {
                    const auto a = choice[d.arrow(g).src], b = choice[d.arrow(g).tgt];
                    for (auto h : c.hom(a, b))
                        if (infl.on_arrows[h] == g) s.on_arrows.push_back(h);
                }
                out.push_back(std::move(s));
                return;
            }
            for (auto x : fibers[y]) {
                choice[y] = x;
                self(self, y + 1);
            }
        };
        rec(rec, 0);
    }
    // Collapses onto full subcategories of representatives, and the
    // inclusions of those subcategories.
    for (const CategoryPtr& c : cats) {
        const std::size_t n = c->object_count();
        std::vector<std::uint32_t> cls(n);
        for (std::uint32_t a = 0; a < n; ++a) {
            cls[a] = a;
            for (std::uint32_t b = 0; b < a; ++b)
                for (auto g : c->hom(b, a))
                    if (c->inverse(g)) cls[a] = std::min(cls[a], cls[b]);
        }
        std::vector<std::uint32_t> rep(n);
        auto choose_reps = [&](auto&& self, std::uint32_t a) -> void {
            if (a == n) {
                std::vector<std::uint32_t> reps;
                for (std::uint32_t b = 0; b < n; ++b)
                    if (rep[b] == b) reps.push_back(b);
                if (reps.size() == n) return;
                std::string label;
                for (auto r : reps) label += std::to_string(r);
                auto [sub, to_c] = full_subcategory(*c, reps, c->name() + "_full" + label);
                std::vector<std::uint32_t> sub_index(n, kNone);
                for (std::uint32_t i = 0; i < reps.size(); ++i) sub_index[reps[i]] = i;
                std::vector<std::uint32_t> from_c(c->arrow_count(), kNone);
                for (std::uint32_t g = 0; g < to_c.size(); ++g) from_c[to_c[g]] = g;
                out.push_back(Functor{"incl_" + sub->name(), sub, c, {}, to_c});
                for (auto r : reps) out.back().on_objects.push_back(r);
                // Choose an isomorphism phi_b : b → rep(b) for every non-representative.
                std::vector<std::uint32_t> phi(n);
                for (auto r : reps) phi[r] = c->identity(r);
                std::vector<std::uint32_t> others;
                for (std::uint32_t b = 0; b < n; ++b)
                    if (rep[b] != b) others.push_back(b);
                std::size_t variant = 0;
                auto choose_isos = [&](auto&& iso_self, std::size_t i) -> void {
                    if (i == others.size()) {
                        Functor f{"collapse_" + sub->name() + "_" + std::to_string(variant++), c, sub, {}, {}};
                        for (std::uint32_t b = 0; b < n; ++b) f.on_objects.push_back(sub_index[rep[b]]);
                        for (std::uint32_t g = 0; g < c->arrow_count(); ++g) {
                            const auto& ag = c->arrow(g);
                            const auto conj = c->compose(phi[ag.tgt], c->compose(g, *c->inverse(phi[ag.src])));
                            f.on_arrows.push_back(from_c[conj]);
                        }
                        out.push_back(std::move(f));
                        return;
                    }
                    const auto b = others[i];
                    for (auto g : c->hom(b, rep[b]))
                        if (c->inverse(g)) {
                            phi[b] = g;
                            iso_self(iso_self, i + 1);
                        }
                };
                choose_isos(choose_isos, 0);
                return;
            }
            for (std::uint32_t r = 0; r < n; ++r) {
                if (cls[r] != cls[a]) continue;
                // r must represent itself, and a representative's class is fixed once chosen.
                if (r < a && rep[r] != r) continue;
                if (r > a) {
                    rep[a] = r;
                    bool ok = true;
                    for (std::uint32_t b = 0; b < a; ++b)
                        if (cls[b] == cls[a] && rep[b] != r) ok = false;
                    if (ok) self(self, a + 1);
                    continue;
                }
                if (r < a) {
                    bool ok = true;
                    for (std::uint32_t b = 0; b < a; ++b)
                        if (cls[b] == cls[a] && rep[b] != r) ok = false;
                    rep[a] = r;
                    if (ok) self(self, a + 1);
                    continue;
                }
                // r == a: a is the representative of its class.
                bool ok = true;
                for (std::uint32_t b = 0; b < a; ++b)
                    if (cls[b] == cls[a] && rep[b] != a) ok = false;
                rep[a] = a;
                if (ok) self(self, a + 1);
            }
        };
        choose_reps(choose_reps, 0);
    }
    return out;
}

} // namespace gatlab
