#include "gatlab/builtin.hpp"

#include <sstream>
#include <vector>

#include "gatlab/io/parse.hpp"

namespace gatlab {

namespace {

const char* const kCatBody = R"(
  sort Ob;
  sort Hom (x y: Ob);
  op comp (x y z: Ob, f: Hom(x, y), g: Hom(y, z)) : Hom(x, z);
  op id (x: Ob) : Hom(x, x);
  // comp(x, y, z, f, g) is g after f.
  eq left_unit (x y: Ob, f: Hom(x, y)) : comp(x, y, y, f, id(y)) == f : Hom(x, y);
  eq right_unit (x y: Ob, f: Hom(x, y)) : comp(x, x, y, id(x), f) == f : Hom(x, y);
  eq assoc (x y z w: Ob, f: Hom(x, y), g: Hom(y, z), h: Hom(z, w)) :
    comp(x, y, w, f, comp(y, z, w, g, h)) == comp(x, z, w, comp(x, y, z, f, g), h) : Hom(x, w);
)";

} // namespace

const std::string& cat_theory_source() {
    static const std::string text = std::string("theory Cat {") + kCatBody + "  pragma confluent;\n}\n";
    return text;
}

const std::string& cat_eq_theory_source() {
    static const std::string text = std::string("theory Cat_eq {") + kCatBody + R"(
  sort Eq (x y: Ob, f g: Hom(x, y));
  op r (x y: Ob, f: Hom(x, y)) : Eq(x, y, f, f);
  eq reflect (x y: Ob, f g: Hom(x, y), a: Eq(x, y, f, g)) : f == g : Hom(x, y);
  eq unique (x y: Ob, f g: Hom(x, y), a: Eq(x, y, f, g)) : a == r(x, y, f) : Eq(x, y, f, g);
  pragma equality Eq;
}
)";
    return text;
}

std::shared_ptr<const Theory> cat_theory() {
    static const auto th = io::parse_theory(cat_theory_source(), "<builtin Cat>").theory;
    return th;
}

std::shared_ptr<const Theory> cat_eq_theory() {
    static const auto th = io::parse_theory(cat_eq_theory_source(), "<builtin Cat_eq>").theory;
    return th;
}

std::string sigma_theory_source(const Signature& sig) {
    std::ostringstream os;
    auto binders = [](const std::vector<std::string>& sorts) {
        std::string out;
        for (std::size_t i = 0; i < sorts.size(); ++i)
            out += (i ? ", a" : "a") + std::to_string(i) + ": " + sorts[i];
        return out;
    };
    auto vars = [](std::size_t n) {
        std::string out;
        for (std::size_t i = 0; i < n; ++i) out += (i ? ", a" : "a") + std::to_string(i);
        return out;
    };
    os << "theory " << sig.name << " {\n";
    for (const std::string& x : sig.sorts) {
        os << "  sort " << x << ";\n";
        os << "  sort Eq_" << x << " (s t: " << x << ");\n";
        os << "  op refl_" << x << " (s: " << x << ") : Eq_" << x << "(s, s);\n";
        os << "  eq reflect_" << x << " (s t: " << x << ", e: Eq_" << x << "(s, t)) : s == t : " << x << ";\n";
        os << "  eq unique_" << x << " (s t: " << x << ", e: Eq_" << x << "(s, t)) : e == refl_" << x
           << "(s) : Eq_" << x << "(s, t);\n";
        os << "  pragma equality Eq_" << x << ";\n";
    }
    for (const auto& f : sig.functions) {
        os << "  op " << f.name;
        if (!f.args.empty()) os << " (" << binders(f.args) << ")";
        os << " : " << f.result << ";\n";
    }
    for (const auto& r : sig.relations) {
        const std::string applied = r.args.empty() ? r.name : r.name + "(" + vars(r.args.size()) + ")";
        os << "  sort " << r.name;
        if (!r.args.empty()) os << " (" << binders(r.args) << ")";
        os << ";\n";
        os << "  eq prop_" << r.name << " (" << binders(r.args) << (r.args.empty() ? "" : ", ")
           << "t1 t2: " << applied << ") : t1 == t2 : " << applied << ";\n";
    }
    os << "}\n";
    return os.str();
}

const std::string& bicat_eq_theory_source() {
    static const std::string text = R"(theory Bicat_eq {
  sort Ob;
  sort Hom (x y: Ob);
  sort Cell (x y: Ob, f g: Hom(x, y));
  sort Eq (x y: Ob, f g: Hom(x, y), a b: Cell(x, y, f, g));
  op r (x y: Ob, f g: Hom(x, y), a: Cell(x, y, f, g)) : Eq(x, y, f, g, a, a);
  eq reflect (x y: Ob, f g: Hom(x, y), a b: Cell(x, y, f, g), e: Eq(x, y, f, g, a, b)) :
    a == b : Cell(x, y, f, g);
  eq unique (x y: Ob, f g: Hom(x, y), a b: Cell(x, y, f, g), e: Eq(x, y, f, g, a, b)) :
    e == r(x, y, f, g, a) : Eq(x, y, f, g, a, b);
  pragma equality Eq;
  op comp (x y z: Ob, f: Hom(x, y), g: Hom(y, z)) : Hom(x, z);
  op id (x: Ob) : Hom(x, x);
  op idc (x y: Ob, f: Hom(x, y)) : Cell(x, y, f, f);
  op vcomp (x y: Ob, f g h: Hom(x, y), a: Cell(x, y, f, g), b: Cell(x, y, g, h)) : Cell(x, y, f, h);
  op hcomp (x y z: Ob, f1 f2: Hom(x, y), g1 g2: Hom(y, z), a: Cell(x, y, f1, f2), b: Cell(y, z, g1, g2)) :
    Cell(x, z, comp(x, y, z, f1, g1), comp(x, y, z, f2, g2));
  // Associator and unitors with their inverses.
  op alpha (x y z w: Ob, f: Hom(x, y), g: Hom(y, z), h: Hom(z, w)) :
    Cell(x, w, comp(x, z, w, comp(x, y, z, f, g), h), comp(x, y, w, f, comp(y, z, w, g, h)));
  op alpha_inv (x y z w: Ob, f: Hom(x, y), g: Hom(y, z), h: Hom(z, w)) :
    Cell(x, w, comp(x, y, w, f, comp(y, z, w, g, h)), comp(x, z, w, comp(x, y, z, f, g), h));
  op lambda (x y: Ob, f: Hom(x, y)) : Cell(x, y, comp(x, x, y, id(x), f), f);
  op lambda_inv (x y: Ob, f: Hom(x, y)) : Cell(x, y, f, comp(x, x, y, id(x), f));
  op rho (x y: Ob, f: Hom(x, y)) : Cell(x, y, comp(x, y, y, f, id(y)), f);
  op rho_inv (x y: Ob, f: Hom(x, y)) : Cell(x, y, f, comp(x, y, y, f, id(y)));
  eq vunit_l (x y: Ob, f g: Hom(x, y), a: Cell(x, y, f, g)) : vcomp(x, y, f, f, g, idc(x, y, f), a) == a : Cell(x, y, f, g);
  eq vunit_r (x y: Ob, f g: Hom(x, y), a: Cell(x, y, f, g)) : vcomp(x, y, f, g, g, a, idc(x, y, g)) == a : Cell(x, y, f, g);
  eq vassoc (x y: Ob, f g h k: Hom(x, y), a: Cell(x, y, f, g), b: Cell(x, y, g, h), c: Cell(x, y, h, k)) :
    vcomp(x, y, f, h, k, vcomp(x, y, f, g, h, a, b), c) == vcomp(x, y, f, g, k, a, vcomp(x, y, g, h, k, b, c)) :
    Cell(x, y, f, k);
  eq hunit (x y z: Ob, f: Hom(x, y), g: Hom(y, z)) :
    hcomp(x, y, z, f, f, g, g, idc(x, y, f), idc(y, z, g)) == idc(x, z, comp(x, y, z, f, g)) :
    Cell(x, z, comp(x, y, z, f, g), comp(x, y, z, f, g));
  eq interchange (x y z: Ob, f1 f2 f3: Hom(x, y), g1 g2 g3: Hom(y, z), a: Cell(x, y, f1, f2), b: Cell(x, y, f2, f3),
                  c: Cell(y, z, g1, g2), d: Cell(y, z, g2, g3)) :
    hcomp(x, y, z, f1, f3, g1, g3, vcomp(x, y, f1, f2, f3, a, b), vcomp(y, z, g1, g2, g3, c, d)) ==
    vcomp(x, z, comp(x, y, z, f1, g1), comp(x, y, z, f2, g2), comp(x, y, z, f3, g3),
          hcomp(x, y, z, f1, f2, g1, g2, a, c), hcomp(x, y, z, f2, f3, g2, g3, b, d)) :
    Cell(x, z, comp(x, y, z, f1, g1), comp(x, y, z, f3, g3));
  eq alpha_section (x y z w: Ob, f: Hom(x, y), g: Hom(y, z), h: Hom(z, w)) :
    vcomp(x, w, comp(x, z, w, comp(x, y, z, f, g), h), comp(x, y, w, f, comp(y, z, w, g, h)),
          comp(x, z, w, comp(x, y, z, f, g), h), alpha(x, y, z, w, f, g, h), alpha_inv(x, y, z, w, f, g, h)) ==
    idc(x, w, comp(x, z, w, comp(x, y, z, f, g), h)) :
    Cell(x, w, comp(x, z, w, comp(x, y, z, f, g), h), comp(x, z, w, comp(x, y, z, f, g), h));
  eq alpha_retraction (x y z w: Ob, f: Hom(x, y), g: Hom(y, z), h: Hom(z, w)) :
    vcomp(x, w, comp(x, y, w, f, comp(y, z, w, g, h)), comp(x, z, w, comp(x, y, z, f, g), h),
          comp(x, y, w, f, comp(y, z, w, g, h)), alpha_inv(x, y, z, w, f, g, h), alpha(x, y, z, w, f, g, h)) ==
    idc(x, w, comp(x, y, w, f, comp(y, z, w, g, h))) :
    Cell(x, w, comp(x, y, w, f, comp(y, z, w, g, h)), comp(x, y, w, f, comp(y, z, w, g, h)));
  eq lambda_section (x y: Ob, f: Hom(x, y)) :
    vcomp(x, y, comp(x, x, y, id(x), f), f, comp(x, x, y, id(x), f), lambda(x, y, f), lambda_inv(x, y, f)) ==
    idc(x, y, comp(x, x, y, id(x), f)) : Cell(x, y, comp(x, x, y, id(x), f), comp(x, x, y, id(x), f));
  eq lambda_retraction (x y: Ob, f: Hom(x, y)) :
    vcomp(x, y, f, comp(x, x, y, id(x), f), f, lambda_inv(x, y, f), lambda(x, y, f)) == idc(x, y, f) : Cell(x, y, f, f);
  eq rho_section (x y: Ob, f: Hom(x, y)) :
    vcomp(x, y, comp(x, y, y, f, id(y)), f, comp(x, y, y, f, id(y)), rho(x, y, f), rho_inv(x, y, f)) ==
    idc(x, y, comp(x, y, y, f, id(y))) : Cell(x, y, comp(x, y, y, f, id(y)), comp(x, y, y, f, id(y)));
  eq rho_retraction (x y: Ob, f: Hom(x, y)) :
    vcomp(x, y, f, comp(x, y, y, f, id(y)), f, rho_inv(x, y, f), rho(x, y, f)) == idc(x, y, f) : Cell(x, y, f, f);
}
)";
    return text;
}

namespace {

// Sum of two cycles of degree k: in degree 0 every chain is a cycle.
std::string cycle_sum(std::size_t k, const std::string& x, const std::string& y) {
    if (k == 0) return "add0(" + x + ", " + y + ")";
    const std::string z = "zero" + std::to_string(k - 1);
    return "add" + std::to_string(k) + "(" + z + ", " + z + ", " + x + ", " + y + ")";
}

} // namespace

std::string chain_theory_source(std::size_t n) {
    std::ostringstream os;
    os << "theory Chain_f2_" << n << " {\n";
    os << "  // Degree k chains C_k(x) lie over their boundary x; cycles are C_k(zero_{k-1}).\n";
    os << "  sort C0;\n  op zero0 : C0;\n  op add0 (a b: C0) : C0;\n";
    os << "  eq unit_l0 (a: C0) : add0(zero0, a) == a : C0;\n";
    os << "  eq unit_r0 (a: C0) : add0(a, zero0) == a : C0;\n";
    os << "  eq assoc0 (a b c: C0) : add0(add0(a, b), c) == add0(a, add0(b, c)) : C0;\n";
    os << "  eq nil0 (a: C0) : add0(a, a) == zero0 : C0;\n";
    for (std::size_t k = 1; k <= n; ++k) {
        const std::string d = std::to_string(k);
        const std::string c = "C" + d;
        const std::string zero = "zero" + d;
        const std::string add = "add" + d;
        const std::string zi = "zero" + std::to_string(k - 1);
        const std::string idx = k == 1 ? "C0" : "C" + std::to_string(k - 1) + "(zero" + std::to_string(k - 2) + ")";
        auto plus = [&](const std::string& x, const std::string& y) { return cycle_sum(k - 1, x, y); };
        auto sum = [&](const std::string& x, const std::string& y, const std::string& a, const std::string& b) {
            return add + "(" + x + ", " + y + ", " + a + ", " + b + ")";
        };
        os << "  sort " << c << " (x: " << idx << ");\n";
        os << "  op " << zero << " : " << c << "(" << zi << ");\n";
        os << "  op " << add << " (x y: " << idx << ", a: " << c << "(x), b: " << c << "(y)) : " << c << "("
           << plus("x", "y") << ");\n";
        os << "  eq unit_l" << d << " (x: " << idx << ", a: " << c << "(x)) : " << sum(zi, "x", zero, "a")
           << " == a : " << c << "(x);\n";
        os << "  eq unit_r" << d << " (x: " << idx << ", a: " << c << "(x)) : " << sum("x", zi, "a", zero)
           << " == a : " << c << "(x);\n";
        os << "  eq assoc" << d << " (x y w: " << idx << ", a: " << c << "(x), b: " << c << "(y), c: " << c
           << "(w)) :\n    " << sum(plus("x", "y"), "w", sum("x", "y", "a", "b"), "c") << " ==\n    "
           << sum("x", plus("y", "w"), "a", sum("y", "w", "b", "c")) << " : " << c << "("
           << plus("x", plus("y", "w")) << ");\n";
        os << "  eq nil" << d << " (x: " << idx << ", a: " << c << "(x)) : " << sum("x", "x", "a", "a") << " == "
           << zero << " : " << c << "(" << zi << ");\n";
        // The associativity law restricted to cycles, in the normal form
        // reached by the boundary indices one degree up.
        os << "  eq assoc_cycles" << d << " (x y w: " << c << "(" << zi << ")) :\n    "
           << cycle_sum(k, cycle_sum(k, "x", "y"), "w") << " ==\n    " << cycle_sum(k, "x", cycle_sum(k, "y", "w"))
           << " : " << c << "(" << zi << ");\n";
    }
    os << "}\n";
    return os.str();
}

const std::vector<Signature>& sample_signatures() {
    static const std::vector<Signature> sigs = {
        Signature{"Sig_eq_graph", {"V"}, {}, {{"E", {"V", "V"}}}},
        Signature{"Sig_eq_pointed", {"X"}, {{"pt", {}, "X"}}, {{"P", {"X"}}}},
        Signature{"Sig_eq_two_sorted", {"A", "B"}, {{"f", {"A"}, "B"}}, {{"R", {"A", "B"}}}},
    };
    return sigs;
}

} // namespace gatlab
