#include "gatlab/io/print.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gatlab::io {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

void print_telescope(std::ostream& os, const Theory& th, const Context& tele) {
    if (tele.empty()) return;
    os << " " << th.to_string(tele);
}

void print_node(std::ostream& os, const Theory& th, const ProofNode& n, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const Context ctx = distinct_names(n.conclusion.context);
    os << pad << "(node " << to_string(n.rule);
    if (n.index) os << " (index " << *n.index << ")";
    os << "\n" << pad << "  (ctx " << quote(th.to_string(ctx)) << ")";
    os << "\n" << pad << "  (lhs " << quote(to_string(th, ctx, n.conclusion.lhs)) << ")";
    os << "\n" << pad << "  (rhs " << quote(to_string(th, ctx, n.conclusion.rhs)) << ")";
    for (const ProofNode& p : n.premises) {
        os << "\n";
        print_node(os, th, p, indent + 2);
    }
    os << ")";
}

} // namespace

Context distinct_names(const Context& ctx) {
    Context out;
    std::set<std::string> used;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        std::string name = ctx.name(i);
        for (int k = 1; used.count(name); ++k) name = ctx.name(i) + "_" + std::to_string(k);
        used.insert(name);
        out.push(ctx[i], name);
    }
    return out;
}

std::string print_context(const Theory& th, const Context& ctx) { return th.to_string(distinct_names(ctx)); }

std::string print_theory(const Theory& th) {
    std::ostringstream os;
    os << "theory " << th.name() << " {\n";
    for (const DeclRef& d : th.order()) {
        switch (d.kind) {
        case DeclKind::Sort: {
            const SortDecl& s = th.sort(d.index);
            os << "  sort " << s.name;
            print_telescope(os, th, distinct_names(s.telescope));
            os << ";\n";
            break;
        }
        case DeclKind::Op: {
            const OpDecl& o = th.op(d.index);
            const Context tele = distinct_names(o.telescope);
            os << "  op " << o.name;
            print_telescope(os, th, tele);
            os << " : " << th.to_string(tele, o.result) << ";\n";
            break;
        }
        case DeclKind::Equation: {
            const Equation& e = th.equations()[d.index];
            const Context tele = distinct_names(e.telescope);
            if (const auto* t = std::get_if<TermEquation>(&e.body)) {
                os << "  eq";
                if (!e.name.empty()) os << " " << e.name;
                print_telescope(os, th, tele);
                os << " : " << th.to_string(tele, t->lhs) << " == " << th.to_string(tele, t->rhs) << " : "
                   << th.to_string(tele, t->at) << ";\n";
            } else {
                const auto& ty = std::get<TypeEquation>(e.body);
                os << "  typeq";
                if (!e.name.empty()) os << " " << e.name;
                print_telescope(os, th, tele);
                os << " : " << th.to_string(tele, ty.lhs) << " == " << th.to_string(tele, ty.rhs) << ";\n";
            }
            break;
        }
        }
    }
    if (th.confluent()) os << "  pragma confluent;\n";
    std::set<SymbolId> eq_sorts;
    for (const auto& [reflected, eq] : th.equality_sorts()) eq_sorts.insert(eq);
    for (SymbolId eq : eq_sorts) os << "  pragma equality " << th.sort(eq).name << ";\n";
    os << "}\n";
    return os.str();
}

std::string print_formula_file(const FormulaFile& file) {
    std::ostringstream os;
    if (!file.theory_ref.empty()) os << "theory " << quote(file.theory_ref) << ";\n\n";
    for (const FormulaInContext& f : file.formulas) {
        const Context ctx = distinct_names(f.context);
        os << "formula " << f.name;
        if (!ctx.empty()) os << " in " << file.theory->to_string(ctx);
        os << " :=\n  " << to_string(*file.theory, ctx, f.formula) << ";\n";
    }
    return os.str();
}

std::string print_model(const FiniteModel& m, const std::string& theory_ref) {
    const Theory& th = m.theory();
    std::ostringstream os;
    auto list = [&](const Tuple& t) {
        std::string out;
        for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + m.element_name(t[i]);
        return out;
    };
    os << "model " << m.name() << " of " << quote(theory_ref) << " {\n";
    for (SymbolId s = 0; s < th.sorts().size(); ++s) {
        for (const auto& [index, elems] : m.carriers(s)) {
            os << "  sort " << th.sort(s).name;
            if (!index.empty()) os << " [" << list(index) << "]";
            os << " = {" << list(elems) << "};\n";
        }
    }
    for (SymbolId o = 0; o < th.ops().size(); ++o) {
        for (const auto& [args, value] : m.table(o)) {
            os << "  op " << th.op(o).name;
            if (!args.empty()) os << " (" << list(args) << ")";
            os << " = " << m.element_name(value) << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string print_hom(const ModelHom& h, const std::string& source_ref, const std::string& target_ref) {
    std::ostringstream os;
    os << "hom " << h.name << " : " << quote(source_ref) << " -> " << quote(target_ref) << " {\n";
    for (Elem e = 0; e < h.image.size(); ++e)
        os << "  " << h.source->element_name(e) << " -> " << h.target->element_name(h.image[e]) << ";\n";
    os << "}\n";
    return os.str();
}

std::string print_category(const FinCategory& c) {
    std::ostringstream os;
    os << "category " << c.name() << " {\n";
    os << "  objects";
    for (std::uint32_t a = 0; a < c.object_count(); ++a) os << (a ? ", " : " ") << c.object_name(a);
    os << ";\n";
    for (std::uint32_t f = 0; f < c.arrow_count(); ++f) {
        if (c.is_identity(f)) continue;
        const auto& a = c.arrow(f);
        os << "  arrow " << a.name << " : " << c.object_name(a.src) << " -> " << c.object_name(a.tgt) << ";\n";
    }
    for (std::uint32_t g = 0; g < c.arrow_count(); ++g) {
        if (c.is_identity(g)) continue;
        for (std::uint32_t f = 0; f < c.arrow_count(); ++f) {
            if (c.is_identity(f) || c.arrow(f).tgt != c.arrow(g).src) continue;
            const auto h = c.compose(g, f);
            if (h == FinCategory::kNone) continue;
            os << "  comp " << c.arrow(g).name << " . " << c.arrow(f).name << " = " << c.arrow(h).name << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string print_functor(const Functor& f, const std::string& source_ref, const std::string& target_ref) {
    std::ostringstream os;
    const FinCategory& c = *f.source;
    const FinCategory& d = *f.target;
    os << "functor " << f.name << " : " << quote(source_ref) << " -> " << quote(target_ref) << " {\n";
    for (std::uint32_t a = 0; a < c.object_count(); ++a)
        os << "  " << c.object_name(a) << " -> " << d.object_name(f.on_objects[a]) << ";\n";
    for (std::uint32_t g = 0; g < c.arrow_count(); ++g) {
        if (c.is_identity(g)) continue;
        os << "  " << c.arrow(g).name << " -> " << d.arrow(f.on_arrows[g]).name << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string print_proof(const ProofFile& proof) {
    std::ostringstream os;
    os << "(proof " << proof.name << "\n  (theory " << quote(proof.theory_ref) << ")\n";
    if (proof.expect_reject) os << "  (expect-reject " << *proof.expect_reject << ")\n";
    print_node(os, *proof.theory, proof.root, 2);
    os << ")\n";
    return os.str();
}

} // namespace gatlab::io
