#pragma once

#include <memory>
#include <string>

#include "gatlab/builtin.hpp"
#include "gatlab/category.hpp"
#include "gatlab/io/parse.hpp"
#include "gatlab/io/workspace.hpp"

namespace test {

inline std::string corpus(const std::string& rel) { return std::string(GATLAB_CORPUS_DIR) + "/" + rel; }

inline gatlab::Context ctx(const gatlab::Theory& th, const std::string& text) {
    return gatlab::io::parse_context(th, text, "<test>");
}

inline gatlab::Term term(const gatlab::Theory& th, const gatlab::Context& c, const std::string& text) {
    return gatlab::io::parse_term(th, c, text, "<test>");
}

/// The last entry of a telescope written in surface syntax.
inline gatlab::TypeExpr last_type(const gatlab::Theory& th, const std::string& tele) {
    return ctx(th, tele).entries().back();
}

inline gatlab::Formula formula(const gatlab::Theory& th, const gatlab::Context& c, const std::string& text) {
    return gatlab::io::parse_formula(th, c, text, "<test>");
}

inline gatlab::io::Resolver builtin_resolver() {
    gatlab::io::Resolver r;
    r.theory = [](const std::string& ref) -> std::shared_ptr<const gatlab::Theory> {
        if (ref == "Cat") return gatlab::cat_theory();
        return gatlab::cat_eq_theory();
    };
    return r;
}

/// The six corpus formulas over Cat_eq.
inline std::shared_ptr<const gatlab::io::FormulaFile> corpus_formulas() {
    static gatlab::io::Workspace ws;
    return ws.formulas(corpus("formulas/corpus.gfm"));
}

inline const gatlab::FormulaInContext& corpus_formula(const std::string& name) {
    static auto file = corpus_formulas();
    const auto* f = file->find(name);
    if (!f) throw std::runtime_error("no corpus formula " + name);
    return *f;
}

inline gatlab::Elem element(const gatlab::FiniteModel& m, const std::string& name) {
    auto e = m.find_element(name);
    if (!e) throw std::runtime_error("no element " + name);
    return *e;
}

} // namespace test
