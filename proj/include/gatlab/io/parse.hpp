#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gatlab/category.hpp"
#include "gatlab/proof.hpp"

namespace gatlab::io {

/// Looks up files referenced from inside another file. References are
/// either builtin names ("Cat", "Cat_eq") or paths relative to the
/// referencing file.
struct Resolver {
    std::function<std::shared_ptr<const Theory>(const std::string&)> theory;
    std::function<std::shared_ptr<const FiniteModel>(const std::string&)> model;
    std::function<CategoryPtr(const std::string&)> category;
};

struct TheoryFile {
    RawTheory raw;
    std::shared_ptr<const Theory> theory;
};

struct FormulaFile {
    std::string theory_ref; // empty when the file names no theory
    std::shared_ptr<const Theory> theory;
    std::vector<FormulaInContext> formulas;

    const FormulaInContext* find(const std::string& name) const;
};

struct HomFile {
    std::string source_ref;
    std::string target_ref;
    ModelHom hom;
};

struct FunctorFile {
    std::string source_ref;
    std::string target_ref;
    Functor functor;
};

struct ProofFile {
    std::string name;
    std::string theory_ref;
    std::shared_ptr<const Theory> theory;
    ProofNode root;
    /// Set for deliberately broken proofs: the rule tag the checker must blame.
    std::optional<std::string> expect_reject;
};

/// Flat key = value configuration (a TOML subset: strings, integers,
/// booleans, arrays of strings, `#` comments).
struct SuiteConfig {
    using Value = std::variant<std::string, std::int64_t, bool, std::vector<std::string>>;
    std::map<std::string, Value> values;

    std::string get_string(const std::string& key, const std::string& fallback = {}) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback = 0) const;
    bool get_bool(const std::string& key, bool fallback = false) const;
    std::vector<std::string> get_list(const std::string& key) const;
};

TheoryFile parse_theory(std::string_view text, const std::string& path,
                        std::size_t fuel = kDefaultFuel);
RawTheory parse_raw_theory(std::string_view text, const std::string& path);

/// A parenthesized telescope such as "(x y: Ob, f: Hom(x, y))".
Context parse_context(const Theory& th, std::string_view text, const std::string& path,
                      std::size_t fuel = kDefaultFuel);
/// A formula body in the given context. `s = t` elaborates through the
/// equality sort declared for the type of s and t, or is rejected.
Formula parse_formula(const Theory& th, const Context& ctx, std::string_view text,
                      const std::string& path, std::size_t fuel = kDefaultFuel);
/// A single term in `ctx`, resolved but not type-checked.
Term parse_term(const Theory& th, const Context& ctx, std::string_view text, const std::string& path);
/// A context morphism "[t1, t2, ...]" from `dom` to `cod`.
ContextMorphism parse_morphism(const Theory& th, const Context& dom, const Context& cod,
                               std::string_view text, const std::string& path,
                               std::size_t fuel = kDefaultFuel);

/// `theory` is used when the file has no `theory "..."` header.
FormulaFile parse_formula_file(std::string_view text, const std::string& path, const Resolver& resolver,
                               std::shared_ptr<const Theory> theory = nullptr,
                               std::size_t fuel = kDefaultFuel);
FiniteModel parse_model(std::string_view text, const std::string& path, const Resolver& resolver);
HomFile parse_hom(std::string_view text, const std::string& path, const Resolver& resolver);
FinCategory parse_category(std::string_view text, const std::string& path);
FunctorFile parse_functor(std::string_view text, const std::string& path, const Resolver& resolver);
ProofFile parse_proof(std::string_view text, const std::string& path, const Resolver& resolver,
                      std::size_t fuel = kDefaultFuel);
SuiteConfig parse_suite_config(std::string_view text, const std::string& path);

} // namespace gatlab::io
