#include "gatlab/io/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "gatlab/io/lexer.hpp"

namespace gatlab::io {

namespace {

// ---------------------------------------------------------------------------
// Shared pieces: raw terms, types and telescopes.

std::vector<RawTerm> parse_term_args(TokenStream& ts);

RawTerm parse_raw_term(TokenStream& ts) {
    Token head = ts.expect_identifier("a term");
    RawTerm t{head.text, {}, false, head.loc};
    if (ts.is_symbol("(")) {
        t.call = true;
        t.args = parse_term_args(ts);
    }
    return t;
}

std::vector<RawTerm> parse_term_args(TokenStream& ts) {
    std::vector<RawTerm> args;
    ts.expect_symbol("(");
    if (ts.accept_symbol(")")) return args;
    do {
        args.push_back(parse_raw_term(ts));
    } while (ts.accept_symbol(","));
    ts.expect_symbol(")");
    return args;
}

RawType parse_raw_type(TokenStream& ts) {
    Token head = ts.expect_identifier("a sort");
    RawType a{head.text, {}, head.loc};
    if (ts.is_symbol("(")) a.args = parse_term_args(ts);
    return a;
}

/// "(x y: A, f: B)"; an absent telescope is empty.
RawTelescope parse_raw_telescope(TokenStream& ts) {
    RawTelescope tele;
    ts.expect_symbol("(");
    if (ts.accept_symbol(")")) return tele;
    do {
        std::vector<Token> names;
        names.push_back(ts.expect_identifier("a variable name"));
        while (ts.peek().kind == TokenKind::Identifier) names.push_back(ts.next());
        ts.expect_symbol(":");
        RawType type = parse_raw_type(ts);
        for (const Token& n : names) tele.push_back(RawBinder{n.text, type, n.loc});
    } while (ts.accept_symbol(","));
    ts.expect_symbol(")");
    return tele;
}

/// Errors from the kernel get the file path and, when they lack one, the
/// location of the construct being elaborated.
[[noreturn]] void rethrow_located(const Error& e, const std::string& path, const SourceLoc& loc) {
    const std::string msg = path + ":" + loc.to_string() + ": " + e.what();
    Error located = e.verdict() ? Error(e.kind(), msg, *e.verdict()) : Error(e.kind(), msg);
    throw e.path().empty() ? located : located.within(e.path());
}

std::string read_ref(TokenStream& ts, std::string_view what) {
    if (ts.peek().kind == TokenKind::String) return ts.next().text;
    return ts.expect_identifier(what).text;
}

// ---------------------------------------------------------------------------
// Theories

RawTheory parse_theory_tokens(TokenStream& ts) {
    if (ts.at_end()) ts.fail("empty file: expected a theory declaration");
    ts.expect_keyword("theory");
    RawTheory raw;
    raw.name = ts.expect_identifier("a theory name").text;
    ts.expect_symbol("{");
    while (!ts.accept_symbol("}")) {
        const Token kw = ts.expect_identifier("a declaration (sort, op, eq, typeq, pragma)");
        if (kw.text == "sort") {
            RawSort d;
            d.loc = kw.loc;
            d.name = ts.expect_identifier("a sort name").text;
            if (ts.is_symbol("(")) d.telescope = parse_raw_telescope(ts);
            raw.decls.emplace_back(std::move(d));
        } else if (kw.text == "op") {
            RawOp d;
            d.loc = kw.loc;
            d.name = ts.expect_identifier("an operation name").text;
            if (ts.is_symbol("(")) d.telescope = parse_raw_telescope(ts);
            ts.expect_symbol(":");
            d.result = parse_raw_type(ts);
            raw.decls.emplace_back(std::move(d));
        } else if (kw.text == "eq") {
            RawTermEquation d;
            d.loc = kw.loc;
            if (ts.peek().kind == TokenKind::Identifier) d.name = ts.next().text;
            if (ts.is_symbol("(")) d.telescope = parse_raw_telescope(ts);
            ts.expect_symbol(":");
            d.lhs = parse_raw_term(ts);
            ts.expect_symbol("==");
            d.rhs = parse_raw_term(ts);
            ts.expect_symbol(":");
            d.at = parse_raw_type(ts);
            raw.decls.emplace_back(std::move(d));
        } else if (kw.text == "typeq") {
            RawTypeEquation d;
            d.loc = kw.loc;
            if (ts.peek().kind == TokenKind::Identifier) d.name = ts.next().text;
            if (ts.is_symbol("(")) d.telescope = parse_raw_telescope(ts);
            ts.expect_symbol(":");
            d.lhs = parse_raw_type(ts);
            ts.expect_symbol("==");
            d.rhs = parse_raw_type(ts);
            raw.decls.emplace_back(std::move(d));
        } else if (kw.text == "pragma") {
            RawPragma d;
            d.loc = kw.loc;
            d.words.push_back(ts.expect_identifier("a pragma").text);
            while (ts.peek().kind == TokenKind::Identifier) d.words.push_back(ts.next().text);
            raw.decls.emplace_back(std::move(d));
        } else {
            ts.fail_at(kw.loc, "unknown declaration '" + kw.text + "'");
        }
        ts.expect_symbol(";");
    }
    if (!ts.at_end()) ts.fail("trailing input after theory");
    return raw;
}

// ---------------------------------------------------------------------------
// Formulas

const std::set<std::string>& formula_keywords() {
    static const std::set<std::string> kw = {"true", "false", "not", "and", "or", "implies", "forall", "exists"};
    return kw;
}

class FormulaParser {
public:
    FormulaParser(const Theory& th, TokenStream& ts, std::size_t fuel) : th_(th), ts_(ts), fuel_(fuel) {}

    Formula parse(const Context& scope) {
        const Token& t = ts_.peek();
        if (t.kind == TokenKind::Identifier && formula_keywords().count(t.text) &&
            !(ts_.is_symbol("=", 1))) {
            const Token kw = ts_.next();
            if (kw.text == "true") return Formula::top();
            if (kw.text == "false") return Formula::bot();
            if (kw.text == "not") {
                ts_.expect_symbol("(");
                Formula body = parse(scope);
                ts_.expect_symbol(")");
                return Formula::negation(std::move(body));
            }
            if (kw.text == "and" || kw.text == "or" || kw.text == "implies") {
                std::vector<Formula> parts;
                ts_.expect_symbol("(");
                if (!ts_.is_symbol(")")) {
                    do {
                        parts.push_back(parse(scope));
                    } while (ts_.accept_symbol(","));
                }
                ts_.expect_symbol(")");
                if (kw.text == "and") return Formula::conjunction(std::move(parts));
                if (kw.text == "or") return Formula::disjunction(std::move(parts));
                if (parts.size() != 2) ts_.fail_at(kw.loc, "implies takes exactly two formulas");
                return Formula::disjunction({Formula::negation(std::move(parts[0])), std::move(parts[1])});
            }
            // Quantifier.
            const Token open = ts_.peek();
            RawTelescope tele = parse_raw_telescope(ts_);
            for (const RawBinder& b : tele)
                if (formula_keywords().count(b.name))
                    ts_.fail_at(b.loc, "'" + b.name + "' is reserved and cannot name a variable");
            if (tele.empty()) ts_.fail_at(open.loc, "a quantifier needs at least one variable");
            Context inner;
            try {
                inner = elaborate_telescope(th_, scope, tele, fuel_);
            } catch (const Error& e) {
                rethrow_located(e, ts_.path(), open.loc);
            }
            ts_.expect_symbol(".");
            Formula body = parse(inner);
            std::vector<TypeExpr> ext = inner.suffix(scope.size());
            std::vector<std::string> names = inner.suffix_names(scope.size());
            if (kw.text == "forall") return Formula::forall(std::move(ext), std::move(body), std::move(names));
            return Formula::exists(std::move(ext), std::move(body), std::move(names));
        }
        if (ts_.accept_symbol("(")) {
            Formula inner = parse(scope);
            ts_.expect_symbol(")");
            return inner;
        }
        if (t.kind != TokenKind::Identifier) ts_.fail("expected a formula");
        return parse_equality(scope);
    }

private:
    // s = t, available only through a declared equality sort.
    Formula parse_equality(const Context& scope) {
        const SourceLoc loc = ts_.peek().loc;
        RawTerm ls = parse_raw_term(ts_);
        if (!ts_.is_symbol("="))
            ts_.fail("expected a formula; a bare term is not a formula (equations are written s = t)");
        ts_.next();
        RawTerm rs = parse_raw_term(ts_);
        Term s, t;
        TypeExpr a, b;
        try {
            s = resolve_term(th_, scope, ls);
            t = resolve_term(th_, scope, rs);
            a = infer_type(th_, scope, s, fuel_);
            b = infer_type(th_, scope, t, fuel_);
        } catch (const Error& e) {
            rethrow_located(e, ts_.path(), loc);
        }
        auto eq = th_.equality_sorts().find(a.sort);
        const std::string where = ts_.path() + ":" + loc.to_string() + ": ";
        if (eq == th_.equality_sorts().end())
            throw Error(ErrorKind::Syntax,
                        where + "the language has no equality atoms, and theory " + th_.name() +
                            " declares no equality sort for " + th_.sort(a.sort).name + ", so '" +
                            th_.to_string(scope, s) + " = " + th_.to_string(scope, t) + "' is not a formula");
        const Verdict v = types_equal(th_, scope, a, b, fuel_);
        if (v != Verdict::Yes)
            throw Error(ErrorKind::TypeMismatch,
                        where + "ill-typed equality: " + th_.to_string(scope, s) + " : " +
                            th_.to_string(scope, a) + " but " + th_.to_string(scope, t) + " : " +
                            th_.to_string(scope, b) + " (type equality verdict " +
                            std::string(to_string(v)) + ")",
                        v);
        TypeExpr witness{eq->second, a.args};
        witness.args.push_back(std::move(s));
        witness.args.push_back(std::move(t));
        try {
            check_type(th_, scope, witness, fuel_);
        } catch (const Error& e) {
            rethrow_located(e, ts_.path(), loc);
        }
        return Formula::exists({std::move(witness)}, Formula::top(), {"e"});
    }

    const Theory& th_;
    TokenStream& ts_;
    std::size_t fuel_;
};

Context parse_context_tokens(const Theory& th, TokenStream& ts, std::size_t fuel) {
    const SourceLoc loc = ts.peek().loc;
    RawTelescope tele = parse_raw_telescope(ts);
    for (const RawBinder& b : tele)
        if (formula_keywords().count(b.name))
            ts.fail_at(b.loc, "'" + b.name + "' is reserved and cannot name a variable");
    try {
        return elaborate_telescope(th, Context{}, tele, fuel);
    } catch (const Error& e) {
        rethrow_located(e, ts.path(), loc);
    }
}

// ---------------------------------------------------------------------------
// S-expressions for proof files

struct SExpr {
    bool atom = false;
    bool quoted = false;
    std::string text;
    SourceLoc loc;
    std::vector<SExpr> items;
};

SExpr parse_sexpr(TokenStream& ts) {
    const Token t = ts.next();
    if (t.kind == TokenKind::Symbol && t.text == "(") {
        SExpr list{false, false, "", t.loc, {}};
        while (!ts.accept_symbol(")")) {
            if (ts.at_end()) ts.fail("unbalanced parentheses");
            list.items.push_back(parse_sexpr(ts));
        }
        return list;
    }
    if (t.kind == TokenKind::End) ts.fail_at(t.loc, "unexpected end of input");
    if (t.kind == TokenKind::Symbol) ts.fail_at(t.loc, "unexpected '" + t.text + "'");
    return SExpr{true, t.kind == TokenKind::String, t.text, t.loc, {}};
}

bool is_form(const SExpr& e, std::string_view head) {
    return !e.atom && !e.items.empty() && e.items[0].atom && !e.items[0].quoted && e.items[0].text == head;
}

[[noreturn]] void fail_sexpr(const std::string& path, const SExpr& e, const std::string& msg) {
    throw Error(ErrorKind::Syntax, path + ":" + e.loc.to_string() + ": " + msg);
}

const SExpr& single_string(const std::string& path, const SExpr& e) {
    if (e.items.size() != 2 || !e.items[1].atom || !e.items[1].quoted)
        fail_sexpr(path, e, "(" + e.items[0].text + " ...) takes one quoted string");
    return e.items[1];
}

/// Parses text embedded in a string at `at`, reporting positions inside
/// the string relative to the enclosing file.
template <typename F>
auto embedded(const std::string& path, const SExpr& at, F&& parse) {
    const std::string inner = path + ":" + at.loc.to_string() + "(string)";
    return parse(inner);
}

ProofNode parse_node(const Theory& th, const SExpr& e, const std::string& path, std::size_t fuel) {
    if (!is_form(e, "node")) fail_sexpr(path, e, "expected (node RULE ...)");
    if (e.items.size() < 2 || !e.items[1].atom) fail_sexpr(path, e, "node without a rule tag");
    ProofNode node;
    auto rule = rule_from_string(e.items[1].text);
    if (!rule) fail_sexpr(path, e.items[1], "unknown rule '" + e.items[1].text + "'");
    node.rule = *rule;
    const SExpr* ctx = nullptr;
    const SExpr* lhs = nullptr;
    const SExpr* rhs = nullptr;
    std::vector<const SExpr*> children;
    for (std::size_t i = 2; i < e.items.size(); ++i) {
        const SExpr& c = e.items[i];
        if (is_form(c, "ctx")) ctx = &single_string(path, c);
        else if (is_form(c, "lhs")) lhs = &single_string(path, c);
        else if (is_form(c, "rhs")) rhs = &single_string(path, c);
        else if (is_form(c, "index")) {
            if (c.items.size() != 2 || !c.items[1].atom) fail_sexpr(path, c, "(index N) takes a number");
            std::size_t v = 0;
            const std::string& s = c.items[1].text;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size()) fail_sexpr(path, c, "(index N) takes a number");
            node.index = v;
        } else if (is_form(c, "node")) children.push_back(&c);
        else fail_sexpr(path, c, "unexpected clause in node");
    }
    if (!lhs || !rhs) fail_sexpr(path, e, "node needs (lhs \"...\") and (rhs \"...\")");
    Context context;
    if (ctx) {
        context = embedded(path, *ctx, [&](const std::string& p) { return parse_context(th, ctx->text, p, fuel); });
    }
    node.conclusion.context = context;
    node.conclusion.lhs =
        embedded(path, *lhs, [&](const std::string& p) { return parse_formula(th, context, lhs->text, p, fuel); });
    node.conclusion.rhs =
        embedded(path, *rhs, [&](const std::string& p) { return parse_formula(th, context, rhs->text, p, fuel); });
    for (const SExpr* c : children) node.premises.push_back(parse_node(th, *c, path, fuel));
    return node;
}

// ---------------------------------------------------------------------------
// Models

Elem lookup_element(TokenStream& ts, const FiniteModel& m, const Token& name) {
    auto e = m.find_element(name.text);
    if (!e) ts.fail_at(name.loc, "unknown element '" + name.text + "'");
    return *e;
}

Tuple parse_element_list(TokenStream& ts, const FiniteModel& m, std::string_view open, std::string_view close) {
    Tuple out;
    ts.expect_symbol(open);
    if (ts.accept_symbol(close)) return out;
    do {
        out.push_back(lookup_element(ts, m, ts.expect_identifier("an element name")));
    } while (ts.accept_symbol(","));
    ts.expect_symbol(close);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Public entry points

const FormulaInContext* FormulaFile::find(const std::string& name) const {
    for (const auto& f : formulas)
        if (f.name == name) return &f;
    return nullptr;
}

RawTheory parse_raw_theory(std::string_view text, const std::string& path) {
    TokenStream ts(tokenize(text, path), path);
    return parse_theory_tokens(ts);
}

TheoryFile parse_theory(std::string_view text, const std::string& path, std::size_t fuel) {
    TheoryFile out;
    out.raw = parse_raw_theory(text, path);
    try {
        out.theory = std::make_shared<const Theory>(elaborate_theory(out.raw, fuel));
    } catch (const Error& e) {
        const std::string msg = e.what();
        const bool located = !msg.empty() && std::isdigit(static_cast<unsigned char>(msg.front()));
        throw Error(e.kind(), path + (located ? ":" : ": ") + msg).within(e.path());
    }
    return out;
}

Context parse_context(const Theory& th, std::string_view text, const std::string& path, std::size_t fuel) {
    TokenStream ts(tokenize(text, path), path);
    Context ctx = parse_context_tokens(th, ts, fuel);
    if (!ts.at_end()) ts.fail("trailing input after context");
    return ctx;
}

Formula parse_formula(const Theory& th, const Context& ctx, std::string_view text, const std::string& path,
                      std::size_t fuel) {
    TokenStream ts(tokenize(text, path), path);
    Formula phi = FormulaParser(th, ts, fuel).parse(ctx);
    if (!ts.at_end()) ts.fail("trailing input after formula");
    return phi;
}

Term parse_term(const Theory& th, const Context& ctx, std::string_view text, const std::string& path) {
    TokenStream ts(tokenize(text, path), path);
    const SourceLoc loc = ts.peek().loc;
    RawTerm raw = parse_raw_term(ts);
    if (!ts.at_end()) ts.fail("trailing input after term");
    try {
        return resolve_term(th, ctx, raw);
    } catch (const Error& e) {
        rethrow_located(e, path, loc);
    }
}

ContextMorphism parse_morphism(const Theory& th, const Context& dom, const Context& cod, std::string_view text,
                               const std::string& path, std::size_t fuel) {
    TokenStream ts(tokenize(text, path), path);
    const SourceLoc loc = ts.peek().loc;
    ts.expect_symbol("[");
    std::vector<RawTerm> raw;
    if (!ts.accept_symbol("]")) {
        do {
            raw.push_back(parse_raw_term(ts));
        } while (ts.accept_symbol(","));
        ts.expect_symbol("]");
    }
    if (!ts.at_end()) ts.fail("trailing input after morphism");
    ContextMorphism f{dom, cod, {}};
    try {
        for (const RawTerm& r : raw) f.terms.push_back(resolve_term(th, dom, r));
        check_morphism(th, f, fuel);
    } catch (const Error& e) {
        rethrow_located(e, path, loc);
    }
    return f;
}

FormulaFile parse_formula_file(std::string_view text, const std::string& path, const Resolver& resolver,
                               std::shared_ptr<const Theory> theory, std::size_t fuel) {
    TokenStream ts(tokenize(text, path), path);
    FormulaFile out;
    if (ts.accept_keyword("theory")) {
        out.theory_ref = read_ref(ts, "a theory reference");
        ts.expect_symbol(";");
        if (!theory) theory = resolver.theory(out.theory_ref);
    }
    if (!theory) ts.fail("formula file names no theory and none was supplied");
    out.theory = theory;
    std::set<std::string> seen;
    while (!ts.at_end()) {
        ts.expect_keyword("formula");
        const Token name = ts.expect_identifier("a formula name");
        if (!seen.insert(name.text).second) ts.fail_at(name.loc, "formula '" + name.text + "' defined twice");
        Context ctx;
        if (ts.accept_keyword("in")) ctx = parse_context_tokens(*theory, ts, fuel);
        ts.expect_symbol(":=");
        Formula phi = FormulaParser(*theory, ts, fuel).parse(ctx);
        ts.expect_symbol(";");
        out.formulas.push_back(FormulaInContext{name.text, std::move(ctx), std::move(phi)});
    }
    return out;
}

FiniteModel parse_model(std::string_view text, const std::string& path, const Resolver& resolver) {
    TokenStream ts(tokenize(text, path), path);
    if (ts.at_end()) ts.fail("empty file: expected a model declaration");
    ts.expect_keyword("model");
    const std::string name = ts.expect_identifier("a model name").text;
    ts.expect_keyword("of");
    const std::string ref = read_ref(ts, "a theory reference");
    FiniteModel m(resolver.theory(ref), name);
    const Theory& th = m.theory();
    ts.expect_symbol("{");
    while (!ts.accept_symbol("}")) {
        const Token kw = ts.expect_identifier("'sort' or 'op'");
        if (kw.text == "sort") {
            const Token sname = ts.expect_identifier("a sort name");
            auto s = th.find_sort(sname.text);
            if (!s) ts.fail_at(sname.loc, "unknown sort '" + sname.text + "'");
            Tuple index;
            if (ts.is_symbol("[")) index = parse_element_list(ts, m, "[", "]");
            if (index.size() != th.sort(*s).telescope.size())
                ts.fail_at(sname.loc, "sort " + sname.text + " is indexed by " +
                                          std::to_string(th.sort(*s).telescope.size()) + " elements");
            if (m.carrier(*s, index)) ts.fail_at(sname.loc, "carrier given twice");
            ts.expect_symbol("=");
            ts.expect_symbol("{");
            m.declare_carrier(*s, index);
            if (!ts.accept_symbol("}")) {
                do {
                    const Token e = ts.expect_identifier("an element name");
                    if (m.find_element(e.text)) ts.fail_at(e.loc, "element '" + e.text + "' declared twice");
                    m.add_element(*s, index, e.text);
                } while (ts.accept_symbol(","));
                ts.expect_symbol("}");
            }
        } else if (kw.text == "op") {
            const Token oname = ts.expect_identifier("an operation name");
            auto o = th.find_op(oname.text);
            if (!o) ts.fail_at(oname.loc, "unknown operation '" + oname.text + "'");
            Tuple args;
            if (ts.is_symbol("(")) args = parse_element_list(ts, m, "(", ")");
            if (args.size() != th.op(*o).telescope.size())
                ts.fail_at(oname.loc, "operation " + oname.text + " takes " +
                                          std::to_string(th.op(*o).telescope.size()) + " arguments");
            if (m.op_value(*o, args)) ts.fail_at(oname.loc, "operation entry given twice");
            ts.expect_symbol("=");
            m.set_op(*o, args, lookup_element(ts, m, ts.expect_identifier("an element name")));
        } else {
            ts.fail_at(kw.loc, "expected 'sort' or 'op'");
        }
        ts.expect_symbol(";");
    }
    if (!ts.at_end()) ts.fail("trailing input after model");
    return m;
}

HomFile parse_hom(std::string_view text, const std::string& path, const Resolver& resolver) {
    TokenStream ts(tokenize(text, path), path);
    if (ts.at_end()) ts.fail("empty file: expected a hom declaration");
    ts.expect_keyword("hom");
    HomFile out;
    out.hom.name = ts.expect_identifier("a hom name").text;
    ts.expect_symbol(":");
    out.source_ref = read_ref(ts, "a model reference");
    ts.expect_symbol("->");
    out.target_ref = read_ref(ts, "a model reference");
    out.hom.source = resolver.model(out.source_ref);
    out.hom.target = resolver.model(out.target_ref);
    const FiniteModel& m = *out.hom.source;
    const FiniteModel& n = *out.hom.target;
    std::vector<std::optional<Elem>> image(m.element_count());
    ts.expect_symbol("{");
    while (!ts.accept_symbol("}")) {
        const Token a = ts.expect_identifier("a source element");
        const Elem ea = lookup_element(ts, m, a);
        ts.expect_symbol("->");
        const Elem eb = lookup_element(ts, n, ts.expect_identifier("a target element"));
        if (image[ea]) ts.fail_at(a.loc, "element '" + a.text + "' mapped twice");
        image[ea] = eb;
        ts.expect_symbol(";");
    }
    if (!ts.at_end()) ts.fail("trailing input after hom");
    for (Elem e = 0; e < image.size(); ++e) {
        if (!image[e]) ts.fail("element '" + m.element_name(e) + "' has no image");
        out.hom.image.push_back(*image[e]);
    }
    return out;
}

FinCategory parse_category(std::string_view text, const std::string& path) {
    TokenStream ts(tokenize(text, path), path);
    if (ts.at_end()) ts.fail("empty file: expected a category declaration");
    ts.expect_keyword("category");
    FinCategory c(ts.expect_identifier("a category name").text);
    std::set<std::string> names;
    auto fresh = [&](const Token& t) {
        if (!names.insert(t.text).second || c.find_arrow(t.text))
            ts.fail_at(t.loc, "name '" + t.text + "' already used");
    };
    auto object = [&](const Token& t) {
        auto o = c.find_object(t.text);
        if (!o) ts.fail_at(t.loc, "unknown object '" + t.text + "'");
        return *o;
    };
    auto arrow = [&](const Token& t) {
        auto f = c.find_arrow(t.text);
        if (!f) ts.fail_at(t.loc, "unknown arrow '" + t.text + "'");
        return *f;
    };
    ts.expect_symbol("{");
    while (!ts.accept_symbol("}")) {
        const Token kw = ts.expect_identifier("'objects', 'arrow' or 'comp'");
        if (kw.text == "objects") {
            if (!ts.is_symbol(";")) {
                do {
                    const Token o = ts.expect_identifier("an object name");
                    fresh(o);
                    names.insert("id_" + o.text);
                    c.add_object(o.text);
                } while (ts.accept_symbol(","));
            }
        } else if (kw.text == "arrow") {
            const Token f = ts.expect_identifier("an arrow name");
            fresh(f);
            ts.expect_symbol(":");
            const auto a = object(ts.expect_identifier("an object"));
            ts.expect_symbol("->");
            const auto b = object(ts.expect_identifier("an object"));
            c.add_arrow(f.text, a, b);
        } else if (kw.text == "comp") {
            const Token g = ts.expect_identifier("an arrow");
            ts.expect_symbol(".");
            const Token f = ts.expect_identifier("an arrow");
            ts.expect_symbol("=");
            const Token h = ts.expect_identifier("an arrow");
            const auto ig = arrow(g), iff = arrow(f), ih = arrow(h);
            if (c.arrow(iff).tgt != c.arrow(ig).src) ts.fail_at(g.loc, g.text + " . " + f.text + " is not composable");
            if (c.arrow(ih).src != c.arrow(iff).src || c.arrow(ih).tgt != c.arrow(ig).tgt)
                ts.fail_at(h.loc, "composite " + h.text + " has the wrong endpoints");
            const auto known = c.compose(ig, iff);
            if (known != FinCategory::kNone && known != ih)
                ts.fail_at(g.loc, "composite " + g.text + " . " + f.text + " given twice");
            c.set_comp(ig, iff, ih);
        } else {
            ts.fail_at(kw.loc, "expected 'objects', 'arrow' or 'comp'");
        }
        ts.expect_symbol(";");
    }
    if (!ts.at_end()) ts.fail("trailing input after category");
    return c;
}

FunctorFile parse_functor(std::string_view text, const std::string& path, const Resolver& resolver) {
    TokenStream ts(tokenize(text, path), path);
    if (ts.at_end()) ts.fail("empty file: expected a functor declaration");
    ts.expect_keyword("functor");
    FunctorFile out;
    Functor& f = out.functor;
    f.name = ts.expect_identifier("a functor name").text;
    ts.expect_symbol(":");
    out.source_ref = read_ref(ts, "a category reference");
    ts.expect_symbol("->");
    out.target_ref = read_ref(ts, "a category reference");
    f.source = resolver.category(out.source_ref);
    f.target = resolver.category(out.target_ref);
    const FinCategory& c = *f.source;
    const FinCategory& d = *f.target;
    f.on_objects.assign(c.object_count(), FinCategory::kNone);
    f.on_arrows.assign(c.arrow_count(), FinCategory::kNone);
    ts.expect_symbol("{");
    while (!ts.accept_symbol("}")) {
        const Token a = ts.expect_identifier("an object or arrow");
        ts.expect_symbol("->");
        const Token b = ts.expect_identifier("an object or arrow");
        if (auto o = c.find_object(a.text)) {
            auto p = d.find_object(b.text);
            if (!p) ts.fail_at(b.loc, "unknown target object '" + b.text + "'");
            if (f.on_objects[*o] != FinCategory::kNone) ts.fail_at(a.loc, "object mapped twice");
            f.on_objects[*o] = *p;
        } else if (auto g = c.find_arrow(a.text)) {
            auto h = d.find_arrow(b.text);
            if (!h) ts.fail_at(b.loc, "unknown target arrow '" + b.text + "'");
            if (f.on_arrows[*g] != FinCategory::kNone) ts.fail_at(a.loc, "arrow mapped twice");
            f.on_arrows[*g] = *h;
        } else {
            ts.fail_at(a.loc, "unknown object or arrow '" + a.text + "'");
        }
        ts.expect_symbol(";");
    }
    if (!ts.at_end()) ts.fail("trailing input after functor");
    for (std::uint32_t o = 0; o < c.object_count(); ++o)
        if (f.on_objects[o] == FinCategory::kNone) ts.fail("object '" + c.object_name(o) + "' has no image");
    for (std::uint32_t g = 0; g < c.arrow_count(); ++g) {
        if (f.on_arrows[g] != FinCategory::kNone) continue;
        if (!c.is_identity(g)) ts.fail("arrow '" + c.arrow(g).name + "' has no image");
        f.on_arrows[g] = d.identity(f.on_objects[c.arrow(g).src]);
    }
    return out;
}

ProofFile parse_proof(std::string_view text, const std::string& path, const Resolver& resolver, std::size_t fuel) {
    TokenStream ts(tokenize(text, path), path);
    if (ts.at_end()) ts.fail("empty file: expected (proof ...)");
    const SExpr top = parse_sexpr(ts);
    if (!ts.at_end()) ts.fail("trailing input after proof");
    if (!is_form(top, "proof") || top.items.size() < 2 || !top.items[1].atom)
        fail_sexpr(path, top, "expected (proof NAME (theory \"...\") NODE)");
    ProofFile out;
    out.name = top.items[1].text;
    const SExpr* root = nullptr;
    for (std::size_t i = 2; i < top.items.size(); ++i) {
        const SExpr& c = top.items[i];
        if (is_form(c, "theory")) {
            if (c.items.size() != 2 || !c.items[1].atom) fail_sexpr(path, c, "(theory REF) takes one reference");
            out.theory_ref = c.items[1].text;
            out.theory = resolver.theory(out.theory_ref);
        } else if (is_form(c, "expect-reject")) {
            if (c.items.size() != 2 || !c.items[1].atom) fail_sexpr(path, c, "(expect-reject RULE) takes a rule tag");
            if (!rule_from_string(c.items[1].text)) fail_sexpr(path, c.items[1], "unknown rule '" + c.items[1].text + "'");
            out.expect_reject = c.items[1].text;
        } else if (is_form(c, "node")) {
            if (root) fail_sexpr(path, c, "a proof has a single root node");
            root = &c;
        } else {
            fail_sexpr(path, c, "unexpected clause in proof");
        }
    }
    if (!out.theory) fail_sexpr(path, top, "proof names no theory");
    if (!root) fail_sexpr(path, top, "proof has no root node");
    out.root = parse_node(*out.theory, *root, path, fuel);
    return out;
}

// ---------------------------------------------------------------------------
// Suite configuration

std::string SuiteConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    throw Error(ErrorKind::Usage, "config key '" + key + "' is not a string");
}

std::int64_t SuiteConfig::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    if (const auto* v = std::get_if<std::int64_t>(&it->second)) return *v;
    throw Error(ErrorKind::Usage, "config key '" + key + "' is not an integer");
}

bool SuiteConfig::get_bool(const std::string& key, bool fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    if (const auto* v = std::get_if<bool>(&it->second)) return *v;
    throw Error(ErrorKind::Usage, "config key '" + key + "' is not a boolean");
}

std::vector<std::string> SuiteConfig::get_list(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) return {};
    if (const auto* v = std::get_if<std::vector<std::string>>(&it->second)) return *v;
    if (const auto* s = std::get_if<std::string>(&it->second)) return {*s};
    throw Error(ErrorKind::Usage, "config key '" + key + "' is not a list of strings");
}

SuiteConfig parse_suite_config(std::string_view text, const std::string& path) {
    SuiteConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    std::uint32_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorKind::Syntax, path + ":" + std::to_string(lineno) + ":1: " + msg);
    };
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string{};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    auto unquote = [&](const std::string& s) {
        if (s.size() < 2 || s.front() != '"' || s.back() != '"') fail("expected a quoted string, got " + s);
        return s.substr(1, s.size() - 2);
    };
    auto strip_comment = [](std::string& l) {
        bool quoted = false;
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (l[i] == '"') quoted = !quoted;
            if (l[i] == '#' && !quoted) {
                l.resize(i);
                break;
            }
        }
    };
    while (std::getline(in, line)) {
        ++lineno;
        strip_comment(line);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        // Arrays may continue over several lines.
        if (!value.empty() && value.front() == '[') {
            std::string more;
            while (value.back() != ']' && std::getline(in, more)) {
                ++lineno;
                strip_comment(more);
                more = trim(more);
                if (!more.empty()) value += " " + more;
            }
        }
        if (key.empty() || value.empty()) fail("expected key = value");
        if (cfg.values.count(key)) fail("key '" + key + "' given twice");
        if (value.front() == '[') {
            if (value.back() != ']') fail("unterminated array");
            std::vector<std::string> items;
            std::string body = trim(value.substr(1, value.size() - 2));
            std::size_t start = 0;
            while (start < body.size()) {
                std::size_t comma = body.find(',', start);
                if (comma == std::string::npos) comma = body.size();
                std::string item = trim(body.substr(start, comma - start));
                if (!item.empty()) items.push_back(unquote(item));
                start = comma + 1;
            }
            cfg.values[key] = std::move(items);
        } else if (value.front() == '"') {
            cfg.values[key] = unquote(value);
        } else if (value == "true" || value == "false") {
            cfg.values[key] = value == "true";
        } else {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc{} || p != value.data() + value.size()) fail("cannot read value '" + value + "'");
            cfg.values[key] = v;
        }
    }
    return cfg;
}

} // namespace gatlab::io
