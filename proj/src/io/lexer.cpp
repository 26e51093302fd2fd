#include "gatlab/io/lexer.hpp"

#include <cctype>

namespace gatlab::io {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::String: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
    }
}

} // namespace

std::vector<Token> tokenize(std::string_view text, const std::string& path) {
    std::vector<Token> out;
    std::uint32_t line = 1;
    std::uint32_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorKind::Syntax, path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        Token tok;
        tok.loc = SourceLoc{line, col};
        if (ident_start(c)) {
            std::size_t j = i;
            // Interior hyphens join words, as in rule tags like "and-elim".
            while (j < text.size() &&
                   (ident_char(text[j]) || (text[j] == '-' && j + 1 < text.size() &&
                                            std::isalpha(static_cast<unsigned char>(text[j + 1])))))
                ++j;
            tok.kind = TokenKind::Identifier;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            tok.kind = TokenKind::Number;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
        } else if (c == '"') {
            std::string s;
            advance(1);
            while (true) {
                if (i >= text.size() || text[i] == '\n') fail("unterminated string");
                if (text[i] == '"') break;
                if (text[i] == '\\' && i + 1 < text.size()) {
                    advance(1);
                    s += text[i] == 'n' ? '\n' : text[i];
                    advance(1);
                    continue;
                }
                s += text[i];
                advance(1);
            }
            advance(1);
            tok.kind = TokenKind::String;
            tok.text = std::move(s);
        } else {
            static const char* two[] = {"==", "->", ":="};
            tok.kind = TokenKind::Symbol;
            for (const char* t : two) {
                if (text.substr(i, 2) == t) tok.text = t;
            }
            if (tok.text.empty()) {
                static const std::string_view one = "(){}[],;:.=|";
                if (one.find(c) == std::string_view::npos)
                    fail(std::string("unexpected character '") + c + "'");
                tok.text = std::string(1, c);
            }
            advance(tok.text.size());
        }
        out.push_back(std::move(tok));
    }
    out.push_back(Token{TokenKind::End, "", SourceLoc{line, col}});
    return out;
}

TokenStream::TokenStream(std::vector<Token> tokens, std::string path)
    : tokens_(std::move(tokens)), path_(std::move(path)) {}

const Token& TokenStream::peek(std::size_t ahead) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

Token TokenStream::next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
}

bool TokenStream::is_symbol(std::string_view s, std::size_t ahead) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::Symbol && t.text == s;
}

bool TokenStream::is_keyword(std::string_view s, std::size_t ahead) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::Identifier && t.text == s;
}

bool TokenStream::accept_symbol(std::string_view s) {
    if (!is_symbol(s)) return false;
    next();
    return true;
}

bool TokenStream::accept_keyword(std::string_view s) {
    if (!is_keyword(s)) return false;
    next();
    return true;
}

Token TokenStream::expect_symbol(std::string_view s) {
    if (!is_symbol(s)) fail("expected '" + std::string(s) + "', found " + describe(peek()));
    return next();
}

void TokenStream::expect_keyword(std::string_view s) {
    if (!is_keyword(s)) fail("expected '" + std::string(s) + "', found " + describe(peek()));
    next();
}

Token TokenStream::expect_identifier(std::string_view what) {
    if (peek().kind != TokenKind::Identifier)
        fail("expected " + std::string(what) + ", found " + describe(peek()));
    return next();
}

Token TokenStream::expect_string(std::string_view what) {
    if (peek().kind != TokenKind::String)
        fail("expected " + std::string(what) + " (a quoted string), found " + describe(peek()));
    return next();
}

Token TokenStream::expect_number(std::string_view what) {
    if (peek().kind != TokenKind::Number)
        fail("expected " + std::string(what) + ", found " + describe(peek()));
    return next();
}

void TokenStream::fail(const std::string& message) const { fail_at(peek().loc, message); }

void TokenStream::fail_at(const SourceLoc& loc, const std::string& message) const {
    throw Error(ErrorKind::Syntax, path_ + ":" + loc.to_string() + ": " + message);
}

} // namespace gatlab::io
