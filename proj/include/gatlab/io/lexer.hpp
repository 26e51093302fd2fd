#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gatlab/kernel.hpp"

namespace gatlab::io {

enum class TokenKind { Identifier, Number, String, Symbol, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    SourceLoc loc;
};

/// Splits DSL text into tokens. Comments run from "//" to end of line.
/// Symbols: ( ) { } [ ] , ; : . = == -> := |
std::vector<Token> tokenize(std::string_view text, const std::string& path);

/// Cursor over a token list with diagnostics that carry the source path
/// and the line/column of the offending token.
class TokenStream {
public:
    TokenStream(std::vector<Token> tokens, std::string path);

    const Token& peek(std::size_t ahead = 0) const;
    Token next();
    bool at_end() const { return peek().kind == TokenKind::End; }

    bool is_symbol(std::string_view s, std::size_t ahead = 0) const;
    bool is_keyword(std::string_view s, std::size_t ahead = 0) const;
    bool accept_symbol(std::string_view s);
    bool accept_keyword(std::string_view s);
    Token expect_symbol(std::string_view s);
    void expect_keyword(std::string_view s);
    Token expect_identifier(std::string_view what);
    Token expect_string(std::string_view what);
    Token expect_number(std::string_view what);

    [[noreturn]] void fail(const std::string& message) const;
    [[noreturn]] void fail_at(const SourceLoc& loc, const std::string& message) const;
    const std::string& path() const noexcept { return path_; }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::string path_;
};

} // namespace gatlab::io
