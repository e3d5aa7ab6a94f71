#pragma once

#include "repgate/error.hpp"
#include "repgate/types.hpp"

#include <string_view>
#include <vector>

namespace repgate {

enum class TokenKind {
    identifier,
    keyword,
    number,
    string,
    char_literal,
    header_name,  // `<stdio.h>` or `"std_testcase.h"` following #include
    directive,    // `#include`, `#ifndef`, ... (C/C++ only, first token on a line)
    punct,        // operators, brackets and separators
    comment,
    whitespace,   // spaces, tabs and backslash-newline splices
    newline,
};

[[nodiscard]] std::string_view to_string(TokenKind k);

struct Token {
    TokenKind kind = TokenKind::whitespace;
    std::string_view text;  // view into the lexed source
    std::size_t offset = 0;
    int line = 1;
    int column = 1;

    [[nodiscard]] std::size_t end() const noexcept { return offset + text.size(); }
    [[nodiscard]] bool is(TokenKind k, std::string_view t) const noexcept { return kind == k && text == t; }
    [[nodiscard]] bool is_punct(std::string_view t) const noexcept { return is(TokenKind::punct, t); }
    [[nodiscard]] bool is_trivia() const noexcept {
        return kind == TokenKind::comment || kind == TokenKind::whitespace || kind == TokenKind::newline;
    }
    [[nodiscard]] SourcePosition position() const noexcept { return {line, column, offset}; }
};

/// Splits `source` into tokens, trivia included, so that concatenating every token's text
/// reproduces the input byte for byte. Throws SyntaxError on unterminated strings/comments
/// and characters the language does not allow.
[[nodiscard]] std::vector<Token> lex(std::string_view source, Language lang);

[[nodiscard]] bool is_keyword(std::string_view word, Language lang);

/// Directive name without `#` and spacing: `#  ifndef` -> `ifndef`.
[[nodiscard]] std::string_view directive_name(std::string_view directive_text);

/// Throws SyntaxError at the first unmatched or mismatched bracket in a token stream.
/// Brackets inside C/C++ directive lines are ignored.
void check_brackets(const std::vector<Token>& tokens);

}  // namespace repgate
