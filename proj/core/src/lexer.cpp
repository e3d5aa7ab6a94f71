#include "repgate/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace repgate {

namespace {

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

const std::unordered_set<std::string_view>& keywords(Language lang) {
    static const std::unordered_set<std::string_view> c_kw = {
        "auto", "break", "case", "char", "const", "continue", "default", "do", "double",
        "else", "enum", "extern", "float", "for", "goto", "if", "inline", "int", "long",
        "register", "restrict", "return", "short", "signed", "sizeof", "static", "struct",
        "switch", "typedef", "union", "unsigned", "void", "volatile", "while", "_Bool",
        "bool", "true", "false"};
    static const std::unordered_set<std::string_view> cpp_kw = [] {
        std::unordered_set<std::string_view> k = c_kw;
        for (std::string_view w :
             {"alignas", "alignof", "asm", "catch", "class", "constexpr", "const_cast",
              "decltype", "delete", "dynamic_cast", "explicit", "export", "friend", "mutable",
              "namespace", "new", "noexcept", "nullptr", "operator", "private", "protected",
              "public", "reinterpret_cast", "static_assert", "static_cast", "template", "this",
              "throw", "try", "typeid", "typename", "using", "virtual", "wchar_t"}) {
            k.insert(w);
        }
        return k;
    }();
    static const std::unordered_set<std::string_view> java_kw = {
        "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class",
        "const", "continue", "default", "do", "double", "else", "enum", "extends", "final",
        "finally", "float", "for", "goto", "if", "implements", "import", "instanceof", "int",
        "interface", "long", "native", "new", "package", "private", "protected", "public",
        "return", "short", "static", "strictfp", "super", "switch", "synchronized", "this",
        "throw", "throws", "transient", "try", "void", "volatile", "while", "true", "false",
        "null"};
    static const std::unordered_set<std::string_view> py_kw = {
        "False", "None", "True", "and", "as", "assert", "async", "await", "break", "class",
        "continue", "def", "del", "elif", "else", "except", "finally", "for", "from", "global",
        "if", "import", "in", "is", "lambda", "nonlocal", "not", "or", "pass", "raise",
        "return", "try", "while", "with", "yield"};
    switch (lang) {
        case Language::c: return c_kw;
        case Language::cpp: return cpp_kw;
        case Language::java: return java_kw;
        case Language::python: return py_kw;
    }
    return c_kw;
}

// Multi-character operators, longest first.
const std::vector<std::string_view>& operators(Language lang) {
    static const std::vector<std::string_view> c_ops = {
        "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&",
        "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "##"};
    static const std::vector<std::string_view> cpp_ops = {
        "<=>", "->*", "<<=", ">>=", "...", "::", "->", ".*", "++", "--", "<<", ">>", "<=",
        ">=", "==", "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "##"};
    static const std::vector<std::string_view> java_ops = {
        ">>>=", "<<=", ">>=", ">>>", "...", "::", "->", "++", "--", "<<", ">>", "<=", ">=",
        "==", "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^="};
    static const std::vector<std::string_view> py_ops = {
        "**=", "//=", ">>=", "<<=", "...", "->", "**", "//", "<<", ">>", "<=", ">=", "==",
        "!=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=", ":="};
    switch (lang) {
        case Language::c: return c_ops;
        case Language::cpp: return cpp_ops;
        case Language::java: return java_ops;
        case Language::python: return py_ops;
    }
    return c_ops;
}

constexpr std::string_view kSingleCharPunct = "+-*/%=<>!&|^~?:;,.()[]{}@";

class Lexer {
public:
    Lexer(std::string_view src, Language lang) : src_(src), lang_(lang) {}

    std::vector<Token> run() {
        while (pos_ < src_.size()) next();
        return std::move(tokens_);
    }

private:
    [[nodiscard]] char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, line_, col_, msg); }

    [[noreturn]] static void fail_at(std::size_t off, int line, int col, const std::string& msg) {
        throw SyntaxError(SourcePosition{line, col, off}, msg);
    }

    void emit(TokenKind kind, std::size_t begin, int line, int col) {
        tokens_.push_back(Token{kind, src_.substr(begin, pos_ - begin), begin, line, col});
        if (kind != TokenKind::whitespace && kind != TokenKind::comment && kind != TokenKind::newline) {
            at_line_start_ = false;
        }
    }

    // Advances over one byte, maintaining line/column.
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) advance();
    }

    [[nodiscard]] bool c_family() const { return lang_ != Language::python; }
    [[nodiscard]] bool preprocessor() const { return lang_ == Language::c || lang_ == Language::cpp; }

    void next() {
        const std::size_t begin = pos_;
        const int line = line_;
        const int col = col_;
        const char c = peek();

        if (c == '\n' || (c == '\r' && peek(1) == '\n')) {
            advance(c == '\r' ? 2 : 1);
            emit(TokenKind::newline, begin, line, col);
            at_line_start_ = true;
            in_directive_ = false;
            expect_header_ = false;
            return;
        }
        if (c == ' ' || c == '\t' || c == '\f' || c == '\v' || c == '\r') {
            while (pos_ < src_.size()) {
                const char w = peek();
                if (w == ' ' || w == '\t' || w == '\f' || w == '\v' || (w == '\r' && peek(1) != '\n')) {
                    advance();
                } else {
                    break;
                }
            }
            emit(TokenKind::whitespace, begin, line, col);
            return;
        }
        if (c == '\\' && (peek(1) == '\n' || (peek(1) == '\r' && peek(2) == '\n'))) {
            advance(peek(1) == '\r' ? 3 : 2);
            emit(TokenKind::whitespace, begin, line, col);
            return;
        }

        // Comments.
        if (c_family() && c == '/' && peek(1) == '/') {
            while (pos_ < src_.size() && peek() != '\n' && !(peek() == '\r' && peek(1) == '\n')) advance();
            emit(TokenKind::comment, begin, line, col);
            return;
        }
        if (c_family() && c == '/' && peek(1) == '*') {
            advance(2);
            while (true) {
                if (pos_ >= src_.size()) fail_at(begin, line, col, "unterminated comment");
                if (peek() == '*' && peek(1) == '/') {
                    advance(2);
                    break;
                }
                advance();
            }
            emit(TokenKind::comment, begin, line, col);
            return;
        }
        if (lang_ == Language::python && c == '#') {
            while (pos_ < src_.size() && peek() != '\n' && !(peek() == '\r' && peek(1) == '\n')) advance();
            emit(TokenKind::comment, begin, line, col);
            return;
        }

        // Preprocessor directives.
        if (preprocessor() && c == '#' && at_line_start_) {
            advance();
            while (peek() == ' ' || peek() == '\t') advance();
            while (is_ident_char(static_cast<unsigned char>(peek()))) advance();
            emit(TokenKind::directive, begin, line, col);
            in_directive_ = true;
            const auto name = directive_name(tokens_.back().text);
            expect_header_ = name == "include" || name == "include_next" || name == "import";
            return;
        }
        if (expect_header_ && (c == '<' || c == '"')) {
            const char close = c == '<' ? '>' : '"';
            advance();
            while (peek() != close) {
                if (pos_ >= src_.size() || peek() == '\n') fail_at(begin, line, col, "unterminated header name");
                advance();
            }
            advance();
            emit(TokenKind::header_name, begin, line, col);
            expect_header_ = false;
            return;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            lex_number();
            emit(TokenKind::number, begin, line, col);
            return;
        }

        if (is_ident_start(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < src_.size() && is_ident_char(static_cast<unsigned char>(src_[end]))) ++end;
            const std::string_view word = src_.substr(pos_, end - pos_);
            if (end < src_.size() && (src_[end] == '"' || src_[end] == '\'') && is_string_prefix(word, src_[end])) {
                advance(word.size());
                lex_quoted(begin, line, col, word);
                return;
            }
            advance(word.size());
            emit(is_keyword(word, lang_) ? TokenKind::keyword : TokenKind::identifier, begin, line, col);
            return;
        }

        if (c == '"' || c == '\'') {
            lex_quoted(begin, line, col, {});
            return;
        }

        if (preprocessor() && c == '#' && in_directive_) {
            advance(peek(1) == '#' ? 2 : 1);
            emit(TokenKind::punct, begin, line, col);
            return;
        }

        for (std::string_view op : operators(lang_)) {
            if (src_.substr(pos_, op.size()) == op) {
                advance(op.size());
                emit(TokenKind::punct, begin, line, col);
                return;
            }
        }
        if (kSingleCharPunct.find(c) != std::string_view::npos) {
            advance();
            emit(TokenKind::punct, begin, line, col);
            return;
        }

        std::string shown = (static_cast<unsigned char>(c) < 0x20)
                                ? "\\x" + std::to_string(static_cast<int>(static_cast<unsigned char>(c)))
                                : std::string(1, c);
        fail("unexpected character '" + shown + "'");
    }

    void lex_number() {
        const bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
        advance();
        while (pos_ < src_.size()) {
            const auto ch = static_cast<unsigned char>(peek());
            const char prev = src_[pos_ - 1];
            if (std::isalnum(ch) || ch == '_' || ch == '.') {
                advance();
            } else if ((ch == '+' || ch == '-') &&
                       ((!hex && (prev == 'e' || prev == 'E')) || prev == 'p' || prev == 'P')) {
                advance();
            } else if (ch == '\'' && lang_ == Language::cpp && std::isalnum(static_cast<unsigned char>(peek(1)))) {
                advance();
            } else {
                break;
            }
        }
    }

    [[nodiscard]] bool is_string_prefix(std::string_view word, char quote) const {
        std::string lower(word);
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        switch (lang_) {
            case Language::python:
                return lower == "r" || lower == "u" || lower == "b" || lower == "f" || lower == "br" ||
                       lower == "rb" || lower == "fr" || lower == "rf";
            case Language::c:
            case Language::cpp:
                if (quote == '\'') return word == "L" || word == "u" || word == "U" || word == "u8";
                return word == "L" || word == "u" || word == "U" || word == "u8" ||
                       (lang_ == Language::cpp &&
                        (word == "R" || word == "LR" || word == "uR" || word == "UR" || word == "u8R"));
            case Language::java:
                return false;
        }
        return false;
    }

    void lex_quoted(std::size_t begin, int line, int col, std::string_view prefix) {
        const char quote = peek();
        const bool raw_cpp = lang_ == Language::cpp && !prefix.empty() && prefix.back() == 'R';
        if (raw_cpp) {
            advance();
            std::string delim;
            while (peek() != '(') {
                if (pos_ >= src_.size() || peek() == '\n' || delim.size() > 16) {
                    fail_at(begin, line, col, "malformed raw string delimiter");
                }
                delim += peek();
                advance();
            }
            const std::string terminator = ")" + delim + "\"";
            const auto end = src_.find(terminator, pos_);
            if (end == std::string_view::npos) fail_at(begin, line, col, "unterminated raw string");
            advance(end + terminator.size() - pos_);
            emit(TokenKind::string, begin, line, col);
            return;
        }

        const bool triple = (lang_ == Language::python || (lang_ == Language::java && quote == '"')) &&
                            peek(1) == quote && peek(2) == quote;
        if (triple) {
            advance(3);
            while (true) {
                if (pos_ >= src_.size()) fail_at(begin, line, col, "unterminated triple-quoted string");
                if (peek() == '\\') {
                    advance(2);
                    continue;
                }
                if (peek() == quote && peek(1) == quote && peek(2) == quote) {
                    advance(3);
                    break;
                }
                advance();
            }
            emit(TokenKind::string, begin, line, col);
            return;
        }

        advance();
        while (true) {
            if (pos_ >= src_.size() || peek() == '\n' || (peek() == '\r' && peek(1) == '\n')) {
                fail_at(begin, line, col, quote == '"' ? "unterminated string literal" : "unterminated character literal");
            }
            if (peek() == '\\') {
                advance();
                if (pos_ < src_.size()) advance();
                continue;
            }
            if (peek() == quote) {
                advance();
                break;
            }
            advance();
        }
        const bool is_char = quote == '\'' && lang_ != Language::python;
        emit(is_char ? TokenKind::char_literal : TokenKind::string, begin, line, col);
    }

    std::string_view src_;
    Language lang_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    bool at_line_start_ = true;
    bool in_directive_ = false;
    bool expect_header_ = false;
    std::vector<Token> tokens_;
};

}  // namespace

std::string_view to_string(TokenKind k) {
    switch (k) {
        case TokenKind::identifier: return "identifier";
        case TokenKind::keyword: return "keyword";
        case TokenKind::number: return "number";
        case TokenKind::string: return "string";
        case TokenKind::char_literal: return "char";
        case TokenKind::header_name: return "header";
        case TokenKind::directive: return "directive";
        case TokenKind::punct: return "punct";
        case TokenKind::comment: return "comment";
        case TokenKind::whitespace: return "whitespace";
        case TokenKind::newline: return "newline";
    }
    return "unknown";
}

std::vector<Token> lex(std::string_view source, Language lang) {
    return Lexer(source, lang).run();
}

bool is_keyword(std::string_view word, Language lang) {
    return keywords(lang).contains(word);
}

std::string_view directive_name(std::string_view text) {
    if (!text.empty() && text.front() == '#') text.remove_prefix(1);
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    return text;
}

void check_brackets(const std::vector<Token>& tokens) {
    std::vector<const Token*> stack;
    bool in_directive = false;
    for (const Token& t : tokens) {
        if (t.kind == TokenKind::directive) in_directive = true;
        if (t.kind == TokenKind::newline) in_directive = false;
        if (t.kind != TokenKind::punct || in_directive || t.text.size() != 1) continue;
        const char c = t.text.front();
        if (c == '(' || c == '[' || c == '{') {
            stack.push_back(&t);
        } else if (c == ')' || c == ']' || c == '}') {
            const char want = c == ')' ? '(' : (c == ']' ? '[' : '{');
            if (stack.empty()) throw SyntaxError(t.position(), std::string("unmatched '") + c + "'");
            if (stack.back()->text.front() != want) {
                throw SyntaxError(t.position(), std::string("mismatched '") + c + "', expected closer for '" +
                                                    std::string(stack.back()->text) + "' opened at line " +
                                                    std::to_string(stack.back()->line));
            }
            stack.pop_back();
        }
    }
    if (!stack.empty()) {
        throw SyntaxError(stack.back()->position(), "unclosed '" + std::string(stack.back()->text) + "'");
    }
}

}  // namespace repgate
