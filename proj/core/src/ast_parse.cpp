#include "repgate/ast.hpp"
#include "repgate/lexer.hpp"

#include <algorithm>
#include <unordered_set>

namespace repgate::ast {

namespace {

GenericNode token_leaf(const Token& t) {
    switch (t.kind) {
        case TokenKind::identifier: return leaf("identifier", std::string(t.text));
        case TokenKind::keyword: return leaf("keyword", std::string(t.text));
        case TokenKind::number: return leaf("number", std::string(t.text));
        case TokenKind::string: return leaf("string", std::string(t.text));
        case TokenKind::char_literal: return leaf("char", std::string(t.text));
        case TokenKind::header_name: return leaf("header", std::string(t.text));
        default: return leaf("operator", std::string(t.text));
    }
}

SourcePosition end_position(const Token& t) {
    SourcePosition p{t.line, t.column, t.end()};
    for (const char c : t.text) {
        if (c == '\n') {
            ++p.line;
            p.column = 1;
        } else {
            ++p.column;
        }
    }
    return p;
}

bool is_open(const Token& t) {
    return t.is_punct("(") || t.is_punct("[") || t.is_punct("{");
}

bool is_close(const Token& t) {
    return t.is_punct(")") || t.is_punct("]") || t.is_punct("}");
}

std::string_view closer_for(std::string_view open) {
    return open == "(" ? ")" : (open == "[" ? "]" : "}");
}

// ---------------------------------------------------------------------------------------
// C, C++ and Java

class CFamilyParser {
public:
    CFamilyParser(const std::vector<Token>& all, Language lang) : lang_(lang) {
        for (std::size_t k = 0; k < all.size(); ++k) {
            const Token& t = all[k];
            if (t.is_trivia()) continue;
            if (t.kind == TokenKind::directive) {
                // Everything up to the end of the line belongs to the directive.
                Directive d;
                d.head = &t;
                for (++k; k < all.size() && all[k].kind != TokenKind::newline; ++k) {
                    if (!all[k].is_trivia()) d.body.push_back(&all[k]);
                }
                directives_.push_back(std::move(d));
                toks_.push_back(&t);
                continue;
            }
            toks_.push_back(&t);
        }
    }

    GenericNode parse() {
        GenericNode unit = node(lang_ == Language::java ? "compilation_unit" : "translation_unit");
        while (!eof()) {
            if (auto s = statement()) unit.children.push_back(std::move(*s));
        }
        return unit;
    }

private:
    struct Directive {
        const Token* head = nullptr;
        std::vector<const Token*> body;
    };

    bool eof() const { return i_ >= toks_.size(); }
    const Token& cur() const { return *toks_[i_]; }
    bool at_punct(std::string_view p) const { return !eof() && cur().is_punct(p); }
    bool at_keyword(std::string_view k) const { return !eof() && cur().is(TokenKind::keyword, k); }

    [[noreturn]] void fail_here(const std::string& msg) const {
        if (eof()) {
            throw SyntaxError(toks_.empty() ? SourcePosition{} : end_position(*toks_.back()), msg + " at end of input");
        }
        throw SyntaxError(cur().position(), msg);
    }

    void expect_punct(std::string_view p) {
        if (!at_punct(p)) fail_here("expected '" + std::string(p) + "'");
        ++i_;
    }

    GenericNode directive() {
        const Token* head = toks_[i_++];
        const Directive* d = nullptr;
        for (const auto& cand : directives_) {
            if (cand.head == head) {
                d = &cand;
                break;
            }
        }
        std::string name(directive_name(head->text));
        GenericNode n = node("preproc_" + (name.empty() ? std::string("null") : name));
        for (const Token* t : d->body) n.children.push_back(token_leaf(*t));
        return n;
    }

    // One bracketed group starting at an opening bracket; `kind` names the node.
    GenericNode group(const std::string& kind) {
        const Token& open = cur();
        const auto close = closer_for(open.text);
        ++i_;
        GenericNode g = node(kind);
        const Token* prev = &open;
        while (true) {
            if (eof()) throw SyntaxError(open.position(), "unclosed '" + std::string(open.text) + "'");
            const Token& t = cur();
            if (t.is_punct(close)) {
                ++i_;
                return g;
            }
            if (is_close(t)) fail_here("expected '" + std::string(close) + "'");
            if (t.is_punct(",") || t.is_punct(";")) {
                prev = &t;
                ++i_;
                continue;
            }
            append_item(g.children, prev);
            prev = toks_[i_ - 1];
        }
    }

    static bool opens_initializer(const Token* prev) {
        if (prev == nullptr) return false;
        static const std::unordered_set<std::string_view> after{"=", ",", "(", "[", "{", "?", "]", "return"};
        return (prev->kind == TokenKind::punct || prev->kind == TokenKind::keyword) && after.contains(prev->text);
    }

    // Appends the next expression-level item (leaf, group, call, nested block).
    void append_item(std::vector<GenericNode>& items, const Token* prev) {
        const Token& t = cur();
        if (t.kind == TokenKind::directive) {
            items.push_back(directive());
            return;
        }
        if (t.is_punct("(")) {
            if (!items.empty() && items.back().kind == "identifier" && prev && prev->kind == TokenKind::identifier) {
                GenericNode callee = std::move(items.back());
                items.pop_back();
                GenericNode args = group("arguments");
                items.push_back(node("call", {}));
                items.back().children.push_back(std::move(callee));
                items.back().children.push_back(std::move(args));
            } else {
                items.push_back(group("parenthesized"));
            }
            return;
        }
        if (t.is_punct("[")) {
            items.push_back(group("subscript"));
            return;
        }
        if (t.is_punct("{")) {
            if (opens_initializer(prev)) {
                items.push_back(group("initializer_list"));
            } else {
                items.push_back(block("block"));
            }
            return;
        }
        items.push_back(token_leaf(t));
        ++i_;
    }

    GenericNode block(const std::string& kind) {
        const Token& open = cur();
        expect_punct("{");
        GenericNode b = node(kind);
        while (true) {
            if (eof()) throw SyntaxError(open.position(), "unclosed '{'");
            if (at_punct("}")) {
                ++i_;
                return b;
            }
            if (auto s = statement()) b.children.push_back(std::move(*s));
        }
    }

    GenericNode required_statement(const std::string& what) {
        while (true) {
            if (eof()) fail_here("expected " + what);
            if (at_punct(";")) {
                ++i_;
                return node("empty_statement");
            }
            if (auto s = statement()) return std::move(*s);
        }
    }

    GenericNode condition() {
        if (!at_punct("(")) fail_here("expected '('");
        GenericNode g = group("condition");
        return g;
    }

    std::optional<GenericNode> statement() {
        const Token& t = cur();
        if (t.kind == TokenKind::directive) return directive();
        if (t.is_punct("{")) return block("block");
        if (t.is_punct(";")) {
            ++i_;
            return std::nullopt;
        }
        if (is_close(t)) fail_here("unexpected '" + std::string(t.text) + "'");

        if (t.kind == TokenKind::keyword) {
            const std::string kw(t.text);
            if (kw == "if") {
                GenericNode n = node("if_statement", {token_leaf(t)});
                ++i_;
                n.children.push_back(condition());
                n.children.push_back(required_statement("a statement after 'if'"));
                if (at_keyword("else")) {
                    GenericNode e = node("else_clause", {token_leaf(cur())});
                    ++i_;
                    e.children.push_back(required_statement("a statement after 'else'"));
                    n.children.push_back(std::move(e));
                }
                return n;
            }
            if (kw == "else") fail_here("'else' without 'if'");
            if (kw == "while" || kw == "switch" || kw == "for" || (kw == "synchronized" && lang_ == Language::java)) {
                GenericNode n = node(kw + "_statement", {token_leaf(t)});
                ++i_;
                n.children.push_back(condition());
                n.children.push_back(required_statement("a statement after '" + kw + "'"));
                return n;
            }
            if (kw == "do") {
                GenericNode n = node("do_statement", {token_leaf(t)});
                ++i_;
                n.children.push_back(required_statement("a statement after 'do'"));
                if (!at_keyword("while")) fail_here("expected 'while'");
                n.children.push_back(token_leaf(cur()));
                ++i_;
                n.children.push_back(condition());
                expect_punct(";");
                return n;
            }
            if (kw == "try") {
                GenericNode n = node("try_statement", {token_leaf(t)});
                ++i_;
                if (at_punct("(")) n.children.push_back(group("resources"));
                if (!at_punct("{")) fail_here("expected '{' after 'try'");
                n.children.push_back(block("block"));
                bool handled = false;
                while (at_keyword("catch")) {
                    GenericNode c = node("catch_clause", {token_leaf(cur())});
                    ++i_;
                    c.children.push_back(condition());
                    if (!at_punct("{")) fail_here("expected '{' after 'catch'");
                    c.children.push_back(block("block"));
                    n.children.push_back(std::move(c));
                    handled = true;
                }
                if (at_keyword("finally")) {
                    GenericNode f = node("finally_clause", {token_leaf(cur())});
                    ++i_;
                    if (!at_punct("{")) fail_here("expected '{' after 'finally'");
                    f.children.push_back(block("block"));
                    n.children.push_back(std::move(f));
                    handled = true;
                }
                if (!handled && n.children[1].kind != "resources") fail_here("expected 'catch' or 'finally'");
                return n;
            }
            if (kw == "catch" || kw == "finally") fail_here("'" + kw + "' without 'try'");
            if (kw == "case" || kw == "default") return case_label();
        }
        return simple_statement();
    }

    GenericNode case_label() {
        GenericNode n = node("case_label");
        const Token* prev = nullptr;
        while (true) {
            if (eof()) fail_here("expected ':'");
            if (at_punct(":") || at_punct("->")) {
                ++i_;
                return n;
            }
            if (is_close(cur()) || at_punct(";")) fail_here("expected ':'");
            append_item(n.children, prev);
            prev = toks_[i_ - 1];
        }
    }

    GenericNode simple_statement() {
        static const std::unordered_set<std::string_view> definers{"class", "struct", "union", "enum", "namespace", "interface"};
        static const std::unordered_set<std::string_view> jumps{"return", "break", "continue", "goto", "throw"};

        const Token& first = cur();
        std::vector<GenericNode> items;
        std::string definer;
        bool has_parens = false;
        bool expression = false;
        const Token* prev = nullptr;

        auto finish = [&](std::string kind) {
            GenericNode n = node(std::move(kind));
            n.children = std::move(items);
            return n;
        };
        auto default_kind = [&] {
            if (first.kind == TokenKind::keyword && jumps.contains(first.text)) return std::string(first.text) + "_statement";
            return std::string("statement");
        };

        while (true) {
            if (eof()) fail_here("expected ';'");
            const Token& t = cur();
            if (t.is_punct(";")) {
                ++i_;
                return finish(default_kind());
            }
            if (is_close(t)) fail_here(t.is_punct("}") ? "expected ';' before '}'" : "unexpected '" + std::string(t.text) + "'");

            // `T x{...}` brace initialization.
            const bool brace_init = t.is_punct("{") && prev && prev->kind == TokenKind::identifier && !has_parens &&
                                    definer.empty() && lang_ != Language::java;
            if (brace_init) {
                items.push_back(group("initializer_list"));
                prev = toks_[i_ - 1];
                continue;
            }
            if (t.is_punct("{") && !opens_initializer(prev)) {
                if (!definer.empty()) {
                    const bool c_like = lang_ != Language::java;
                    if (definer == "enum") {
                        items.push_back(group("enumerator_list"));
                    } else {
                        items.push_back(block("body"));
                    }
                    if (c_like && definer != "namespace") {
                        // Declarators may follow the closing brace: `} name;`
                        prev = toks_[i_ - 1];
                        definer.clear();
                        expression = true;
                        continue;
                    }
                    return finish(definer + "_definition");
                }
                if (expression) {
                    // Lambda or anonymous class body inside an expression.
                    items.push_back(block("block"));
                    prev = toks_[i_ - 1];
                    continue;
                }
                items.push_back(block("body"));
                return finish(has_parens ? "function_definition" : "declaration");
            }

            if (t.kind == TokenKind::keyword && definers.contains(t.text) && definer.empty() && !expression) {
                definer = std::string(t.text);
            }
            if (t.is_punct("=") || t.is(TokenKind::keyword, "return") || t.is(TokenKind::keyword, "new") ||
                t.is(TokenKind::keyword, "throw")) {
                expression = true;
            }
            if (t.is_punct("(")) has_parens = true;
            append_item(items, prev);
            prev = toks_[i_ - 1];
        }
    }

    Language lang_;
    std::vector<const Token*> toks_;
    std::vector<Directive> directives_;
    std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------------------
// Python

class PythonParser {
public:
    explicit PythonParser(const std::vector<Token>& all) {
        int depth = 0;
        Line line;
        for (const Token& t : all) {
            if (t.kind == TokenKind::comment || t.kind == TokenKind::whitespace) continue;
            if (t.kind == TokenKind::newline) {
                if (depth == 0 && !line.toks.empty()) {
                    lines_.push_back(std::move(line));
                    line = Line{};
                }
                continue;
            }
            if (line.toks.empty()) line.indent = t.column - 1;
            if (is_open(t)) ++depth;
            if (is_close(t)) --depth;
            line.toks.push_back(&t);
        }
        if (!line.toks.empty()) lines_.push_back(std::move(line));
    }

    GenericNode parse() {
        GenericNode module = node("module");
        if (!lines_.empty() && lines_.front().indent != 0) throw SyntaxError(lines_.front().toks.front()->position(), "unexpected indent");
        module.children = suite(0);
        if (li_ < lines_.size()) throw SyntaxError(lines_[li_].toks.front()->position(), "unindent does not match any outer level");
        return module;
    }

private:
    struct Line {
        int indent = 0;
        std::vector<const Token*> toks;
    };
    using Span = std::vector<const Token*>;

    static bool is_operand_keyword(std::string_view k) {
        return k == "True" || k == "False" || k == "None";
    }

    static bool kw(const Token* t, std::string_view k) {
        return t->is(TokenKind::keyword, k);
    }

    std::vector<GenericNode> suite(int indent) {
        std::vector<GenericNode> out;
        while (li_ < lines_.size()) {
            const Line& line = lines_[li_];
            if (line.indent < indent) break;
            if (line.indent > indent) throw SyntaxError(line.toks.front()->position(), "unexpected indent");
            ++li_;
            statement(line, out);
        }
        return out;
    }

    static std::size_t header_colon(const Span& toks) {
        int depth = 0;
        int lambdas = 0;
        for (std::size_t k = 0; k < toks.size(); ++k) {
            const Token& t = *toks[k];
            if (is_open(t)) ++depth;
            if (is_close(t)) --depth;
            if (depth != 0) continue;
            if (kw(&t, "lambda")) ++lambdas;
            if (t.is_punct(":")) {
                if (lambdas == 0) return k;
                --lambdas;
            }
        }
        return toks.size();
    }

    static bool starts_compound(const Span& toks, std::size_t colon) {
        static const std::unordered_set<std::string_view> compound{"if", "elif", "else", "while", "for", "try", "except",
                                                                  "finally", "with", "def", "class", "async"};
        const Token& t = *toks.front();
        if (t.kind == TokenKind::keyword && compound.contains(t.text)) return true;
        // Soft keywords: `match subject:` / `case pattern:`
        return t.kind == TokenKind::identifier && (t.text == "match" || t.text == "case") && toks.size() > 1 &&
               colon == toks.size() - 1 && toks[1]->kind != TokenKind::punct;
    }

    void statement(const Line& line, std::vector<GenericNode>& out) {
        const Span& toks = line.toks;
        if (toks.front()->is_punct("@")) {
            GenericNode d = node("decorator");
            d.children = items(toks, 0, toks.size());
            out.push_back(std::move(d));
            return;
        }
        const std::size_t colon = header_colon(toks);
        if (!starts_compound(toks, colon)) {
            simple_statements(toks, 0, toks.size(), out);
            return;
        }
        const Token& head = *toks.front();
        if (colon == toks.size()) throw SyntaxError(end_position(*toks.back()), "expected ':'");

        std::string head_kw(head.text);
        if (head_kw == "async" && toks.size() > 1) head_kw = std::string(toks[1]->text);

        std::string kind;
        if (head_kw == "def") kind = "function_definition";
        else if (head_kw == "class") kind = "class_definition";
        else if (head_kw == "elif" || head_kw == "else" || head_kw == "except" || head_kw == "finally") kind = head_kw + "_clause";
        else kind = head_kw + "_statement";

        if (head_kw == "except") {
            // Python 2 `except E, e:`
            int depth = 0;
            for (std::size_t k = 1; k < colon; ++k) {
                if (is_open(*toks[k])) ++depth;
                if (is_close(*toks[k])) --depth;
                if (depth == 0 && toks[k]->is_punct(",")) throw SyntaxError(toks[k]->position(), "multiple exception types must be parenthesized");
            }
        }

        GenericNode n = node(kind);
        n.children = items(toks, 0, colon);
        GenericNode body = node("block");
        if (colon + 1 < toks.size()) {
            simple_statements(toks, colon + 1, toks.size(), body.children);
        } else {
            if (li_ >= lines_.size() || lines_[li_].indent <= line.indent) {
                throw SyntaxError(end_position(*toks.back()), "expected an indented block");
            }
            body.children = suite(lines_[li_].indent);
        }
        n.children.push_back(std::move(body));

        if (kind.ends_with("_clause")) {
            GenericNode* owner = out.empty() ? nullptr : &out.back();
            bool ok = false;
            if (owner) {
                const auto& ok_kind = owner->kind;
                const bool has_else = !owner->children.empty() && owner->children.back().kind == "else_clause";
                const bool has_finally = !owner->children.empty() && owner->children.back().kind == "finally_clause";
                if (head_kw == "elif") ok = ok_kind == "if_statement" && !has_else;
                if (head_kw == "else") ok = (ok_kind == "if_statement" || ok_kind == "for_statement" || ok_kind == "while_statement" ||
                                             ok_kind == "try_statement") && !has_else && !has_finally;
                if (head_kw == "except") ok = ok_kind == "try_statement" && !has_else && !has_finally;
                if (head_kw == "finally") ok = ok_kind == "try_statement" && !has_finally;
            }
            if (!ok) throw SyntaxError(head.position(), "unexpected '" + head_kw + "'");
            owner->children.push_back(std::move(n));
            return;
        }
        out.push_back(std::move(n));
    }

    void simple_statements(const Span& toks, std::size_t from, std::size_t to, std::vector<GenericNode>& out) {
        static const std::unordered_set<std::string_view> named{"return", "import", "from", "pass", "break", "continue", "raise",
                                                               "global", "nonlocal", "del", "assert"};
        std::size_t start = from;
        int depth = 0;
        for (std::size_t k = from; k <= to; ++k) {
            if (k < to) {
                if (is_open(*toks[k])) ++depth;
                if (is_close(*toks[k])) --depth;
                if (!(depth == 0 && toks[k]->is_punct(";"))) continue;
            }
            if (k > start) {
                const Token& head = *toks[start];
                std::string kind = "expression_statement";
                if (head.kind == TokenKind::keyword && named.contains(head.text)) kind = std::string(head.text) + "_statement";
                if (kind == "raise_statement") {
                    int d = 0;
                    for (std::size_t m = start; m < k; ++m) {
                        if (is_open(*toks[m])) ++d;
                        if (is_close(*toks[m])) --d;
                        if (d == 0 && toks[m]->is_punct(",")) throw SyntaxError(toks[m]->position(), "invalid syntax");
                    }
                }
                GenericNode n = node(kind);
                n.children = items(toks, start, k);
                out.push_back(std::move(n));
            } else if (k < to) {
                throw SyntaxError(toks[k]->position(), "invalid syntax");
            }
            start = k + 1;
        }
    }

    static bool is_operand(const Token& t) {
        return t.kind == TokenKind::identifier || t.kind == TokenKind::number || t.kind == TokenKind::string ||
               (t.kind == TokenKind::keyword && is_operand_keyword(t.text));
    }

    // Expression items over toks[from, to); brackets are balanced within the range.
    std::vector<GenericNode> items(const Span& toks, std::size_t from, std::size_t to) {
        std::vector<GenericNode> out;
        std::size_t k = from;
        read_items(toks, k, to, nullptr, out);
        return out;
    }

    void read_items(const Span& toks, std::size_t& k, std::size_t to, const Token* open, std::vector<GenericNode>& out) {
        bool operand = false;
        const Token* last_operand = nullptr;
        while (k < to) {
            const Token& t = *toks[k];
            if (open && t.is_punct(closer_for(open->text))) return;
            if (is_close(t)) throw SyntaxError(t.position(), "unexpected '" + std::string(t.text) + "'");
            if (t.is_punct(",") || t.is_punct(";")) {
                operand = false;
                ++k;
                continue;
            }
            if (is_open(t)) {
                std::string kind;
                const bool applied = operand;
                if (t.is_punct("(")) kind = applied ? "arguments" : "parenthesized";
                else if (t.is_punct("[")) kind = applied ? "subscript" : "list";
                else {
                    if (applied) throw SyntaxError(t.position(), "invalid syntax");
                    kind = "dictionary";
                }
                ++k;
                GenericNode g = node(kind);
                read_items(toks, k, to, &t, g.children);
                if (k >= to) throw SyntaxError(t.position(), "unclosed '" + std::string(t.text) + "'");
                ++k;  // closer
                if (applied && !out.empty()) {
                    GenericNode target = std::move(out.back());
                    out.pop_back();
                    out.push_back(node(kind == "arguments" ? "call" : "subscript_expression", {}));
                    out.back().children.push_back(std::move(target));
                    out.back().children.push_back(std::move(g));
                } else {
                    out.push_back(std::move(g));
                }
                operand = true;
                last_operand = &t;
                continue;
            }
            if (t.kind == TokenKind::number && t.text.size() > 1 && t.text[0] == '0' &&
                t.text.find_first_not_of("0123456789") == std::string_view::npos &&
                t.text.find_first_not_of('0') != std::string_view::npos) {
                throw SyntaxError(t.position(), "leading zeros in decimal literal");
            }
            if (is_operand(t)) {
                const bool concat = t.kind == TokenKind::string && last_operand && last_operand->kind == TokenKind::string;
                if (operand && !concat) throw SyntaxError(t.position(), "invalid syntax");
                operand = true;
                last_operand = &t;
            } else {
                operand = false;
                last_operand = nullptr;
            }
            out.push_back(token_leaf(t));
            ++k;
        }
    }

    std::vector<Line> lines_;
    std::size_t li_ = 0;
};

}  // namespace

GenericNode parse_generic(std::string_view source, Language lang) {
    const auto tokens = lex(source, lang);
    const bool empty = std::all_of(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_trivia(); });
    if (empty) throw SyntaxError({1, 1, 0}, "empty input");
    check_brackets(tokens);
    if (lang == Language::python) return PythonParser(tokens).parse();
    return CFamilyParser(tokens, lang).parse();
}

}  // namespace repgate::ast
