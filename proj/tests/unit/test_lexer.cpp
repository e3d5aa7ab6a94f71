#include "repgate/lexer.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace repgate;

namespace {

std::string concat(const std::vector<Token>& toks) {
    std::string s;
    for (const auto& t : toks) s += t.text;
    return s;
}

std::vector<TokenKind> kinds(const std::vector<Token>& toks) {
    std::vector<TokenKind> out;
    for (const auto& t : toks) {
        if (!t.is_trivia()) out.push_back(t.kind);
    }
    return out;
}

}  // namespace

TEST(Lexer, ReproducesInputExactly) {
    testkit::Rng rng(7);
    for (auto lang : {Language::c, Language::cpp, Language::java, Language::python}) {
        for (int i = 0; i < 50; ++i) {
            const auto src = testkit::code_snippet(rng, lang);
            EXPECT_EQ(concat(lex(src, lang)), src);
        }
    }
}

TEST(Lexer, ClassifiesCTokens) {
    const auto toks = lex("#include <stdio.h>\nint x = 'a'; // hi\n/* b */ char *s = \"q\\\"\";\n", Language::c);
    EXPECT_EQ(kinds(toks), (std::vector<TokenKind>{TokenKind::directive, TokenKind::header_name, TokenKind::keyword,
                                                   TokenKind::identifier, TokenKind::punct, TokenKind::char_literal,
                                                   TokenKind::punct, TokenKind::keyword, TokenKind::punct,
                                                   TokenKind::identifier, TokenKind::punct, TokenKind::string,
                                                   TokenKind::punct}));
    int comments = 0;
    for (const auto& t : toks) comments += t.kind == TokenKind::comment;
    EXPECT_EQ(comments, 2);
}

TEST(Lexer, PythonCommentsAndTripleQuotes) {
    const auto toks = lex("x = '''a\n# not comment'''  # real\n", Language::python);
    std::vector<std::string_view> comments, strings;
    for (const auto& t : toks) {
        if (t.kind == TokenKind::comment) comments.push_back(t.text);
        if (t.kind == TokenKind::string) strings.push_back(t.text);
    }
    ASSERT_EQ(comments.size(), 1u);
    EXPECT_EQ(comments[0], "# real");
    ASSERT_EQ(strings.size(), 1u);
    EXPECT_EQ(strings[0], "'''a\n# not comment'''");
}

TEST(Lexer, PositionsAreOneBased) {
    const auto toks = lex("a\n  b", Language::c);
    const auto& b = toks.back();
    EXPECT_EQ(b.text, "b");
    EXPECT_EQ(b.line, 2);
    EXPECT_EQ(b.column, 3);
    EXPECT_EQ(b.offset, 4u);
}

TEST(Lexer, UnterminatedInputIsASyntaxError) {
    EXPECT_THROW((void)lex("char *s = \"abc;\n", Language::c), SyntaxError);
    EXPECT_THROW((void)lex("int x; /* open", Language::c), SyntaxError);
    try {
        (void)lex("int a;\n  /* open", Language::java);
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.position().line, 2);
        EXPECT_EQ(e.position().column, 3);
    }
}

TEST(Lexer, BracketCheck) {
    EXPECT_NO_THROW(check_brackets(lex("f(a[1], {b});", Language::c)));
    EXPECT_THROW(check_brackets(lex("f(a[1)];", Language::c)), SyntaxError);
    EXPECT_THROW(check_brackets(lex("{ {", Language::java)), SyntaxError);
    // brackets on directive lines are ignored
    EXPECT_NO_THROW(check_brackets(lex("#define OPEN (\nint x;\n", Language::c)));
}

TEST(Lexer, DirectiveName) {
    EXPECT_EQ(directive_name("#  ifndef"), "ifndef");
    EXPECT_EQ(directive_name("#include"), "include");
}

TEST(Lexer, Keywords) {
    EXPECT_TRUE(is_keyword("while", Language::c));
    EXPECT_TRUE(is_keyword("def", Language::python));
    EXPECT_FALSE(is_keyword("def", Language::c));
    EXPECT_TRUE(is_keyword("synchronized", Language::java));
}
