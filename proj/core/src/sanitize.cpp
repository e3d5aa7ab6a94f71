#include "repgate/sanitize.hpp"

#include "repgate/lexer.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>
#include <unordered_set>

namespace repgate::corpus {

namespace {

std::string_view header_basename(std::string_view header) {
    if (header.size() >= 2) header = header.substr(1, header.size() - 2);
    const auto slash = header.find_last_of("/\\");
    return slash == std::string_view::npos ? header : header.substr(slash + 1);
}

std::size_t next_significant(const std::vector<Token>& toks, std::size_t i) {
    while (i < toks.size() && toks[i].is_trivia()) ++i;
    return i;
}

// Index of the bracket closing the one at `open`, or toks.size().
std::size_t matching_close(const std::vector<Token>& toks, std::size_t open) {
    const std::string_view o = toks[open].text;
    const std::string_view c = o == "(" ? ")" : (o == "[" ? "]" : "}");
    int depth = 0;
    for (std::size_t i = open; i < toks.size(); ++i) {
        if (toks[i].kind != TokenKind::punct) continue;
        if (toks[i].text == o) ++depth;
        if (toks[i].text == c && --depth == 0) return i;
    }
    return toks.size();
}

class Sanitizer {
public:
    Sanitizer(std::string_view src, Language lang, const SanitizeOptions& opts)
        : src_(src), lang_(lang), opts_(opts), toks_(lex(src, lang)), drop_(toks_.size(), false) {
        check_brackets(toks_);
    }

    std::string run() {
        mark_comments();
        if (lang_ == Language::c || lang_ == Language::cpp) mark_directives();
        if (lang_ == Language::python) {
            mark_python_main();
        } else {
            mark_c_family_main();
        }
        assign_neutral_names();
        return rebuild();
    }

private:
    void mark_comments() {
        for (std::size_t i = 0; i < toks_.size(); ++i) {
            if (toks_[i].kind == TokenKind::comment) drop_[i] = true;
        }
    }

    // Drops tokens [first, newline] of the directive line starting at `first`.
    std::size_t drop_line(std::size_t first) {
        std::size_t i = first;
        for (; i < toks_.size(); ++i) {
            drop_[i] = true;
            if (toks_[i].kind == TokenKind::newline) break;
        }
        return i;
    }

    void mark_directives() {
        enum class Region { other, guard, harness };
        std::vector<Region> stack;
        int harness_depth = 0;  // number of enclosing INCLUDEMAIN regions

        for (std::size_t i = 0; i < toks_.size(); ++i) {
            const Token& t = toks_[i];
            if (harness_depth > 0) drop_[i] = true;
            if (t.kind != TokenKind::directive) continue;

            const auto name = directive_name(t.text);
            // Collect the identifiers on the directive line.
            std::vector<std::string_view> words;
            std::string_view header;
            for (std::size_t j = i + 1; j < toks_.size() && toks_[j].kind != TokenKind::newline; ++j) {
                if (toks_[j].kind == TokenKind::identifier) words.push_back(toks_[j].text);
                if (toks_[j].kind == TokenKind::header_name) header = toks_[j].text;
            }
            const auto mentions = [&](std::string_view w) {
                return std::find(words.begin(), words.end(), w) != words.end();
            };

            if (name == "if" || name == "ifdef" || name == "ifndef") {
                Region r = Region::other;
                if (mentions("INCLUDEMAIN")) {
                    r = Region::harness;
                } else if (mentions("OMITBAD") || mentions("OMITGOOD")) {
                    r = Region::guard;
                }
                stack.push_back(r);
                if (r == Region::harness) ++harness_depth;
                if (r != Region::other) i = drop_line(i);
            } else if (name == "else" || name == "elif") {
                if (!stack.empty() && stack.back() == Region::guard) i = drop_line(i);
            } else if (name == "endif") {
                if (stack.empty()) continue;
                const Region r = stack.back();
                stack.pop_back();
                if (r != Region::other) i = drop_line(i);
                if (r == Region::harness) --harness_depth;
            } else if (name == "include" && !header.empty()) {
                const auto base = header_basename(header);
                for (const auto& deny : opts_.harness_includes) {
                    if (base == deny) {
                        i = drop_line(i);
                        break;
                    }
                }
            }
        }
    }

    // `main` definitions and prototypes at declaration level.
    void mark_c_family_main() {
        for (std::size_t i = 0; i < toks_.size(); ++i) {
            if (drop_[i] || !toks_[i].is(TokenKind::identifier, "main")) continue;
            const std::size_t open = next_significant(toks_, i + 1);
            if (open >= toks_.size() || !toks_[open].is_punct("(")) continue;

            // Walk back to the start of the declaration; only type-like tokens may precede main.
            std::size_t start = i;
            bool declaration = false;
            for (std::size_t k = i; k-- > 0;) {
                const Token& t = toks_[k];
                if (t.is_trivia() || drop_[k]) continue;
                if (t.is_punct(";") || t.is_punct("{") || t.is_punct("}") || t.kind == TokenKind::directive) break;
                if (t.kind == TokenKind::newline) continue;
                const bool type_like = t.kind == TokenKind::identifier || t.kind == TokenKind::keyword ||
                                       t.is_punct("*") || t.is_punct("&") || t.is_punct("::") || t.is_punct("@") ||
                                       t.is_punct("[") || t.is_punct("]");
                if (!type_like) {
                    declaration = false;
                    start = i;
                    break;
                }
                declaration = true;
                start = k;
            }
            // A directive line ends at its newline; make sure we did not cross one.
            if (!declaration) continue;

            const std::size_t close = matching_close(toks_, open);
            if (close >= toks_.size()) continue;
            std::size_t after = next_significant(toks_, close + 1);
            // Java `throws X, Y` between the parameter list and the body.
            while (after < toks_.size() && (toks_[after].kind == TokenKind::keyword || toks_[after].kind == TokenKind::identifier ||
                                             toks_[after].is_punct(","))) {
                after = next_significant(toks_, after + 1);
            }
            std::size_t end;
            if (after < toks_.size() && toks_[after].is_punct("{")) {
                end = matching_close(toks_, after);
            } else if (after < toks_.size() && toks_[after].is_punct(";")) {
                end = after;
            } else {
                continue;
            }
            if (end >= toks_.size()) continue;
            for (std::size_t k = start; k <= end; ++k) drop_[k] = true;
            i = end;
        }
    }

    // `if __name__ == "__main__":` and its indented block.
    void mark_python_main() {
        for (std::size_t i = 0; i < toks_.size(); ++i) {
            if (!toks_[i].is(TokenKind::keyword, "if") || toks_[i].column != 1) continue;
            const std::size_t name = next_significant(toks_, i + 1);
            if (name >= toks_.size() || !toks_[name].is(TokenKind::identifier, "__name__")) continue;
            // Header line through its newline.
            std::size_t k = i;
            while (k < toks_.size() && toks_[k].kind != TokenKind::newline) drop_[k++] = true;
            if (k < toks_.size()) drop_[k++] = true;
            // Body: following lines that are blank or indented.
            while (k < toks_.size()) {
                const Token& t = toks_[k];
                if (t.kind == TokenKind::newline || t.kind == TokenKind::whitespace || t.kind == TokenKind::comment ||
                    t.column > 1) {
                    drop_[k++] = true;
                    continue;
                }
                break;
            }
            i = k;
        }
    }

    void assign_neutral_names() {
        std::unordered_set<std::string_view> existing;
        for (const Token& t : toks_) {
            if (t.kind == TokenKind::identifier) existing.insert(t.text);
        }
        int counter = 0;
        for (std::size_t i = 0; i < toks_.size(); ++i) {
            const Token& t = toks_[i];
            if (drop_[i] || t.kind != TokenKind::identifier) continue;
            if (t.text.find("CWE") == std::string_view::npos || renames_.contains(t.text)) continue;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%03d", ++counter);
            std::string name = opts_.neutral_prefix + buf;
            while (existing.contains(name) || taken_.contains(name)) name += "_x";
            taken_.insert(name);
            renames_.emplace(t.text, std::move(name));
        }
    }

    std::string rebuild() const {
        struct Line {
            std::string content;
            bool had_drop = false;
            bool has_newline = false;
        };
        std::vector<Line> lines(1);
        for (std::size_t i = 0; i < toks_.size(); ++i) {
            const Token& t = toks_[i];
            Line& line = lines.back();
            if (drop_[i]) {
                line.had_drop = true;
                // A removed comment between two tokens must not glue them together.
                if (t.kind == TokenKind::comment && !line.content.empty() && !std::isspace(static_cast<unsigned char>(line.content.back()))) {
                    const std::size_t nx = i + 1;
                    if (nx < toks_.size() && !drop_[nx] && !toks_[nx].is_trivia()) line.content += ' ';
                }
                if (t.kind == TokenKind::newline) lines.emplace_back();
                continue;
            }
            if (t.kind == TokenKind::newline) {
                line.has_newline = true;
                lines.emplace_back();
                continue;
            }
            if (t.kind == TokenKind::identifier) {
                if (auto it = renames_.find(t.text); it != renames_.end()) {
                    line.content += it->second;
                    continue;
                }
            }
            line.content += t.text;
        }

        // Strip trailing blanks (whitespace tokens only ever hold these characters).
        auto rstrip = [](std::string& s) {
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\f' || s.back() == '\v' || s.back() == '\r')) {
                s.pop_back();
            }
        };

        std::string out;
        bool pending_blank = false;
        bool any = false;
        for (Line& line : lines) {
            rstrip(line.content);
            const bool blank = line.content.empty();
            if (blank && line.had_drop) continue;  // emptied by removal
            if (blank) {
                if (line.has_newline) pending_blank = any;
                continue;
            }
            if (pending_blank) out += '\n';
            pending_blank = false;
            out += line.content;
            out += '\n';
            any = true;
        }
        if (!out.empty() && (src_.empty() || src_.back() != '\n')) out.pop_back();
        return out;
    }

    std::string_view src_;
    Language lang_;
    const SanitizeOptions& opts_;
    std::vector<Token> toks_;
    std::vector<bool> drop_;
    std::map<std::string_view, std::string> renames_;
    std::set<std::string> taken_;
};

}  // namespace

std::string sanitize(std::string_view source, Language lang, const SanitizeOptions& options) {
    return Sanitizer(source, lang, options).run();
}

}  // namespace repgate::corpus
