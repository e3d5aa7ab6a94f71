#include "repgate/corpus.hpp"

#include "repgate/error.hpp"
#include "repgate/lexer.hpp"
#include "repgate/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace repgate::corpus {

std::string_view to_string(FunctionKind k) {
    switch (k) {
        case FunctionKind::bad: return "bad";
        case FunctionKind::good: return "good";
        case FunctionKind::helper: return "helper";
    }
    return "helper";
}

FunctionKind classify_function(std::string_view name) {
    if (name == "bad" || name.ends_with("_bad")) return FunctionKind::bad;
    if (name.ends_with("Sink") || name.ends_with("Source")) return FunctionKind::helper;
    if (name == "good") return FunctionKind::good;
    const auto at = name.rfind("_good");
    if (at != std::string_view::npos) {
        const auto rest = name.substr(at + 5);
        if (std::all_of(rest.begin(), rest.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); })) {
            return FunctionKind::good;
        }
    }
    return FunctionKind::helper;
}

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<const Token*> significant(const std::vector<Token>& toks) {
    std::vector<const Token*> out;
    out.reserve(toks.size());
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const Token& t = toks[i];
        if (t.kind == TokenKind::directive) {
            // Directive lines are opaque here.
            while (i + 1 < toks.size() && toks[i + 1].kind != TokenKind::newline) ++i;
            out.push_back(&t);
            continue;
        }
        if (!t.is_trivia()) out.push_back(&t);
    }
    return out;
}

std::size_t match_close(const std::vector<const Token*>& s, std::size_t open) {
    const std::string_view o = s[open]->text;
    const std::string_view c = o == "(" ? ")" : (o == "[" ? "]" : "}");
    int depth = 0;
    for (std::size_t i = open; i < s.size(); ++i) {
        if (s[i]->is_punct(o)) ++depth;
        if (s[i]->is_punct(c) && --depth == 0) return i;
    }
    return s.size();
}

// Splits the tokens strictly between an opening paren at `open` and `close` on top-level commas.
std::vector<std::pair<std::size_t, std::size_t>> split_commas(const std::vector<const Token*>& s, std::size_t open,
                                                              std::size_t close) {
    std::vector<std::pair<std::size_t, std::size_t>> parts;
    int depth = 0;
    std::size_t start = open + 1;
    for (std::size_t i = open + 1; i < close; ++i) {
        const Token& t = *s[i];
        if (t.is_punct("(") || t.is_punct("[") || t.is_punct("{")) ++depth;
        if (t.is_punct(")") || t.is_punct("]") || t.is_punct("}")) --depth;
        if (depth == 0 && t.is_punct(",")) {
            parts.emplace_back(start, i);
            start = i + 1;
        }
    }
    if (start < close) parts.emplace_back(start, close);
    return parts;
}

std::string param_name(const std::vector<const Token*>& s, std::size_t from, std::size_t to) {
    std::string name;
    for (std::size_t i = from; i < to; ++i) {
        if (s[i]->is_punct("[") || s[i]->is_punct("=")) break;
        if (s[i]->kind == TokenKind::identifier) name = std::string(s[i]->text);
    }
    return name;
}

bool is_worker_name(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    return lower.find("bad") != std::string::npos || lower.find("good") != std::string::npos ||
           name.find("Sink") != std::string_view::npos || name.find("Source") != std::string_view::npos;
}

}  // namespace

std::vector<FunctionSpan> find_functions(std::string_view source, Language lang) {
    const auto toks = lex(source, lang);
    check_brackets(toks);
    const auto s = significant(toks);

    std::vector<FunctionSpan> out;
    std::vector<bool> ns_stack;  // true for namespace braces
    std::size_t stmt = 0;        // first token of the current top-level statement
    auto effective_depth = [&] {
        return std::count(ns_stack.begin(), ns_stack.end(), false);
    };

    for (std::size_t i = 0; i < s.size(); ++i) {
        const Token& t = *s[i];
        if (t.kind == TokenKind::directive) {
            if (effective_depth() == 0) stmt = i + 1;
            continue;
        }
        if (effective_depth() == 0 && t.is(TokenKind::keyword, "namespace")) {
            std::size_t j = i + 1;
            while (j < s.size() && (s[j]->kind == TokenKind::identifier || s[j]->is_punct("::"))) ++j;
            if (j < s.size() && s[j]->is_punct("{")) {
                ns_stack.push_back(true);
                i = j;
                stmt = i + 1;
                continue;
            }
        }
        if (t.is_punct("{")) {
            if (effective_depth() == 0) {
                // Function definition: `... name ( params ) qualifiers {`
                std::size_t name_at = s.size();
                bool has_assign = false;
                for (std::size_t k = stmt; k < i; ++k) {
                    if (s[k]->is_punct("=")) has_assign = true;
                    if (s[k]->is_punct("(") && name_at == s.size() && k > stmt && s[k - 1]->kind == TokenKind::identifier) {
                        name_at = k - 1;
                    }
                }
                if (name_at != s.size() && !has_assign) {
                    const std::size_t open = name_at + 1;
                    const std::size_t close = match_close(s, open);
                    const std::size_t end = match_close(s, i);
                    if (close < i && end < s.size()) {
                        FunctionSpan f;
                        f.name = std::string(s[name_at]->text);
                        f.kind = classify_function(f.name);
                        f.begin = s[stmt]->offset;
                        f.body_begin = t.offset;
                        f.end = s[end]->end();
                        for (const auto& [a, b] : split_commas(s, open, close)) {
                            auto p = param_name(s, a, b);
                            if (!p.empty()) f.params.push_back(std::move(p));
                        }
                        out.push_back(std::move(f));
                        i = end;
                        stmt = i + 1;
                        continue;
                    }
                }
            }
            ns_stack.push_back(false);
            continue;
        }
        if (t.is_punct("}")) {
            if (!ns_stack.empty()) {
                ns_stack.pop_back();
            }
            if (effective_depth() == 0) stmt = i + 1;
            continue;
        }
        if (t.is_punct(";") && effective_depth() == 0) stmt = i + 1;
    }
    return out;
}

ScanResult scan_juliet(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw DataError("not a readable directory: " + root.string());

    static const std::regex prefix_re(R"(^CWE([0-9]+)_.*$)");
    static const std::regex multi_re(R"(_[0-9]{2}([a-z]|_bad|_good[A-Za-z0-9]*)$)");
    static const std::regex variant_re(R"(_([0-9]{2})$)");

    std::vector<fs::path> files;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw DataError("cannot read directory " + root.string() + ": " + ec.message());
    for (const auto& entry : it) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension();
        if (ext == ".c" || ext == ".cpp") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    ScanResult r;
    for (const auto& path : files) {
        const std::string rel = fs::relative(path, root).generic_string();
        const std::string stem = path.stem().string();
        std::smatch m;
        if (!std::regex_match(stem, m, prefix_re)) {
            r.skipped.push_back({rel, "unparseable filename", std::string(kNoCwe), {}});
            continue;
        }
        const std::string cwe = normalize_cwe("CWE-" + m[1].str());
        if (std::regex_search(stem, multi_re)) {
            r.skipped.push_back({rel, "inter-procedural", cwe, {}});
            ++r.inter_procedural;
            continue;
        }
        RawTestCase c;
        c.file_path = path;
        c.cwe = cwe;
        c.language = path.extension() == ".cpp" ? Language::cpp : Language::c;
        std::smatch v;
        if (std::regex_search(stem, v, variant_re)) {
            c.variant = std::stoi(v[1].str());
        } else {
            c.variant = 1;
            r.warnings.push_back(rel + ": no variant number, treated as 01");
        }
        if (c.variant < 1) {
            r.skipped.push_back({rel, "unparseable filename", cwe, "variant 00"});
            continue;
        }
        try {
            c.source = read_file(path);
            c.functions = find_functions(c.source, c.language);
        } catch (const SyntaxError& e) {
            r.skipped.push_back({rel, "unparseable source", cwe, e.what()});
            continue;
        }
        r.cases.push_back(std::move(c));
    }
    return r;
}

// --- extraction --------------------------------------------------------------------------

namespace {

struct SkipSample {
    std::string reason;
};

struct Callsite {
    std::string callee;
    std::size_t stmt_begin = 0;  // offset of the statement's first token
    std::size_t call_begin = 0;  // offset of the callee identifier
    std::size_t end = 0;         // one past the `;` (statement forms) or `)` (expressions)
    std::vector<std::string> args;
    enum class Form { statement, assignment, expression } form = Form::expression;
    std::string lhs;
};

class Extractor {
public:
    explicit Extractor(const RawTestCase& c) : c_(c) {
        for (const auto& f : c.functions) {
            if (!by_name_.contains(f.name)) by_name_.emplace(f.name, &f);
        }
        prelude_ = build_prelude();
    }

    ExtractResult run() {
        ExtractResult r;
        for (const auto& f : c_.functions) {
            if (f.kind == FunctionKind::helper) continue;
            const bool vulnerable = f.kind == FunctionKind::bad;
            try {
                const auto workers = wrapper_workers(f);
                if (workers.size() >= 2) {
                    for (const auto* w : workers) {
                        r.samples.push_back(make_sample(*w, vulnerable));
                    }
                } else {
                    r.samples.push_back(make_sample(f, vulnerable));
                }
            } catch (const SkipSample& s) {
                r.skipped.emplace_back(f.name, s.reason);
            }
        }
        return r;
    }

private:
    std::string text_of(const FunctionSpan& f) const { return c_.source.substr(f.begin, f.end - f.begin); }

    // File content outside function definitions, namespace wrappers removed.
    std::string build_prelude() const {
        std::string out;
        std::size_t pos = 0;
        for (const auto& f : c_.functions) {
            out.append(c_.source, pos, f.begin - pos);
            pos = f.end;
        }
        out.append(c_.source, pos, std::string::npos);

        const auto toks = lex(out, c_.language);
        const auto s = significant(toks);
        std::vector<std::pair<std::size_t, std::size_t>> cut;
        std::vector<bool> stack;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i]->is(TokenKind::keyword, "namespace")) {
                std::size_t j = i + 1;
                while (j < s.size() && (s[j]->kind == TokenKind::identifier || s[j]->is_punct("::"))) ++j;
                if (j < s.size() && s[j]->is_punct("{")) {
                    cut.emplace_back(s[i]->offset, s[j]->end());
                    stack.push_back(true);
                    i = j;
                    continue;
                }
            }
            if (s[i]->is_punct("{")) stack.push_back(false);
            if (s[i]->is_punct("}") && !stack.empty()) {
                if (stack.back()) cut.emplace_back(s[i]->offset, s[i]->end());
                stack.pop_back();
            }
        }
        std::string result;
        std::size_t p = 0;
        for (const auto& [a, b] : cut) {
            result.append(out, p, a - p);
            p = b;
        }
        result.append(out, p, std::string::npos);
        return result;
    }

    // Workers called by a body that does nothing but call them.
    std::vector<const FunctionSpan*> wrapper_workers(const FunctionSpan& f) const {
        const std::string text = text_of(f);
        const auto toks = lex(text, c_.language);
        const auto s = significant(toks);
        std::size_t open = 0;
        while (open < s.size() && s[open]->offset != f.body_begin - f.begin) ++open;
        const std::size_t close = match_close(s, open);

        std::vector<const FunctionSpan*> workers;
        std::size_t i = open + 1;
        while (i < close) {
            // Expect `name ( ) ;`
            if (i + 3 > close || s[i]->kind != TokenKind::identifier || !s[i + 1]->is_punct("(")) return {};
            const std::size_t rp = match_close(s, i + 1);
            if (rp >= close || !s[rp + 1]->is_punct(";")) return {};
            const auto found = by_name_.find(std::string(s[i]->text));
            if (found == by_name_.end() || !is_worker_name(found->first)) return {};
            if (std::find(workers.begin(), workers.end(), found->second) == workers.end()) workers.push_back(found->second);
            i = rp + 2;
        }
        return workers;
    }

    ExtractedSample make_sample(const FunctionSpan& f, bool vulnerable) {
        std::vector<const FunctionSpan*> deps;
        std::set<std::string> seen;
        std::vector<std::string> stack;
        const std::string body = resolve(f, stack, deps, seen);

        std::string text = prelude_;
        while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.pop_back();
        text += "\n\n";
        for (const auto* d : deps) {
            std::vector<std::string> dstack{f.name};
            std::vector<const FunctionSpan*> more;
            text += resolve(*d, dstack, more, seen);
            text += "\n\n";
        }
        text += body;
        text += '\n';

        ExtractedSample out;
        out.entry = f.name;
        out.source = std::move(text);
        out.vulnerable = vulnerable;
        out.cwe = vulnerable ? c_.cwe : std::string(kNoCwe);
        return out;
    }

    std::vector<Callsite> callsites(const std::string& text, std::size_t body_offset) const {
        const auto toks = lex(text, c_.language);
        const auto s = significant(toks);
        std::vector<Callsite> out;
        std::size_t skip_until = 0;  // calls nested in arguments stay put
        for (std::size_t i = 0; i < s.size(); ++i) {
            const Token& t = *s[i];
            if (t.offset <= body_offset || t.kind != TokenKind::identifier) continue;
            if (i + 1 >= s.size() || !s[i + 1]->is_punct("(")) continue;
            if (i > 0 && (s[i - 1]->is_punct(".") || s[i - 1]->is_punct("->"))) continue;
            const std::string name(t.text);
            const bool local = by_name_.contains(name);
            if (!local && !is_worker_name(name)) continue;
            const bool nested = t.offset < skip_until;

            Callsite cs;
            cs.callee = name;
            cs.call_begin = t.offset;
            const std::size_t rp = match_close(s, i + 1);
            for (const auto& [a, b] : split_commas(s, i + 1, rp)) {
                cs.args.emplace_back(text.substr(s[a]->offset, s[b - 1]->end() - s[a]->offset));
            }
            cs.end = s[rp]->end();
            const bool ends_stmt = rp + 1 < s.size() && s[rp + 1]->is_punct(";");
            auto boundary = [&](std::size_t k) {
                return s[k]->is_punct(";") || s[k]->is_punct("{") || s[k]->is_punct("}");
            };
            if (!nested && ends_stmt && i > 0 && boundary(i - 1)) {
                cs.form = Callsite::Form::statement;
                cs.stmt_begin = t.offset;
                cs.end = s[rp + 1]->end();
            } else if (!nested && ends_stmt && i > 1 && s[i - 1]->is_punct("=")) {
                std::size_t k = i - 1;
                while (k > 0 && !boundary(k - 1)) --k;
                if (k > 0 && k < i - 1) {
                    cs.form = Callsite::Form::assignment;
                    cs.stmt_begin = s[k]->offset;
                    cs.lhs = text.substr(s[k]->offset, s[i - 2]->end() - s[k]->offset);
                    cs.end = s[rp + 1]->end();
                }
            }
            if (!nested) skip_until = s[rp]->end();
            out.push_back(std::move(cs));
        }
        return out;
    }

    // Fully inlined text of `f`; helpers it needs are appended to `deps`.
    std::string resolve(const FunctionSpan& f, std::vector<std::string>& stack, std::vector<const FunctionSpan*>& deps,
                        std::set<std::string>& seen) {
        if (std::find(stack.begin(), stack.end(), f.name) != stack.end()) throw SkipSample{"recursion"};
        stack.push_back(f.name);
        std::string text = text_of(f);
        const std::size_t body_offset = f.body_begin - f.begin;
        auto calls = callsites(text, body_offset);

        // Rewrite back to front so earlier offsets stay valid.
        for (auto it = calls.rbegin(); it != calls.rend(); ++it) {
            const Callsite& cs = *it;
            const auto found = by_name_.find(cs.callee);
            if (found == by_name_.end()) {
                throw SkipSample{"unresolved worker"};
            }
            const FunctionSpan& callee = *found->second;
            if (!is_worker_name(callee.name)) {
                if (callee.name == f.name) continue;  // plain recursion of a helper stays as is
                add_dep(callee, stack, deps, seen);
                continue;
            }
            if (callee.name == f.name) throw SkipSample{"recursion"};
            const bool arity_ok = callee.params.size() == cs.args.size();
            if (!arity_ok || cs.form == Callsite::Form::expression) {
                add_dep(callee, stack, deps, seen);
                continue;
            }
            const std::string worker_text = resolve(callee, stack, deps, seen);
            auto inlined = inline_body(callee, worker_text, cs, text);
            if (!inlined) {
                add_dep(callee, stack, deps, seen);
                continue;
            }
            text.replace(cs.stmt_begin, cs.end - cs.stmt_begin, *inlined);
        }
        stack.pop_back();
        return text;
    }

    void add_dep(const FunctionSpan& callee, std::vector<std::string>& stack, std::vector<const FunctionSpan*>& deps,
                 std::set<std::string>& seen) {
        if (seen.contains(callee.name)) return;
        if (std::find(stack.begin(), stack.end(), callee.name) != stack.end()) {
            if (is_worker_name(callee.name)) throw SkipSample{"recursion"};
            return;
        }
        seen.insert(callee.name);
        // The dependency's own dependencies come first.
        std::vector<std::string> s2 = stack;
        std::set<std::string> dummy_seen = seen;
        std::vector<const FunctionSpan*> nested;
        (void)resolve(callee, s2, nested, dummy_seen);
        for (const auto* n : nested) {
            if (!seen.contains(n->name)) {
                seen.insert(n->name);
                deps.push_back(n);
            }
        }
        deps.push_back(&callee);
    }

    // Replacement text for a statement or assignment call site, or nullopt when the worker's
    // shape does not allow it (assignment needs a single trailing return).
    std::optional<std::string> inline_body(const FunctionSpan& callee, const std::string& worker_text, const Callsite& cs,
                                           const std::string& caller_text) const {
        const auto toks = lex(worker_text, c_.language);
        const auto s = significant(toks);
        std::size_t open = 0;
        // The body brace is the first `{` after the parameter list.
        int paren = 0;
        for (; open < s.size(); ++open) {
            if (s[open]->is_punct("(")) ++paren;
            if (s[open]->is_punct(")")) --paren;
            if (paren == 0 && s[open]->is_punct("{")) break;
        }
        const std::size_t close = match_close(s, open);
        if (close >= s.size()) return std::nullopt;

        std::size_t inner_end = s[close]->offset;
        std::size_t ret_from = 0;
        std::size_t ret_to = 0;
        if (cs.form == Callsite::Form::assignment) {
            std::size_t returns = 0;
            std::size_t ret_at = 0;
            for (std::size_t k = open + 1; k < close; ++k) {
                if (s[k]->is(TokenKind::keyword, "return")) {
                    ++returns;
                    ret_at = k;
                }
            }
            if (returns != 1 || close < 2 || !s[close - 1]->is_punct(";") || ret_at + 1 >= close - 1) return std::nullopt;
            // The return must be the last statement.
            if (!(s[ret_at - 1]->is_punct(";") || s[ret_at - 1]->is_punct("{") || s[ret_at - 1]->is_punct("}"))) return std::nullopt;
            inner_end = s[ret_at]->offset;
            ret_from = s[ret_at + 1]->offset;
            ret_to = s[close - 1]->offset;
        }

        // Locals of the worker that clash with caller identifiers get fresh names.
        std::unordered_set<std::string_view> caller_ids;
        const auto caller_toks = lex(caller_text, c_.language);
        for (const auto& t : caller_toks) {
            if (t.kind == TokenKind::identifier) caller_ids.insert(t.text);
        }
        std::unordered_set<std::string_view> worker_ids;
        for (const auto& t : toks) {
            if (t.kind == TokenKind::identifier) worker_ids.insert(t.text);
        }
        static const std::unordered_set<std::string_view> not_types{"return", "case", "goto", "else", "do", "sizeof",
                                                                     "delete", "throw", "new"};
        std::unordered_map<std::string, std::string> renames;
        for (std::size_t k = open + 1; k + 1 < close; ++k) {
            const Token& t = *s[k];
            if (t.kind != TokenKind::identifier) continue;
            const Token& prev = *s[k - 1];
            const Token& next = *s[k + 1];
            const bool after_type = prev.kind == TokenKind::identifier || prev.is_punct("*") || prev.is_punct("&") ||
                                    (prev.kind == TokenKind::keyword && !not_types.contains(prev.text));
            const bool declarator_end = next.is_punct("=") || next.is_punct(";") || next.is_punct("[") || next.is_punct(",");
            if (!after_type || !declarator_end) continue;
            const std::string name(t.text);
            if (std::find(callee.params.begin(), callee.params.end(), name) != callee.params.end()) continue;
            if (!caller_ids.contains(t.text) || renames.contains(name)) continue;
            for (int n = 1;; ++n) {
                std::string fresh = name + "_" + std::to_string(n);
                if (!caller_ids.contains(fresh) && !worker_ids.contains(fresh)) {
                    renames.emplace(name, std::move(fresh));
                    break;
                }
            }
        }

        auto rewrite = [&](std::size_t from, std::size_t to) {
            std::string out;
            std::size_t pos = from;
            const Token* prev_sig = nullptr;
            for (const auto& t : toks) {
                if (t.offset < from || t.end() > to) {
                    if (!t.is_trivia() && t.offset < from) prev_sig = &t;
                    continue;
                }
                const bool member = prev_sig && (prev_sig->is_punct(".") || prev_sig->is_punct("->"));
                if (!t.is_trivia()) prev_sig = &t;
                if (t.kind != TokenKind::identifier || member) continue;
                const std::string name(t.text);
                std::string replacement;
                if (auto r = renames.find(name); r != renames.end()) {
                    replacement = r->second;
                } else if (auto p = std::find(callee.params.begin(), callee.params.end(), name); p != callee.params.end()) {
                    const auto& arg = cs.args[static_cast<std::size_t>(p - callee.params.begin())];
                    const bool simple = lex_is_atom(arg);
                    replacement = simple ? arg : "(" + arg + ")";
                } else {
                    continue;
                }
                out.append(worker_text, pos, t.offset - pos);
                out += replacement;
                pos = t.end();
            }
            out.append(worker_text, pos, to - pos);
            return out;
        };

        const std::size_t inner_begin = s[open]->end();
        const std::string body = rewrite(inner_begin, inner_end);
        const std::string indent = line_indent(caller_text, cs.stmt_begin);
        if (cs.form == Callsite::Form::statement) {
            const std::string lines = reindent(body, indent + "    ");
            return "{\n" + lines + (lines.empty() ? "" : "\n") + indent + "}";
        }
        const std::string lines = reindent(body, indent);
        const std::string expr = reindent(rewrite(ret_from, ret_to), "");
        std::string stmt = lines.empty() ? std::string() : lines.substr(indent.size()) + "\n" + indent;
        stmt += cs.lhs + " = " + expr + ";";
        return stmt;
    }

    static std::string line_indent(const std::string& text, std::size_t at) {
        const auto nl = text.rfind('\n', at == 0 ? 0 : at - 1);
        const std::size_t start = nl == std::string::npos ? 0 : nl + 1;
        std::size_t end = start;
        while (end < at && (text[end] == ' ' || text[end] == '\t')) ++end;
        return text.substr(start, end - start);
    }

    // Non-blank lines of `body`, common leading indentation replaced by `indent`, joined by
    // newlines; no leading or trailing newline.
    static std::string reindent(const std::string& body, const std::string& indent) {
        std::vector<std::string> lines;
        std::size_t pos = 0;
        while (pos <= body.size()) {
            const auto nl = body.find('\n', pos);
            std::string line = body.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
            while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.pop_back();
            if (!line.empty()) lines.push_back(std::move(line));
            if (nl == std::string::npos) break;
            pos = nl + 1;
        }
        std::size_t common = std::string::npos;
        for (const auto& l : lines) common = std::min(common, l.find_first_not_of(" \t"));
        std::string out;
        for (const auto& l : lines) {
            if (!out.empty()) out += '\n';
            out += indent;
            out += l.substr(common);
        }
        return out;
    }

    bool lex_is_atom(const std::string& arg) const {
        try {
            const auto t = lex(arg, c_.language);
            std::size_t n = 0;
            for (const auto& k : t) {
                if (!k.is_trivia()) ++n;
            }
            return n == 1;
        } catch (const SyntaxError&) {
            return false;
        }
    }

    const RawTestCase& c_;
    std::unordered_map<std::string, const FunctionSpan*> by_name_;
    std::string prelude_;
};

}  // namespace

ExtractResult extract_samples(const RawTestCase& c) {
    return Extractor(c).run();
}

CorpusSplit select_split(const std::vector<JulietSample>& samples, SplitName split) {
    CorpusSplit out;
    out.name = split;
    for (const auto& s : samples) {
        if (split == SplitName::pilot && s.variant != 1) continue;
        out.samples.push_back(s.sample);
    }
    return out;
}

JulietCorpus build_juliet_corpus(const fs::path& root, const JulietOptions& options) {
    const ScanResult scan = scan_juliet(root);
    JulietCorpus out;
    out.warnings = scan.warnings;
    out.inter_procedural = scan.inter_procedural;
    out.exclusions = scan.skipped;

    struct Slot {
        std::vector<JulietSample> samples;
        std::vector<Exclusion> excluded;
    };
    std::vector<Slot> slots(scan.cases.size());
    parallel_for(scan.cases.size(), options.workers, [&](std::size_t i) {
        const RawTestCase& c = scan.cases[i];
        const std::string stem = c.file_path.stem().string();
        const auto extracted = extract_samples(c);
        for (const auto& [fn, reason] : extracted.skipped) {
            slots[i].excluded.push_back({stem + "/" + fn, reason, c.cwe, {}});
        }
        for (const auto& e : extracted.samples) {
            const std::string id = stem + "/" + e.entry;
            try {
                JulietSample js;
                js.variant = c.variant;
                js.sample.id = id;
                js.sample.benchmark = Benchmark::juliet;
                js.sample.language = c.language;
                js.sample.cwe_truth = e.cwe;
                js.sample.category = c.cwe;
                js.sample.vulnerable = e.vulnerable;
                js.sample.source = sanitize(e.source, c.language, options.sanitize);
                slots[i].samples.push_back(std::move(js));
            } catch (const SyntaxError& err) {
                slots[i].excluded.push_back({id, "sanitize-failed", c.cwe, err.what()});
            }
        }
    });
    for (auto& slot : slots) {
        for (auto& s : slot.samples) out.samples.push_back(std::move(s));
        for (auto& e : slot.excluded) out.exclusions.push_back(std::move(e));
    }
    std::sort(out.samples.begin(), out.samples.end(),
              [](const JulietSample& a, const JulietSample& b) { return a.sample.id < b.sample.id; });
    std::sort(out.exclusions.begin(), out.exclusions.end(), [](const Exclusion& a, const Exclusion& b) { return a.id < b.id; });
    return out;
}

}  // namespace repgate::corpus
