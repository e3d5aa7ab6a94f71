#include "repgate/ast.hpp"

#include "repgate/parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace repgate::ast {

namespace {

bool is_prunable_key(std::string_view key) {
    return key == "id_resolved" || key == "id_type";
}

// Drops prunable keys and null/empty values at any depth. Returns false if nothing is left.
bool prune_json(nlohmann::json& j) {
    if (j.is_null()) return false;
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end();) {
            if (is_prunable_key(it.key()) || !prune_json(it.value())) {
                it = j.erase(it);
            } else {
                ++it;
            }
        }
        return !j.empty();
    }
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size();) {
            if (!prune_json(j[i])) {
                j.erase(i);
            } else {
                ++i;
            }
        }
        return !j.empty();
    }
    return true;
}

void prune_meta(std::map<std::string, nlohmann::json>& meta) {
    for (auto it = meta.begin(); it != meta.end();) {
        if (is_prunable_key(it->first) || !prune_json(it->second)) {
            it = meta.erase(it);
        } else {
            ++it;
        }
    }
}

std::string_view strip_ref(std::string_view kind) {
    return kind.substr(4);
}

bool is_ref(std::string_view kind) {
    return kind.starts_with("ref@");
}

// Appends the pruned form of `n` to `out` (zero, one or several nodes).
void prune_into(const GenericNode& n, std::vector<GenericNode>& out) {
    if (is_ref(n.kind)) {
        if (n.is_leaf()) {
            // A wrapper with nothing to splice: keep the text under the wrapped kind.
            GenericNode l = n;
            l.kind = std::string(strip_ref(n.kind));
            if (l.kind.empty()) l.kind = "ref";
            l.children.clear();
            prune_meta(l.meta);
            for (const auto& c : n.children) prune_into(c, l.children);
            out.push_back(std::move(l));
            return;
        }
        for (const auto& c : n.children) prune_into(c, out);
        return;
    }
    GenericNode p;
    p.kind = n.kind;
    p.text = n.text;
    p.meta = n.meta;
    prune_meta(p.meta);
    for (const auto& c : n.children) prune_into(c, p.children);
    const bool emptied = !n.children.empty() && p.children.empty() && !p.is_leaf();
    if (emptied) return;
    out.push_back(std::move(p));
}

bool is_atom_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u > 0x20 && c != '(' && c != ')' && c != '"' && c != ':' && u != 0x7f;
}

bool is_atom(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), is_atom_char);
}

void escape_into(std::string& out, std::string_view s) {
    out += '"';
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned char>(c));
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void serialize_into(std::string& out, const GenericNode& n) {
    out += '(';
    if (is_atom(n.kind)) {
        out += n.kind;
    } else {
        escape_into(out, n.kind);
    }
    if (n.text) {
        out += ' ';
        escape_into(out, *n.text);
    }
    for (const auto& [key, value] : n.meta) {
        out += " :";
        if (is_atom(key)) {
            out += key;
        } else {
            escape_into(out, key);
        }
        out += ' ';
        out += value.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    }
    for (const auto& c : n.children) {
        out += ' ';
        serialize_into(out, c);
    }
    out += ')';
}

class SexprReader {
public:
    explicit SexprReader(std::string_view s) : s_(s) {}

    GenericNode read_document() {
        skip_ws();
        GenericNode n = read_node();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SyntaxError({line, col, pos_}, msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\n' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string read_atom() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && is_atom_char(s_[pos_])) ++pos_;
        if (pos_ == start) fail("expected a name");
        return std::string(s_.substr(start, pos_ - start));
    }

    static void append_utf8(std::string& out, unsigned cp) {
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xc0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3f));
        } else {
            out += static_cast<char>(0xe0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
            out += static_cast<char>(0x80 | (cp & 0x3f));
        }
    }

    std::string read_string() {
        expect('"');
        std::string out;
        for (;;) {
            if (pos_ >= s_.size()) fail("unterminated string");
            const char c = s_[pos_++];
            if (c == '"') return out;
            if (c != '\\') {
                out += c;
                continue;
            }
            if (pos_ >= s_.size()) fail("unterminated escape");
            const char e = s_[pos_++];
            switch (e) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case 'u': {
                    if (pos_ + 4 > s_.size()) fail("short \\u escape");
                    unsigned cp = 0;
                    for (int k = 0; k < 4; ++k) {
                        const char h = s_[pos_++];
                        cp <<= 4;
                        if (h >= '0' && h <= '9') cp |= static_cast<unsigned>(h - '0');
                        else if (h >= 'a' && h <= 'f') cp |= static_cast<unsigned>(h - 'a' + 10);
                        else if (h >= 'A' && h <= 'F') cp |= static_cast<unsigned>(h - 'A' + 10);
                        else fail("bad \\u escape");
                    }
                    append_utf8(out, cp);
                    break;
                }
                default: fail("unknown escape");
            }
        }
    }

    // Extent of one JSON value starting at pos_.
    nlohmann::json read_json() {
        const std::size_t start = pos_;
        const char c = peek();
        if (c == '{' || c == '[') {
            int depth = 0;
            bool in_str = false;
            for (; pos_ < s_.size(); ++pos_) {
                const char d = s_[pos_];
                if (in_str) {
                    if (d == '\\') ++pos_;
                    else if (d == '"') in_str = false;
                    continue;
                }
                if (d == '"') in_str = true;
                else if (d == '{' || d == '[') ++depth;
                else if ((d == '}' || d == ']') && --depth == 0) {
                    ++pos_;
                    break;
                }
            }
        } else if (c == '"') {
            ++pos_;
            for (; pos_ < s_.size() && s_[pos_] != '"'; ++pos_) {
                if (s_[pos_] == '\\') ++pos_;
            }
            ++pos_;
        } else {
            while (pos_ < s_.size() && s_[pos_] != ')' && s_[pos_] != ' ' && s_[pos_] != '\n') ++pos_;
        }
        const auto slice = s_.substr(start, std::min(pos_, s_.size()) - start);
        auto j = nlohmann::json::parse(slice, nullptr, false);
        if (j.is_discarded()) {
            pos_ = start;
            fail("malformed meta value");
        }
        return j;
    }

    GenericNode read_node() {
        expect('(');
        GenericNode n;
        n.kind = peek() == '"' ? read_string() : read_atom();
        bool first = true;
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c == ')') {
                ++pos_;
                return n;
            }
            if (c == '"') {
                if (!first || n.text) fail("text must follow the kind");
                n.text = read_string();
            } else if (c == ':') {
                ++pos_;
                std::string key = peek() == '"' ? read_string() : read_atom();
                skip_ws();
                n.meta[std::move(key)] = read_json();
            } else if (c == '(') {
                n.children.push_back(read_node());
            } else {
                fail(c == '\0' ? "unexpected end of input" : "unexpected character");
            }
            first = false;
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

void collect(const GenericNode& n, std::vector<std::string>& out, bool content_only) {
    if (n.text && (!content_only || is_content_kind(n.kind))) out.push_back(*n.text);
    for (const auto& c : n.children) collect(c, out, content_only);
}

}  // namespace

bool is_content_kind(std::string_view kind) noexcept {
    return kind == "identifier" || kind == "number" || kind == "string" || kind == "char" || kind == "header";
}

GenericNode prune(const GenericNode& node) {
    std::vector<GenericNode> out;
    prune_into(node, out);
    if (out.size() == 1) return std::move(out.front());
    if (!is_ref(node.kind)) {
        // Root emptied by pruning; keep it as the (childless) result.
        GenericNode root = node;
        root.children.clear();
        prune_meta(root.meta);
        return root;
    }
    GenericNode root;
    root.kind = std::string(strip_ref(node.kind));
    if (root.kind.empty()) root.kind = "ref";
    root.children = std::move(out);
    return root;
}

std::string serialize(const GenericNode& node) {
    std::string out;
    serialize_into(out, node);
    return out;
}

GenericNode parse_sexpr(std::string_view text) {
    return SexprReader(text).read_document();
}

GenericNode from_json_dump(const nlohmann::json& j) {
    if (!j.is_object()) throw DataError("AST dump: node must be an object");
    GenericNode n;
    const auto kind = j.find("kind");
    if (kind == j.end() || !kind->is_string()) throw DataError("AST dump: node without a string `kind`");
    n.kind = kind->get<std::string>();
    if (const auto t = j.find("text"); t != j.end() && !t->is_null()) {
        if (!t->is_string()) throw DataError("AST dump: `text` of " + n.kind + " is not a string");
        n.text = t->get<std::string>();
    }
    if (const auto m = j.find("meta"); m != j.end() && !m->is_null()) {
        if (!m->is_object()) throw DataError("AST dump: `meta` of " + n.kind + " is not an object");
        for (auto it = m->begin(); it != m->end(); ++it) n.meta.emplace(it.key(), it.value());
    }
    if (const auto c = j.find("children"); c != j.end() && !c->is_null()) {
        if (!c->is_array()) throw DataError("AST dump: `children` of " + n.kind + " is not an array");
        n.children.reserve(c->size());
        for (const auto& child : *c) n.children.push_back(from_json_dump(child));
    }
    return n;
}

nlohmann::json to_json_dump(const GenericNode& node) {
    nlohmann::json j = nlohmann::json::object();
    j["kind"] = node.kind;
    if (node.text) j["text"] = *node.text;
    if (!node.meta.empty()) {
        nlohmann::json m = nlohmann::json::object();
        for (const auto& [k, v] : node.meta) m[k] = v;
        j["meta"] = std::move(m);
    }
    if (!node.children.empty()) {
        nlohmann::json c = nlohmann::json::array();
        for (const auto& child : node.children) c.push_back(to_json_dump(child));
        j["children"] = std::move(c);
    }
    return j;
}

std::vector<std::string> content_leaves(const GenericNode& node) {
    std::vector<std::string> out;
    collect(node, out, true);
    return out;
}

std::vector<std::string> leaf_texts(const GenericNode& node) {
    std::vector<std::string> out;
    collect(node, out, false);
    return out;
}

std::size_t node_count(const GenericNode& node) noexcept {
    std::size_t n = 1;
    for (const auto& c : node.children) n += node_count(c);
    return n;
}

double EncodeResult::mean_size_ratio() const noexcept {
    if (encoded.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& e : encoded) sum += e.size_ratio;
    return sum / static_cast<double>(encoded.size());
}

std::string encode_source(std::string_view source, Language lang) {
    return serialize(prune(parse_generic(source, lang)));
}

EncodeResult encode_corpus(const std::vector<CodeSample>& samples, const EncodeOptions& options) {
    struct Slot {
        std::optional<EncodedSample> ok;
        std::optional<Exclusion> failed;
    };
    std::vector<Slot> slots(samples.size());

    parallel_for(samples.size(), options.workers, [&](std::size_t i) {
        const CodeSample& s = samples[i];
        try {
            const auto ext = options.external.find(s.id);
            const GenericNode tree = ext != options.external.end() ? ext->second : parse_generic(s.source, s.language);
            EncodedSample e;
            e.sample_id = s.id;
            e.ast_text = serialize(prune(tree));
            e.size_ratio = s.source.empty() ? 0.0
                                            : static_cast<double>(e.ast_text.size()) / static_cast<double>(s.source.size());
            slots[i].ok = std::move(e);
        } catch (const SyntaxError& err) {
            slots[i].failed = Exclusion{s.id, std::string(kConversionFailed), s.category, err.what()};
        }
    });

    EncodeResult r;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto& tally = r.per_cwe[samples[i].category];
        if (slots[i].ok) {
            ++tally.retained;
            r.encoded.push_back(std::move(*slots[i].ok));
        } else {
            ++tally.excluded;
            r.exclusions.push_back(std::move(*slots[i].failed));
        }
    }
    std::sort(r.encoded.begin(), r.encoded.end(),
              [](const EncodedSample& a, const EncodedSample& b) { return a.sample_id < b.sample_id; });
    std::sort(r.exclusions.begin(), r.exclusions.end(), [](const Exclusion& a, const Exclusion& b) { return a.id < b.id; });
    return r;
}

}  // namespace repgate::ast
