#pragma once

#include "repgate/error.hpp"
#include "repgate/types.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace repgate::ast {

/// One node of the language-neutral tree.
///
/// Leaves carry `text` (identifier, literal, keyword or operator spelling); interior nodes
/// carry `children`. `meta` holds dumper annotations and is serialized in key order.
struct GenericNode {
    std::string kind;
    std::optional<std::string> text;
    std::vector<GenericNode> children;
    std::map<std::string, nlohmann::json> meta;

    [[nodiscard]] bool is_leaf() const noexcept { return text.has_value(); }

    friend bool operator==(const GenericNode&, const GenericNode&) = default;
};

inline GenericNode leaf(std::string kind, std::string text) {
    return GenericNode{std::move(kind), std::move(text), {}, {}};
}

inline GenericNode node(std::string kind, std::vector<GenericNode> children = {}) {
    return GenericNode{std::move(kind), std::nullopt, std::move(children), {}};
}

/// Leaf kinds whose text counts as identifier or literal content.
[[nodiscard]] bool is_content_kind(std::string_view kind) noexcept;

/// Parses `source` into a concrete-syntax-faithful tree: every identifier and literal token
/// appears exactly once as a leaf, in source order. Keywords and operators are kept as leaves
/// too; brackets, commas and semicolons are structural. Throws SyntaxError (the conversion
/// failure) with a position; empty input fails with "empty input".
[[nodiscard]] GenericNode parse_generic(std::string_view source, Language lang);

/// Removes dumper artifacts: `ref@*` wrappers are spliced into their parent, meta keys
/// `id_resolved`/`id_type` and null or emptied meta values are dropped, and interior nodes
/// emptied by the above are removed. Leaf texts and order survive. Idempotent.
[[nodiscard]] GenericNode prune(const GenericNode& node);

/// `(kind "text" :key <json> child...)`, deterministic, no trailing newline.
[[nodiscard]] std::string serialize(const GenericNode& node);

/// Inverse of serialize. Throws SyntaxError on malformed input.
[[nodiscard]] GenericNode parse_sexpr(std::string_view text);

/// Reads an external dumper tree: objects with `kind`, optional `text`, `children`, `meta`.
/// Throws DataError on shape errors.
[[nodiscard]] GenericNode from_json_dump(const nlohmann::json& j);
[[nodiscard]] nlohmann::json to_json_dump(const GenericNode& node);

/// Identifier/literal leaf texts in pre-order.
[[nodiscard]] std::vector<std::string> content_leaves(const GenericNode& node);

/// Every leaf text (keywords and operators included) in pre-order.
[[nodiscard]] std::vector<std::string> leaf_texts(const GenericNode& node);

[[nodiscard]] std::size_t node_count(const GenericNode& node) noexcept;

struct EncodedSample {
    std::string sample_id;
    std::string ast_text;
    double size_ratio = 0.0;  // |ast_text| / |source| in characters
};

struct EncodeOptions {
    std::size_t workers = 1;
    /// Pre-computed dumper trees by sample id; used instead of parse_generic when present.
    std::map<std::string, GenericNode> external;
};

struct EncodeResult {
    std::vector<EncodedSample> encoded;  // sorted by sample id
    std::vector<Exclusion> exclusions;   // sorted by sample id
    ExclusionTable per_cwe;

    [[nodiscard]] double mean_size_ratio() const noexcept;
};

inline constexpr std::string_view kConversionFailed = "ast-conversion-failed";

/// parse + prune + serialize per sample. Failures become exclusions with reason
/// "ast-conversion-failed" and the parser message as detail.
[[nodiscard]] EncodeResult encode_corpus(const std::vector<CodeSample>& samples, const EncodeOptions& options = {});

/// Convenience for a single sample's AST text.
[[nodiscard]] std::string encode_source(std::string_view source, Language lang);

}  // namespace repgate::ast
