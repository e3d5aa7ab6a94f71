#pragma once

#include "repgate/types.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace repgate::protocol {

/// System prompt shared by both representations. Byte-exact; tests pin its SHA-256.
extern const std::string_view kSystemPrompt;

inline constexpr std::string_view kTextPreamble = "The following input is the raw source code of a function.";
inline constexpr std::string_view kAstPreamble = "The following input is a pruned abstract syntax tree of a function.";

struct Preambles {
    std::string text{kTextPreamble};
    std::string ast{kAstPreamble};

    [[nodiscard]] const std::string& get(Representation r) const noexcept { return r == Representation::ast ? ast : text; }
};

struct PromptBundle {
    std::string system;
    std::string preamble;
    std::string payload;

    /// preamble + "\n\n" + payload
    [[nodiscard]] std::string user_message() const;
};

/// Throws DataError when `representation` is ast and the sample has no AST.
[[nodiscard]] PromptBundle build_prompt(const CodeSample& sample, Representation representation,
                                        const Preambles& preambles = {});

enum class ParseStatus { ok, recovered, failed };

[[nodiscard]] std::string_view to_string(ParseStatus s);
[[nodiscard]] ParseStatus parse_status(std::string_view s);  // DataError on unknown names

struct ModelVerdict {
    std::optional<bool> found;         // absent iff status == failed
    std::optional<std::string> cwe;    // normalized; absent iff status == failed
    ParseStatus status = ParseStatus::failed;
    std::string raw;

    friend bool operator==(const ModelVerdict&, const ModelVerdict&) = default;
};

/// Strict parse of `{"found": <bool>, "cwe": <string>}` -> ok. Otherwise the first balanced
/// `{...}` in the text is tried -> recovered. Otherwise failed. Never throws.
[[nodiscard]] ModelVerdict parse_verdict(std::string_view raw);

/// `{"found": true, "cwe": "CWE-89"}`; the cwe is normalized first.
[[nodiscard]] std::string format_verdict(bool found, std::string_view cwe);

}  // namespace repgate::protocol
