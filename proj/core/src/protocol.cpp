#include "repgate/protocol.hpp"

#include "repgate/error.hpp"

#include <nlohmann/json.hpp>

namespace repgate::protocol {

const std::string_view kSystemPrompt =
    "You are an expert static analysis tool. Your task is to identify security vulnerabilities in the provided "
    "source code snippet. Your response MUST adhere strictly to the following JSON format. Do not include any "
    "reasoning, explanations, or text outside of the JSON object.\n"
    "\n"
    "JSON format:\n"
    "{ \"found\": <boolean>, \"cwe\": \"<string>\" }\n"
    "\n"
    "Instructions: (1) \"found\": Use true if a vulnerability is found, otherwise false. (2) \"cwe\": If \"found\" "
    "is true, provide the CWE ID (e.g., \"CWE-89\"). If false, use \"N/A\".";

std::string PromptBundle::user_message() const {
    std::string out;
    out.reserve(preamble.size() + 2 + payload.size());
    out += preamble;
    out += "\n\n";
    out += payload;
    return out;
}

PromptBundle build_prompt(const CodeSample& sample, Representation representation, const Preambles& preambles) {
    PromptBundle b;
    b.system = std::string(kSystemPrompt);
    b.preamble = preambles.get(representation);
    if (representation == Representation::ast) {
        if (!sample.ast) throw DataError("sample " + sample.id + " has no AST payload");
        b.payload = *sample.ast;
    } else {
        b.payload = sample.source;
    }
    return b;
}

std::string_view to_string(ParseStatus s) {
    switch (s) {
        case ParseStatus::ok: return "ok";
        case ParseStatus::recovered: return "recovered";
        case ParseStatus::failed: return "failed";
    }
    return "failed";
}

ParseStatus parse_status(std::string_view s) {
    if (s == "ok") return ParseStatus::ok;
    if (s == "recovered") return ParseStatus::recovered;
    if (s == "failed") return ParseStatus::failed;
    throw DataError("unknown parse_status '" + std::string(s) + "'");
}

namespace {

bool accept(std::string_view text, ModelVerdict& v) {
    const auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return false;
    const auto found = j.find("found");
    const auto cwe = j.find("cwe");
    if (found == j.end() || !found->is_boolean() || cwe == j.end() || !cwe->is_string()) return false;
    v.found = found->get<bool>();
    v.cwe = normalize_cwe(cwe->get<std::string>());
    return true;
}

// First `{...}` whose braces balance outside string literals.
std::string_view first_balanced_object(std::string_view s) {
    const auto open = s.find('{');
    if (open == std::string_view::npos) return {};
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = open; i < s.size(); ++i) {
        const char c = s[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        else if (c == '{') ++depth;
        else if (c == '}' && --depth == 0) return s.substr(open, i - open + 1);
    }
    return {};
}

}  // namespace

ModelVerdict parse_verdict(std::string_view raw) {
    ModelVerdict v;
    v.raw = std::string(raw);
    if (accept(raw, v)) {
        v.status = ParseStatus::ok;
        return v;
    }
    const auto candidate = first_balanced_object(raw);
    if (!candidate.empty() && accept(candidate, v)) {
        v.status = ParseStatus::recovered;
        return v;
    }
    v.found.reset();
    v.cwe.reset();
    v.status = ParseStatus::failed;
    return v;
}

std::string format_verdict(bool found, std::string_view cwe) {
    return std::string("{\"found\": ") + (found ? "true" : "false") + ", \"cwe\": \"" + normalize_cwe(cwe) + "\"}";
}

}  // namespace repgate::protocol
