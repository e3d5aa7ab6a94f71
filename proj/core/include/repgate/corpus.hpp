#pragma once

#include "repgate/protocol.hpp"
#include "repgate/sanitize.hpp"
#include "repgate/types.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace repgate::corpus {

namespace fs = std::filesystem;

// --- Juliet ------------------------------------------------------------------------------

enum class FunctionKind { bad, good, helper };

[[nodiscard]] std::string_view to_string(FunctionKind k);

/// `..._bad` -> bad, `..._good*` -> good, anything else -> helper.
[[nodiscard]] FunctionKind classify_function(std::string_view name);

struct FunctionSpan {
    std::string name;
    FunctionKind kind = FunctionKind::helper;
    std::size_t begin = 0;       // start of the definition (return type, qualifiers)
    std::size_t body_begin = 0;  // offset of `{`
    std::size_t end = 0;         // one past the closing `}`
    std::vector<std::string> params;
};

struct RawTestCase {
    fs::path file_path;
    std::string cwe;  // normalized, e.g. CWE-78
    int variant = 1;
    Language language = Language::c;
    std::string source;
    std::vector<FunctionSpan> functions;
};

struct ScanResult {
    std::vector<RawTestCase> cases;    // sorted by path
    std::vector<Exclusion> skipped;    // id = relative path
    std::vector<std::string> warnings;
    std::size_t inter_procedural = 0;
};

/// Walks `root` recursively for Juliet `.c`/`.cpp` test cases. Multi-file cases (`_54a.c`,
/// `_81_bad.cpp`, ...) are skipped as "inter-procedural"; names without a `CWE<n>_` prefix are
/// skipped as "unparseable filename"; names without a two-digit variant become variant 1 with
/// a warning. Throws DataError when `root` is not a readable directory.
[[nodiscard]] ScanResult scan_juliet(const fs::path& root);

/// Locates top-level function definitions (namespaces are looked through).
[[nodiscard]] std::vector<FunctionSpan> find_functions(std::string_view source, Language lang);

struct ExtractedSample {
    std::string entry;  // function the sample is built from
    std::string source;
    bool vulnerable = false;
    std::string cwe{kNoCwe};
};

struct ExtractResult {
    std::vector<ExtractedSample> samples;
    std::vector<std::pair<std::string, std::string>> skipped;  // (function, reason)
};

/// Builds one self-contained sample per bad/good entry. A single worker is inlined at its call
/// site with positional parameter substitution; a wrapper that only calls several workers is
/// replaced by one sample per worker. Non-worker helpers that a sample calls are kept as
/// definitions ahead of it, after the file prelude.
[[nodiscard]] ExtractResult extract_samples(const RawTestCase& c);

struct JulietSample {
    CodeSample sample;
    int variant = 1;
};

/// pilot keeps variant-01 samples only; full keeps everything.
[[nodiscard]] CorpusSplit select_split(const std::vector<JulietSample>& samples, SplitName split);

struct JulietOptions {
    SanitizeOptions sanitize;
    std::size_t workers = 1;
};

struct JulietCorpus {
    std::vector<JulietSample> samples;  // sorted by id
    std::vector<Exclusion> exclusions;  // sorted by id
    std::vector<std::string> warnings;
    std::size_t inter_procedural = 0;
};

/// scan + extract + sanitize. Samples that fail sanitization are excluded, not fatal.
[[nodiscard]] JulietCorpus build_juliet_corpus(const fs::path& root, const JulietOptions& options = {});

// --- Benchmarks --------------------------------------------------------------------------

struct ExpectedRow {
    std::string test_name;
    std::string category;
    bool vulnerable = false;
    int cwe = 0;
};

/// Expected-results CSV: `#` comment lines, columns test name, category, boolean, CWE number.
/// Throws DataError (with line number) on malformed rows or booleans.
[[nodiscard]] std::vector<ExpectedRow> read_expected_csv(const fs::path& csv);

struct LoadReport {
    std::size_t total = 0;
    std::size_t negatives = 0;
};

/// One CodeSample per CSV row; the source comes from `<test name>.java` anywhere under
/// `sources_dir`. Missing sources are fatal.
[[nodiscard]] std::vector<CodeSample> load_owasp(const fs::path& sources_dir, const fs::path& expected_csv,
                                                 LoadReport* report = nullptr);

struct PythonBenchmark {
    CorpusSplit split;  // retained samples and exclusions
    ExclusionTable per_cwe;
};

/// Python benchmark with externally supplied AST conversion outcomes. Samples whose result is
/// false (or missing) are excluded with reason "ast-conversion-failed". Duplicate ids are fatal.
[[nodiscard]] PythonBenchmark load_python_benchmark(const fs::path& dir,
                                                    const std::vector<std::pair<std::string, bool>>& ast_results);

/// Same, converting each sample with the built-in parser and attaching the pruned AST.
[[nodiscard]] PythonBenchmark load_python_benchmark(const fs::path& dir, std::size_t workers = 1);

// --- JSONL -------------------------------------------------------------------------------

void write_corpus_jsonl(const fs::path& out, const std::vector<CodeSample>& samples);

/// Validates every record (label consistency, known enums). Throws DataError with line numbers.
[[nodiscard]] std::vector<CodeSample> read_corpus_jsonl(const fs::path& in);

struct SftReport {
    std::size_t written = 0;
    std::size_t skipped_missing_ast = 0;
};

/// `{"system","input","output"}` per sample; the file is created even when empty.
/// `input` is the user message build_prompt would send.
SftReport emit_sft_jsonl(const CorpusSplit& split, Representation representation, const fs::path& out,
                         const protocol::Preambles& preambles = {});

/// Label JSON, exactly `{"found": true, "cwe": "CWE-78"}` or `{"found": false, "cwe": "N/A"}`.
[[nodiscard]] std::string sft_target(const CodeSample& sample);

}  // namespace repgate::corpus
