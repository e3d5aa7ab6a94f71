#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace repgate {

enum class Benchmark { juliet, owasp_java, benchmark_python };
enum class Language { c, cpp, java, python };

/// Input format handed to a detector: raw source or linearized pruned AST.
enum class Representation { text, ast };

inline constexpr std::string_view kNoCwe = "N/A";

[[nodiscard]] std::string_view to_string(Benchmark b);
[[nodiscard]] std::string_view to_string(Language l);
[[nodiscard]] std::string_view to_string(Representation r);

// Parsers throw DataError on unknown names.
[[nodiscard]] Benchmark parse_benchmark(std::string_view s);
[[nodiscard]] Language parse_language(std::string_view s);
[[nodiscard]] Representation parse_representation(std::string_view s);

/// Normalizes `cwe-89`, `CWE89`, `CWE_089`, `89`, `CWE-89: SQLi` to `CWE-89`.
/// Anything without a recognizable CWE number (including `n/a`, `none`, "") maps to "N/A".
/// Idempotent.
[[nodiscard]] std::string normalize_cwe(std::string_view raw);

/// Numeric part of a normalized CWE id, or -1 for "N/A".
[[nodiscard]] int cwe_number(std::string_view cwe);

/// Orders CWE ids numerically ("CWE-22" < "CWE-78" < "CWE-327"); "N/A" sorts last.
struct CweLess {
    bool operator()(const std::string& a, const std::string& b) const;
};

/// One labeled code unit.
///
/// `cwe_truth` is the vulnerability label ("N/A" on negatives). `category` is the benchmark
/// category the sample belongs to and is set for negatives too; per-CWE disaggregation
/// partitions on it.
struct CodeSample {
    std::string id;
    Benchmark benchmark = Benchmark::juliet;
    Language language = Language::c;
    std::string cwe_truth{kNoCwe};
    std::string category{kNoCwe};
    bool vulnerable = false;
    std::string source;
    std::optional<std::string> ast;

    friend bool operator==(const CodeSample&, const CodeSample&) = default;
};

/// A sample left out of a split or an encoding pass, with the reason.
struct Exclusion {
    std::string id;
    std::string reason;
    std::string category{kNoCwe};
    std::string detail;  // free-form context, e.g. the parser message

    friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

enum class SplitName { pilot, full };

[[nodiscard]] std::string_view to_string(SplitName s);
[[nodiscard]] SplitName parse_split(std::string_view s);

struct CorpusSplit {
    SplitName name = SplitName::full;
    std::vector<CodeSample> samples;
    std::vector<Exclusion> exclusions;
};

/// Per-category retained/excluded counts.
struct CategoryTally {
    std::size_t retained = 0;
    std::size_t excluded = 0;

    [[nodiscard]] std::size_t total() const noexcept { return retained + excluded; }
    /// excluded / total, 0 on an empty category.
    [[nodiscard]] double exclusion_rate() const noexcept;

    friend bool operator==(const CategoryTally&, const CategoryTally&) = default;
};

using ExclusionTable = std::map<std::string, CategoryTally, CweLess>;

[[nodiscard]] ExclusionTable tally_exclusions(const std::vector<CodeSample>& retained,
                                              const std::vector<Exclusion>& excluded);

/// Ground truth needed for scoring one sample.
struct Label {
    bool vulnerable = false;
    std::string category{kNoCwe};
};

}  // namespace repgate
