#pragma once

#include "repgate/prediction.hpp"
#include "repgate/types.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace repgate::metrics {

/// Exact num/den with den > 0, kept unreduced so `374/1325` reads back as counted.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    [[nodiscard]] double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

    /// Value equality (1/2 == 2/4).
    friend bool operator==(const Ratio& a, const Ratio& b) noexcept { return a.num * b.den == b.num * a.den; }
    friend auto operator<=>(const Ratio& a, const Ratio& b) noexcept { return a.num * b.den <=> b.num * a.den; }
};

/// nullopt when den == 0.
[[nodiscard]] std::optional<Ratio> ratio(std::int64_t num, std::int64_t den) noexcept;

/// a - b, kept over the shared denominator when there is one so -374/1325 stays -374/1325.
[[nodiscard]] Ratio subtract(const Ratio& a, const Ratio& b) noexcept;

/// Fixed-point rendering rounded half-to-even on the exact value: -2/32 -> "-0.062".
[[nodiscard]] std::string format_fixed(const Ratio& r, int decimals);
/// "-" for an absent value.
[[nodiscard]] std::string format_fixed(const std::optional<Ratio>& r, int decimals);
/// Signed rendering, "+0.375" / "-0.154" / "0.000".
[[nodiscard]] std::string format_signed(const Ratio& r, int decimals);

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    [[nodiscard]] std::int64_t total() const noexcept { return tp + tn + fp + fn; }
    [[nodiscard]] std::int64_t positives() const noexcept { return tp + fn; }
    [[nodiscard]] std::int64_t negatives() const noexcept { return tn + fp; }

    ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept {
        tp += o.tp;
        tn += o.tn;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Absent fields have a zero denominator.
struct MetricSet {
    std::optional<Ratio> f1;
    std::optional<Ratio> recall;
    std::optional<Ratio> precision;
    std::optional<Ratio> accuracy;
    std::optional<Ratio> fpr;
};

[[nodiscard]] MetricSet metric_set(const ConfusionCounts& c) noexcept;

using Labels = std::unordered_map<std::string, Label>;

[[nodiscard]] Labels labels_of(const std::vector<CodeSample>& samples);

struct Scored {
    ConfusionCounts counts;
    std::vector<std::string> failed_ids;  // parse failures, excluded from counts
};

/// Binary scoring: positive iff found=true, predicted CWE ignored. Throws DataError for ids
/// without a label.
[[nodiscard]] Scored confusion(const std::vector<Prediction>& preds, const Labels& labels);

struct CweResult {
    ConfusionCounts counts;
    MetricSet metrics;
    std::size_t failed = 0;
};

using PerCwe = std::map<std::string, CweResult, CweLess>;

/// Partition by ground-truth category.
[[nodiscard]] PerCwe per_cwe(const std::vector<Prediction>& preds, const Labels& labels);

/// fpr(b) - fpr(a) over the same negatives; DataError when the negative counts differ,
/// nullopt when there are none.
[[nodiscard]] std::optional<Ratio> delta_fpr(const ConfusionCounts& a, const ConfusionCounts& b);

enum class McNemarMethod { exact, approx };

[[nodiscard]] std::string_view to_string(McNemarMethod m);

struct McNemarResult {
    std::int64_t b = 0;  // A correct, B wrong
    std::int64_t c = 0;  // A wrong, B correct
    double p_value = 1.0;
    double log10_p = 0.0;
    McNemarMethod method = McNemarMethod::exact;
};

inline constexpr std::int64_t kMcNemarExactLimit = 1000;

/// Exact two-sided binomial (log domain) up to b+c = 1000, continuity-corrected chi-square above.
[[nodiscard]] McNemarResult mcnemar(std::int64_t b, std::int64_t c);
[[nodiscard]] McNemarResult mcnemar(const std::vector<std::pair<bool, bool>>& paired);

enum class Tier { H, M, L, exception };

[[nodiscard]] std::string_view to_string(Tier t);

struct DeltaTier {
    double delta = 0.0;
    Tier tier = Tier::L;
};

/// H: d <= -0.3, M: -0.3 < d <= -0.1, L: -0.1 < d <= 0, exception: d > 0.
[[nodiscard]] DeltaTier tier_classify(double delta) noexcept;
/// Exact thresholds on a rational delta.
[[nodiscard]] Tier tier_of(const Ratio& delta) noexcept;

// --- stratification -----------------------------------------------------------------------

struct Stratum {
    std::string name;
    std::vector<std::string> needles;  // matches when any substring occurs in the payload
};

struct NegativeSample {
    std::string id;
    std::string payload;
};

/// Predicted positives per sample id for one condition; ids absent from the map are unscored.
struct ConditionVerdicts {
    std::string name;
    std::unordered_map<std::string, bool> found;
};

[[nodiscard]] ConditionVerdicts verdicts_of(std::string name, const std::vector<Prediction>& preds);

struct StratumRow {
    std::string name;
    std::int64_t n = 0;
    std::vector<std::optional<Ratio>> fpr;  // one per condition
    std::optional<Ratio> delta;             // last condition minus the one before it
};

struct StrataTable {
    std::vector<std::string> conditions;
    std::vector<StratumRow> rows;
    std::int64_t unmatched = 0;
    std::vector<std::string> warnings;  // samples hit by more than one matcher
};

/// First matching stratum wins; overlaps are reported as warnings.
[[nodiscard]] StrataTable stratified_fpr(const std::vector<NegativeSample>& negatives, const std::vector<Stratum>& strata,
                                         const std::vector<ConditionVerdicts>& conditions);

// --- overlap -------------------------------------------------------------------------------

struct OverlapGroup {
    std::vector<std::string> cwes;
    std::int64_t samples = 0;
    std::optional<Ratio> share;
};

struct OverlapResult {
    OverlapGroup overlapping;
    OverlapGroup non_overlapping;
};

/// Splits evaluation categories by whether the training set covers them. A training CWE also
/// covers its parent through `parents` (child -> parent).
[[nodiscard]] OverlapResult overlap_partition(const std::map<std::string, std::int64_t, CweLess>& eval_counts,
                                              const std::set<std::string>& training_cwes,
                                              const std::map<std::string, std::string>& parents = {});

// --- JSON ------------------------------------------------------------------------------------

[[nodiscard]] nlohmann::ordered_json to_json(const Ratio& r);
[[nodiscard]] nlohmann::ordered_json to_json(const std::optional<Ratio>& r);
[[nodiscard]] nlohmann::ordered_json to_json(const ConfusionCounts& c);
[[nodiscard]] nlohmann::ordered_json to_json(const MetricSet& m);
[[nodiscard]] nlohmann::ordered_json to_json(const McNemarResult& r);
[[nodiscard]] std::optional<Ratio> ratio_from_json(const nlohmann::json& j);
[[nodiscard]] ConfusionCounts counts_from_json(const nlohmann::json& j);

}  // namespace repgate::metrics
