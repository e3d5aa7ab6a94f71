#pragma once

#include "repgate/metrics.hpp"
#include "repgate/prediction.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace repgate::gate {

struct PairedPrediction {
    std::string sample_id;
    bool text_found = false;
    bool ast_found = false;
    bool vulnerable = false;
    std::string text_cwe{kNoCwe};
    std::string ast_cwe{kNoCwe};
};

struct PairResult {
    std::vector<PairedPrediction> pairs;  // sorted by id
    std::vector<Exclusion> excluded;      // reasons: missing-ast, missing-text, parse-failed
    std::size_t parse_failures = 0;
};

/// Joins text and AST predictions on sample id. A parse failure on either side removes the
/// sample from both. Throws DataError when no id survives, or when a prediction has no label.
[[nodiscard]] PairResult pair(const std::vector<Prediction>& text_preds, const std::vector<Prediction>& ast_preds,
                              const metrics::Labels& labels);

enum class Decision { promoted, suppressed, low_confidence_flag };
enum class Reason { both_positive, text_only, ast_only, both_negative, cwe_mismatch };

[[nodiscard]] std::string_view to_string(Decision d);
[[nodiscard]] std::string_view to_string(Reason r);

struct GateDecision {
    std::string sample_id;
    Decision decision = Decision::suppressed;
    Reason reason = Reason::both_negative;
};

struct GateOptions {
    /// Also demand equal predicted CWEs; disagreeing positives are flagged with cwe_mismatch.
    bool require_cwe_match = false;
};

[[nodiscard]] std::vector<GateDecision> apply_gate(const std::vector<PairedPrediction>& pairs, const GateOptions& options = {});

struct GateReport {
    metrics::ConfusionCounts text_counts;
    metrics::ConfusionCounts ast_counts;
    metrics::ConfusionCounts gated_counts;  // promoted = positive
    std::int64_t eliminated_fp = 0;         // text FPs the AST path rejects
    std::optional<metrics::Ratio> eliminated_fp_rate;
    std::int64_t persistent_fp = 0;         // text FPs the AST path confirms
    std::int64_t new_ast_only_fp = 0;
    std::int64_t low_confidence_flags = 0;
    std::optional<metrics::Ratio> recall_before;
    std::optional<metrics::Ratio> recall_after;
    std::optional<metrics::Ratio> fpr_before;
    std::optional<metrics::Ratio> fpr_after;
};

/// `decisions` must come from apply_gate(pairs).
[[nodiscard]] GateReport gate_report(const std::vector<GateDecision>& decisions, const std::vector<PairedPrediction>& pairs);

[[nodiscard]] nlohmann::ordered_json to_json(const GateReport& r);
[[nodiscard]] nlohmann::ordered_json to_json(const GateDecision& d);

}  // namespace repgate::gate
