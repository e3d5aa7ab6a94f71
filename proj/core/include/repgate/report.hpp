#pragma once

#include "repgate/gate.hpp"
#include "repgate/metrics.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace repgate::report {

/// Which run a set of counts belongs to. `train` is empty for zero-shot runs.
struct RunMeta {
    std::string model;
    std::string benchmark;
    std::string condition;  // display label, e.g. "Text Pilot"
    std::optional<Representation> train;
    std::string scale;      // "pilot", "full", or empty
    Representation format = Representation::text;

    /// A trained model evaluated on the other representation.
    [[nodiscard]] bool is_probe() const noexcept { return train && *train != format; }
};

struct EvalRun {
    RunMeta meta;
    metrics::ConfusionCounts counts;
    metrics::PerCwe per_cwe;  // may be empty
    std::size_t failed = 0;
};

struct ReportInput {
    std::vector<EvalRun> runs;  // table order is input order
    std::optional<metrics::StrataTable> strata;
    std::string strata_title;
    std::optional<gate::GateReport> gate;
    nlohmann::ordered_json metadata;  // copied verbatim into report.json when set
};

struct ReportOptions {
    int decimals = 3;
    int overall_decimals = 4;
};

/// File name -> contents. Pure and deterministic.
struct Rendered {
    std::map<std::string, std::string> files;
    std::vector<std::string> warnings;
};

/// overall.{md,csv}, fpr_progression.*, tiers.*, per_cwe.*, per_cwe_fpr.*, strata.*, gate.md,
/// and report.json holding every count the tables are rendered from.
[[nodiscard]] Rendered render_tables(const ReportInput& input, const ReportOptions& options = {});

struct ProgressionRow {
    const EvalRun* run = nullptr;
    std::optional<metrics::Ratio> delta;  // probe rows only, relative to the row above
};

/// Probe rows take Δ from the immediately preceding row when it is the same model/benchmark/
/// condition evaluated natively; otherwise Δ is absent and a warning is recorded.
[[nodiscard]] std::vector<ProgressionRow> progression(const std::vector<EvalRun>& runs, std::vector<std::string>* warnings = nullptr);

struct TierRow {
    std::string cwe;
    std::optional<metrics::Ratio> fpr_native;
    std::optional<metrics::Ratio> fpr_probe;
    std::optional<metrics::Ratio> delta;
    std::optional<metrics::Tier> tier;
};

/// Per-CWE Δ between a native run and its probe, ranked by Δ ascending (ties by CWE).
[[nodiscard]] std::vector<TierRow> tier_table(const EvalRun& native, const EvalRun& probe);

/// plot.json: ordered FPR series per model/benchmark/training family/format, and the 3x2
/// training x inference heatmap per model and benchmark at pilot scale.
[[nodiscard]] nlohmann::ordered_json emit_plot_data(const std::vector<EvalRun>& runs);

/// Largest absolute cell gap between two heatmaps of the same model, nullopt if no cell is shared.
[[nodiscard]] std::optional<metrics::Ratio> max_heatmap_gap(const std::vector<EvalRun>& runs, const std::string& model,
                                                            const std::string& benchmark_a, const std::string& benchmark_b);

// --- (de)serialization -------------------------------------------------------------------

[[nodiscard]] nlohmann::ordered_json to_json(const RunMeta& m);
[[nodiscard]] RunMeta run_meta_from_json(const nlohmann::json& j);
/// Score file body: counts, metrics, per_cwe, failed.
[[nodiscard]] nlohmann::ordered_json score_json(const metrics::ConfusionCounts& counts, const metrics::PerCwe& per_cwe,
                                                const std::vector<std::string>& failed_ids);
/// Fills counts/per_cwe/failed from a score file body.
void read_score(const nlohmann::json& j, EvalRun& run);
[[nodiscard]] metrics::StrataTable strata_table_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::ordered_json to_json(const metrics::StrataTable& t);
[[nodiscard]] gate::GateReport gate_report_from_json(const nlohmann::json& j);

/// Manifest `{"runs":[{meta..., "score": path | inline counts/per_cwe}], "strata"?: path|obj,
/// "gate"?: path|obj}`; relative paths resolve against `base_dir`.
[[nodiscard]] ReportInput load_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir);

void write_rendered(const Rendered& r, const std::filesystem::path& out_dir);

}  // namespace repgate::report
