#include "repgate/report.hpp"

#include "repgate/error.hpp"
#include "repgate/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace repgate::report {

using metrics::format_fixed;
using metrics::format_signed;
using metrics::Ratio;
using nlohmann::ordered_json;

namespace {

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::string markdown() const {
        std::ostringstream os;
        auto line = [&](const std::vector<std::string>& cells) {
            os << '|';
            for (const auto& c : cells) os << ' ' << c << " |";
            os << '\n';
        };
        line(headers);
        os << '|';
        for (std::size_t i = 0; i < headers.size(); ++i) os << "---|";
        os << '\n';
        for (const auto& r : rows) line(r);
        return os.str();
    }

    [[nodiscard]] std::string csv() const {
        std::ostringstream os;
        auto cell = [&](const std::string& c) {
            if (c.find_first_of(",\"\n") == std::string::npos) {
                os << c;
                return;
            }
            os << '"';
            for (char ch : c) {
                if (ch == '"') os << '"';
                os << ch;
            }
            os << '"';
        };
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) os << ',';
                cell(cells[i]);
            }
            os << '\n';
        };
        line(headers);
        for (const auto& r : rows) line(r);
        return os.str();
    }
};

std::string train_name(const std::optional<Representation>& t) { return t ? std::string(to_string(*t)) : "none"; }

std::string condition_label(const RunMeta& m) { return m.is_probe() ? m.condition + " (no retrain)" : m.condition; }

std::string format_delta(const std::optional<Ratio>& d, int decimals) { return d ? format_signed(*d, decimals) : "-"; }

std::string format_tier(const std::optional<metrics::Tier>& t) { return t ? std::string(metrics::to_string(*t)) : "-"; }

bool same_group(const RunMeta& a, const RunMeta& b) { return a.model == b.model && a.benchmark == b.benchmark; }

ordered_json ratio_json(const std::optional<Ratio>& r) { return metrics::to_json(r); }

}  // namespace

std::vector<ProgressionRow> progression(const std::vector<EvalRun>& runs, std::vector<std::string>* warnings) {
    std::vector<ProgressionRow> out;
    out.reserve(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) {
        ProgressionRow row{&runs[i], std::nullopt};
        const auto& m = runs[i].meta;
        if (m.is_probe()) {
            const RunMeta* prev = i > 0 ? &runs[i - 1].meta : nullptr;
            const bool paired = prev && same_group(*prev, m) && prev->condition == m.condition && prev->train == m.train &&
                                prev->format == *m.train;
            if (!paired) {
                if (warnings) warnings->push_back("no native baseline directly above " + m.model + " / " + condition_label(m) + "; delta omitted");
            } else {
                try {
                    row.delta = metrics::delta_fpr(runs[i - 1].counts, runs[i].counts);
                } catch (const DataError& e) {
                    if (warnings) warnings->push_back(m.model + " / " + condition_label(m) + ": " + e.what());
                }
            }
        }
        out.push_back(row);
    }
    return out;
}

std::vector<TierRow> tier_table(const EvalRun& native, const EvalRun& probe) {
    std::set<std::string, CweLess> cwes;
    for (const auto& [cwe, r] : native.per_cwe) cwes.insert(cwe);
    for (const auto& [cwe, r] : probe.per_cwe) cwes.insert(cwe);
    std::vector<TierRow> rows;
    for (const auto& cwe : cwes) {
        TierRow row;
        row.cwe = cwe;
        if (auto it = native.per_cwe.find(cwe); it != native.per_cwe.end()) row.fpr_native = it->second.metrics.fpr;
        if (auto it = probe.per_cwe.find(cwe); it != probe.per_cwe.end()) row.fpr_probe = it->second.metrics.fpr;
        if (row.fpr_native && row.fpr_probe) {
            row.delta = metrics::subtract(*row.fpr_probe, *row.fpr_native);
            row.tier = metrics::tier_of(*row.delta);
        }
        rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const TierRow& a, const TierRow& b) {
        if (a.delta.has_value() != b.delta.has_value()) return a.delta.has_value();
        if (a.delta && *a.delta != *b.delta) return *a.delta < *b.delta;
        return false;  // CWE order from the set
    });
    return rows;
}

namespace {

struct Heatmap {
    // [train none/text/ast][format text/ast]
    std::optional<Ratio> cell[3][2];
    const EvalRun* source[3][2] = {};
};

int train_index(const std::optional<Representation>& t) {
    if (!t) return 0;
    return *t == Representation::text ? 1 : 2;
}

Heatmap heatmap_of(const std::vector<EvalRun>& runs, const std::string& model, const std::string& benchmark) {
    Heatmap h;
    for (const auto& r : runs) {
        if (r.meta.model != model || r.meta.benchmark != benchmark) continue;
        if (r.meta.train && !(r.meta.scale.empty() || r.meta.scale == "pilot")) continue;
        const int row = train_index(r.meta.train);
        const int col = r.meta.format == Representation::ast ? 1 : 0;
        if (h.source[row][col]) continue;  // first run wins
        h.source[row][col] = &r;
        h.cell[row][col] = metrics::metric_set(r.counts).fpr;
    }
    return h;
}

}  // namespace

std::optional<Ratio> max_heatmap_gap(const std::vector<EvalRun>& runs, const std::string& model, const std::string& benchmark_a,
                                     const std::string& benchmark_b) {
    const auto a = heatmap_of(runs, model, benchmark_a);
    const auto b = heatmap_of(runs, model, benchmark_b);
    std::optional<Ratio> best;
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 2; ++k) {
            if (!a.cell[i][k] || !b.cell[i][k]) continue;
            auto d = metrics::subtract(*a.cell[i][k], *b.cell[i][k]);
            if (d.num < 0) d.num = -d.num;
            if (!best || *best < d) best = d;
        }
    }
    return best;
}

ordered_json emit_plot_data(const std::vector<EvalRun>& runs) {
    // groups in first-appearance order
    std::vector<std::pair<std::string, std::string>> groups;
    for (const auto& r : runs) {
        std::pair<std::string, std::string> g{r.meta.model, r.meta.benchmark};
        if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
    }
    ordered_json series = ordered_json::array();
    ordered_json heatmaps = ordered_json::array();
    for (const auto& [model, benchmark] : groups) {
        std::vector<std::optional<Representation>> families;
        for (const auto& r : runs) {
            if (r.meta.model == model && r.meta.benchmark == benchmark && r.meta.train &&
                std::find(families.begin(), families.end(), r.meta.train) == families.end()) {
                families.push_back(r.meta.train);
            }
        }
        std::sort(families.begin(), families.end());
        if (families.empty()) families.push_back(std::nullopt);
        for (const auto& fam : families) {
            for (const auto fmt : {Representation::text, Representation::ast}) {
                ordered_json points = ordered_json::array();
                for (const auto& r : runs) {
                    const auto& m = r.meta;
                    if (m.model != model || m.benchmark != benchmark || m.format != fmt) continue;
                    if (m.train && m.train != fam) continue;
                    ordered_json p;
                    p["condition"] = m.condition;
                    p["scale"] = m.scale;
                    p["fpr"] = ratio_json(metrics::metric_set(r.counts).fpr);
                    points.push_back(std::move(p));
                }
                if (points.empty()) continue;
                ordered_json s;
                s["model"] = model;
                s["benchmark"] = benchmark;
                s["training"] = train_name(fam);
                s["format"] = to_string(fmt);
                s["name"] = (fam ? train_name(fam) : std::string("zero-shot")) + "-on-" + std::string(to_string(fmt));
                s["points"] = std::move(points);
                series.push_back(std::move(s));
            }
        }
        const auto h = heatmap_of(runs, model, benchmark);
        ordered_json cells = ordered_json::array();
        for (int i = 0; i < 3; ++i) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < 2; ++k) row.push_back(ratio_json(h.cell[i][k]));
            cells.push_back(std::move(row));
        }
        ordered_json hm;
        hm["model"] = model;
        hm["benchmark"] = benchmark;
        hm["rows"] = {"none", "text", "ast"};
        hm["columns"] = {"text", "ast"};
        hm["fpr"] = std::move(cells);
        heatmaps.push_back(std::move(hm));
    }
    ordered_json out;
    out["series"] = std::move(series);
    out["heatmaps"] = std::move(heatmaps);
    return out;
}

Rendered render_tables(const ReportInput& input, const ReportOptions& options) {
    Rendered out;
    const int d = options.decimals;
    const int od = options.overall_decimals;
    ordered_json doc;
    if (!input.metadata.is_null()) doc["metadata"] = input.metadata;

    // overall
    Table overall{{"Model", "Benchmark", "Condition", "Input", "N", "TP", "FP", "TN", "FN", "F1", "Recall", "Precision", "Accuracy", "FPR", "Failed"}, {}};
    ordered_json runs_json = ordered_json::array();
    for (const auto& r : input.runs) {
        const auto ms = metrics::metric_set(r.counts);
        overall.rows.push_back({r.meta.model, r.meta.benchmark, condition_label(r.meta), std::string(to_string(r.meta.format)),
                                std::to_string(r.counts.total()), std::to_string(r.counts.tp), std::to_string(r.counts.fp),
                                std::to_string(r.counts.tn), std::to_string(r.counts.fn), format_fixed(ms.f1, od),
                                format_fixed(ms.recall, od), format_fixed(ms.precision, od), format_fixed(ms.accuracy, od),
                                format_fixed(ms.fpr, od), std::to_string(r.failed)});
        ordered_json rj;
        rj["meta"] = to_json(r.meta);
        rj["counts"] = metrics::to_json(r.counts);
        rj["metrics"] = metrics::to_json(ms);
        rj["failed"] = r.failed;
        ordered_json pc = ordered_json::object();
        for (const auto& [cwe, c] : r.per_cwe) {
            pc[cwe] = {{"counts", metrics::to_json(c.counts)}, {"metrics", metrics::to_json(c.metrics)}, {"failed", c.failed}};
        }
        rj["per_cwe"] = std::move(pc);
        runs_json.push_back(std::move(rj));
    }
    out.files["overall.md"] = "# Overall\n\n" + overall.markdown();
    out.files["overall.csv"] = overall.csv();
    doc["runs"] = std::move(runs_json);

    // FPR progression
    const auto prog = progression(input.runs, &out.warnings);
    Table ptab{{"Model", "Benchmark", "Condition", "Input", "FPR", "Recall", "F1", "Delta FPR"}, {}};
    ordered_json prog_json = ordered_json::array();
    for (std::size_t i = 0; i < prog.size(); ++i) {
        const auto& r = *prog[i].run;
        const auto ms = metrics::metric_set(r.counts);
        ptab.rows.push_back({r.meta.model, r.meta.benchmark, condition_label(r.meta), std::string(to_string(r.meta.format)),
                             format_fixed(ms.fpr, d), format_fixed(ms.recall, d), format_fixed(ms.f1, d), format_delta(prog[i].delta, d)});
        prog_json.push_back({{"run", i}, {"delta_fpr", ratio_json(prog[i].delta)}});
    }
    out.files["fpr_progression.md"] =
        "# FPR progression\n\nDelta FPR is given for probe rows only, relative to the native row directly above.\n\n" + ptab.markdown();
    out.files["fpr_progression.csv"] = ptab.csv();
    doc["progression"] = std::move(prog_json);

    // tiers, one block per probe with a native baseline and per-CWE counts
    Table tiers_csv{{"Model", "Benchmark", "Condition", "CWE", "FPR native", "FPR probe", "Delta", "Tier"}, {}};
    std::string tiers_md = "# Delta tiers\n\nH: delta <= -0.3, M: -0.3 < delta <= -0.1, L: -0.1 < delta <= 0, exception: delta > 0.\n";
    ordered_json tiers_json = ordered_json::array();
    for (std::size_t i = 0; i < prog.size(); ++i) {
        if (!prog[i].delta || i == 0) continue;
        const auto& native = input.runs[i - 1];
        const auto& probe = input.runs[i];
        if (native.per_cwe.empty() || probe.per_cwe.empty()) continue;
        const auto rows = tier_table(native, probe);
        Table t{{"CWE", "FPR " + std::string(to_string(native.meta.format)), "FPR " + std::string(to_string(probe.meta.format)), "Delta", "Tier"}, {}};
        ordered_json block;
        block["native_run"] = i - 1;
        block["probe_run"] = i;
        ordered_json jr = ordered_json::array();
        for (const auto& row : rows) {
            t.rows.push_back({row.cwe, format_fixed(row.fpr_native, d), format_fixed(row.fpr_probe, d), format_delta(row.delta, d), format_tier(row.tier)});
            tiers_csv.rows.push_back({probe.meta.model, probe.meta.benchmark, probe.meta.condition, row.cwe, format_fixed(row.fpr_native, d),
                                      format_fixed(row.fpr_probe, d), format_delta(row.delta, d), format_tier(row.tier)});
            jr.push_back({{"cwe", row.cwe}, {"delta", ratio_json(row.delta)}, {"tier", row.tier ? ordered_json(metrics::to_string(*row.tier)) : ordered_json(nullptr)}});
        }
        block["rows"] = std::move(jr);
        tiers_json.push_back(std::move(block));
        tiers_md += "\n## " + probe.meta.model + " / " + probe.meta.benchmark + " / " + probe.meta.condition + "\n\n" + t.markdown();
    }
    out.files["tiers.md"] = tiers_md;
    out.files["tiers.csv"] = tiers_csv.csv();
    doc["tiers"] = std::move(tiers_json);

    // per-CWE confusion tables
    Table pc_csv{{"Model", "Benchmark", "Condition", "Input", "CWE", "TP", "FP", "TN", "FN", "Recall", "Precision", "F1", "FPR"}, {}};
    std::string pc_md = "# Per-CWE results\n";
    for (const auto& r : input.runs) {
        if (r.per_cwe.empty()) continue;
        Table t{{"CWE", "TP", "FP", "TN", "FN", "Recall", "Precision", "F1", "FPR"}, {}};
        for (const auto& [cwe, c] : r.per_cwe) {
            std::vector<std::string> cells{cwe,
                                           std::to_string(c.counts.tp),
                                           std::to_string(c.counts.fp),
                                           std::to_string(c.counts.tn),
                                           std::to_string(c.counts.fn),
                                           format_fixed(c.metrics.recall, d),
                                           format_fixed(c.metrics.precision, d),
                                           format_fixed(c.metrics.f1, d),
                                           format_fixed(c.metrics.fpr, d)};
            t.rows.push_back(cells);
            cells.insert(cells.begin(), {r.meta.model, r.meta.benchmark, condition_label(r.meta), std::string(to_string(r.meta.format))});
            pc_csv.rows.push_back(std::move(cells));
        }
        pc_md += "\n## " + r.meta.model + " / " + r.meta.benchmark + " / " + condition_label(r.meta) + " / " +
                 std::string(to_string(r.meta.format)) + "\n\n" + t.markdown();
    }
    out.files["per_cwe.md"] = pc_md;
    out.files["per_cwe.csv"] = pc_csv.csv();

    // per-CWE FPR matrix per model/benchmark
    Table pf_csv{{"Model", "Benchmark", "CWE", "Condition", "Input", "FPR"}, {}};
    std::string pf_md = "# Per-CWE FPR\n";
    std::vector<std::pair<std::string, std::string>> groups;
    for (const auto& r : input.runs) {
        std::pair<std::string, std::string> g{r.meta.model, r.meta.benchmark};
        if (!r.per_cwe.empty() && std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
    }
    for (const auto& [model, bench] : groups) {
        std::vector<const EvalRun*> cols;
        std::set<std::string, CweLess> cwes;
        for (const auto& r : input.runs) {
            if (r.meta.model != model || r.meta.benchmark != bench || r.per_cwe.empty()) continue;
            cols.push_back(&r);
            for (const auto& [cwe, c] : r.per_cwe) cwes.insert(cwe);
        }
        Table t{{"CWE"}, {}};
        for (const auto* r : cols) t.headers.push_back(condition_label(r->meta) + " (" + std::string(to_string(r->meta.format)) + ")");
        for (const auto& cwe : cwes) {
            std::vector<std::string> row{cwe};
            for (const auto* r : cols) {
                const auto it = r->per_cwe.find(cwe);
                const auto fpr = it == r->per_cwe.end() ? std::nullopt : it->second.metrics.fpr;
                row.push_back(format_fixed(fpr, d));
                pf_csv.rows.push_back({model, bench, cwe, condition_label(r->meta), std::string(to_string(r->meta.format)), format_fixed(fpr, d)});
            }
            t.rows.push_back(std::move(row));
        }
        pf_md += "\n## " + model + " / " + bench + "\n\n" + t.markdown();
    }
    out.files["per_cwe_fpr.md"] = pf_md;
    out.files["per_cwe_fpr.csv"] = pf_csv.csv();

    // strata
    if (input.strata) {
        const auto& s = *input.strata;
        Table t{{"Stratum", "n"}, {}};
        for (const auto& c : s.conditions) t.headers.push_back("FPR " + c);
        t.headers.push_back("Delta");
        for (const auto& row : s.rows) {
            std::vector<std::string> cells{row.name, std::to_string(row.n)};
            for (const auto& f : row.fpr) cells.push_back(format_fixed(f, d));
            cells.push_back(format_delta(row.delta, d));
            t.rows.push_back(std::move(cells));
        }
        const std::string title = input.strata_title.empty() ? "Strata" : input.strata_title;
        out.files["strata.md"] = "# " + title + "\n\n" + t.markdown() + "\nUnmatched negatives: " + std::to_string(s.unmatched) + "\n";
        out.files["strata.csv"] = t.csv();
        doc["strata"] = to_json(s);
        for (const auto& w : s.warnings) out.warnings.push_back("strata: " + w);
    }

    // gate
    if (input.gate) {
        const auto& g = *input.gate;
        const auto text_fp = g.text_counts.fp;
        Table t{{"Quantity", "Value"}, {}};
        t.rows.push_back({"Text-path FP", std::to_string(text_fp)});
        t.rows.push_back({"AST-path FP", std::to_string(g.ast_counts.fp)});
        t.rows.push_back({"Eliminated FP", std::to_string(g.eliminated_fp)});
        t.rows.push_back({"Eliminated FP rate", format_fixed(g.eliminated_fp_rate, d)});
        t.rows.push_back({"Persistent FP", std::to_string(g.persistent_fp)});
        t.rows.push_back({"New AST-only FP", std::to_string(g.new_ast_only_fp)});
        t.rows.push_back({"Low-confidence flags", std::to_string(g.low_confidence_flags)});
        t.rows.push_back({"FPR before", format_fixed(g.fpr_before, d)});
        t.rows.push_back({"FPR after", format_fixed(g.fpr_after, d)});
        t.rows.push_back({"Recall before", format_fixed(g.recall_before, d)});
        t.rows.push_back({"Recall after", format_fixed(g.recall_after, d)});
        out.files["gate.md"] = "# Consistency gate\n\n" + t.markdown();
        doc["gate"] = gate::to_json(g);
    }

    doc["warnings"] = out.warnings;
    out.files["report.json"] = io::pretty(doc);
    out.files["plot.json"] = io::pretty(emit_plot_data(input.runs));
    return out;
}

// --- (de)serialization -------------------------------------------------------------------

ordered_json to_json(const RunMeta& m) {
    ordered_json j;
    j["model"] = m.model;
    j["benchmark"] = m.benchmark;
    j["condition"] = m.condition;
    j["train"] = m.train ? ordered_json(to_string(*m.train)) : ordered_json(nullptr);
    j["scale"] = m.scale;
    j["format"] = to_string(m.format);
    return j;
}

RunMeta run_meta_from_json(const nlohmann::json& j) {
    RunMeta m;
    try {
        m.model = j.value("model", std::string{});
        m.benchmark = j.value("benchmark", std::string{});
        m.condition = j.at("condition").get<std::string>();
        if (j.contains("train") && !j["train"].is_null()) {
            const auto t = j["train"].get<std::string>();
            if (t != "none") m.train = parse_representation(t);
        }
        m.scale = j.value("scale", std::string{});
        m.format = parse_representation(j.at("format").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("run metadata: ") + e.what());
    }
    return m;
}

ordered_json score_json(const metrics::ConfusionCounts& counts, const metrics::PerCwe& per_cwe, const std::vector<std::string>& failed_ids) {
    ordered_json j;
    j["counts"] = metrics::to_json(counts);
    j["metrics"] = metrics::to_json(metrics::metric_set(counts));
    j["failed"] = failed_ids.size();
    j["failed_ids"] = failed_ids;
    ordered_json pc = ordered_json::object();
    for (const auto& [cwe, c] : per_cwe) {
        pc[cwe] = {{"counts", metrics::to_json(c.counts)}, {"metrics", metrics::to_json(c.metrics)}, {"failed", c.failed}};
    }
    j["per_cwe"] = std::move(pc);
    return j;
}

void read_score(const nlohmann::json& j, EvalRun& run) {
    try {
        run.counts = metrics::counts_from_json(j.at("counts"));
        run.failed = j.value("failed", std::size_t{0});
        run.per_cwe.clear();
        if (j.contains("per_cwe")) {
            for (const auto& [cwe, c] : j["per_cwe"].items()) {
                metrics::CweResult r;
                r.counts = metrics::counts_from_json(c.contains("counts") ? c["counts"] : c);
                r.metrics = metrics::metric_set(r.counts);
                r.failed = c.value("failed", std::size_t{0});
                run.per_cwe[normalize_cwe(cwe)] = r;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("score: ") + e.what());
    }
}

ordered_json to_json(const metrics::StrataTable& t) {
    ordered_json j;
    j["conditions"] = t.conditions;
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows) {
        ordered_json fpr = ordered_json::array();
        for (const auto& f : r.fpr) fpr.push_back(ratio_json(f));
        rows.push_back({{"name", r.name}, {"n", r.n}, {"fpr", std::move(fpr)}, {"delta", ratio_json(r.delta)}});
    }
    j["rows"] = std::move(rows);
    j["unmatched"] = t.unmatched;
    j["warnings"] = t.warnings;
    return j;
}

metrics::StrataTable strata_table_from_json(const nlohmann::json& j) {
    metrics::StrataTable t;
    try {
        t.conditions = j.at("conditions").get<std::vector<std::string>>();
        for (const auto& r : j.at("rows")) {
            metrics::StratumRow row;
            row.name = r.at("name").get<std::string>();
            row.n = r.at("n").get<std::int64_t>();
            for (const auto& f : r.at("fpr")) row.fpr.push_back(metrics::ratio_from_json(f));
            row.delta = metrics::ratio_from_json(r.value("delta", nlohmann::json(nullptr)));
            t.rows.push_back(std::move(row));
        }
        t.unmatched = j.value("unmatched", std::int64_t{0});
        t.warnings = j.value("warnings", std::vector<std::string>{});
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("strata: ") + e.what());
    }
    return t;
}

gate::GateReport gate_report_from_json(const nlohmann::json& root) {
    const auto& j = root.contains("report") ? root["report"] : root;
    gate::GateReport g;
    try {
        g.text_counts = metrics::counts_from_json(j.at("text_counts"));
        g.ast_counts = metrics::counts_from_json(j.at("ast_counts"));
        g.gated_counts = metrics::counts_from_json(j.at("gated_counts"));
        g.eliminated_fp = j.at("eliminated_fp").get<std::int64_t>();
        g.eliminated_fp_rate = metrics::ratio_from_json(j.at("eliminated_fp_rate"));
        g.persistent_fp = j.at("persistent_fp").get<std::int64_t>();
        g.new_ast_only_fp = j.at("new_ast_only_fp").get<std::int64_t>();
        g.low_confidence_flags = j.value("low_confidence_flags", std::int64_t{0});
        g.recall_before = metrics::ratio_from_json(j.at("recall_before"));
        g.recall_after = metrics::ratio_from_json(j.at("recall_after"));
        g.fpr_before = metrics::ratio_from_json(j.at("fpr_before"));
        g.fpr_after = metrics::ratio_from_json(j.at("fpr_after"));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("gate report: ") + e.what());
    }
    return g;
}

namespace {

nlohmann::json load_ref(const nlohmann::json& v, const std::filesystem::path& base) {
    if (!v.is_string()) return v;
    std::filesystem::path p(v.get<std::string>());
    if (p.is_relative()) p = base / p;
    const auto j = nlohmann::json::parse(io::read_text(p), nullptr, false);
    if (j.is_discarded()) throw DataError(p.string() + ": not valid JSON");
    return j;
}

}  // namespace

ReportInput load_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    ReportInput in;
    if (!j.is_object() || !j.contains("runs") || !j["runs"].is_array()) throw DataError("report manifest: expected {\"runs\": [...]}");
    for (const auto& r : j["runs"]) {
        EvalRun run;
        run.meta = run_meta_from_json(r);
        read_score(r.contains("score") ? load_ref(r["score"], base_dir) : r, run);
        in.runs.push_back(std::move(run));
    }
    if (j.contains("strata")) in.strata = strata_table_from_json(load_ref(j["strata"], base_dir));
    in.strata_title = j.value("strata_title", std::string{});
    if (j.contains("gate")) in.gate = gate_report_from_json(load_ref(j["gate"], base_dir));
    return in;
}

void write_rendered(const Rendered& r, const std::filesystem::path& out_dir) {
    for (const auto& [name, content] : r.files) io::write_text(out_dir / name, content);
}

}  // namespace repgate::report
