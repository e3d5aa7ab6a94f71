#include "repgate/gate.hpp"

#include "repgate/error.hpp"

#include <algorithm>
#include <map>

namespace repgate::gate {

std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::promoted: return "promoted";
        case Decision::suppressed: return "suppressed";
        case Decision::low_confidence_flag: return "low_confidence_flag";
    }
    return "suppressed";
}

std::string_view to_string(Reason r) {
    switch (r) {
        case Reason::both_positive: return "both_positive";
        case Reason::text_only: return "text_only";
        case Reason::ast_only: return "ast_only";
        case Reason::both_negative: return "both_negative";
        case Reason::cwe_mismatch: return "cwe_mismatch";
    }
    return "both_negative";
}

PairResult pair(const std::vector<Prediction>& text_preds, const std::vector<Prediction>& ast_preds, const metrics::Labels& labels) {
    auto index = [](const std::vector<Prediction>& preds, std::string_view side) {
        std::map<std::string, const Prediction*> m;
        for (const auto& p : preds) {
            if (!m.emplace(p.sample_id, &p).second) throw DataError("duplicate " + std::string(side) + " prediction for " + p.sample_id);
        }
        return m;
    };
    const auto text = index(text_preds, "text");
    const auto ast = index(ast_preds, "ast");

    PairResult r;
    for (const auto& [id, tp] : text) {
        const auto label = labels.find(id);
        if (label == labels.end()) throw DataError("no label for sample " + id);
        const auto a = ast.find(id);
        if (a == ast.end()) {
            r.excluded.push_back({id, "missing-ast", label->second.category, {}});
            continue;
        }
        if (!tp->scored() || !a->second->scored()) {
            ++r.parse_failures;
            const std::string side = !tp->scored() && !a->second->scored() ? "both" : (!tp->scored() ? "text" : "ast");
            r.excluded.push_back({id, "parse-failed", label->second.category, side});
            continue;
        }
        PairedPrediction p;
        p.sample_id = id;
        p.text_found = tp->positive();
        p.ast_found = a->second->positive();
        p.vulnerable = label->second.vulnerable;
        p.text_cwe = tp->verdict.cwe.value_or(std::string(kNoCwe));
        p.ast_cwe = a->second->verdict.cwe.value_or(std::string(kNoCwe));
        r.pairs.push_back(std::move(p));
    }
    for (const auto& [id, ap] : ast) {
        if (text.contains(id)) continue;
        const auto label = labels.find(id);
        if (label == labels.end()) throw DataError("no label for sample " + id);
        r.excluded.push_back({id, "missing-text", label->second.category, {}});
    }
    std::sort(r.excluded.begin(), r.excluded.end(), [](const Exclusion& a, const Exclusion& b) { return a.id < b.id; });
    if (r.pairs.empty()) throw DataError("text and AST predictions share no scorable sample");
    return r;
}

std::vector<GateDecision> apply_gate(const std::vector<PairedPrediction>& pairs, const GateOptions& options) {
    std::vector<GateDecision> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) {
        GateDecision d;
        d.sample_id = p.sample_id;
        if (p.text_found && p.ast_found) {
            if (options.require_cwe_match && p.text_cwe != p.ast_cwe) {
                d.decision = Decision::low_confidence_flag;
                d.reason = Reason::cwe_mismatch;
            } else {
                d.decision = Decision::promoted;
                d.reason = Reason::both_positive;
            }
        } else if (p.text_found) {
            d.decision = Decision::low_confidence_flag;
            d.reason = Reason::text_only;
        } else if (p.ast_found) {
            d.decision = Decision::low_confidence_flag;
            d.reason = Reason::ast_only;
        } else {
            d.decision = Decision::suppressed;
            d.reason = Reason::both_negative;
        }
        out.push_back(std::move(d));
    }
    return out;
}

GateReport gate_report(const std::vector<GateDecision>& decisions, const std::vector<PairedPrediction>& pairs) {
    if (decisions.size() != pairs.size()) throw DataError("gate decisions do not match the paired predictions");
    GateReport r;
    auto add = [](metrics::ConfusionCounts& c, bool vulnerable, bool positive) {
        if (vulnerable) {
            (positive ? c.tp : c.fn) += 1;
        } else {
            (positive ? c.fp : c.tn) += 1;
        }
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        const auto& d = decisions[i];
        if (d.sample_id != p.sample_id) throw DataError("gate decision order does not match pairs at " + p.sample_id);
        add(r.text_counts, p.vulnerable, p.text_found);
        add(r.ast_counts, p.vulnerable, p.ast_found);
        add(r.gated_counts, p.vulnerable, d.decision == Decision::promoted);
        if (d.decision == Decision::low_confidence_flag) ++r.low_confidence_flags;
        if (!p.vulnerable) {
            if (p.text_found && !p.ast_found) ++r.eliminated_fp;
            if (p.text_found && p.ast_found) ++r.persistent_fp;
            if (!p.text_found && p.ast_found) ++r.new_ast_only_fp;
        }
    }
    r.eliminated_fp_rate = metrics::ratio(r.eliminated_fp, r.text_counts.fp);
    r.recall_before = metrics::metric_set(r.text_counts).recall;
    r.recall_after = metrics::metric_set(r.gated_counts).recall;
    r.fpr_before = metrics::metric_set(r.text_counts).fpr;
    r.fpr_after = metrics::metric_set(r.gated_counts).fpr;
    return r;
}

nlohmann::ordered_json to_json(const GateReport& r) {
    using metrics::to_json;
    nlohmann::ordered_json j;
    j["text_counts"] = to_json(r.text_counts);
    j["ast_counts"] = to_json(r.ast_counts);
    j["gated_counts"] = to_json(r.gated_counts);
    j["eliminated_fp"] = r.eliminated_fp;
    j["eliminated_fp_rate"] = to_json(r.eliminated_fp_rate);
    j["persistent_fp"] = r.persistent_fp;
    j["new_ast_only_fp"] = r.new_ast_only_fp;
    j["low_confidence_flags"] = r.low_confidence_flags;
    j["recall_before"] = to_json(r.recall_before);
    j["recall_after"] = to_json(r.recall_after);
    j["fpr_before"] = to_json(r.fpr_before);
    j["fpr_after"] = to_json(r.fpr_after);
    return j;
}

nlohmann::ordered_json to_json(const GateDecision& d) {
    nlohmann::ordered_json j;
    j["id"] = d.sample_id;
    j["decision"] = to_string(d.decision);
    j["reason"] = to_string(d.reason);
    return j;
}

}  // namespace repgate::gate
