#include "repgate/metrics.hpp"

#include "repgate/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace repgate::metrics {

std::optional<Ratio> ratio(std::int64_t num, std::int64_t den) noexcept {
    if (den == 0) return std::nullopt;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Ratio{num, den};
}

std::string format_fixed(const Ratio& r, int decimals) {
    const bool negative = r.num < 0;
    const auto mag = static_cast<unsigned long long>(negative ? -r.num : r.num);
    const auto den = static_cast<unsigned long long>(r.den);
    unsigned long long scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    // Split to avoid overflow on large magnitudes: mag*scale = (whole*den + rest)*scale.
    const unsigned long long whole = mag / den;
    const unsigned long long rest = mag % den;
    unsigned long long q = whole * scale + (rest * scale) / den;
    const unsigned long long rem = (rest * scale) % den;
    if (2 * rem > den || (2 * rem == den && (q % 2 == 1))) ++q;

    std::string digits = std::to_string(q);
    if (decimals > 0) {
        if (digits.size() <= static_cast<std::size_t>(decimals)) {
            digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
    }
    return (negative && q != 0 ? "-" : "") + digits;
}

std::string format_fixed(const std::optional<Ratio>& r, int decimals) {
    return r ? format_fixed(*r, decimals) : std::string("-");
}

std::string format_signed(const Ratio& r, int decimals) {
    std::string s = format_fixed(r, decimals);
    if (s.front() != '-' && s.find_first_not_of("0.") != std::string::npos) s.insert(0, "+");
    return s;
}

MetricSet metric_set(const ConfusionCounts& c) noexcept {
    MetricSet m;
    m.recall = ratio(c.tp, c.tp + c.fn);
    m.precision = ratio(c.tp, c.tp + c.fp);
    m.accuracy = ratio(c.tp + c.tn, c.total());
    m.fpr = ratio(c.fp, c.fp + c.tn);
    // 2PR/(P+R) == 2tp/(2tp+fp+fn) whenever P and R exist and P+R > 0.
    if (m.recall && m.precision && c.tp > 0) m.f1 = ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
    return m;
}

Labels labels_of(const std::vector<CodeSample>& samples) {
    Labels labels;
    labels.reserve(samples.size());
    for (const auto& s : samples) labels.emplace(s.id, Label{s.vulnerable, s.category});
    return labels;
}

namespace {

const Label& label_for(const Labels& labels, const std::string& id) {
    const auto it = labels.find(id);
    if (it == labels.end()) throw DataError("no label for sample " + id);
    return it->second;
}

void tally(ConfusionCounts& c, bool vulnerable, bool positive) {
    if (vulnerable) {
        (positive ? c.tp : c.fn) += 1;
    } else {
        (positive ? c.fp : c.tn) += 1;
    }
}

}  // namespace

Ratio subtract(const Ratio& a, const Ratio& b) noexcept {
    if (a.den == b.den) return {a.num - b.num, a.den};
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}

Scored confusion(const std::vector<Prediction>& preds, const Labels& labels) {
    Scored s;
    for (const auto& p : preds) {
        const Label& l = label_for(labels, p.sample_id);
        if (!p.scored()) {
            s.failed_ids.push_back(p.sample_id);
            continue;
        }
        tally(s.counts, l.vulnerable, p.positive());
    }
    return s;
}

PerCwe per_cwe(const std::vector<Prediction>& preds, const Labels& labels) {
    PerCwe out;
    for (const auto& p : preds) {
        const Label& l = label_for(labels, p.sample_id);
        auto& r = out[l.category];
        if (!p.scored()) {
            ++r.failed;
            continue;
        }
        tally(r.counts, l.vulnerable, p.positive());
    }
    for (auto& [cwe, r] : out) r.metrics = metric_set(r.counts);
    return out;
}

std::optional<Ratio> delta_fpr(const ConfusionCounts& a, const ConfusionCounts& b) {
    if (a.negatives() != b.negatives()) {
        throw DataError("delta_fpr over different negative sets (" + std::to_string(a.negatives()) + " vs " +
                        std::to_string(b.negatives()) + ")");
    }
    return ratio(b.fp - a.fp, a.negatives());
}

std::string_view to_string(McNemarMethod m) {
    return m == McNemarMethod::exact ? "exact" : "approx";
}

namespace {

double log_choose(std::int64_t n, std::int64_t k) {
    return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
           std::lgamma(static_cast<double>(n - k) + 1);
}

// log(erfc(x)) for x >= 0 without underflow.
double log_erfc(double x) {
    const double e = std::erfc(x);
    if (e > 1e-300) return std::log(e);
    // Asymptotic series: erfc(x) ~ exp(-x^2)/(x sqrt(pi)) * (1 - 1/(2x^2) + 3/(4x^4) - ...)
    const double inv = 1.0 / (2.0 * x * x);
    const double series = 1.0 - inv + 3.0 * inv * inv - 15.0 * inv * inv * inv;
    return -x * x - std::log(x * std::sqrt(std::numbers::pi)) + std::log(series);
}

}  // namespace

McNemarResult mcnemar(std::int64_t b, std::int64_t c) {
    if (b < 0 || c < 0) throw DataError("negative discordant count");
    McNemarResult r;
    r.b = b;
    r.c = c;
    const std::int64_t n = b + c;
    double log_p = 0.0;  // natural log of the two-sided p before clipping
    if (n == 0) {
        r.method = McNemarMethod::exact;
    } else if (n <= kMcNemarExactLimit) {
        r.method = McNemarMethod::exact;
        const std::int64_t m = std::min(b, c);
        // log-sum-exp over the lower tail
        std::vector<double> terms;
        terms.reserve(static_cast<std::size_t>(m) + 1);
        for (std::int64_t k = 0; k <= m; ++k) terms.push_back(log_choose(n, k));
        const double top = *std::max_element(terms.begin(), terms.end());
        double sum = 0.0;
        for (const double t : terms) sum += std::exp(t - top);
        log_p = std::numbers::ln2 + top + std::log(sum) - static_cast<double>(n) * std::numbers::ln2;
    } else {
        r.method = McNemarMethod::approx;
        const double diff = std::max(0.0, std::abs(static_cast<double>(b - c)) - 1.0);
        const double chi2 = diff * diff / static_cast<double>(n);
        // Survival of chi-square with one degree of freedom: erfc(sqrt(chi2/2)).
        log_p = log_erfc(std::sqrt(chi2 / 2.0));
    }
    log_p = std::min(0.0, log_p);
    r.log10_p = log_p / std::numbers::ln10;
    r.p_value = std::max(std::exp(log_p), std::numeric_limits<double>::denorm_min());
    return r;
}

McNemarResult mcnemar(const std::vector<std::pair<bool, bool>>& paired) {
    std::int64_t b = 0;
    std::int64_t c = 0;
    for (const auto& [a_ok, b_ok] : paired) {
        if (a_ok && !b_ok) ++b;
        if (!a_ok && b_ok) ++c;
    }
    return mcnemar(b, c);
}

std::string_view to_string(Tier t) {
    switch (t) {
        case Tier::H: return "H";
        case Tier::M: return "M";
        case Tier::L: return "L";
        case Tier::exception: return "exception";
    }
    return "L";
}

DeltaTier tier_classify(double delta) noexcept {
    DeltaTier d;
    d.delta = delta;
    if (delta > 0) d.tier = Tier::exception;
    else if (delta <= -0.3) d.tier = Tier::H;
    else if (delta <= -0.1) d.tier = Tier::M;
    else d.tier = Tier::L;
    return d;
}

Tier tier_of(const Ratio& delta) noexcept {
    if (delta.num > 0) return Tier::exception;
    if (10 * delta.num <= -3 * delta.den) return Tier::H;
    if (10 * delta.num <= -1 * delta.den) return Tier::M;
    return Tier::L;
}

ConditionVerdicts verdicts_of(std::string name, const std::vector<Prediction>& preds) {
    ConditionVerdicts v;
    v.name = std::move(name);
    for (const auto& p : preds) {
        if (p.scored()) v.found[p.sample_id] = p.positive();
    }
    return v;
}

StrataTable stratified_fpr(const std::vector<NegativeSample>& negatives, const std::vector<Stratum>& strata,
                           const std::vector<ConditionVerdicts>& conditions) {
    StrataTable t;
    for (const auto& c : conditions) t.conditions.push_back(c.name);
    std::vector<std::vector<const NegativeSample*>> members(strata.size());
    for (const auto& s : negatives) {
        std::vector<std::size_t> hits;
        for (std::size_t k = 0; k < strata.size(); ++k) {
            const auto& needles = strata[k].needles;
            const bool hit = std::any_of(needles.begin(), needles.end(),
                                         [&](const std::string& n) { return s.payload.find(n) != std::string::npos; });
            if (hit) hits.push_back(k);
        }
        if (hits.empty()) {
            ++t.unmatched;
            continue;
        }
        if (hits.size() > 1) {
            t.warnings.push_back(s.id + " matches " + std::to_string(hits.size()) + " strata; assigned to " + strata[hits.front()].name);
        }
        members[hits.front()].push_back(&s);
    }
    for (std::size_t k = 0; k < strata.size(); ++k) {
        StratumRow row;
        row.name = strata[k].name;
        row.n = static_cast<std::int64_t>(members[k].size());
        for (const auto& c : conditions) {
            std::int64_t scored = 0;
            std::int64_t fp = 0;
            for (const auto* s : members[k]) {
                const auto it = c.found.find(s->id);
                if (it == c.found.end()) continue;
                ++scored;
                if (it->second) ++fp;
            }
            row.fpr.push_back(ratio(fp, scored));
        }
        if (row.fpr.size() >= 2 && row.fpr[row.fpr.size() - 1] && row.fpr[row.fpr.size() - 2]) {
            row.delta = subtract(*row.fpr[row.fpr.size() - 1], *row.fpr[row.fpr.size() - 2]);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

OverlapResult overlap_partition(const std::map<std::string, std::int64_t, CweLess>& eval_counts,
                                const std::set<std::string>& training_cwes, const std::map<std::string, std::string>& parents) {
    std::set<std::string> covered;
    for (const auto& raw : training_cwes) {
        const auto cwe = normalize_cwe(raw);
        covered.insert(cwe);
        if (const auto p = parents.find(cwe); p != parents.end()) covered.insert(normalize_cwe(p->second));
    }
    OverlapResult r;
    std::int64_t total = 0;
    for (const auto& [cwe, n] : eval_counts) {
        OverlapGroup& g = covered.contains(normalize_cwe(cwe)) ? r.overlapping : r.non_overlapping;
        g.cwes.push_back(cwe);
        g.samples += n;
        total += n;
    }
    r.overlapping.share = ratio(r.overlapping.samples, total);
    r.non_overlapping.share = ratio(r.non_overlapping.samples, total);
    return r;
}

nlohmann::ordered_json to_json(const Ratio& r) {
    nlohmann::ordered_json j;
    j["num"] = r.num;
    j["den"] = r.den;
    j["value"] = r.value();
    return j;
}

nlohmann::ordered_json to_json(const std::optional<Ratio>& r) {
    return r ? to_json(*r) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json to_json(const ConfusionCounts& c) {
    nlohmann::ordered_json j;
    j["tp"] = c.tp;
    j["tn"] = c.tn;
    j["fp"] = c.fp;
    j["fn"] = c.fn;
    return j;
}

nlohmann::ordered_json to_json(const MetricSet& m) {
    nlohmann::ordered_json j;
    j["f1"] = to_json(m.f1);
    j["recall"] = to_json(m.recall);
    j["precision"] = to_json(m.precision);
    j["accuracy"] = to_json(m.accuracy);
    j["fpr"] = to_json(m.fpr);
    return j;
}

nlohmann::ordered_json to_json(const McNemarResult& r) {
    nlohmann::ordered_json j;
    j["b"] = r.b;
    j["c"] = r.c;
    j["p_value"] = r.p_value;
    j["log10_p"] = r.log10_p;
    j["method"] = to_string(r.method);
    return j;
}

std::optional<Ratio> ratio_from_json(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    Ratio r;
    try {
        r = Ratio{j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()};
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed ratio: ") + e.what());
    }
    if (r.den <= 0) throw DataError("ratio with non-positive denominator");
    return r;
}

ConfusionCounts counts_from_json(const nlohmann::json& j) {
    ConfusionCounts c;
    try {
        c.tp = j.at("tp").get<std::int64_t>();
        c.tn = j.at("tn").get<std::int64_t>();
        c.fp = j.at("fp").get<std::int64_t>();
        c.fn = j.at("fn").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed confusion counts: ") + e.what());
    }
    if (c.tp < 0 || c.tn < 0 || c.fp < 0 || c.fn < 0) throw DataError("negative confusion count");
    return c;
}

}  // namespace repgate::metrics
