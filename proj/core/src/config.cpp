#include "repgate/config.hpp"

#include "repgate/error.hpp"
#include "repgate/io.hpp"

#include <set>

namespace repgate {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw DataError(where + ": expected an object");
    for (const auto& [k, v] : j.items()) {
        if (!allowed.contains(k)) throw DataError(where + ": unknown key '" + k + "'");
    }
}

std::vector<detector::Trigger> triggers_from(const json& j, const std::string& where) {
    if (!j.is_array()) throw DataError(where + ": expected an array");
    std::vector<detector::Trigger> out;
    for (const auto& t : j) {
        if (t.is_string()) {
            out.push_back({t.get<std::string>(), std::string(kNoCwe)});
        } else {
            check_keys(t, {"pattern", "cwe"}, where);
            detector::Trigger trig;
            trig.pattern = t.at("pattern").get<std::string>();
            if (t.contains("cwe")) trig.cwe = normalize_cwe(t.at("cwe").get<std::string>());
            out.push_back(std::move(trig));
        }
    }
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
}

void read_backend(const json& b, const std::filesystem::path& base, detector::DetectorConfig& d) {
    check_keys(b, {"kind", "endpoint", "model_id", "greedy", "max_tokens", "retry", "timeout_s", "replay", "api_key"}, "backend");
    if (b.contains("kind")) d.kind = detector::parse_backend_kind(b["kind"].get<std::string>());
    if (b.contains("endpoint")) d.endpoint = b["endpoint"].get<std::string>();
    if (b.contains("model_id")) d.model_id = b["model_id"].get<std::string>();
    if (b.contains("api_key")) d.api_key = b["api_key"].get<std::string>();
    if (b.contains("greedy")) d.greedy = b["greedy"].get<bool>();
    if (!d.greedy) throw DataError("backend.greedy must be true; sampling is not supported");
    if (b.contains("max_tokens")) d.max_tokens = b["max_tokens"].get<int>();
    if (d.max_tokens < 1) throw DataError("backend.max_tokens must be >= 1");
    if (b.contains("timeout_s")) d.timeout = std::chrono::seconds(b["timeout_s"].get<int>());
    if (b.contains("replay")) d.replay_path = resolve(base, b["replay"].get<std::string>());
    if (b.contains("retry")) {
        const auto& r = b["retry"];
        check_keys(r, {"max_attempts", "backoff_ms"}, "backend.retry");
        if (r.contains("max_attempts")) d.retry.max_attempts = r["max_attempts"].get<int>();
        if (r.contains("backoff_ms")) d.retry.backoff = std::chrono::milliseconds(r["backoff_ms"].get<int>());
    }
    if (d.retry.max_attempts < 1) throw DataError("backend.retry.max_attempts must be >= 1");
}

}  // namespace

std::vector<metrics::Stratum> strata_from_json(const json& j) {
    if (!j.is_array()) throw DataError("strata: expected an array");
    std::vector<metrics::Stratum> out;
    for (const auto& s : j) {
        check_keys(s, {"name", "match"}, "strata");
        metrics::Stratum st;
        st.name = s.at("name").get<std::string>();
        st.needles = s.at("match").get<std::vector<std::string>>();
        if (st.needles.empty()) throw DataError("stratum '" + st.name + "' has no matchers");
        out.push_back(std::move(st));
    }
    return out;
}

Config config_from_json(const json& j, const std::filesystem::path& base_dir) {
    Config cfg;
    try {
        check_keys(j, {"backend", "concurrency", "triggers", "strata", "preambles", "harness_denylist", "cwe_parents", "corpus"}, "config");
        if (j.contains("backend")) read_backend(j["backend"], base_dir, cfg.detector);
        if (j.contains("concurrency")) {
            const auto c = j["concurrency"].get<std::int64_t>();
            if (c < 1) throw DataError("concurrency must be >= 1");
            cfg.detector.concurrency = static_cast<std::size_t>(c);
        }
        if (j.contains("triggers")) {
            const auto& t = j["triggers"];
            check_keys(t, {"text", "ast"}, "triggers");
            if (t.contains("text")) cfg.detector.triggers.text = triggers_from(t["text"], "triggers.text");
            if (t.contains("ast")) cfg.detector.triggers.ast = triggers_from(t["ast"], "triggers.ast");
        }
        if (j.contains("strata")) cfg.strata = strata_from_json(j["strata"]);
        if (j.contains("preambles")) {
            const auto& p = j["preambles"];
            check_keys(p, {"text", "ast"}, "preambles");
            if (p.contains("text")) cfg.preambles.text = p["text"].get<std::string>();
            if (p.contains("ast")) cfg.preambles.ast = p["ast"].get<std::string>();
        }
        if (j.contains("harness_denylist")) cfg.sanitize.harness_includes = j["harness_denylist"].get<std::vector<std::string>>();
        if (j.contains("cwe_parents")) {
            for (const auto& [child, parent] : j["cwe_parents"].items()) {
                cfg.cwe_parents[normalize_cwe(child)] = normalize_cwe(parent.get<std::string>());
            }
        }
        if (j.contains("corpus")) {
            for (const auto& [name, p] : j["corpus"].items()) cfg.corpus_paths[name] = resolve(base_dir, p.get<std::string>());
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("config: ") + e.what());
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    const auto text = io::read_text(path);
    const auto j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw DataError(path.string() + ": not valid JSON");
    return config_from_json(j, path.parent_path());
}

void apply_env(Config& cfg, const EnvLookup& getenv_fn) {
    if (const char* e = getenv_fn("REPGATE_ENDPOINT"); e && *e) cfg.detector.endpoint = e;
    if (const char* k = getenv_fn("REPGATE_API_KEY"); k && *k) cfg.detector.api_key = k;
}

}  // namespace repgate
