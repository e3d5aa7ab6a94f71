#include "repgate/detector.hpp"

#include "repgate/error.hpp"
#include "repgate/io.hpp"
#include "repgate/parallel.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <regex>
#include <set>
#include <thread>

namespace repgate::detector {

std::string_view to_string(BackendKind k) {
    switch (k) {
        case BackendKind::http: return "http";
        case BackendKind::replay: return "replay";
        case BackendKind::lexical_stub: return "stub";
    }
    return "replay";
}

BackendKind parse_backend_kind(std::string_view s) {
    if (s == "http") return BackendKind::http;
    if (s == "replay") return BackendKind::replay;
    if (s == "stub" || s == "lexical_stub") return BackendKind::lexical_stub;
    throw UsageError("unknown backend '" + std::string(s) + "' (http, replay, stub)");
}

ReplayTable load_replay(const std::filesystem::path& path) {
    ReplayTable table;
    io::for_each_jsonl(path, [&](const nlohmann::json& j, std::size_t) {
        Prediction p = prediction_from_json(j);
        ReplayKey key{p.sample_id, p.input_format};
        if (table.contains(key)) {
            throw DataError("duplicate replay entry (" + p.sample_id + ", " + std::string(to_string(p.input_format)) + ")");
        }
        table.emplace(std::move(key), std::move(p.verdict));
    });
    return table;
}

protocol::ModelVerdict lexical_stub(std::string_view payload, Representation format, const Triggers& triggers) {
    bool found = false;
    std::string cwe(kNoCwe);
    for (const auto& t : triggers.get(format)) {
        if (!t.pattern.empty() && payload.find(t.pattern) != std::string_view::npos) {
            found = true;
            cwe = t.cwe;
            break;
        }
    }
    return protocol::parse_verdict(protocol::format_verdict(found, found ? cwe : std::string(kNoCwe)));
}

std::string request_body(const DetectorConfig& cfg, const protocol::PromptBundle& bundle) {
    nlohmann::ordered_json j;
    j["model"] = cfg.model_id;
    j["messages"] = nlohmann::ordered_json::array({
        {{"role", "system"}, {"content", bundle.system}},
        {{"role", "user"}, {"content", bundle.user_message()}},
    });
    j["temperature"] = 0;
    j["max_tokens"] = cfg.max_tokens;
    return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

namespace {

protocol::ModelVerdict failure(std::string message) {
    protocol::ModelVerdict v;
    v.status = protocol::ParseStatus::failed;
    v.raw = std::move(message);
    return v;
}

class ReplayBackend final : public Backend {
public:
    explicit ReplayBackend(ReplayTable table) : table_(std::move(table)) {}

    protocol::ModelVerdict query(const PromptItem& item, Representation format) override {
        const auto it = table_.find({item.sample_id, format});
        if (it == table_.end()) return failure("replay: no entry for " + item.sample_id);
        return it->second;
    }

private:
    const ReplayTable table_;
};

class StubBackend final : public Backend {
public:
    explicit StubBackend(Triggers t) : triggers_(std::move(t)) {}

    protocol::ModelVerdict query(const PromptItem& item, Representation format) override {
        return lexical_stub(item.bundle.payload, format, triggers_);
    }

private:
    const Triggers triggers_;
};

class HttpBackend final : public Backend {
public:
    explicit HttpBackend(DetectorConfig cfg) : cfg_(std::move(cfg)) {
        static const std::regex url_re(R"(^(https?)://([^/:]+)(?::([0-9]+))?(/.*)?$)");
        std::smatch m;
        if (!std::regex_match(cfg_.endpoint, m, url_re)) throw BackendError("malformed endpoint URL '" + cfg_.endpoint + "'");
        if (m[1] == "https") throw BackendError("https endpoints are not supported; use a plain http endpoint");
        host_ = m[2];
        port_ = m[3].matched ? std::stoi(m[3]) : 80;
        path_ = m[4].matched ? m[4].str() : "/v1/chat/completions";
        if (cfg_.retry.max_attempts < 1) throw BackendError("retry.max_attempts must be >= 1");
    }

    protocol::ModelVerdict query(const PromptItem& item, Representation) override {
        const std::string body = request_body(cfg_, item.bundle);
        auto delay = cfg_.retry.backoff;
        std::string last_error;
        for (int attempt = 1; attempt <= cfg_.retry.max_attempts; ++attempt) {
            httplib::Client client(host_, port_);
            const auto secs = static_cast<time_t>(cfg_.timeout.count());
            client.set_connection_timeout(secs, 0);
            client.set_read_timeout(secs, 0);
            client.set_write_timeout(secs, 0);
            httplib::Headers headers;
            if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);
            const auto res = client.Post(path_, headers, body, "application/json");

            bool transient = false;
            if (!res) {
                last_error = "http: " + httplib::to_string(res.error());
                transient = true;
            } else if (res->status == 429 || res->status >= 500) {
                last_error = "http: status " + std::to_string(res->status);
                transient = true;
            } else if (res->status != 200) {
                return failure("http: status " + std::to_string(res->status) + ": " + res->body);
            } else {
                const auto j = nlohmann::json::parse(res->body, nullptr, false);
                try {
                    if (j.is_discarded()) return failure("http: response is not JSON");
                    const auto& content = j.at("choices").at(0).at("message").at("content");
                    return protocol::parse_verdict(content.get<std::string>());
                } catch (const nlohmann::json::exception& e) {
                    return failure(std::string("http: unexpected response shape: ") + e.what());
                }
            }
            if (transient && attempt < cfg_.retry.max_attempts) {
                std::this_thread::sleep_for(delay);
                delay *= 2;
            }
        }
        return failure(last_error + " after " + std::to_string(cfg_.retry.max_attempts) + " attempt(s)");
    }

private:
    DetectorConfig cfg_;
    std::string host_;
    int port_ = 80;
    std::string path_;
};

}  // namespace

std::unique_ptr<Backend> make_backend(const DetectorConfig& cfg) {
    switch (cfg.kind) {
        case BackendKind::http:
            if (cfg.endpoint.empty()) throw BackendError("http backend needs an endpoint (config or REPGATE_ENDPOINT)");
            return std::make_unique<HttpBackend>(cfg);
        case BackendKind::replay:
            if (cfg.replay_path.empty()) throw BackendError("replay backend needs a prediction file");
            try {
                return std::make_unique<ReplayBackend>(load_replay(cfg.replay_path));
            } catch (const DataError& e) {
                throw BackendError(std::string("replay: ") + e.what());
            }
        case BackendKind::lexical_stub:
            return std::make_unique<StubBackend>(cfg.triggers);
    }
    throw BackendError("unknown backend");
}

std::vector<Prediction> query_batch(Backend& backend, const std::vector<PromptItem>& prompts, Representation format,
                                    std::size_t concurrency) {
    std::set<std::string> ids;
    for (const auto& p : prompts) {
        if (!ids.insert(p.sample_id).second) throw DataError("duplicate prompt id " + p.sample_id);
    }
    std::vector<Prediction> out(prompts.size());
    parallel_for(prompts.size(), concurrency, [&](std::size_t i) {
        const auto start = std::chrono::steady_clock::now();
        Prediction p;
        p.sample_id = prompts[i].sample_id;
        p.input_format = format;
        try {
            p.verdict = backend.query(prompts[i], format);
        } catch (const std::exception& e) {
            p.verdict = failure(std::string("backend: ") + e.what());
        }
        p.latency = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        out[i] = std::move(p);
    });
    std::sort(out.begin(), out.end(), [](const Prediction& a, const Prediction& b) { return a.sample_id < b.sample_id; });
    return out;
}

std::vector<Prediction> query_batch(const DetectorConfig& cfg, const std::vector<PromptItem>& prompts, Representation format) {
    auto backend = make_backend(cfg);
    return query_batch(*backend, prompts, format, cfg.concurrency);
}

}  // namespace repgate::detector
