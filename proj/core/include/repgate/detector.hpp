#pragma once

#include "repgate/prediction.hpp"
#include "repgate/protocol.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace repgate::detector {

enum class BackendKind { http, replay, lexical_stub };

[[nodiscard]] std::string_view to_string(BackendKind k);
[[nodiscard]] BackendKind parse_backend_kind(std::string_view s);  // accepts "stub" too

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds backoff{250};  // doubled after every failed attempt
};

struct Trigger {
    std::string pattern;
    std::string cwe{kNoCwe};
};

struct Triggers {
    std::vector<Trigger> text;
    std::vector<Trigger> ast;

    [[nodiscard]] const std::vector<Trigger>& get(Representation r) const noexcept { return r == Representation::ast ? ast : text; }
};

struct DetectorConfig {
    BackendKind kind = BackendKind::replay;
    std::string endpoint;  // http://host:port/path
    std::string api_key;
    std::string model_id;
    bool greedy = true;
    int max_tokens = 32;
    RetryPolicy retry;
    std::chrono::seconds timeout{60};
    std::size_t concurrency = 1;
    std::filesystem::path replay_path;
    Triggers triggers;
};

struct PromptItem {
    std::string sample_id;
    protocol::PromptBundle bundle;
};

using ReplayKey = std::pair<std::string, Representation>;
using ReplayTable = std::map<ReplayKey, protocol::ModelVerdict>;

/// Reads a prediction JSONL file. Duplicate (id, format) keys and malformed lines are fatal
/// (DataError naming the line).
[[nodiscard]] ReplayTable load_replay(const std::filesystem::path& path);

/// found iff any trigger for `format` occurs in the payload; the first hit supplies the CWE.
[[nodiscard]] protocol::ModelVerdict lexical_stub(std::string_view payload, Representation format, const Triggers& triggers);

/// Chat-completions request body for one prompt.
[[nodiscard]] std::string request_body(const DetectorConfig& cfg, const protocol::PromptBundle& bundle);

class Backend {
public:
    virtual ~Backend() = default;
    /// Must be safe to call concurrently. Permanent failures return a failed verdict whose raw
    /// text is the error.
    virtual protocol::ModelVerdict query(const PromptItem& item, Representation format) = 0;
};

/// BackendError on unusable configuration (no endpoint, https, unreadable replay file).
[[nodiscard]] std::unique_ptr<Backend> make_backend(const DetectorConfig& cfg);

/// One prediction per prompt, sorted by id, with up to `concurrency` queries in flight.
/// Duplicate ids are a DataError.
[[nodiscard]] std::vector<Prediction> query_batch(Backend& backend, const std::vector<PromptItem>& prompts,
                                                  Representation format, std::size_t concurrency);
[[nodiscard]] std::vector<Prediction> query_batch(const DetectorConfig& cfg, const std::vector<PromptItem>& prompts,
                                                  Representation format);

}  // namespace repgate::detector
