#pragma once

#include "repgate/detector.hpp"
#include "repgate/metrics.hpp"
#include "repgate/protocol.hpp"
#include "repgate/sanitize.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace repgate {

/// Everything a run can be configured with, from one JSON document.
struct Config {
    detector::DetectorConfig detector;
    protocol::Preambles preambles;
    corpus::SanitizeOptions sanitize;
    std::vector<metrics::Stratum> strata;
    std::map<std::string, std::string> cwe_parents;  // child -> parent
    std::map<std::string, std::filesystem::path> corpus_paths;
};

/// Unknown top-level keys are rejected so typos surface; DataError with the offending key.
[[nodiscard]] Config config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
[[nodiscard]] Config load_config(const std::filesystem::path& path);

using EnvLookup = std::function<const char*(const char*)>;

/// REPGATE_ENDPOINT and REPGATE_API_KEY override the file.
void apply_env(Config& cfg, const EnvLookup& getenv_fn);

[[nodiscard]] std::vector<metrics::Stratum> strata_from_json(const nlohmann::json& j);

}  // namespace repgate
