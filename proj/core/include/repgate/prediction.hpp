#pragma once

#include "repgate/protocol.hpp"
#include "repgate/types.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

namespace repgate {

/// One detector verdict for one (sample, representation) pair.
struct Prediction {
    std::string sample_id;
    Representation input_format = Representation::text;
    protocol::ModelVerdict verdict;
    std::chrono::milliseconds latency{0};  // not persisted, keeps files reproducible

    [[nodiscard]] bool scored() const noexcept { return verdict.status != protocol::ParseStatus::failed; }
    [[nodiscard]] bool positive() const noexcept { return verdict.found.value_or(false); }
};

/// `{"id","input_format","found"?,"cwe"?,"parse_status","raw"}`
[[nodiscard]] nlohmann::ordered_json to_json(const Prediction& p);
[[nodiscard]] Prediction prediction_from_json(const nlohmann::json& j);

void write_predictions(const std::filesystem::path& out, const std::vector<Prediction>& preds);
[[nodiscard]] std::vector<Prediction> read_predictions(const std::filesystem::path& in);

}  // namespace repgate
