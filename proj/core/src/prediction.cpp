#include "repgate/prediction.hpp"

#include "repgate/error.hpp"
#include "repgate/io.hpp"

namespace repgate {

nlohmann::ordered_json to_json(const Prediction& p) {
    nlohmann::ordered_json j;
    j["id"] = p.sample_id;
    j["input_format"] = to_string(p.input_format);
    if (p.verdict.found) j["found"] = *p.verdict.found;
    if (p.verdict.cwe) j["cwe"] = *p.verdict.cwe;
    j["parse_status"] = protocol::to_string(p.verdict.status);
    j["raw"] = p.verdict.raw;
    return j;
}

Prediction prediction_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw DataError("prediction is not an object");
    Prediction p;
    p.sample_id = j.at("id").get<std::string>();
    p.input_format = parse_representation(j.at("input_format").get<std::string>());
    p.verdict.status = protocol::parse_status(j.at("parse_status").get<std::string>());
    p.verdict.raw = j.value("raw", std::string());
    const bool failed = p.verdict.status == protocol::ParseStatus::failed;
    if (const auto f = j.find("found"); f != j.end() && !f->is_null()) {
        if (failed) throw DataError("failed prediction " + p.sample_id + " carries a verdict");
        p.verdict.found = f->get<bool>();
    }
    if (const auto c = j.find("cwe"); c != j.end() && !c->is_null()) {
        if (failed) throw DataError("failed prediction " + p.sample_id + " carries a verdict");
        p.verdict.cwe = normalize_cwe(c->get<std::string>());
    }
    if (!failed && !p.verdict.found) throw DataError("prediction " + p.sample_id + " has no `found`");
    if (!failed && !p.verdict.cwe) p.verdict.cwe = std::string(kNoCwe);
    return p;
}

void write_predictions(const std::filesystem::path& out, const std::vector<Prediction>& preds) {
    std::string text;
    for (const auto& p : preds) text += io::jsonl_line(to_json(p));
    io::write_text(out, text);
}

std::vector<Prediction> read_predictions(const std::filesystem::path& in) {
    std::vector<Prediction> out;
    io::for_each_jsonl(in, [&](const nlohmann::json& j, std::size_t) { out.push_back(prediction_from_json(j)); });
    return out;
}

}  // namespace repgate
