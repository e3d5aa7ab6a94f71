#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace repgate::io {

namespace fs = std::filesystem;

/// Throws DataError when the file cannot be read.
[[nodiscard]] std::string read_text(const fs::path& p);

/// Creates parent directories; throws DataError on failure.
void write_text(const fs::path& p, const std::string& content);

/// Calls fn(record, line_number) for every non-blank line. Malformed JSON throws DataError
/// naming the file and line.
void for_each_jsonl(const fs::path& p, const std::function<void(const nlohmann::json&, std::size_t)>& fn);

/// One compact line, UTF-8 kept as is (invalid bytes replaced), `\n`-terminated.
[[nodiscard]] std::string jsonl_line(const nlohmann::ordered_json& j);

/// Pretty-printed document with a trailing newline.
[[nodiscard]] std::string pretty(const nlohmann::ordered_json& j);

/// `.ext` files under `root`, keyed by file stem. First match in path order wins.
[[nodiscard]] std::vector<std::pair<std::string, fs::path>> index_files(const fs::path& root, const std::string& ext);

}  // namespace repgate::io
