#include "repgate/io.hpp"

#include "repgate/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace repgate::io {

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& p, const std::string& content) {
    std::error_code ec;
    if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + p.string());
    out << content;
    if (!out) throw DataError("write failed: " + p.string());
}

void for_each_jsonl(const fs::path& p, const std::function<void(const nlohmann::json&, std::size_t)>& fn) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read " + p.string());
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw DataError(p.string() + ":" + std::to_string(n) + ": malformed JSON");
        try {
            fn(j, n);
        } catch (const DataError& e) {
            const std::string what = e.what();
            if (what.starts_with(p.string() + ":")) throw;
            throw DataError(p.string() + ":" + std::to_string(n) + ": " + what);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(p.string() + ":" + std::to_string(n) + ": " + e.what());
        }
    }
}

std::string jsonl_line(const nlohmann::ordered_json& j) {
    return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

std::string pretty(const nlohmann::ordered_json& j) {
    return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

std::vector<std::pair<std::string, fs::path>> index_files(const fs::path& root, const std::string& ext) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw DataError("not a readable directory: " + root.string());
    std::vector<fs::path> paths;
    for (fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec), end; it != end;
         it.increment(ec)) {
        if (ec) throw DataError("cannot read directory " + root.string() + ": " + ec.message());
        if (it->is_regular_file() && it->path().extension() == ext) paths.push_back(it->path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<std::pair<std::string, fs::path>> out;
    std::set<std::string> seen;
    for (const auto& p : paths) {
        auto stem = p.stem().string();
        if (seen.insert(stem).second) out.emplace_back(std::move(stem), p);
    }
    return out;
}

}  // namespace repgate::io
