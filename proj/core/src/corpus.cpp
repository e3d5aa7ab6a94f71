#include "repgate/corpus.hpp"

#include "repgate/ast.hpp"
#include "repgate/error.hpp"
#include "repgate/io.hpp"
#include "repgate/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace repgate::corpus {

namespace {

std::string trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

bool parse_bool(const std::string& s, bool& out) {
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "true") {
        out = true;
        return true;
    }
    if (lower == "false") {
        out = false;
        return true;
    }
    return false;
}

std::map<std::string, fs::path> source_index(const fs::path& dir, const std::string& ext) {
    std::map<std::string, fs::path> m;
    for (auto& [stem, path] : io::index_files(dir, ext)) m.emplace(std::move(stem), std::move(path));
    return m;
}

CodeSample benchmark_sample(const ExpectedRow& row, Benchmark b, Language l, std::string source) {
    CodeSample s;
    s.id = row.test_name;
    s.benchmark = b;
    s.language = l;
    s.category = normalize_cwe(std::to_string(row.cwe));
    s.vulnerable = row.vulnerable;
    s.cwe_truth = row.vulnerable ? s.category : std::string(kNoCwe);
    s.source = std::move(source);
    return s;
}

fs::path find_expected_csv(const fs::path& dir) {
    std::error_code ec;
    std::vector<fs::path> found;
    for (fs::directory_iterator it(dir, ec), end; it != end; it.increment(ec)) {
        const auto name = it->path().filename().string();
        if (it->is_regular_file() && name.starts_with("expectedresults") && it->path().extension() == ".csv") {
            found.push_back(it->path());
        }
    }
    if (ec) throw DataError("cannot read directory " + dir.string());
    if (found.empty()) throw DataError("no expectedresults*.csv in " + dir.string());
    std::sort(found.begin(), found.end());
    return found.front();
}

}  // namespace

std::vector<ExpectedRow> read_expected_csv(const fs::path& csv) {
    std::ifstream in(csv, std::ios::binary);
    if (!in) throw DataError("cannot read " + csv.string());
    std::vector<ExpectedRow> rows;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::vector<std::string> cols;
        std::stringstream ss(t);
        std::string cell;
        while (std::getline(ss, cell, ',')) cols.push_back(trim(cell));
        const std::string where = csv.string() + ":" + std::to_string(n) + ": ";
        if (cols.size() < 4) throw DataError(where + "expected 4 columns, got " + std::to_string(cols.size()));
        ExpectedRow r;
        r.test_name = cols[0];
        r.category = cols[1];
        if (r.test_name.empty()) throw DataError(where + "empty test name");
        if (!parse_bool(cols[2], r.vulnerable)) throw DataError(where + "malformed boolean '" + cols[2] + "'");
        const auto& c = cols[3];
        auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), r.cwe);
        if (ec != std::errc{} || ptr != c.data() + c.size() || r.cwe <= 0) throw DataError(where + "malformed CWE number '" + c + "'");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<CodeSample> load_owasp(const fs::path& sources_dir, const fs::path& expected_csv, LoadReport* report) {
    const auto rows = read_expected_csv(expected_csv);
    const auto index = source_index(sources_dir, ".java");
    std::vector<CodeSample> out;
    out.reserve(rows.size());
    std::set<std::string> ids;
    for (const auto& row : rows) {
        if (!ids.insert(row.test_name).second) throw DataError("duplicate test name " + row.test_name);
        const auto it = index.find(row.test_name);
        if (it == index.end()) throw DataError("no source file for " + row.test_name + " under " + sources_dir.string());
        out.push_back(benchmark_sample(row, Benchmark::owasp_java, Language::java, io::read_text(it->second)));
    }
    if (report) {
        report->total = out.size();
        report->negatives = static_cast<std::size_t>(std::count_if(out.begin(), out.end(), [](const CodeSample& s) { return !s.vulnerable; }));
    }
    return out;
}

namespace {

std::vector<CodeSample> read_python_samples(const fs::path& dir) {
    const auto rows = read_expected_csv(find_expected_csv(dir));
    const auto index = source_index(dir, ".py");
    std::vector<CodeSample> out;
    std::set<std::string> ids;
    for (const auto& row : rows) {
        if (!ids.insert(row.test_name).second) throw DataError("duplicate id " + row.test_name);
        const auto it = index.find(row.test_name);
        if (it == index.end()) throw DataError("no source file for " + row.test_name + " under " + dir.string());
        out.push_back(benchmark_sample(row, Benchmark::benchmark_python, Language::python, io::read_text(it->second)));
    }
    return out;
}

PythonBenchmark partition(std::vector<CodeSample> samples, const std::map<std::string, std::pair<bool, std::string>>& outcome) {
    PythonBenchmark pb;
    pb.split.name = SplitName::full;
    for (auto& s : samples) {
        const auto it = outcome.find(s.id);
        if (it != outcome.end() && it->second.first) {
            pb.split.samples.push_back(std::move(s));
        } else {
            const std::string detail = it == outcome.end() ? "no conversion result" : it->second.second;
            pb.split.exclusions.push_back({s.id, std::string(ast::kConversionFailed), s.category, detail});
        }
    }
    std::sort(pb.split.samples.begin(), pb.split.samples.end(), [](const CodeSample& a, const CodeSample& b) { return a.id < b.id; });
    std::sort(pb.split.exclusions.begin(), pb.split.exclusions.end(), [](const Exclusion& a, const Exclusion& b) { return a.id < b.id; });
    pb.per_cwe = tally_exclusions(pb.split.samples, pb.split.exclusions);
    return pb;
}

}  // namespace

PythonBenchmark load_python_benchmark(const fs::path& dir, const std::vector<std::pair<std::string, bool>>& ast_results) {
    std::map<std::string, std::pair<bool, std::string>> outcome;
    for (const auto& [id, ok] : ast_results) {
        if (!outcome.emplace(id, std::make_pair(ok, std::string())).second) throw DataError("duplicate id in AST results: " + id);
    }
    return partition(read_python_samples(dir), outcome);
}

PythonBenchmark load_python_benchmark(const fs::path& dir, std::size_t workers) {
    auto samples = read_python_samples(dir);
    std::vector<std::pair<bool, std::string>> results(samples.size());
    parallel_for(samples.size(), workers, [&](std::size_t i) {
        try {
            samples[i].ast = ast::encode_source(samples[i].source, Language::python);
            results[i] = {true, {}};
        } catch (const SyntaxError& e) {
            results[i] = {false, e.what()};
        }
    });
    std::map<std::string, std::pair<bool, std::string>> outcome;
    for (std::size_t i = 0; i < samples.size(); ++i) outcome.emplace(samples[i].id, results[i]);
    return partition(std::move(samples), outcome);
}

void write_corpus_jsonl(const fs::path& out, const std::vector<CodeSample>& samples) {
    std::string text;
    for (const auto& s : samples) {
        nlohmann::ordered_json j;
        j["id"] = s.id;
        j["benchmark"] = to_string(s.benchmark);
        j["language"] = to_string(s.language);
        j["cwe"] = s.cwe_truth;
        j["category"] = s.category;
        j["vulnerable"] = s.vulnerable;
        j["source"] = s.source;
        if (s.ast) j["ast"] = *s.ast;
        text += io::jsonl_line(j);
    }
    io::write_text(out, text);
}

std::vector<CodeSample> read_corpus_jsonl(const fs::path& in) {
    std::vector<CodeSample> out;
    std::set<std::string> ids;
    io::for_each_jsonl(in, [&](const nlohmann::json& j, std::size_t) {
        if (!j.is_object()) throw DataError("record is not an object");
        CodeSample s;
        s.id = j.at("id").get<std::string>();
        if (!ids.insert(s.id).second) throw DataError("duplicate id " + s.id);
        s.benchmark = parse_benchmark(j.at("benchmark").get<std::string>());
        s.language = parse_language(j.at("language").get<std::string>());
        s.cwe_truth = normalize_cwe(j.at("cwe").get<std::string>());
        s.vulnerable = j.at("vulnerable").get<bool>();
        s.source = j.at("source").get<std::string>();
        if (const auto c = j.find("category"); c != j.end() && !c->is_null()) {
            s.category = normalize_cwe(c->get<std::string>());
        } else {
            s.category = s.cwe_truth;
        }
        if (const auto a = j.find("ast"); a != j.end() && !a->is_null()) s.ast = a->get<std::string>();
        if (s.vulnerable != (s.cwe_truth != kNoCwe)) throw DataError("label of " + s.id + " is inconsistent: vulnerable vs cwe");
        out.push_back(std::move(s));
    });
    return out;
}

std::string sft_target(const CodeSample& sample) {
    return protocol::format_verdict(sample.vulnerable, sample.vulnerable ? sample.cwe_truth : std::string(kNoCwe));
}

SftReport emit_sft_jsonl(const CorpusSplit& split, Representation representation, const fs::path& out,
                         const protocol::Preambles& preambles) {
    SftReport r;
    std::string text;
    for (const auto& s : split.samples) {
        if (representation == Representation::ast && !s.ast) {
            ++r.skipped_missing_ast;
            continue;
        }
        const auto bundle = protocol::build_prompt(s, representation, preambles);
        nlohmann::ordered_json j;
        j["system"] = bundle.system;
        j["input"] = bundle.user_message();
        j["output"] = sft_target(s);
        text += io::jsonl_line(j);
        ++r.written;
    }
    io::write_text(out, text);
    return r;
}

}  // namespace repgate::corpus
