#include "repgate/types.hpp"

#include "repgate/error.hpp"

#include <cctype>
#include <charconv>
#include <regex>

namespace repgate {

std::string_view to_string(Benchmark b) {
    switch (b) {
        case Benchmark::juliet: return "juliet";
        case Benchmark::owasp_java: return "owasp_java";
        case Benchmark::benchmark_python: return "benchmark_python";
    }
    return "juliet";
}

std::string_view to_string(Language l) {
    switch (l) {
        case Language::c: return "c";
        case Language::cpp: return "cpp";
        case Language::java: return "java";
        case Language::python: return "python";
    }
    return "c";
}

std::string_view to_string(Representation r) {
    return r == Representation::text ? "text" : "ast";
}

std::string_view to_string(SplitName s) {
    return s == SplitName::pilot ? "pilot" : "full";
}

Benchmark parse_benchmark(std::string_view s) {
    if (s == "juliet") return Benchmark::juliet;
    if (s == "owasp_java") return Benchmark::owasp_java;
    if (s == "benchmark_python") return Benchmark::benchmark_python;
    throw DataError("unknown benchmark '" + std::string(s) + "'");
}

Language parse_language(std::string_view s) {
    if (s == "c") return Language::c;
    if (s == "cpp" || s == "c++") return Language::cpp;
    if (s == "java") return Language::java;
    if (s == "python") return Language::python;
    throw DataError("unknown language '" + std::string(s) + "'");
}

Representation parse_representation(std::string_view s) {
    if (s == "text") return Representation::text;
    if (s == "ast") return Representation::ast;
    throw DataError("unknown input format '" + std::string(s) + "' (expected text|ast)");
}

SplitName parse_split(std::string_view s) {
    if (s == "pilot") return SplitName::pilot;
    if (s == "full") return SplitName::full;
    throw UsageError("unknown split '" + std::string(s) + "' (expected pilot|full)");
}

std::string normalize_cwe(std::string_view raw) {
    std::string_view s = raw;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

    auto digits_at = [&](std::size_t pos) {
        std::size_t end = pos;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        return end;
    };
    auto format = [](std::string_view digits) -> std::string {
        while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
        return "CWE-" + std::string(digits);
    };

    // Bare number.
    if (!s.empty() && digits_at(0) == s.size()) return format(s);

    static const std::regex cwe_re(R"(cwe[-_ :]?\s*([0-9]+))", std::regex::icase);
    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_search(s.begin(), s.end(), m, cwe_re)) {
        return format(std::string_view(&*m[1].first, static_cast<std::size_t>(m[1].length())));
    }
    return std::string(kNoCwe);
}

int cwe_number(std::string_view cwe) {
    if (cwe.size() < 5 || cwe.substr(0, 4) != "CWE-") return -1;
    int n = -1;
    auto [ptr, ec] = std::from_chars(cwe.data() + 4, cwe.data() + cwe.size(), n);
    if (ec != std::errc{} || ptr != cwe.data() + cwe.size()) return -1;
    return n;
}

bool CweLess::operator()(const std::string& a, const std::string& b) const {
    const int na = cwe_number(a);
    const int nb = cwe_number(b);
    if (na < 0 || nb < 0) {
        if (na >= 0) return true;
        if (nb >= 0) return false;
        return a < b;
    }
    return na < nb;
}

double CategoryTally::exclusion_rate() const noexcept {
    const std::size_t n = total();
    return n == 0 ? 0.0 : static_cast<double>(excluded) / static_cast<double>(n);
}

ExclusionTable tally_exclusions(const std::vector<CodeSample>& retained, const std::vector<Exclusion>& excluded) {
    ExclusionTable table;
    for (const auto& s : retained) ++table[s.category].retained;
    for (const auto& e : excluded) ++table[e.category].excluded;
    return table;
}

}  // namespace repgate
