#include "repgate/corpus.hpp"
#include "repgate/io.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace repgate;
using namespace repgate::corpus;
namespace fs = std::filesystem;

TEST(Juliet, ClassifyFunctions) {
    EXPECT_EQ(classify_function("CWE78_x_01_bad"), FunctionKind::bad);
    EXPECT_EQ(classify_function("CWE78_x_01_good"), FunctionKind::good);
    EXPECT_EQ(classify_function("CWE78_x_01_goodG2B1"), FunctionKind::good);
    EXPECT_EQ(classify_function("goodG2B1"), FunctionKind::helper);
    EXPECT_EQ(classify_function("badSink"), FunctionKind::helper);
}

TEST(Juliet, FindFunctionsSeesThroughNamespaces) {
    const auto fns = find_functions("namespace n {\nvoid a_bad() { x(); }\nstatic int helper(int q) { return q; }\n}\n",
                                    Language::cpp);
    ASSERT_EQ(fns.size(), 2u);
    EXPECT_EQ(fns[0].name, "a_bad");
    EXPECT_EQ(fns[1].kind, FunctionKind::helper);
    EXPECT_EQ(fns[1].params, (std::vector<std::string>{"q"}));
}

TEST(Juliet, ScanSkipsMultiFileAndBadNames) {
    const auto scan = scan_juliet(testkit::fixture_dir() / "juliet");
    EXPECT_EQ(scan.cases.size(), 7u);
    EXPECT_EQ(scan.inter_procedural, 2u);
    EXPECT_EQ(scan.skipped.size(), 3u);
    EXPECT_THROW((void)scan_juliet(testkit::fixture_dir() / "missing"), DataError);
}

TEST(Juliet, BuildCorpusFull) {
    JulietOptions opt;
    opt.workers = 4;
    const auto jc = build_juliet_corpus(testkit::fixture_dir() / "juliet", opt);
    ASSERT_EQ(jc.samples.size(), 12u);
    EXPECT_EQ(jc.exclusions.size(), 6u);
    int vulnerable = 0;
    for (const auto& s : jc.samples) {
        vulnerable += s.sample.vulnerable;
        EXPECT_EQ(s.sample.cwe_truth, s.sample.vulnerable ? s.sample.category : std::string(kNoCwe));
        EXPECT_EQ(s.sample.source.find("CWE"), std::string::npos) << s.sample.id;
        EXPECT_EQ(s.sample.source.find("/*"), std::string::npos) << s.sample.id;
        EXPECT_EQ(s.sample.source.find("std_testcase"), std::string::npos) << s.sample.id;
    }
    EXPECT_EQ(vulnerable, 5);
    std::map<std::string, int> reasons;
    for (const auto& e : jc.exclusions) ++reasons[e.reason];
    EXPECT_EQ(reasons["recursion"], 2);
    EXPECT_EQ(reasons["unresolved worker"], 1);
    EXPECT_EQ(reasons["inter-procedural"], 2);

    const auto pilot = select_split(jc.samples, SplitName::pilot);
    EXPECT_EQ(pilot.samples.size(), 4u);
    EXPECT_EQ(select_split(jc.samples, SplitName::full).samples.size(), 12u);
}

TEST(Juliet, WorkerIsInlined) {
    const auto jc = build_juliet_corpus(testkit::fixture_dir() / "juliet");
    for (const auto& s : jc.samples) {
        if (s.sample.id.find("CWE476") == std::string::npos || !s.sample.vulnerable) continue;
        // the _42 source worker is folded into the caller
        EXPECT_EQ(s.sample.source.find("Source("), std::string::npos) << s.sample.source;
        EXPECT_EQ(s.sample.source.find("badSource"), std::string::npos) << s.sample.source;
    }
}

TEST(ExpectedCsv, ParsesAndRejects) {
    const auto dir = testkit::scratch_dir("csv");
    io::write_text(dir / "ok.csv", "# header\nBenchmarkTest00001,sqli,true,89\nBenchmarkTest00002,xss,FALSE,79\n");
    const auto rows = read_expected_csv(dir / "ok.csv");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_TRUE(rows[0].vulnerable);
    EXPECT_FALSE(rows[1].vulnerable);
    EXPECT_EQ(rows[1].cwe, 79);
    io::write_text(dir / "bad.csv", "BenchmarkTest00001,sqli,maybe,89\n");
    try {
        (void)read_expected_csv(dir / "bad.csv");
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find('1'), std::string::npos);
    }
}

TEST(Owasp, LoadsE2eFixture) {
    LoadReport rep;
    const auto dir = testkit::fixture_dir() / "e2e";
    const auto samples = load_owasp(dir / "src", dir / "expectedresults-1.2.csv", &rep);
    EXPECT_EQ(rep.total, samples.size());
    EXPECT_EQ(samples.size(), 34u);
    for (const auto& s : samples) {
        EXPECT_EQ(s.language, Language::java);
        EXPECT_FALSE(s.source.empty());
    }
}

TEST(Owasp, MissingSourceIsFatal) {
    const auto dir = testkit::scratch_dir("owasp-missing");
    io::write_text(dir / "e.csv", "BenchmarkTest09999,sqli,true,89\n");
    fs::create_directories(dir / "src");
    EXPECT_THROW((void)load_owasp(dir / "src", dir / "e.csv"), DataError);
}

TEST(Python, BuiltInConversionExcludesPython2) {
    const auto pb = load_python_benchmark(testkit::fixture_dir() / "pybench", 4);
    EXPECT_EQ(pb.split.samples.size(), 1108u);
    EXPECT_EQ(pb.split.exclusions.size(), 122u);
    for (const auto& s : pb.split.samples) ASSERT_TRUE(s.ast.has_value());
    std::size_t excluded = 0;
    for (const auto& [cwe, t] : pb.per_cwe) excluded += t.excluded;
    EXPECT_EQ(excluded, 122u);
}

TEST(Python, ExternalResults) {
    const auto dir = testkit::fixture_dir() / "pybench";
    std::vector<std::pair<std::string, bool>> results{{"BenchmarkTest00001", true}, {"BenchmarkTest00002", false}};
    const auto pb = load_python_benchmark(dir, results);
    EXPECT_EQ(pb.split.samples.size(), 1u);
    EXPECT_EQ(pb.split.exclusions.size(), 1229u);
    results.emplace_back("BenchmarkTest00001", true);
    EXPECT_THROW((void)load_python_benchmark(dir, results), DataError);
}

TEST(Jsonl, RoundTripAndValidation) {
    CodeSample s;
    s.id = "x/1";
    s.benchmark = Benchmark::juliet;
    s.cwe_truth = "CWE-78";
    s.category = "CWE-78";
    s.vulnerable = true;
    s.source = "int main() { return \"\xc3\xa9\"; }";
    s.ast = "(x)";
    const auto dir = testkit::scratch_dir("jsonl");
    write_corpus_jsonl(dir / "c.jsonl", {s});
    EXPECT_EQ(read_corpus_jsonl(dir / "c.jsonl"), std::vector<CodeSample>{s});

    io::write_text(dir / "bad.jsonl",
                   "{\"id\":\"a\",\"benchmark\":\"juliet\",\"language\":\"c\",\"cwe\":\"N/A\",\"category\":\"CWE-1\","
                   "\"vulnerable\":true,\"source\":\"x\"}\n");
    EXPECT_THROW((void)read_corpus_jsonl(dir / "bad.jsonl"), DataError);
}

TEST(Sft, TargetsAndFile) {
    CodeSample pos;
    pos.id = "p";
    pos.cwe_truth = "CWE-78";
    pos.vulnerable = true;
    pos.source = "x";
    pos.ast = "(x)";
    CodeSample neg;
    neg.id = "n";
    neg.source = "y";
    EXPECT_EQ(sft_target(pos), "{\"found\": true, \"cwe\": \"CWE-78\"}");
    EXPECT_EQ(sft_target(neg), "{\"found\": false, \"cwe\": \"N/A\"}");

    const auto dir = testkit::scratch_dir("sft");
    CorpusSplit split;
    split.samples = {pos, neg};
    const auto rep = emit_sft_jsonl(split, Representation::ast, dir / "sft.jsonl");
    EXPECT_EQ(rep.written, 1u);
    EXPECT_EQ(rep.skipped_missing_ast, 1u);
    std::size_t lines = 0;
    io::for_each_jsonl(dir / "sft.jsonl", [&](const nlohmann::json& j, std::size_t) {
        ++lines;
        EXPECT_EQ(j.at("output"), sft_target(pos));
        EXPECT_TRUE(j.contains("system"));
    });
    EXPECT_EQ(lines, 1u);

    const auto empty = emit_sft_jsonl(CorpusSplit{}, Representation::text, dir / "empty.jsonl");
    EXPECT_EQ(empty.written, 0u);
    EXPECT_TRUE(fs::exists(dir / "empty.jsonl"));
}
