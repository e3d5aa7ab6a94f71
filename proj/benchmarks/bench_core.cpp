#include "repgate/ast.hpp"
#include "repgate/gate.hpp"
#include "repgate/metrics.hpp"
#include "repgate/sanitize.hpp"

#include <benchmark/benchmark.h>

#include <functional>
#include <random>
#include <string>

using namespace repgate;

namespace {

// A Juliet-flavoured C file of roughly `lines` statements.
std::string c_source(int lines) {
    std::string s = "#include \"std_testcase.h\"\n#ifndef OMITBAD\nvoid CWE78_OS_Command_Injection__char_bad()\n{\n";
    for (int i = 0; i < lines; ++i) {
        s += "    int data" + std::to_string(i) + " = " + std::to_string(i) + " * 2; /* FLAW: step */\n";
        s += "    if (data" + std::to_string(i) + " > 10) { printLine(\"value // kept\"); } // note\n";
    }
    s += "}\n#endif /* OMITBAD */\n#ifdef INCLUDEMAIN\nint main() { return 0; }\n#endif\n";
    return s;
}

void BM_Sanitize(benchmark::State& state) {
    const auto src = c_source(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(corpus::sanitize(src, Language::c));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * src.size()));
}
BENCHMARK(BM_Sanitize)->Arg(10)->Arg(100)->Arg(1000);

void BM_EncodeSource(benchmark::State& state) {
    const auto src = corpus::sanitize(c_source(static_cast<int>(state.range(0))), Language::c);
    for (auto _ : state) benchmark::DoNotOptimize(ast::encode_source(src, Language::c));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * src.size()));
}
BENCHMARK(BM_EncodeSource)->Arg(10)->Arg(100)->Arg(1000);

void BM_PruneSerialize(benchmark::State& state) {
    auto tree = ast::parse_generic(corpus::sanitize(c_source(200), Language::c), Language::c);
    // decorate every node the way an external dumper would
    std::function<void(ast::GenericNode&)> decorate = [&](ast::GenericNode& n) {
        n.meta["id_resolved"] = {{"sid", 1}};
        n.meta["id_type"] = nullptr;
        for (auto& c : n.children) decorate(c);
    };
    decorate(tree);
    for (auto _ : state) benchmark::DoNotOptimize(ast::serialize(ast::prune(tree)));
}
BENCHMARK(BM_PruneSerialize);

void BM_McNemarExact(benchmark::State& state) {
    const auto b = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(metrics::mcnemar(b, b / 8));
}
BENCHMARK(BM_McNemarExact)->Arg(20)->Arg(480)->Arg(900);

void BM_GateReport(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::bernoulli_distribution coin(0.5);
    std::vector<gate::PairedPrediction> pairs;
    for (std::int64_t i = 0; i < state.range(0); ++i) pairs.push_back({std::to_string(i), coin(rng), coin(rng), coin(rng)});
    for (auto _ : state) {
        const auto d = gate::apply_gate(pairs);
        benchmark::DoNotOptimize(gate::gate_report(d, pairs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GateReport)->Arg(2740);

}  // namespace

BENCHMARK_MAIN();
