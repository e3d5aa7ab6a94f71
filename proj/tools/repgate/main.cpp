// repgate command-line front end. Every verb reads and writes plain files so runs can be
// chained in shell scripts or CI.

#include "repgate/ast.hpp"
#include "repgate/config.hpp"
#include "repgate/corpus.hpp"
#include "repgate/detector.hpp"
#include "repgate/error.hpp"
#include "repgate/gate.hpp"
#include "repgate/io.hpp"
#include "repgate/metrics.hpp"
#include "repgate/prediction.hpp"
#include "repgate/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace repgate;

namespace {

struct Globals {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

fs::path under_out(const Globals& g, const std::string& p) {
    fs::path path(p);
    if (path.is_relative() && !g.out_dir.empty()) return fs::path(g.out_dir) / path;
    return path;
}

Config load_effective_config(const Globals& g) {
    Config cfg = g.config_path.empty() ? Config{} : load_config(g.config_path);
    apply_env(cfg, [](const char* name) { return std::getenv(name); });
    return cfg;
}

json read_json_file(const fs::path& p) {
    auto j = json::parse(io::read_text(p), nullptr, false);
    if (j.is_discarded()) throw DataError(p.string() + ": not valid JSON");
    return j;
}

void write_exclusions(const fs::path& out, const std::vector<Exclusion>& ex) {
    std::string body;
    for (const auto& e : ex) {
        ordered_json j;
        j["id"] = e.id;
        j["reason"] = e.reason;
        j["category"] = e.category;
        if (!e.detail.empty()) j["detail"] = e.detail;
        body += io::jsonl_line(j);
    }
    io::write_text(out, body);
}

void print_tally(const ExclusionTable& t) {
    for (const auto& [cwe, tally] : t) {
        std::cerr << "  " << cwe << ": retained " << tally.retained << ", excluded " << tally.excluded << '\n';
    }
}

// external dumps: a directory of per-sample JSON files, or one JSONL file of {"id","tree"}
std::map<std::string, ast::GenericNode> load_external(const fs::path& p) {
    std::map<std::string, ast::GenericNode> out;
    auto add = [&](const std::string& id, const json& tree) {
        if (!out.emplace(id, ast::from_json_dump(tree)).second) throw DataError("duplicate external dump for " + id);
    };
    if (fs::is_directory(p)) {
        for (const auto& [stem, file] : io::index_files(p, ".json")) {
            const auto j = read_json_file(file);
            if (j.is_object() && j.contains("id") && j.contains("tree")) {
                add(j["id"].get<std::string>(), j["tree"]);
            } else {
                add(stem, j);
            }
        }
    } else {
        io::for_each_jsonl(p, [&](const json& j, std::size_t) { add(j.at("id").get<std::string>(), j.at("tree")); });
    }
    return out;
}

std::vector<metrics::NegativeSample> negatives_for(const std::vector<CodeSample>& corpus, const std::string& category,
                                                   Representation payload) {
    std::vector<metrics::NegativeSample> out;
    const auto cat = normalize_cwe(category);
    for (const auto& s : corpus) {
        if (s.vulnerable || s.category != cat) continue;
        if (payload == Representation::ast && !s.ast) throw DataError(s.id + " has no AST for stratification");
        out.push_back({s.id, payload == Representation::ast ? *s.ast : s.source});
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"repgate: text/AST consistency evaluation for vulnerability detectors"};
    app.require_subcommand(1);
    Globals g;
    std::uint64_t seed = 0;
    app.add_option("--config", g.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("--seed", seed, "recorded in report metadata; computation is deterministic");
    app.add_option("--out", g.out_dir, "base directory for relative output paths and report files");

    // ingest ---------------------------------------------------------------------------------
    auto* ingest = app.add_subcommand("ingest", "build a corpus JSONL from a benchmark");
    ingest->require_subcommand(1);

    std::string j_root, j_split = "full", j_out, j_excl, j_sft;
    auto* juliet = ingest->add_subcommand("juliet", "Juliet C/C++ test suite");
    juliet->add_option("--root", j_root, "testcases directory")->required();
    juliet->add_option("--split", j_split, "pilot|full")->check(CLI::IsMember({"pilot", "full"}));
    juliet->add_option("--out", j_out, "corpus JSONL")->required();
    juliet->add_option("--exclusions", j_excl, "exclusion JSONL");
    juliet->add_option("--sft", j_sft, "also write text SFT JSONL");

    std::string o_src, o_csv, o_out;
    auto* owasp = ingest->add_subcommand("owasp", "OWASP Benchmark (Java)");
    owasp->add_option("--src", o_src, "source directory")->required();
    owasp->add_option("--expected", o_csv, "expected-results CSV")->required();
    owasp->add_option("--out", o_out, "corpus JSONL")->required();

    std::string p_src, p_out, p_excl;
    auto* pybench = ingest->add_subcommand("pybench", "Python benchmark (AST attached, failures excluded)");
    pybench->add_option("--src", p_src, "benchmark directory")->required();
    pybench->add_option("--out", p_out, "corpus JSONL")->required();
    pybench->add_option("--exclusions", p_excl, "exclusion JSONL");

    // encode ---------------------------------------------------------------------------------
    std::string e_in, e_out, e_dumps, e_excl, e_sft;
    auto* encode = app.add_subcommand("encode", "attach pruned AST S-expressions to a corpus");
    encode->add_option("--in", e_in, "corpus JSONL")->required();
    encode->add_option("--out", e_out, "corpus JSONL with ast")->required();
    encode->add_option("--external-dumps", e_dumps, "directory of JSON trees or JSONL of {id, tree}");
    encode->add_option("--exclusions", e_excl, "exclusion JSONL");
    encode->add_option("--sft", e_sft, "also write AST SFT JSONL");

    // eval -----------------------------------------------------------------------------------
    std::string v_corpus, v_format = "text", v_backend, v_out, v_replay, v_endpoint, v_model;
    std::size_t v_conc = 0;
    auto* eval = app.add_subcommand("eval", "run a detector over a corpus");
    eval->add_option("--corpus", v_corpus, "corpus JSONL")->required();
    eval->add_option("--format", v_format, "text|ast")->check(CLI::IsMember({"text", "ast"}));
    eval->add_option("--backend", v_backend, "http|replay|stub (default from config)")->check(CLI::IsMember({"http", "replay", "stub"}));
    eval->add_option("--out", v_out, "prediction JSONL")->required();
    eval->add_option("--replay", v_replay, "prediction JSONL to replay");
    eval->add_option("--endpoint", v_endpoint, "http endpoint URL");
    eval->add_option("--model-id", v_model, "model name sent to the endpoint");
    eval->add_option("--concurrency", v_conc, "in-flight cap")->check(CLI::PositiveNumber);

    // score ----------------------------------------------------------------------------------
    std::string s_preds, s_labels, s_out;
    auto* score = app.add_subcommand("score", "confusion counts and metrics for one prediction file");
    score->add_option("--preds", s_preds, "prediction JSONL")->required();
    score->add_option("--labels", s_labels, "corpus JSONL")->required();
    score->add_option("--out", s_out, "score JSON")->required();

    // gate -----------------------------------------------------------------------------------
    std::string g_text, g_ast, g_labels, g_out, g_decisions;
    bool g_cwe = false;
    auto* gatecmd = app.add_subcommand("gate", "text/AST consistency gate");
    gatecmd->add_option("--text", g_text, "text-path prediction JSONL")->required();
    gatecmd->add_option("--ast", g_ast, "AST-path prediction JSONL")->required();
    gatecmd->add_option("--labels", g_labels, "corpus JSONL")->required();
    gatecmd->add_option("--out", g_out, "gate report JSON")->required();
    gatecmd->add_option("--decisions", g_decisions, "per-sample decision JSONL");
    gatecmd->add_flag("--require-cwe-match", g_cwe, "promote only when predicted CWEs agree too");

    // mcnemar --------------------------------------------------------------------------------
    std::string m_a, m_b, m_labels, m_out;
    std::vector<std::int64_t> m_counts;
    bool m_neg = false;
    auto* mc = app.add_subcommand("mcnemar", "paired significance test");
    mc->add_option("--a", m_a, "prediction JSONL of condition A");
    mc->add_option("--b", m_b, "prediction JSONL of condition B");
    mc->add_option("--labels", m_labels, "corpus JSONL");
    mc->add_option("--discordant", m_counts, "b c counts instead of prediction files")->expected(2);
    mc->add_flag("--negatives-only", m_neg, "compare on safe samples only");
    mc->add_option("--out", m_out, "result JSON (stdout when omitted)");

    // report ---------------------------------------------------------------------------------
    std::string r_manifest;
    auto* reportcmd = app.add_subcommand("report", "render tables and plot data");
    reportcmd->add_option("--manifest", r_manifest, "run manifest JSON")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (*seed_opt) g.seed = seed;
    // validated up front so a bad --config fails every verb the same way
    const Config base_cfg = load_effective_config(g);

    if (*juliet) {
        Config cfg = base_cfg;
        corpus::JulietOptions opts;
        opts.sanitize = cfg.sanitize;
        opts.workers = cfg.detector.concurrency;
        const auto built = corpus::build_juliet_corpus(j_root, opts);
        const auto split = corpus::select_split(built.samples, parse_split(j_split));
        corpus::write_corpus_jsonl(under_out(g, j_out), split.samples);
        auto excl = built.exclusions;
        excl.insert(excl.end(), split.exclusions.begin(), split.exclusions.end());
        if (!j_excl.empty()) write_exclusions(under_out(g, j_excl), excl);
        if (!j_sft.empty()) corpus::emit_sft_jsonl(split, Representation::text, under_out(g, j_sft), cfg.preambles);
        for (const auto& w : built.warnings) std::cerr << "warning: " << w << '\n';
        std::cerr << "juliet: " << split.samples.size() << " samples (" << j_split << "), " << built.exclusions.size()
                  << " exclusions, " << built.inter_procedural << " inter-procedural files skipped\n";
        return 0;
    }
    if (*owasp) {
        corpus::LoadReport rep;
        const auto samples = corpus::load_owasp(o_src, o_csv, &rep);
        corpus::write_corpus_jsonl(under_out(g, o_out), samples);
        std::cerr << "owasp: " << rep.total << " samples, " << rep.negatives << " negatives\n";
        return 0;
    }
    if (*pybench) {
        const Config cfg = base_cfg;
        const auto bench = corpus::load_python_benchmark(p_src, cfg.detector.concurrency);
        corpus::write_corpus_jsonl(under_out(g, p_out), bench.split.samples);
        if (!p_excl.empty()) write_exclusions(under_out(g, p_excl), bench.split.exclusions);
        std::cerr << "pybench: " << bench.split.samples.size() << " retained, " << bench.split.exclusions.size() << " excluded\n";
        print_tally(bench.per_cwe);
        return 0;
    }
    if (*encode) {
        const Config cfg = base_cfg;
        auto samples = corpus::read_corpus_jsonl(e_in);
        ast::EncodeOptions opts;
        opts.workers = cfg.detector.concurrency;
        if (!e_dumps.empty()) opts.external = load_external(e_dumps);
        const auto res = ast::encode_corpus(samples, opts);
        std::map<std::string, const ast::EncodedSample*> by_id;
        for (const auto& e : res.encoded) by_id[e.sample_id] = &e;
        std::vector<CodeSample> kept;
        for (auto& s : samples) {
            const auto it = by_id.find(s.id);
            if (it == by_id.end()) continue;
            s.ast = it->second->ast_text;
            kept.push_back(std::move(s));
        }
        corpus::write_corpus_jsonl(under_out(g, e_out), kept);
        if (!e_excl.empty()) write_exclusions(under_out(g, e_excl), res.exclusions);
        if (!e_sft.empty()) {
            CorpusSplit split;
            split.samples = kept;
            corpus::emit_sft_jsonl(split, Representation::ast, under_out(g, e_sft), cfg.preambles);
        }
        std::cerr << "encode: " << kept.size() << " encoded, " << res.exclusions.size() << " failed, mean size ratio "
                  << res.mean_size_ratio() << '\n';
        return 0;
    }
    if (*eval) {
        Config cfg = base_cfg;
        auto& d = cfg.detector;
        if (!v_backend.empty()) d.kind = detector::parse_backend_kind(v_backend);
        if (!v_replay.empty()) d.replay_path = v_replay;
        if (!v_endpoint.empty()) d.endpoint = v_endpoint;
        if (!v_model.empty()) d.model_id = v_model;
        if (v_conc > 0) d.concurrency = v_conc;
        const auto fmt = parse_representation(v_format);
        const auto samples = corpus::read_corpus_jsonl(v_corpus);
        std::vector<detector::PromptItem> prompts;
        prompts.reserve(samples.size());
        for (const auto& s : samples) prompts.push_back({s.id, protocol::build_prompt(s, fmt, cfg.preambles)});
        const auto preds = detector::query_batch(d, prompts, fmt);
        write_predictions(under_out(g, v_out), preds);
        std::size_t failed = 0;
        for (const auto& p : preds) failed += p.scored() ? 0 : 1;
        std::cerr << "eval: " << preds.size() << " predictions (" << to_string(d.kind) << ", " << v_format << "), " << failed
                  << " parse failures\n";
        return 0;
    }
    if (*score) {
        const auto labels = metrics::labels_of(corpus::read_corpus_jsonl(s_labels));
        const auto preds = read_predictions(s_preds);
        const auto scored = metrics::confusion(preds, labels);
        const auto pc = metrics::per_cwe(preds, labels);
        io::write_text(under_out(g, s_out), io::pretty(report::score_json(scored.counts, pc, scored.failed_ids)));
        const auto ms = metrics::metric_set(scored.counts);
        std::cerr << "score: recall " << metrics::format_fixed(ms.recall, 4) << ", fpr " << metrics::format_fixed(ms.fpr, 4) << ", f1 "
                  << metrics::format_fixed(ms.f1, 4) << '\n';
        return 0;
    }
    if (*gatecmd) {
        const auto labels = metrics::labels_of(corpus::read_corpus_jsonl(g_labels));
        const auto paired = gate::pair(read_predictions(g_text), read_predictions(g_ast), labels);
        gate::GateOptions opts;
        opts.require_cwe_match = g_cwe;
        const auto decisions = gate::apply_gate(paired.pairs, opts);
        const auto rep = gate::gate_report(decisions, paired.pairs);
        ordered_json j = gate::to_json(rep);
        j["pairs"] = paired.pairs.size();
        j["parse_failures"] = paired.parse_failures;
        ordered_json ex = ordered_json::array();
        for (const auto& e : paired.excluded) ex.push_back({{"id", e.id}, {"reason", e.reason}});
        j["excluded"] = std::move(ex);
        j["mcnemar_negatives"] = metrics::to_json(metrics::mcnemar(rep.eliminated_fp, rep.new_ast_only_fp));
        io::write_text(under_out(g, g_out), io::pretty(j));
        if (!g_decisions.empty()) {
            std::string body;
            for (const auto& dsn : decisions) body += io::jsonl_line(gate::to_json(dsn));
            io::write_text(under_out(g, g_decisions), body);
        }
        std::cerr << "gate: eliminated " << rep.eliminated_fp << " of " << rep.text_counts.fp << " text FPs, persistent "
                  << rep.persistent_fp << ", fpr " << metrics::format_fixed(rep.fpr_before, 3) << " -> "
                  << metrics::format_fixed(rep.fpr_after, 3) << '\n';
        return 0;
    }
    if (*mc) {
        metrics::McNemarResult r;
        if (!m_counts.empty()) {
            if (!m_a.empty() || !m_b.empty()) throw UsageError("--discordant excludes --a/--b");
            r = metrics::mcnemar(m_counts[0], m_counts[1]);
        } else {
            if (m_a.empty() || m_b.empty() || m_labels.empty()) throw UsageError("mcnemar needs --a, --b and --labels, or --discordant B C");
            const auto labels = metrics::labels_of(corpus::read_corpus_jsonl(m_labels));
            const auto a = read_predictions(m_a);
            const auto b = read_predictions(m_b);
            std::map<std::string, bool> a_correct;
            for (const auto& p : a) {
                const auto it = labels.find(p.sample_id);
                if (it == labels.end()) throw DataError("no label for " + p.sample_id);
                if (p.scored() && (!m_neg || !it->second.vulnerable)) a_correct[p.sample_id] = p.positive() == it->second.vulnerable;
            }
            std::vector<std::pair<bool, bool>> paired;
            for (const auto& p : b) {
                const auto it = a_correct.find(p.sample_id);
                if (it == a_correct.end() || !p.scored()) continue;
                paired.emplace_back(it->second, p.positive() == labels.at(p.sample_id).vulnerable);
            }
            if (paired.empty()) throw DataError("no common scored samples");
            r = metrics::mcnemar(paired);
        }
        const auto body = io::pretty(metrics::to_json(r));
        if (m_out.empty()) {
            std::cout << body;
        } else {
            io::write_text(under_out(g, m_out), body);
        }
        return 0;
    }
    if (*reportcmd) {
        const Config cfg = base_cfg;
        const fs::path manifest_path(r_manifest);
        const fs::path base = manifest_path.parent_path();
        json manifest = read_json_file(manifest_path);
        // strata can be computed here from a corpus and per-condition predictions
        if (manifest.contains("strata") && manifest["strata"].is_object() && manifest["strata"].contains("corpus")) {
            const auto& sj = manifest["strata"];
            auto rel = [&](const std::string& p) { return fs::path(p).is_relative() ? base / p : fs::path(p); };
            const auto corpus_samples = corpus::read_corpus_jsonl(rel(sj.at("corpus").get<std::string>()));
            const auto payload = parse_representation(sj.value("payload", std::string("text")));
            const auto negatives = negatives_for(corpus_samples, sj.at("category").get<std::string>(), payload);
            const auto strata = sj.contains("matchers") ? strata_from_json(sj["matchers"]) : cfg.strata;
            if (strata.empty()) throw DataError("strata: no matchers in manifest or config");
            std::vector<metrics::ConditionVerdicts> conds;
            for (const auto& c : sj.at("conditions")) {
                conds.push_back(metrics::verdicts_of(c.at("name").get<std::string>(), read_predictions(rel(c.at("preds").get<std::string>()))));
            }
            manifest["strata"] = json::parse(report::to_json(metrics::stratified_fpr(negatives, strata, conds)).dump());
        }
        auto input = report::load_manifest(manifest, base);
        if (g.seed) input.metadata = {{"seed", *g.seed}};
        const auto rendered = report::render_tables(input);
        const fs::path out = g.out_dir.empty() ? fs::path(".") : fs::path(g.out_dir);
        report::write_rendered(rendered, out);
        for (const auto& w : rendered.warnings) std::cerr << "warning: " << w << '\n';
        std::cerr << "report: " << rendered.files.size() << " files in " << out.string() << '\n';
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::usage: return 1;
            case ErrorKind::data: return 2;
            case ErrorKind::backend: return 3;
        }
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
