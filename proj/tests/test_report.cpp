#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sndgaze/report.hpp"
#include "sndgaze/synth.hpp"

using namespace sndgaze;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// one shared synthetic dataset for the pipeline tests
const fs::path& dataset_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "report_dataset";
        SynthSpec spec;
        spec.n_words = 60;
        spec.dimension = 32;
        spec.clusters = {{30, 10.0, 0.01}};
        spec.scatter_spread = 10.0;
        spec.gaze_effect_ms = 40.0;
        spec.noise_sd_ms = 10.0;
        spec.n_participants = 6;
        spec.seed = 5;
        write_synth(generate(spec), d.string());
        return d;
    }();
    return dir;
}

RunConfig pipeline_config(const std::string& out_name) {
    RunConfig config;
    config.vocab_csv = (dataset_dir() / "vocab.csv").string();
    config.embedding_jsonl = (dataset_dir() / "embeddings.jsonl").string();
    config.fixation_csv = (dataset_dir() / "fixations.csv").string();
    config.exhaustive_pairs = true;
    config.n_perm = 300;
    config.seed = 11;
    config.out_dir = (fs::temp_directory_path() / out_name).string();
    return config;
}

}  // namespace

TEST_CASE("pipeline produces the full analysis grid") {
    auto bundle = run_pipeline(pipeline_config("report_run1"));
    CHECK(bundle.model_free.size() == 12);  // 3 comparisons x 4 metrics
    CHECK(bundle.model_based.size() == 8);  // 4 metrics x {median, quartile}
    for (const char* name : {"vocab.csv", "snd.csv", "snd.csv.meta.json", "gaze.csv",
                             "model_free.csv", "model_based.csv", "annotations.csv",
                             "manifest.json"})
        CHECK(fs::exists(fs::path(bundle.config.out_dir) / name));
}

TEST_CASE("two runs with the same config and seed are byte-identical") {
    auto c1 = pipeline_config("report_det1");
    auto c2 = pipeline_config("report_det2");
    run_pipeline(c1);
    run_pipeline(c2);
    for (const char* name : {"vocab.csv", "snd.csv", "snd.csv.meta.json", "gaze.csv",
                             "model_free.csv", "model_based.csv", "annotations.csv",
                             "manifest.json"}) {
        auto a = slurp(fs::path(c1.out_dir) / name);
        CHECK(!a.empty());
        CHECK(a == slurp(fs::path(c2.out_dir) / name));
    }
}

TEST_CASE("missing embedding file aborts at the config/snd stage") {
    auto config = pipeline_config("report_missing");
    config.embedding_jsonl = "/nonexistent/embeddings.jsonl";
    CHECK_THROWS_AS(run_pipeline(config), StageError);
}

TEST_CASE("emit_tables is idempotent and covers all formats") {
    auto bundle = run_pipeline(pipeline_config("report_emit"));
    auto out = fs::temp_directory_path() / "report_tables";
    emit_tables(bundle, out.string(), TableFormat::Markdown);
    auto first = slurp(out / "model_free.md");
    emit_tables(bundle, out.string(), TableFormat::Markdown);
    CHECK(slurp(out / "model_free.md") == first);
    CHECK(first.find("| metric |") != std::string::npos);

    emit_tables(bundle, out.string(), TableFormat::Json);
    CHECK(fs::exists(out / "model_free.json"));
    CHECK(fs::exists(out / "model_based.json"));
    emit_tables(bundle, out.string(), TableFormat::Csv);
    CHECK(fs::exists(out / "model_free.csv"));
}

TEST_CASE("markdown bolds FDR-significant rows") {
    ReportBundle bundle;
    ComparisonResult sig;
    sig.metric = GazeMetric::FFD;
    sig.comparison = "X_vs_Y";
    sig.n1 = sig.n2 = 10;
    sig.p = 0.001;
    sig.p_fdr = 0.004;
    ComparisonResult nonsig = sig;
    nonsig.p = 0.4;
    nonsig.p_fdr = 0.6;
    bundle.model_free = {sig, nonsig};
    auto out = fs::temp_directory_path() / "report_md";
    emit_tables(bundle, out.string(), TableFormat::Markdown);
    auto text = slurp(out / "model_free.md");
    CHECK(text.find("**0.004**") != std::string::npos);
    CHECK(text.find("**0.600**") == std::string::npos);
}

TEST_CASE("run config loads from JSON") {
    auto path = fs::temp_directory_path() / "run_config.json";
    {
        std::ofstream out(path);
        out << R"({"vocab_csv": "v.csv", "embedding_jsonl": "e.jsonl",
                   "fixation_csv": "f.csv", "language": "java",
                   "n_pairs": 500, "n_perm": 100, "seed": 9,
                   "rpd_aggregate": "sum", "out_dir": "/tmp/x"})";
    }
    auto config = load_run_config(path.string());
    CHECK(config.language == Language::Java);
    CHECK(config.n_pairs == 500);
    CHECK(config.n_perm == 100);
    CHECK(config.seed == 9);
    CHECK(config.rpd_aggregate == RpdAggregate::Sum);
    CHECK(config.out_dir == "/tmp/x");
}
