#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sndgaze/partition.hpp"
#include "sndgaze/snd.hpp"
#include "sndgaze/synth.hpp"

using namespace sndgaze;

namespace {

SynthSpec small_spec() {
    SynthSpec spec;
    spec.n_words = 40;
    spec.dimension = 32;
    spec.clusters = {{20, 10.0, 0.01}};
    spec.scatter_spread = 10.0;
    spec.gaze_effect_ms = 30.0;
    spec.noise_sd_ms = 10.0;
    spec.n_participants = 4;
    spec.seed = 17;
    return spec;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("generated data has the declared shape") {
    auto out = generate(small_spec());
    CHECK(out.table.vectors.size() == 40);
    CHECK(out.table.dimension == 32);
    CHECK(out.vocab.counts.size() == 40);
    CHECK(out.fixations.size() == 40 * 4);
    CHECK(!out.planted.empty());
}

TEST_CASE("cluster words have strictly higher ARC than scattered words") {
    auto out = generate(small_spec());
    SndConfig config;
    config.exhaustive_pairs = true;
    auto snd = compute_all_snd(out.vocab, out.table, config);
    // cluster words are w00000..w00019
    for (int i = 0; i < 20; ++i)
        for (int j = 20; j < 40; ++j) {
            char a[16], b[16];
            std::snprintf(a, sizeof(a), "w%05d", i);
            std::snprintf(b, sizeof(b), "w%05d", j);
            CHECK(snd.scores.at(a).effective_value > snd.scores.at(b).effective_value);
        }
}

TEST_CASE("planted words carry the configured mean effect") {
    auto spec = small_spec();
    spec.noise_sd_ms = 0.0;
    auto out = generate(spec);
    for (const auto& e : out.fixations) {
        double expected = spec.gaze_base_ms +
                          (out.planted.count(e.word) ? spec.gaze_effect_ms : 0.0);
        CHECK(e.duration_ms == doctest::Approx(expected));
    }
}

TEST_CASE("fixation durations are truncated at 20 ms") {
    auto spec = small_spec();
    spec.gaze_base_ms = 10.0;
    spec.noise_sd_ms = 30.0;
    auto out = generate(spec);
    for (const auto& e : out.fixations) CHECK(e.duration_ms >= 20.0);
}

TEST_CASE("generated fixations pass ingestion with zero schema errors") {
    auto out = generate(small_spec());
    auto dir = std::filesystem::temp_directory_path() / "synth_ingest";
    write_synth(out, dir.string());
    auto events = ingest_fixations((dir / "fixations.csv").string());
    CHECK(events.size() == out.fixations.size());
}

TEST_CASE("same seed twice gives byte-identical outputs") {
    auto d1 = std::filesystem::temp_directory_path() / "synth_a";
    auto d2 = std::filesystem::temp_directory_path() / "synth_b";
    write_synth(generate(small_spec()), d1.string());
    write_synth(generate(small_spec()), d2.string());
    for (const char* name :
         {"embeddings.jsonl", "vocab.csv", "fixations.csv", "planted.json"}) {
        CHECK(slurp(d1 / name) == slurp(d2 / name));
        CHECK(!slurp(d1 / name).empty());
    }
}

TEST_CASE("infeasible cluster plans are rejected") {
    auto spec = small_spec();
    spec.clusters = {{100, 1.0, 0.01}};
    CHECK_THROWS_AS(generate(spec), Error);
    spec = small_spec();
    spec.clusters[0].size = -1;
    CHECK_THROWS_AS(generate(spec), Error);
}

TEST_CASE("spec JSON parsing") {
    auto path = std::filesystem::temp_directory_path() / "spec.json";
    {
        std::ofstream out(path);
        out << R"({"n_words": 50, "dimension": 4, "seed": 3,
                   "clusters": [{"size": 10, "within_spread": 0.05}],
                   "gaze_effect_ms": 25.0})";
    }
    auto spec = parse_synth_spec(path.string());
    CHECK(spec.n_words == 50);
    CHECK(spec.dimension == 4);
    CHECK(spec.seed == 3);
    REQUIRE(spec.clusters.size() == 1);
    CHECK(spec.clusters[0].size == 10);
    CHECK(spec.gaze_effect_ms == 25.0);
}
