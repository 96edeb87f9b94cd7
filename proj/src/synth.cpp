#include "sndgaze/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "sndgaze/partition.hpp"
#include "sndgaze/rng.hpp"
#include "sndgaze/snd.hpp"

namespace sndgaze {

SynthSpec parse_synth_spec(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw MissingFileError("cannot open " + json_path);
    nlohmann::json j = nlohmann::json::parse(in);
    SynthSpec spec;
    spec.n_words = j.value("n_words", spec.n_words);
    spec.dimension = j.value("dimension", spec.dimension);
    if (j.contains("clusters")) {
        for (const auto& c : j["clusters"]) {
            ClusterPlan plan;
            plan.size = c.value("size", 0);
            plan.center_spread = c.value("center_spread", 1.0);
            plan.within_spread = c.value("within_spread", 0.0);
            spec.clusters.push_back(plan);
        }
    }
    spec.scatter_spread = j.value("scatter_spread", spec.scatter_spread);
    spec.zipf_exponent = j.value("zipf_exponent", spec.zipf_exponent);
    spec.gaze_base_ms = j.value("gaze_base_ms", spec.gaze_base_ms);
    spec.gaze_effect_ms = j.value("gaze_effect_ms", spec.gaze_effect_ms);
    spec.noise_sd_ms = j.value("noise_sd_ms", spec.noise_sd_ms);
    spec.n_participants = j.value("n_participants", spec.n_participants);
    spec.seed = j.value("seed", spec.seed);
    return spec;
}

SynthOutput generate(const SynthSpec& spec) {
    int clustered = 0;
    for (const auto& c : spec.clusters) {
        if (c.size <= 0 || c.center_spread < 0.0 || c.within_spread < 0.0)
            throw Error("invalid cluster plan");
        clustered += c.size;
    }
    if (clustered > spec.n_words)
        throw Error("cluster sizes exceed n_words");
    if (spec.n_words < 2 || spec.dimension < 1 || spec.n_participants < 1 ||
        spec.noise_sd_ms < 0.0)
        throw Error("invalid synth spec");

    std::mt19937_64 gen(spec.seed);
    SynthOutput out;
    out.table.dimension = spec.dimension;
    out.table.source_label = "synth";

    char name[24];
    std::vector<std::string> words(spec.n_words);
    for (int i = 0; i < spec.n_words; ++i) {
        std::snprintf(name, sizeof(name), "w%05d", i);
        words[i] = name;
    }

    // embeddings: cluster words first, scattered after. Centers and scattered
    // words sit on spheres (radius = spread) so that cross-cluster distances
    // concentrate and the distance threshold stays positive.
    auto random_direction = [&] {
        std::vector<double> v(spec.dimension);
        double norm = 0.0;
        do {
            norm = 0.0;
            for (double& x : v) {
                x = rand_normal(gen);
                norm += x * x;
            }
        } while (norm == 0.0);
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        return v;
    };
    int next = 0;
    for (const auto& c : spec.clusters) {
        std::vector<double> center = random_direction();
        for (double& v : center) v *= c.center_spread;
        for (int k = 0; k < c.size; ++k, ++next) {
            std::vector<double> vec(spec.dimension);
            for (int d = 0; d < spec.dimension; ++d)
                vec[d] = center[d] + rand_normal(gen) * c.within_spread;
            out.table.vectors.emplace(words[next], std::move(vec));
        }
    }
    for (; next < spec.n_words; ++next) {
        std::vector<double> vec = random_direction();
        for (double& v : vec) v *= spec.scatter_spread;
        out.table.vectors.emplace(words[next], std::move(vec));
    }

    // Zipf counts: scattered words take the head ranks, cluster words the tail,
    // so high-ARC words are also low-frequency
    out.vocab.language = Language::C;
    long rank = 1;
    auto zipf_count = [&](long r) {
        return std::max<std::int64_t>(
            1, std::llround(100000.0 * std::pow(static_cast<double>(r),
                                                -spec.zipf_exponent)));
    };
    for (int i = clustered; i < spec.n_words; ++i, ++rank) {
        out.vocab.counts[words[i]] = zipf_count(rank);
        out.vocab.total_tokens += out.vocab.counts[words[i]];
    }
    for (int i = 0; i < clustered; ++i, ++rank) {
        out.vocab.counts[words[i]] = zipf_count(rank);
        out.vocab.total_tokens += out.vocab.counts[words[i]];
    }

    // planted set: HSND ∩ LF on the generated data itself
    SndConfig snd_config;
    snd_config.exhaustive_pairs = true;
    snd_config.seed = spec.seed;
    auto snd = compute_all_snd(out.vocab, out.table, snd_config);
    std::map<std::string, double> effective, tf_scores;
    auto tf = term_frequency(out.vocab);
    for (const auto& [w, score] : snd.scores) effective[w] = score.effective_value;
    for (const auto& [w, v] : tf) tf_scores[w] = v;
    auto hsnd = median_split(effective);
    auto hf = median_split(tf_scores);
    std::set<std::string> all_words(words.begin(), words.end());
    auto joint = joint_group(hsnd.group1, hf.group2, all_words);
    out.planted = joint.group1;

    // fixations: one trial per participant over all words in a shared shuffled
    // reading order, one fixation per AOI
    std::vector<std::string> reading_order = words;
    shuffle_seeded(reading_order, gen);
    for (int p = 0; p < spec.n_participants; ++p) {
        std::snprintf(name, sizeof(name), "p%03d", p);
        std::string participant = name;
        for (int a = 0; a < spec.n_words; ++a) {
            FixationEvent e;
            e.participant = participant;
            e.trial = "t0";
            e.index = a;
            e.word = reading_order[a];
            e.aoi_order = a;
            double dur = spec.gaze_base_ms +
                         (out.planted.count(e.word) ? spec.gaze_effect_ms : 0.0) +
                         rand_normal(gen) * spec.noise_sd_ms;
            e.duration_ms = std::max(dur, 20.0);
            out.fixations.push_back(std::move(e));
        }
    }
    return out;
}

void write_synth(const SynthOutput& output, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    save_embedding_table(output.table, (fs::path(out_dir) / "embeddings.jsonl").string());
    write_vocabulary_csv(output.vocab, (fs::path(out_dir) / "vocab.csv").string());
    write_fixations_csv(output.fixations, (fs::path(out_dir) / "fixations.csv").string());
    nlohmann::json planted =
        std::vector<std::string>(output.planted.begin(), output.planted.end());
    std::ofstream pout(fs::path(out_dir) / "planted.json", std::ios::binary);
    pout << planted.dump(2) << '\n';
}

}  // namespace sndgaze
