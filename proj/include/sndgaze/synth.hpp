#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sndgaze/corpus.hpp"
#include "sndgaze/embeddings.hpp"
#include "sndgaze/gaze.hpp"

namespace sndgaze {

struct ClusterPlan {
    int size = 0;
    double center_spread = 10.0;  // distance of the cluster center from origin
    double within_spread = 0.0;   // noise around the center
};

struct SynthSpec {
    int n_words = 100;
    int dimension = 32;
    // words are assigned to clusters in order; leftovers are scattered on a
    // sphere of radius scatter_spread
    std::vector<ClusterPlan> clusters;
    double scatter_spread = 10.0;
    double zipf_exponent = 1.1;
    double gaze_base_ms = 400.0;
    double gaze_effect_ms = 30.0;  // added to planted (HSND ∩ LF) words
    double noise_sd_ms = 20.0;
    int n_participants = 10;
    std::uint64_t seed = 1;
};

SynthSpec parse_synth_spec(const std::string& json_path);

struct SynthOutput {
    EmbeddingTable table;
    Vocabulary vocab;
    std::vector<FixationEvent> fixations;
    std::set<std::string> planted;  // HSND ∩ LF words carrying the effect
};

/// Deterministic generator: cluster words get tight embeddings (high ARC) and
/// the tail of the Zipf frequency ranking (low TF); scattered words get wide
/// embeddings and high counts. The planted set is derived by running the SND
/// and TF median splits on the generated data, and each planted word's
/// fixation durations carry the configured effect. Fixation noise is Gaussian,
/// truncated at 20 ms.
SynthOutput generate(const SynthSpec& spec);

/// Writes embeddings.jsonl, vocab.csv, fixations.csv, planted.json.
void write_synth(const SynthOutput& output, const std::string& out_dir);

}  // namespace sndgaze
