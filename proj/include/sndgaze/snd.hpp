#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sndgaze/corpus.hpp"
#include "sndgaze/embeddings.hpp"

namespace sndgaze {

struct ThresholdEstimate {
    double tau = 0.0;      // mu_d - 1.5 * sigma_d
    double mu_d = 0.0;
    double sigma_d = 0.0;
    std::int64_t n_pairs_sampled = 0;
    std::uint64_t seed = 0;
};

struct SndScore {
    std::string word;
    std::optional<double> arc;      // absent iff neighborhood is empty
    int neighborhood_size = 0;
    double effective_value = -1.0;  // arc when present, else the low sentinel
};

struct SndConfig {
    std::int64_t n_pairs = 10000;
    std::uint64_t seed = 1;
    bool exhaustive_pairs = false;   // enumerate all distinct pairs instead of sampling
    bool sample_sigma = false;       // divide by n-1 instead of n
    double missing_sentinel = -1.0;  // the cosine floor
};

/// Threshold from pairwise Euclidean distances over embedded vocabulary words.
/// Sampling draws unordered distinct pairs uniformly with replacement from the
/// seeded generator; exhaustive mode enumerates every distinct pair once.
ThresholdEstimate estimate_threshold(const EmbeddingTable& table,
                                     const std::vector<std::string>& vocab_words,
                                     const SndConfig& config);

/// { y != w : ||x_w - x_y|| <= tau }, over embedded vocabulary words.
std::vector<std::string> neighborhood(const std::string& word,
                                      const EmbeddingTable& table,
                                      const std::vector<std::string>& vocab_words,
                                      double tau);

/// Mean cosine similarity between the word and its neighbors; absent when the
/// neighborhood is empty.
std::optional<double> arc_snd(const std::string& word,
                              const std::vector<std::string>& neighbors,
                              const EmbeddingTable& table);

struct SndResult {
    std::map<std::string, SndScore> scores;  // one per covered word
    ThresholdEstimate threshold;
    int n_covered = 0;
    int n_missing_embedding = 0;  // vocab words absent from the table
    bool tau_nonpositive = false;
};

SndResult compute_all_snd(const Vocabulary& vocab, const EmbeddingTable& table,
                          const SndConfig& config);

/// CSV `word,arc,neighborhood_size,effective_value` (arc empty when absent)
/// plus a JSON metadata sidecar at path + ".meta.json".
void write_snd_csv(const SndResult& result, const std::string& path);
SndResult read_snd_csv(const std::string& path);

}  // namespace sndgaze
