#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sndgaze/error.hpp"

namespace sndgaze {

struct EmbeddingTable {
    int dimension = 0;
    std::map<std::string, std::vector<double>> vectors;
    std::string source_label;

    bool contains(const std::string& word) const { return vectors.count(word) > 0; }
    const std::vector<double>& at(const std::string& word) const;
};

/// JSON Lines, one record per word: {"word": w, "vector": [...]}; optional
/// first header record {"dimension": d, "source": label}.
EmbeddingTable load_embedding_table(const std::string& path,
                                    std::optional<int> expected_dim = std::nullopt);

void save_embedding_table(const EmbeddingTable& table, const std::string& path);

double euclidean_distance(std::span<const double> v1, std::span<const double> v2);

double cosine_similarity(std::span<const double> v1, std::span<const double> v2);

}  // namespace sndgaze
