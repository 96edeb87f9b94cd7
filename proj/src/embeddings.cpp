#include "sndgaze/embeddings.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "sndgaze/csv.hpp"

namespace sndgaze {

const std::vector<double>& EmbeddingTable::at(const std::string& word) const {
    auto it = vectors.find(word);
    if (it == vectors.end()) throw Error("word has no embedding: " + word);
    return it->second;
}

EmbeddingTable load_embedding_table(const std::string& path,
                                    std::optional<int> expected_dim) {
    std::ifstream in(path);
    if (!in) throw MissingFileError("cannot open " + path);
    EmbeddingTable table;
    std::string line;
    long row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::out_of_range&) {
            // numbers beyond double range (e.g. 1e999) overflow during parsing
            throw NonFiniteError("non-representable number at line " + std::to_string(row));
        }
        if (rec.contains("dimension") && !rec.contains("word")) {
            table.dimension = rec["dimension"].get<int>();
            if (rec.contains("source")) table.source_label = rec["source"].get<std::string>();
            continue;
        }
        std::string word = rec.at("word").get<std::string>();
        if (table.vectors.count(word))
            throw DuplicateWordError("duplicate word '" + word + "' at line " +
                                     std::to_string(row));
        std::vector<double> vec;
        for (const auto& elem : rec.at("vector")) {
            if (!elem.is_number() || !std::isfinite(elem.get<double>()))
                throw NonFiniteError("non-finite component in '" + word + "' at line " +
                                     std::to_string(row));
            vec.push_back(elem.get<double>());
        }
        if (table.dimension == 0 && table.vectors.empty()) {
            table.dimension = static_cast<int>(vec.size());
        } else if (static_cast<int>(vec.size()) != table.dimension) {
            throw DimensionMismatchError(
                "vector for '" + word + "' has length " + std::to_string(vec.size()) +
                ", expected " + std::to_string(table.dimension));
        }
        table.vectors.emplace(std::move(word), std::move(vec));
    }
    if (expected_dim && table.dimension != *expected_dim)
        throw DimensionMismatchError("table dimension " + std::to_string(table.dimension) +
                                     " != expected " + std::to_string(*expected_dim));
    return table;
}

void save_embedding_table(const EmbeddingTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFileError("cannot write " + path);
    nlohmann::json header = {{"dimension", table.dimension}, {"source", table.source_label}};
    out << header.dump() << '\n';
    for (const auto& [word, vec] : table.vectors) {
        nlohmann::json rec;
        rec["word"] = word;
        rec["vector"] = vec;
        out << rec.dump() << '\n';
    }
}

double euclidean_distance(std::span<const double> v1, std::span<const double> v2) {
    if (v1.size() != v2.size())
        throw DimensionMismatchError("length mismatch in euclidean_distance");
    double sum = 0.0;
    for (std::size_t i = 0; i < v1.size(); ++i) {
        double d = v1[i] - v2[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double cosine_similarity(std::span<const double> v1, std::span<const double> v2) {
    if (v1.size() != v2.size())
        throw DimensionMismatchError("length mismatch in cosine_similarity");
    double dot = 0.0, n1 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < v1.size(); ++i) {
        dot += v1[i] * v2[i];
        n1 += v1[i] * v1[i];
        n2 += v2[i] * v2[i];
    }
    if (n1 == 0.0 || n2 == 0.0)
        throw UndefinedSimilarityError("cosine similarity with zero vector");
    double c = dot / (std::sqrt(n1) * std::sqrt(n2));
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return c;
}

}  // namespace sndgaze
