#include "sndgaze/snd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "sndgaze/csv.hpp"
#include "sndgaze/rng.hpp"

namespace sndgaze {

namespace {

std::vector<std::string> covered_words(const EmbeddingTable& table,
                                       const std::vector<std::string>& vocab_words) {
    std::vector<std::string> covered;
    for (const auto& w : vocab_words)
        if (table.contains(w)) covered.push_back(w);
    std::sort(covered.begin(), covered.end());
    return covered;
}

}  // namespace

ThresholdEstimate estimate_threshold(const EmbeddingTable& table,
                                     const std::vector<std::string>& vocab_words,
                                     const SndConfig& config) {
    auto covered = covered_words(table, vocab_words);
    const std::size_t n = covered.size();
    if (n < 2) throw Error("estimate_threshold needs at least 2 embedded words");

    std::vector<double> distances;
    if (config.exhaustive_pairs) {
        distances.reserve(n * (n - 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                distances.push_back(
                    euclidean_distance(table.at(covered[i]), table.at(covered[j])));
    } else {
        if (config.n_pairs < 1) throw Error("n_pairs must be >= 1");
        std::mt19937_64 gen(config.seed);
        distances.reserve(static_cast<std::size_t>(config.n_pairs));
        for (std::int64_t k = 0; k < config.n_pairs; ++k) {
            std::uint64_t i = rand_below(gen, n);
            std::uint64_t j = rand_below(gen, n - 1);
            if (j >= i) ++j;  // unordered pair of distinct words
            distances.push_back(
                euclidean_distance(table.at(covered[i]), table.at(covered[j])));
        }
    }

    double mu = 0.0;
    for (double d : distances) mu += d;
    mu /= static_cast<double>(distances.size());
    double ss = 0.0;
    for (double d : distances) ss += (d - mu) * (d - mu);
    double denom = config.sample_sigma ? static_cast<double>(distances.size()) - 1.0
                                       : static_cast<double>(distances.size());
    double sigma = denom > 0.0 ? std::sqrt(ss / denom) : 0.0;

    ThresholdEstimate est;
    est.mu_d = mu;
    est.sigma_d = sigma;
    est.tau = mu - 1.5 * sigma;
    est.n_pairs_sampled = static_cast<std::int64_t>(distances.size());
    est.seed = config.seed;
    return est;
}

std::vector<std::string> neighborhood(const std::string& word,
                                      const EmbeddingTable& table,
                                      const std::vector<std::string>& vocab_words,
                                      double tau) {
    if (!table.contains(word)) throw Error("word has no embedding: " + word);
    const auto& xw = table.at(word);
    std::vector<std::string> result;
    for (const auto& y : vocab_words) {
        if (y == word || !table.contains(y)) continue;
        if (euclidean_distance(xw, table.at(y)) <= tau) result.push_back(y);
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::optional<double> arc_snd(const std::string& word,
                              const std::vector<std::string>& neighbors,
                              const EmbeddingTable& table) {
    if (neighbors.empty()) return std::nullopt;
    const auto& xw = table.at(word);
    double sum = 0.0;
    for (const auto& y : neighbors) sum += cosine_similarity(xw, table.at(y));
    return sum / static_cast<double>(neighbors.size());
}

SndResult compute_all_snd(const Vocabulary& vocab, const EmbeddingTable& table,
                          const SndConfig& config) {
    std::vector<std::string> vocab_words;
    vocab_words.reserve(vocab.counts.size());
    for (const auto& [w, _] : vocab.counts) vocab_words.push_back(w);

    auto covered = covered_words(table, vocab_words);
    if (covered.size() < 2) throw Error("vocabulary/table coverage below 2 words");

    SndResult result;
    result.threshold = estimate_threshold(table, vocab_words, config);
    result.tau_nonpositive = result.threshold.tau <= 0.0;
    result.n_covered = static_cast<int>(covered.size());
    result.n_missing_embedding = static_cast<int>(vocab_words.size() - covered.size());

    for (const auto& w : covered) {
        auto neigh = neighborhood(w, table, covered, result.threshold.tau);
        SndScore score;
        score.word = w;
        score.neighborhood_size = static_cast<int>(neigh.size());
        score.arc = arc_snd(w, neigh, table);
        score.effective_value = score.arc ? *score.arc : config.missing_sentinel;
        result.scores.emplace(w, std::move(score));
    }
    return result;
}

void write_snd_csv(const SndResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFileError("cannot write " + path);
    out << "word,arc,neighborhood_size,effective_value\n";
    for (const auto& [word, score] : result.scores) {
        out << csv::escape_field(word) << ','
            << (score.arc ? csv::format_double(*score.arc) : std::string()) << ','
            << score.neighborhood_size << ','
            << csv::format_double(score.effective_value) << '\n';
    }
    nlohmann::json meta = {
        {"tau", result.threshold.tau},
        {"mu_d", result.threshold.mu_d},
        {"sigma_d", result.threshold.sigma_d},
        {"n_pairs", result.threshold.n_pairs_sampled},
        {"seed", result.threshold.seed},
        {"coverage",
         {{"covered", result.n_covered},
          {"missing_embedding", result.n_missing_embedding}}},
        {"tau_nonpositive", result.tau_nonpositive},
    };
    std::ofstream mout(path + ".meta.json", std::ios::binary);
    mout << meta.dump(2) << '\n';
}

SndResult read_snd_csv(const std::string& path) {
    auto rows = csv::read_file(path);
    if (rows.empty() || rows[0].empty() || rows[0][0] != "word")
        throw Error("bad SND CSV header in " + path);
    SndResult result;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() < 4) throw Error("short row in " + path);
        SndScore score;
        score.word = r[0];
        if (!r[1].empty()) score.arc = std::stod(r[1]);
        score.neighborhood_size = std::stoi(r[2]);
        score.effective_value = std::stod(r[3]);
        result.scores.emplace(score.word, std::move(score));
    }
    result.n_covered = static_cast<int>(result.scores.size());
    std::ifstream mfile(path + ".meta.json");
    if (mfile) {
        nlohmann::json meta = nlohmann::json::parse(mfile);
        result.threshold.tau = meta.value("tau", 0.0);
        result.threshold.mu_d = meta.value("mu_d", 0.0);
        result.threshold.sigma_d = meta.value("sigma_d", 0.0);
        result.threshold.n_pairs_sampled = meta.value("n_pairs", std::int64_t{0});
        result.threshold.seed = meta.value("seed", std::uint64_t{0});
    }
    return result;
}

}  // namespace sndgaze
