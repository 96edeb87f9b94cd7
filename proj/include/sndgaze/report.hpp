#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sndgaze/corpus.hpp"
#include "sndgaze/gaze.hpp"
#include "sndgaze/glm.hpp"
#include "sndgaze/partition.hpp"
#include "sndgaze/snd.hpp"
#include "sndgaze/stats.hpp"

namespace sndgaze {

struct RunConfig {
    // exactly one of corpus_dir / vocab_csv must be set
    std::string corpus_dir;
    std::string vocab_csv;
    std::string embedding_jsonl;
    std::string fixation_csv;
    Language language = Language::C;
    std::int64_t n_pairs = 10000;
    bool exhaustive_pairs = false;
    int n_perm = 10000;
    std::uint64_t seed = 20240501;
    FilterConfig filter;
    RpdAggregate rpd_aggregate = RpdAggregate::Mean;
    bool log_tf = true;
    std::string out_dir;
};

RunConfig load_run_config(const std::string& json_path);

struct ReportBundle {
    Vocabulary vocab;
    std::map<std::string, double> tf;
    SndResult snd;
    std::map<std::string, WordGazeRecord> gaze;
    std::vector<ComparisonResult> model_free;   // 3 comparisons x 4 metrics
    std::vector<ModelBasedResult> model_based;  // 4 metrics x {median, quartile}
    std::vector<std::string> skipped;           // analyses skipped, with reasons
    RunConfig config;
};

/// Runs corpus -> TF, embeddings -> SND, fixations -> gaze, partitions, the
/// model-free comparisons and the model-based tasks, then writes every table
/// plus a JSON manifest into config.out_dir. A stage failure aborts with the
/// stage name; partial outputs are removed.
ReportBundle run_pipeline(const RunConfig& config);

enum class TableFormat { Csv, Json, Markdown };

/// Writes the model-free and model-based tables in the requested format.
/// Markdown rounds to 3 decimals and bolds rows with p_fdr < 0.05.
void emit_tables(const ReportBundle& bundle, const std::string& out_dir,
                 TableFormat format);

/// Per-word annotation export `word,arc,tf,group_flags,mean_ffd` for external
/// heatmap rendering.
void write_annotations_csv(const ReportBundle& bundle, const std::string& path);

}  // namespace sndgaze
