#include "sndgaze/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "sndgaze/csv.hpp"

namespace sndgaze {

namespace fs = std::filesystem;

RunConfig load_run_config(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw MissingFileError("cannot open " + json_path);
    nlohmann::json j = nlohmann::json::parse(in);
    RunConfig c;
    c.corpus_dir = j.value("corpus_dir", "");
    c.vocab_csv = j.value("vocab_csv", "");
    c.embedding_jsonl = j.value("embedding_jsonl", "");
    c.fixation_csv = j.value("fixation_csv", "");
    std::string lang = j.value("language", "c");
    c.language = lang == "java" ? Language::Java : Language::C;
    c.n_pairs = j.value("n_pairs", c.n_pairs);
    c.exhaustive_pairs = j.value("exhaustive_pairs", c.exhaustive_pairs);
    c.n_perm = j.value("n_perm", c.n_perm);
    c.seed = j.value("seed", c.seed);
    c.filter.identifiers = j.value("include_identifiers", true);
    c.filter.keywords = j.value("include_keywords", true);
    c.filter.literals = j.value("include_literals", true);
    c.filter.operators = j.value("include_operators", false);
    c.filter.punctuation = j.value("include_punctuation", false);
    c.rpd_aggregate = j.value("rpd_aggregate", std::string("mean")) == "sum"
                          ? RpdAggregate::Sum
                          : RpdAggregate::Mean;
    c.log_tf = j.value("log_tf", true);
    c.out_dir = j.value("out_dir", "");
    return c;
}

namespace {

struct OutputTracker {
    std::vector<fs::path> written;
    void record(const fs::path& p) { written.push_back(p); }
    void remove_all() {
        for (const auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }
};

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

ReportBundle run_pipeline(const RunConfig& config) {
    if (config.out_dir.empty()) throw StageError("config", "out_dir not set");
    if (config.corpus_dir.empty() == config.vocab_csv.empty())
        throw StageError("config", "exactly one of corpus_dir / vocab_csv required");
    if (config.embedding_jsonl.empty() || !fs::exists(config.embedding_jsonl))
        throw StageError("config", "embedding file missing: " + config.embedding_jsonl);
    if (config.fixation_csv.empty() || !fs::exists(config.fixation_csv))
        throw StageError("config", "fixation file missing: " + config.fixation_csv);

    ReportBundle bundle;
    bundle.config = config;

    try {
        if (!config.corpus_dir.empty())
            bundle.vocab = build_vocabulary_from_dir(config.corpus_dir, config.language,
                                                     config.filter);
        else
            bundle.vocab = read_vocabulary_csv(config.vocab_csv, config.language);
        bundle.tf = term_frequency(bundle.vocab);
    } catch (const std::exception& e) {
        throw StageError("corpus", e.what());
    }

    EmbeddingTable table;
    try {
        table = load_embedding_table(config.embedding_jsonl);
    } catch (const std::exception& e) {
        throw StageError("embeddings", e.what());
    }

    try {
        SndConfig snd_config;
        snd_config.n_pairs = config.n_pairs;
        snd_config.exhaustive_pairs = config.exhaustive_pairs;
        snd_config.seed = config.seed;
        bundle.snd = compute_all_snd(bundle.vocab, table, snd_config);
    } catch (const std::exception& e) {
        throw StageError("snd", e.what());
    }

    try {
        auto events = ingest_fixations(config.fixation_csv);
        bundle.gaze = aggregate_word_level(events, config.rpd_aggregate);
    } catch (const std::exception& e) {
        throw StageError("gaze", e.what());
    }

    // analysis domain: words with an SND score (covered by the embedding table)
    std::map<std::string, WordGazeRecord> gaze_covered;
    for (const auto& [w, rec] : bundle.gaze)
        if (bundle.snd.scores.count(w)) gaze_covered.emplace(w, rec);

    try {
        std::map<std::string, double> effective, tf_covered;
        std::set<std::string> domain;
        for (const auto& [w, score] : bundle.snd.scores) {
            effective[w] = score.effective_value;
            tf_covered[w] = bundle.tf.at(w);
            domain.insert(w);
        }
        auto hsnd = median_split(effective);
        auto hf = median_split(tf_covered);
        auto joint = joint_group(hsnd.group1, hf.group2, domain);

        CompareConfig cc;
        cc.n_perm = config.n_perm;

        cc.seed = config.seed;
        cc.alternative = Alternative::Group1Greater;  // HSND > LSND
        auto r1 = compare_groups(gaze_covered, hsnd, "HSND_vs_LSND", cc);

        cc.seed = config.seed + 100;
        cc.alternative = Alternative::Group2Greater;  // LF > HF
        auto r2 = compare_groups(gaze_covered, hf, "HF_vs_LF", cc);

        bundle.model_free = r1;
        bundle.model_free.insert(bundle.model_free.end(), r2.begin(), r2.end());
        if (!joint.degenerate) {
            cc.seed = config.seed + 200;
            cc.alternative = Alternative::Group1Greater;  // HSND∩LF > Other
            auto r3 = compare_groups(gaze_covered, joint, "HSNDLF_vs_Other", cc);
            bundle.model_free.insert(bundle.model_free.end(), r3.begin(), r3.end());
        } else {
            bundle.skipped.push_back("model-free HSNDLF_vs_Other: joint group empty");
        }
    } catch (const std::exception& e) {
        throw StageError("model-free", e.what());
    }

    for (GazeMetric metric : {GazeMetric::SFD, GazeMetric::FFD, GazeMetric::GD,
                              GazeMetric::RPD}) {
        for (SplitKind split : {SplitKind::Median, SplitKind::Quartile}) {
            try {
                ModelBasedConfig mc;
                mc.log_tf = config.log_tf;
                bundle.model_based.push_back(
                    run_model_based(bundle.snd, bundle.tf, gaze_covered, metric,
                                    split, mc));
            } catch (const std::exception& e) {
                bundle.skipped.push_back(std::string("model-based ") +
                                         to_string(metric) + "/" + to_string(split) +
                                         ": " + e.what());
            }
        }
    }

    // emit everything; remove partial output on failure
    OutputTracker tracker;
    try {
        fs::create_directories(config.out_dir);
        fs::path dir(config.out_dir);

        auto mark = [&](const fs::path& p) {
            tracker.record(p);
            return p.string();
        };
        write_vocabulary_csv(bundle.vocab, mark(dir / "vocab.csv"));
        write_snd_csv(bundle.snd, mark(dir / "snd.csv"));
        tracker.record(dir / "snd.csv.meta.json");
        write_gaze_csv(bundle.gaze, mark(dir / "gaze.csv"));
        write_model_free_csv(bundle.model_free, mark(dir / "model_free.csv"));
        write_model_based_csv(bundle.model_based, mark(dir / "model_based.csv"));
        write_annotations_csv(bundle, mark(dir / "annotations.csv"));

        nlohmann::json manifest = {
            {"tool", "snd-gaze"},
            {"version", "1.0.0"},
            {"seed", config.seed},
            {"language", to_string(config.language)},
            {"n_pairs", config.n_pairs},
            {"exhaustive_pairs", config.exhaustive_pairs},
            {"n_perm", config.n_perm},
            {"coverage",
             {{"vocabulary_words", bundle.vocab.counts.size()},
              {"covered_words", bundle.snd.n_covered},
              {"missing_embedding", bundle.snd.n_missing_embedding},
              {"gaze_words", bundle.gaze.size()}}},
            {"threshold",
             {{"tau", bundle.snd.threshold.tau},
              {"mu_d", bundle.snd.threshold.mu_d},
              {"sigma_d", bundle.snd.threshold.sigma_d}}},
            {"skipped", bundle.skipped},
            {"outputs",
             {"vocab.csv", "snd.csv", "snd.csv.meta.json", "gaze.csv",
              "model_free.csv", "model_based.csv", "annotations.csv"}},
        };
        std::ofstream mout(mark(dir / "manifest.json"), std::ios::binary);
        mout << manifest.dump(2) << '\n';
    } catch (const std::exception& e) {
        tracker.remove_all();
        throw StageError("emit", e.what());
    }

    return bundle;
}

void write_annotations_csv(const ReportBundle& bundle, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFileError("cannot write " + path);
    std::map<std::string, double> effective, tf_covered;
    for (const auto& [w, score] : bundle.snd.scores) {
        effective[w] = score.effective_value;
        tf_covered[w] = bundle.tf.at(w);
    }
    std::set<std::string> hsnd, lf;
    if (effective.size() >= 2) {
        hsnd = median_split(effective).group1;
        lf = median_split(tf_covered).group2;
    }
    out << "word,arc,tf,group_flags,mean_ffd\n";
    for (const auto& [w, score] : bundle.snd.scores) {
        std::string flags;
        if (hsnd.count(w)) flags += 'H';
        if (lf.count(w)) flags += 'L';
        auto git = bundle.gaze.find(w);
        out << csv::escape_field(w) << ','
            << (score.arc ? csv::format_double(*score.arc) : std::string()) << ','
            << csv::format_double(bundle.tf.at(w)) << ',' << flags << ','
            << (git != bundle.gaze.end() && git->second.ffd_ms
                    ? csv::format_double(*git->second.ffd_ms)
                    : std::string())
            << '\n';
    }
}

void emit_tables(const ReportBundle& bundle, const std::string& out_dir,
                 TableFormat format) {
    fs::create_directories(out_dir);
    fs::path dir(out_dir);
    if (format == TableFormat::Csv) {
        write_model_free_csv(bundle.model_free, (dir / "model_free.csv").string());
        write_model_based_csv(bundle.model_based, (dir / "model_based.csv").string());
        return;
    }
    if (format == TableFormat::Json) {
        nlohmann::json mf = nlohmann::json::array();
        for (const auto& r : bundle.model_free) {
            if (r.skipped) continue;
            mf.push_back({{"metric", to_string(r.metric)},
                          {"comparison", r.comparison},
                          {"n1", r.n1},
                          {"n2", r.n2},
                          {"mu1", r.mu1},
                          {"mu2", r.mu2},
                          {"hedges_g", r.hedges_g},
                          {"p", r.p},
                          {"p_fdr", r.p_fdr}});
        }
        nlohmann::json mb = nlohmann::json::array();
        for (const auto& r : bundle.model_based) {
            mb.push_back({{"category", r.category},
                          {"model", "GLM"},
                          {"split", r.split},
                          {"accuracy", r.report.accuracy},
                          {"precision", r.report.precision},
                          {"recall", r.report.recall},
                          {"f1", r.report.f1},
                          {"roc_auc", r.report.roc_auc},
                          {"tn", r.report.tn},
                          {"fp", r.report.fp},
                          {"fn", r.report.fn},
                          {"tp", r.report.tp}});
        }
        std::ofstream f(dir / "model_free.json", std::ios::binary);
        f << mf.dump(2) << '\n';
        std::ofstream g(dir / "model_based.json", std::ios::binary);
        g << mb.dump(2) << '\n';
        return;
    }

    // markdown: 3-decimal display, significant rows bolded
    std::ofstream f(dir / "model_free.md", std::ios::binary);
    f << "| metric | comparison | n1 | n2 | mu1 | mu2 | g | p | p (fdr) |\n";
    f << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : bundle.model_free) {
        if (r.skipped) continue;
        bool sig = r.p_fdr < 0.05;
        auto cell = [&](const std::string& s) {
            return sig ? "**" + s + "**" : s;
        };
        f << "| " << to_string(r.metric) << " | " << r.comparison << " | " << r.n1
          << " | " << r.n2 << " | " << fmt3(r.mu1) << " | " << fmt3(r.mu2) << " | "
          << fmt3(r.hedges_g) << " | " << cell(fmt3(r.p)) << " | "
          << cell(fmt3(r.p_fdr)) << " |\n";
    }
    std::ofstream g(dir / "model_based.md", std::ios::binary);
    g << "| category | model | split | accuracy | precision | recall | f1 | auc | "
         "confusion |\n";
    g << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : bundle.model_based) {
        g << "| " << r.category << " | GLM | " << r.split << " | "
          << fmt3(r.report.accuracy) << " | " << fmt3(r.report.precision) << " | "
          << fmt3(r.report.recall) << " | " << fmt3(r.report.f1) << " | "
          << fmt3(r.report.roc_auc) << " | TN=" << r.report.tn
          << ", FP=" << r.report.fp << ", FN=" << r.report.fn
          << ", TP=" << r.report.tp << " |\n";
    }
}

}  // namespace sndgaze
