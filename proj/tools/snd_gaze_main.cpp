#include <cstdio>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "sndgaze/report.hpp"
#include "sndgaze/synth.hpp"

using namespace sndgaze;

namespace {

std::map<std::string, double> tf_from_vocab_csv(const std::string& path,
                                                Language lang) {
    return term_frequency(read_vocabulary_csv(path, lang));
}

int cmd_tokenize(const std::string& lang, const std::string& src,
                 const std::string& out, bool ops, bool punct) {
    Language language = lang == "java" ? Language::Java : Language::C;
    FilterConfig filter;
    filter.operators = ops;
    filter.punctuation = punct;
    Vocabulary vocab = build_vocabulary_from_dir(src, language, filter);
    write_vocabulary_csv(vocab, out);
    std::cout << "wrote " << vocab.counts.size() << " words ("
              << vocab.total_tokens << " occurrences) to " << out << "\n";
    return 0;
}

int cmd_embed_check(const std::string& table_path, int dim,
                    const std::string& vocab_path) {
    std::optional<int> expected;
    if (dim > 0) expected = dim;
    EmbeddingTable table = load_embedding_table(table_path, expected);
    std::cout << "table: " << table.vectors.size() << " vectors, dimension "
              << table.dimension;
    if (!table.source_label.empty()) std::cout << ", source " << table.source_label;
    std::cout << "\n";
    if (!vocab_path.empty()) {
        Vocabulary vocab = read_vocabulary_csv(vocab_path, Language::C);
        long covered = 0;
        for (const auto& [w, _] : vocab.counts)
            if (table.contains(w)) ++covered;
        std::cout << "coverage: " << covered << "/" << vocab.counts.size()
                  << " vocabulary words embedded\n";
    }
    return 0;
}

int cmd_snd(const std::string& vocab_path, const std::string& table_path,
            long pairs, std::uint64_t seed, bool exhaustive,
            const std::string& out) {
    Vocabulary vocab = read_vocabulary_csv(vocab_path, Language::C);
    EmbeddingTable table = load_embedding_table(table_path);
    SndConfig config;
    config.n_pairs = pairs;
    config.seed = seed;
    config.exhaustive_pairs = exhaustive;
    SndResult result = compute_all_snd(vocab, table, config);
    write_snd_csv(result, out);
    if (result.tau_nonpositive)
        std::cerr << "warning: tau <= 0, all neighborhoods are empty\n";
    std::cout << "tau=" << result.threshold.tau << " covered=" << result.n_covered
              << " missing=" << result.n_missing_embedding << "\n";
    return 0;
}

int cmd_gaze(const std::string& fixations, const std::string& out,
             const std::string& rpd_agg) {
    auto events = ingest_fixations(fixations);
    auto records = aggregate_word_level(
        events, rpd_agg == "sum" ? RpdAggregate::Sum : RpdAggregate::Mean);
    write_gaze_csv(records, out);
    std::cout << "wrote gaze metrics for " << records.size() << " words\n";
    return 0;
}

int cmd_model_free(const std::string& gaze_path, const std::string& snd_path,
                   const std::string& tf_path, int perms, std::uint64_t seed,
                   const std::string& out) {
    auto gaze = read_gaze_csv(gaze_path);
    auto snd = read_snd_csv(snd_path);
    auto tf = tf_from_vocab_csv(tf_path, Language::C);

    std::map<std::string, double> effective, tf_covered;
    std::set<std::string> domain;
    for (const auto& [w, score] : snd.scores) {
        if (!tf.count(w)) continue;
        effective[w] = score.effective_value;
        tf_covered[w] = tf.at(w);
        domain.insert(w);
    }
    auto hsnd = median_split(effective);
    auto hf = median_split(tf_covered);
    auto joint = joint_group(hsnd.group1, hf.group2, domain);

    CompareConfig cc;
    cc.n_perm = perms;
    cc.seed = seed;
    std::vector<ComparisonResult> all;
    cc.alternative = Alternative::Group1Greater;
    for (auto& r : compare_groups(gaze, hsnd, "HSND_vs_LSND", cc)) all.push_back(r);
    cc.seed = seed + 100;
    cc.alternative = Alternative::Group2Greater;
    for (auto& r : compare_groups(gaze, hf, "HF_vs_LF", cc)) all.push_back(r);
    if (!joint.degenerate) {
        cc.seed = seed + 200;
        cc.alternative = Alternative::Group1Greater;
        for (auto& r : compare_groups(gaze, joint, "HSNDLF_vs_Other", cc))
            all.push_back(r);
    }
    write_model_free_csv(all, out);
    std::cout << "wrote " << all.size() << " comparison rows to " << out << "\n";
    return 0;
}

int cmd_model_based(const std::string& gaze_path, const std::string& snd_path,
                    const std::string& tf_path, const std::string& split,
                    const std::string& out) {
    auto gaze = read_gaze_csv(gaze_path);
    auto snd = read_snd_csv(snd_path);
    auto tf = tf_from_vocab_csv(tf_path, Language::C);
    SplitKind kind = split == "quartile" ? SplitKind::Quartile : SplitKind::Median;
    std::vector<ModelBasedResult> results;
    for (GazeMetric m :
         {GazeMetric::SFD, GazeMetric::FFD, GazeMetric::GD, GazeMetric::RPD}) {
        try {
            results.push_back(run_model_based(snd, tf, gaze, m, kind));
        } catch (const Error& e) {
            std::cerr << "skipped " << to_string(m) << ": " << e.what() << "\n";
        }
    }
    write_model_based_csv(results, out);
    std::cout << "wrote " << results.size() << " task rows to " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semantic neighborhood density and eye-gaze analysis toolkit"};
    app.require_subcommand(1);

    // tokenize
    std::string lang = "c", src, out, table_path, vocab_path, fixations, gaze_path;
    std::string snd_path, tf_path, split = "median", rpd_agg = "mean", spec_path;
    std::string config_path, out_dir;
    bool include_ops = false, include_punct = false, exhaustive = false;
    long pairs = 10000;
    int perms = 10000, dim = 0;
    std::uint64_t seed = 20240501;
    bool seed_given = false;

    auto* tok = app.add_subcommand("tokenize", "build a vocabulary CSV from sources");
    tok->add_option("--lang", lang, "c or java")->check(CLI::IsMember({"c", "java"}));
    tok->add_option("--src", src, "source directory")->required();
    tok->add_option("--out", out, "output vocabulary CSV")->required();
    tok->add_flag("--include-operators", include_ops);
    tok->add_flag("--include-punctuation", include_punct);

    auto* emb = app.add_subcommand("embed-check", "validate an embedding table");
    emb->add_option("--table", table_path, "embedding JSONL")->required();
    emb->add_option("--dim", dim, "expected dimension");
    emb->add_option("--vocab", vocab_path, "vocabulary CSV for coverage");

    auto* snd = app.add_subcommand("snd", "compute SND scores");
    snd->add_option("--vocab", vocab_path)->required();
    snd->add_option("--table", table_path)->required();
    snd->add_option("--pairs", pairs);
    snd->add_option("--seed", seed);
    snd->add_flag("--exhaustive", exhaustive);
    snd->add_option("--out", out)->required();

    auto* gaze = app.add_subcommand("gaze", "compute gaze metrics");
    gaze->add_option("--fixations", fixations)->required();
    gaze->add_option("--out", out)->required();
    gaze->add_option("--rpd-aggregate", rpd_agg)->check(CLI::IsMember({"mean", "sum"}));

    auto* analyze = app.add_subcommand("analyze", "statistical analyses");
    analyze->require_subcommand(1);
    auto* mf = analyze->add_subcommand("model-free", "group comparisons");
    mf->add_option("--gaze", gaze_path)->required();
    mf->add_option("--snd", snd_path)->required();
    mf->add_option("--tf", tf_path, "vocabulary CSV with counts")->required();
    mf->add_option("--perms", perms);
    mf->add_option("--seed", seed);
    mf->add_option("--out", out)->required();
    auto* mb = analyze->add_subcommand("model-based", "prediction tasks");
    mb->add_option("--gaze", gaze_path)->required();
    mb->add_option("--snd", snd_path)->required();
    mb->add_option("--tf", tf_path, "vocabulary CSV with counts")->required();
    mb->add_option("--split", split)->check(CLI::IsMember({"median", "quartile"}));
    mb->add_option("--out", out)->required();

    auto* sim = app.add_subcommand("simulate", "generate synthetic datasets");
    sim->add_option("--spec", spec_path, "synth spec JSON")->required();
    sim->add_option("--out-dir", out_dir)->required();

    auto* run = app.add_subcommand("run", "full pipeline from a config file");
    run->add_option("--config", config_path)->required();
    run->add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (tok->parsed())
            return cmd_tokenize(lang, src, out, include_ops, include_punct);
        if (emb->parsed()) return cmd_embed_check(table_path, dim, vocab_path);
        if (snd->parsed())
            return cmd_snd(vocab_path, table_path, pairs, seed, exhaustive, out);
        if (gaze->parsed()) return cmd_gaze(fixations, out, rpd_agg);
        if (mf->parsed())
            return cmd_model_free(gaze_path, snd_path, tf_path, perms, seed, out);
        if (mb->parsed())
            return cmd_model_based(gaze_path, snd_path, tf_path, split, out);
        if (sim->parsed()) {
            SynthSpec spec = parse_synth_spec(spec_path);
            SynthOutput output = generate(spec);
            write_synth(output, out_dir);
            std::cout << "wrote synthetic dataset (" << output.vocab.counts.size()
                      << " words, " << output.fixations.size() << " fixations, "
                      << output.planted.size() << " planted) to " << out_dir << "\n";
            return 0;
        }
        if (run->parsed()) {
            RunConfig config = load_run_config(config_path);
            if (seed_given) config.seed = seed;
            ReportBundle bundle = run_pipeline(config);
            emit_tables(bundle, config.out_dir, TableFormat::Markdown);
            std::cout << "pipeline complete: " << bundle.model_free.size()
                      << " model-free rows, " << bundle.model_based.size()
                      << " model-based rows in " << config.out_dir << "\n";
            for (const auto& s : bundle.skipped)
                std::cerr << "skipped: " << s << "\n";
            return 0;
        }
    } catch (const StageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
