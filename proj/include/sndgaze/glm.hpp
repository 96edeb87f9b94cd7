#pragma once

#include <map>
#include <string>
#include <vector>

#include "sndgaze/error.hpp"
#include "sndgaze/gaze.hpp"
#include "sndgaze/partition.hpp"
#include "sndgaze/snd.hpp"

namespace sndgaze {

struct GlmConfig {
    int max_iterations = 100;
    double tolerance = 1e-8;   // max coefficient change
    double coef_cap = 30.0;    // |beta| cap on the standardized scale
};

struct GlmFit {
    // intercept first, then one coefficient per (standardized) feature
    std::vector<double> coefficients;
    bool converged = false;
    bool separation = false;
    int iterations = 0;
    double log_likelihood = 0.0;
    // per-feature (mean, sd) of the internal z-scoring
    std::vector<std::pair<double, double>> standardization;

    /// Coefficients mapped back to the original feature scale.
    std::vector<double> coefficients_original() const;
};

/// Maximum-likelihood logistic regression by IRLS. Features are z-scored
/// internally; coefficients are reported on the standardized scale with the
/// transform recorded. Complete separation yields capped coefficients with
/// converged=false and the separation flag set.
GlmFit fit_logistic(const std::vector<std::vector<double>>& features,
                    const std::vector<int>& labels, const GlmConfig& config = {});

/// Logistic of the standardized linear predictor; strictly in (0,1).
double predict(const GlmFit& fit, const std::vector<double>& feature_row);

/// Leave-one-out cross validation: out-of-sample probability per row, in input
/// order. Folds whose training labels collapse to a single class are skipped
/// (NaN in the output) and counted.
struct LooResult {
    std::vector<double> probabilities;  // NaN where the fold was skipped
    int skipped_folds = 0;
};
LooResult loo_cv(const std::vector<std::vector<double>>& features,
                 const std::vector<int>& labels, const GlmConfig& config = {});

struct EvalReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double roc_auc = 0.0;
    long tn = 0, fp = 0, fn = 0, tp = 0;
    long n = 0;
    bool zero_denominator = false;
};

/// Rank (Mann-Whitney) AUC with average ranks for ties.
double roc_auc(const std::vector<double>& probabilities,
               const std::vector<int>& labels);

/// Thresholded confusion matrix plus derived metrics; prediction is
/// probability >= threshold. NaN probabilities are excluded.
EvalReport evaluate(const std::vector<double>& probabilities,
                    const std::vector<int>& labels, double threshold = 0.5);

struct ModelBasedConfig {
    GlmConfig glm;
    double threshold = 0.5;
    bool log_tf = true;          // feature is log10(TF) instead of raw TF
    bool predictor_is_gaze = false;  // literal single-predictor variant
};

struct ModelBasedResult {
    std::string category;  // metric name
    std::string split;     // median | quartile
    EvalReport report;
    int n_words = 0;
    int skipped_folds = 0;
};

/// Full prediction task for one metric: features (effective SND, log10 TF),
/// labels from the metric split, LOO-CV probabilities, evaluation at 0.5.
ModelBasedResult run_model_based(const SndResult& snd,
                                 const std::map<std::string, double>& tf,
                                 const std::map<std::string, WordGazeRecord>& gaze,
                                 GazeMetric metric, SplitKind split,
                                 const ModelBasedConfig& config = {});

/// CSV `category,model,split,accuracy,precision,recall,f1,roc_auc,tn,fp,fn,tp`.
void write_model_based_csv(const std::vector<ModelBasedResult>& results,
                           const std::string& path);

}  // namespace sndgaze
