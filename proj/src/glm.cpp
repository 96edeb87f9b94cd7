#include "sndgaze/glm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "sndgaze/csv.hpp"

namespace sndgaze {

namespace {

double sigmoid(double t) {
    if (t >= 0.0) {
        double e = std::exp(-t);
        return 1.0 / (1.0 + e);
    }
    double e = std::exp(t);
    return e / (1.0 + e);
}

}  // namespace

std::vector<double> GlmFit::coefficients_original() const {
    std::vector<double> orig = coefficients;
    for (std::size_t j = 0; j < standardization.size(); ++j) {
        const auto& [mean, sd] = standardization[j];
        orig[j + 1] = coefficients[j + 1] / sd;
        orig[0] -= coefficients[j + 1] * mean / sd;
    }
    return orig;
}

GlmFit fit_logistic(const std::vector<std::vector<double>>& features,
                    const std::vector<int>& labels, const GlmConfig& config) {
    const std::size_t n = features.size();
    if (n == 0 || n != labels.size()) throw Error("fit_logistic: bad input sizes");
    const std::size_t k = features[0].size();
    if (n < k + 1) throw Error("fit_logistic: fewer rows than parameters");
    bool has0 = false, has1 = false;
    for (int y : labels) (y ? has1 : has0) = true;
    if (!has0 || !has1) throw Error("fit_logistic: labels contain a single class");

    GlmFit fit;
    fit.standardization.resize(k);
    Eigen::MatrixXd x(n, k + 1);
    for (std::size_t j = 0; j < k; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += features[i][j];
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = features[i][j] - mean;
            ss += d * d;
        }
        double sd = std::sqrt(ss / static_cast<double>(n));
        if (sd <= 0.0) sd = 1.0;  // constant feature: leave centered only
        fit.standardization[j] = {mean, sd};
        for (std::size_t i = 0; i < n; ++i)
            x(i, j + 1) = (features[i][j] - mean) / sd;
    }
    x.col(0).setOnes();
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) y(i) = labels[i];

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k + 1);
    bool capped = false;
    int iter = 0;
    for (; iter < config.max_iterations; ++iter) {
        Eigen::VectorXd eta = x * beta;
        Eigen::VectorXd mu(n), w(n), z(n);
        for (std::size_t i = 0; i < n; ++i) {
            double m = sigmoid(eta(i));
            double wi = std::max(m * (1.0 - m), 1e-10);
            mu(i) = m;
            w(i) = wi;
            z(i) = eta(i) + (y(i) - m) / wi;
        }
        Eigen::MatrixXd xtw = x.transpose() * w.asDiagonal();
        Eigen::VectorXd beta_new = (xtw * x).ldlt().solve(xtw * z);
        capped = false;
        for (Eigen::Index j = 0; j < beta_new.size(); ++j) {
            if (beta_new(j) > config.coef_cap) {
                beta_new(j) = config.coef_cap;
                capped = true;
            } else if (beta_new(j) < -config.coef_cap) {
                beta_new(j) = -config.coef_cap;
                capped = true;
            }
        }
        double delta = (beta_new - beta).cwiseAbs().maxCoeff();
        beta = beta_new;
        if (delta < config.tolerance) {
            fit.converged = true;
            ++iter;
            break;
        }
    }
    fit.iterations = iter;
    fit.separation = capped;
    if (capped) fit.converged = false;

    Eigen::VectorXd eta = x * beta;
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m = std::clamp(sigmoid(eta(i)), 1e-15, 1.0 - 1e-15);
        ll += y(i) * std::log(m) + (1.0 - y(i)) * std::log(1.0 - m);
    }
    fit.log_likelihood = ll;
    fit.coefficients.assign(beta.data(), beta.data() + beta.size());
    return fit;
}

double predict(const GlmFit& fit, const std::vector<double>& feature_row) {
    if (feature_row.size() + 1 != fit.coefficients.size())
        throw Error("predict: feature row length mismatch");
    double eta = fit.coefficients[0];
    for (std::size_t j = 0; j < feature_row.size(); ++j) {
        const auto& [mean, sd] = fit.standardization[j];
        eta += fit.coefficients[j + 1] * (feature_row[j] - mean) / sd;
    }
    double p = sigmoid(eta);
    return std::clamp(p, 1e-15, 1.0 - 1e-15);
}

LooResult loo_cv(const std::vector<std::vector<double>>& features,
                 const std::vector<int>& labels, const GlmConfig& config) {
    const std::size_t n = features.size();
    if (n < 3 || n != labels.size()) throw Error("loo_cv: need at least 3 rows");
    LooResult result;
    result.probabilities.assign(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<double>> train_x;
        std::vector<int> train_y;
        train_x.reserve(n - 1);
        train_y.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            train_x.push_back(features[j]);
            train_y.push_back(labels[j]);
        }
        try {
            GlmFit fit = fit_logistic(train_x, train_y, config);
            result.probabilities[i] = predict(fit, features[i]);
        } catch (const Error&) {
            ++result.skipped_folds;
        }
    }
    return result;
}

double roc_auc(const std::vector<double>& probabilities,
               const std::vector<int>& labels) {
    if (probabilities.empty() || probabilities.size() != labels.size())
        throw Error("roc_auc: bad input sizes");
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < probabilities.size(); ++i)
        if (!std::isnan(probabilities[i])) order.push_back(i);
    if (order.empty()) throw Error("roc_auc: all probabilities undefined");
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return probabilities[a] < probabilities[b];
    });

    const std::size_t m = order.size();
    std::vector<double> rank(m);
    for (std::size_t i = 0; i < m;) {
        std::size_t j = i;
        while (j < m && probabilities[order[j]] == probabilities[order[i]]) ++j;
        double avg = (static_cast<double>(i) + static_cast<double>(j) + 1.0) / 2.0;
        for (std::size_t t = i; t < j; ++t) rank[t] = avg;
        i = j;
    }
    double rank_sum_pos = 0.0;
    long n_pos = 0, n_neg = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (labels[order[i]] == 1) {
            rank_sum_pos += rank[i];
            ++n_pos;
        } else {
            ++n_neg;
        }
    }
    if (n_pos == 0 || n_neg == 0) throw Error("roc_auc: single-class labels");
    double u = rank_sum_pos - static_cast<double>(n_pos) *
                                  (static_cast<double>(n_pos) + 1.0) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

EvalReport evaluate(const std::vector<double>& probabilities,
                    const std::vector<int>& labels, double threshold) {
    if (probabilities.empty() || probabilities.size() != labels.size())
        throw Error("evaluate: bad input sizes");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw Error("evaluate: threshold outside (0,1)");
    EvalReport report;
    std::vector<double> probs;
    std::vector<int> labs;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (std::isnan(probabilities[i])) continue;
        probs.push_back(probabilities[i]);
        labs.push_back(labels[i]);
        bool pred = probabilities[i] >= threshold;
        if (pred && labels[i] == 1) ++report.tp;
        else if (pred) ++report.fp;
        else if (labels[i] == 1) ++report.fn;
        else ++report.tn;
    }
    report.n = report.tn + report.fp + report.fn + report.tp;
    if (report.n == 0) throw Error("evaluate: empty input");
    report.accuracy = static_cast<double>(report.tp + report.tn) /
                      static_cast<double>(report.n);
    if (report.tp + report.fp > 0)
        report.precision = static_cast<double>(report.tp) /
                           static_cast<double>(report.tp + report.fp);
    else
        report.zero_denominator = true;
    if (report.tp + report.fn > 0)
        report.recall = static_cast<double>(report.tp) /
                        static_cast<double>(report.tp + report.fn);
    else
        report.zero_denominator = true;
    if (report.precision + report.recall > 0.0)
        report.f1 = 2.0 * report.precision * report.recall /
                    (report.precision + report.recall);
    else
        report.zero_denominator = true;
    report.roc_auc = roc_auc(probs, labs);
    return report;
}

ModelBasedResult run_model_based(const SndResult& snd,
                                 const std::map<std::string, double>& tf,
                                 const std::map<std::string, WordGazeRecord>& gaze,
                                 GazeMetric metric, SplitKind split,
                                 const ModelBasedConfig& config) {
    auto labeled = label_words_by_metric(gaze, metric, split);
    auto values = metric_values(gaze, metric);

    std::vector<std::vector<double>> features;
    std::vector<int> labels;
    int n_words = 0;
    for (const auto& [word, y] : labeled) {
        auto sit = snd.scores.find(word);
        auto tit = tf.find(word);
        if (sit == snd.scores.end() || tit == tf.end()) continue;
        if (config.predictor_is_gaze) {
            features.push_back({values.at(word)});
        } else {
            double tf_feat = config.log_tf ? std::log10(tit->second) : tit->second;
            features.push_back({sit->second.effective_value, tf_feat});
        }
        labels.push_back(y);
        ++n_words;
    }
    if (n_words < 4)
        throw Error(std::string("model-based task for ") + to_string(metric) +
                    " has fewer than 4 usable words");

    auto loo = loo_cv(features, labels, config.glm);
    ModelBasedResult result;
    result.category = to_string(metric);
    result.split = to_string(split);
    result.report = evaluate(loo.probabilities, labels, config.threshold);
    result.n_words = n_words;
    result.skipped_folds = loo.skipped_folds;
    return result;
}

void write_model_based_csv(const std::vector<ModelBasedResult>& results,
                           const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFileError("cannot write " + path);
    out << "category,model,split,accuracy,precision,recall,f1,roc_auc,tn,fp,fn,tp\n";
    for (const auto& r : results) {
        out << r.category << ",GLM," << r.split << ','
            << csv::format_double(r.report.accuracy) << ','
            << csv::format_double(r.report.precision) << ','
            << csv::format_double(r.report.recall) << ','
            << csv::format_double(r.report.f1) << ','
            << csv::format_double(r.report.roc_auc) << ',' << r.report.tn << ','
            << r.report.fp << ',' << r.report.fn << ',' << r.report.tp << '\n';
    }
}

}  // namespace sndgaze
